use cubeiso_core::classify::profile;
use cubeiso_core::search::{
    brute_min, brute_min_all, brute_min_general, certified_at_least, continuous_bound, enumerate_monotone,
    for_each_monotone, MonotoneShape, SearchError,
};
use cubeiso_core::symmetrize::is_symmetrized;
use cubeiso_core::variation::{is_special, reduce_to_special};
use cubeiso_core::{devoxelize, Rat};

/// Plane partitions in an `a x b x c` box: product of `(i+j+k-1)/(i+j+k-2)`.
fn macmahon(a: u64, b: u64, c: u64) -> u64 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 1..=a {
        for j in 1..=b {
            for k in 1..=c {
                num *= u128::from(i + j + k - 1);
                den *= u128::from(i + j + k - 2);
                let g = gcd(num, den);
                num /= g;
                den /= g;
            }
        }
    }
    assert_eq!(den, 1);
    num as u64
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

#[test]
fn enumeration_counts_match_closed_forms() {
    for m in 1..=6u64 {
        assert_eq!(enumerate_monotone(2, m as usize).unwrap().len() as u64, binomial(2 * m, m));
    }
    for m in 1..=4u64 {
        let mut count = 0u64;
        for_each_monotone(3, m as usize, |_| count += 1).unwrap();
        assert_eq!(count, macmahon(m, m, m));
    }
    assert_eq!(macmahon(4, 4, 4), 232_848);
}

#[test]
fn enumeration_is_exactly_the_symmetrized_sets() {
    let shapes = enumerate_monotone(3, 2).unwrap();
    let mut seen = std::collections::BTreeSet::new();
    for s in &shapes {
        let v = s.to_voxels();
        assert!(is_symmetrized(&devoxelize(&v)));
        assert!(seen.insert(v.cells()));
    }
    let all_monotone = (0u32..256)
        .filter(|x| cubeiso_core::VoxelSet::from_cells(3, 2, (0..8).filter(|i| x >> i & 1 == 1)).is_monotone())
        .count();
    assert_eq!(all_monotone, shapes.len());
    assert!(MonotoneShape::from_heights(2, 3, vec![1, 2, 0]).is_err());
    assert_eq!(MonotoneShape::from_heights(2, 3, vec![2, 1, 0]).unwrap().relative_perimeter(), Rat::new(4, 3));
}

#[test]
fn general_minimum_equals_monotone_minimum() {
    for (n, m) in [(2usize, 2usize), (2, 3), (2, 4), (3, 2)] {
        for k in 0..=m.pow(n as u32) / 2 {
            assert_eq!(brute_min_general(n, m, k).unwrap().min, brute_min(n, m, k).unwrap().min, "n={n} m={m} k={k}");
        }
    }
    assert!(matches!(brute_min_general(3, 3, 1), Err(SearchError::ResolutionCap { .. })));
}

#[test]
fn discrete_minima_respect_the_profile() {
    for m in 1..=3 {
        for r in brute_min_all(3, m).unwrap() {
            assert!(certified_at_least(&r.min, |bits| continuous_bound(3, m, r.k, bits).unwrap()), "m={m} k={}", r.k);
        }
    }
}

#[test]
fn reduction_never_beats_the_lattice_minimum() {
    for m in 1..=2 {
        let mins = brute_min_all(3, m).unwrap();
        for s in enumerate_monotone(3, m).unwrap() {
            let k = s.cell_count();
            if k == 0 || 2 * k > m.pow(3) {
                continue;
            }
            let x = devoxelize(&s.to_voxels());
            let red = reduce_to_special(&x).unwrap();
            assert!(is_special(&red.set));
            assert!(red.set.relative_perimeter() <= x.relative_perimeter());
            assert!(red.set.relative_perimeter() >= mins[k].min);
        }
    }
}

#[test]
fn slab_at_half_volume() {
    let r = brute_min(3, 2, 4).unwrap();
    assert_eq!(r.min, profile(&Rat::new(1, 2), 64).unwrap().value.lo().clone());
    assert_eq!(r.minimizers.len(), 1);
}
