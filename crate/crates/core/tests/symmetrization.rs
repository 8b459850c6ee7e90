use cubeiso_core::bitgrid::{equality_case_sweep, BitGrid};
use cubeiso_core::isometry::equal_up_to_isometry;
use cubeiso_core::symmetrize::{is_symmetrized, is_symmetrized_along, steiner, symmetrize_all};
use cubeiso_core::voxel::cell_boxes;
use cubeiso_core::{devoxelize, voxelize, CubeIsometry, CubicalSet, Rat, VoxelSet};
use proptest::collection::vec;
use proptest::prelude::*;

fn voxel_sets() -> impl Strategy<Value = VoxelSet> {
    (2usize..=3)
        .prop_flat_map(|n| (Just(n), 1usize..=if n == 2 { 8 } else { 6 }))
        .prop_flat_map(|(n, m)| (Just(n), Just(m), vec(any::<bool>(), m.pow(n as u32))))
        .prop_map(|(n, m, bits)| VoxelSet::from_cells(n, m, bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i)))
}

fn isometries(dim: usize) -> impl Strategy<Value = CubeIsometry> {
    let group = CubeIsometry::all(dim);
    (0..group.len()).prop_map(move |i| group[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn steiner_keeps_volume_and_lowers_perimeter(v in voxel_sets(), axis in 0usize..3) {
        let x = devoxelize(&v);
        let axis = axis % x.dim();
        let s = steiner(&x, axis).unwrap();
        prop_assert_eq!(s.volume(), x.volume());
        prop_assert!(s.relative_perimeter() <= x.relative_perimeter());
        prop_assert_eq!(steiner(&s, axis).unwrap(), s.clone());
        prop_assert!(is_symmetrized_along(&s, axis));
    }

    #[test]
    fn symmetrize_all_gives_a_staircase(v in voxel_sets()) {
        let x = devoxelize(&v);
        let s = symmetrize_all(&x).unwrap();
        prop_assert!(is_symmetrized(&s));
        let w = voxelize(&s, v.res()).unwrap();
        prop_assert!(w.is_monotone());
        prop_assert_eq!(w.count(), v.count());
        prop_assert!(w.face_count() <= v.face_count());
        prop_assert_eq!(symmetrize_all(&s).unwrap(), s);
    }

    #[test]
    fn stability_of_symmetrized_directions(v in voxel_sets(), i in 0usize..3, j in 0usize..3) {
        let x = steiner(&devoxelize(&v), i % v.dim()).unwrap();
        let (i, j) = (i % v.dim(), j % v.dim());
        let y = steiner(&x, j).unwrap();
        prop_assert_eq!(steiner(&y, i).unwrap(), y);
    }

    #[test]
    fn monotone_iff_symmetrized(v in voxel_sets()) {
        prop_assert_eq!(v.is_monotone(), is_symmetrized(&devoxelize(&v)));
    }

    #[test]
    fn voxel_round_trip_and_functionals(v in voxel_sets()) {
        let x = devoxelize(&v);
        prop_assert_eq!(voxelize(&x, v.res()).unwrap(), v.clone());
        prop_assert_eq!(x.volume(), v.volume());
        prop_assert_eq!(x.relative_perimeter(), v.relative_perimeter());
        let from_cells = CubicalSet::normalize(v.dim(), &cell_boxes(&v)).unwrap();
        prop_assert_eq!(from_cells, x);
    }

    #[test]
    fn complement_shares_the_boundary(v in voxel_sets()) {
        let x = devoxelize(&v);
        let c = x.complement();
        prop_assert_eq!(c.relative_perimeter(), x.relative_perimeter());
        prop_assert_eq!(c.volume() + x.volume(), Rat::one());
        prop_assert_eq!(c.complement(), x);
    }

    #[test]
    fn isometries_preserve_functionals((v, g) in voxel_sets().prop_flat_map(|v| { let n = v.dim(); (Just(v), isometries(n)) })) {
        let x = devoxelize(&v);
        let y = g.apply(&x);
        prop_assert_eq!(y.volume(), x.volume());
        prop_assert_eq!(y.relative_perimeter(), x.relative_perimeter());
        prop_assert_eq!(g.inverse().apply(&y), x.clone());
        prop_assert!(equal_up_to_isometry(&x, &y).is_some());
        prop_assert_eq!(devoxelize(&v.apply_isometry(&g)), y);
    }
}

#[test]
fn perimeter_equality_is_the_column_condition() {
    for (n, m) in [(2usize, 2usize), (2, 3), (2, 4), (3, 2)] {
        let sweep = equality_case_sweep(&BitGrid::new(n, m).unwrap());
        assert_eq!(sweep.column_mismatches, 0, "n={n} m={m}");
        assert_eq!(sweep.checked, (n as u64) << (m.pow(n as u32)));
    }
}

#[test]
fn perimeter_equality_without_isometry() {
    // cells (0,2) and (2,0) of the 3x3 grid; rows are pushed to x = 0 independently
    let g = BitGrid::new(2, 3).unwrap();
    let x = devoxelize(&g.to_voxels(0x44));
    let s = steiner(&x, 0).unwrap();
    assert_eq!(s.relative_perimeter(), x.relative_perimeter());
    assert!(equal_up_to_isometry(&x, &s).is_none());
    let sweep = equality_case_sweep(&g);
    assert_eq!(sweep.first_counterexample, Some((0x44, 0)));
    assert_eq!(sweep.not_isometric, 32);
}

#[test]
fn bit_steiner_matches_exact_steiner_on_2d_grids() {
    let g = BitGrid::new(2, 4).unwrap();
    for x in (0u32..1 << 16).step_by(37) {
        let set = devoxelize(&g.to_voxels(x));
        for axis in 0..2 {
            let exact = voxelize(&steiner(&set, axis).unwrap(), 4).unwrap();
            assert_eq!(g.from_voxels(&exact), g.steiner(x, axis));
        }
    }
}

#[test]
fn four_tripod_labelings_are_one_orbit() {
    let h = Rat::new(1, 3);
    let o = Rat::one();
    let tripods: Vec<CubicalSet> = [[0usize, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2]]
        .iter()
        .map(|p| {
            let legs = [
                [h.clone(), o.clone(), h.clone()],
                [o.clone(), h.clone(), h.clone()],
                [h.clone(), h.clone(), o.clone()],
            ];
            let boxes: Vec<CubicalSet> = legs
                .iter()
                .map(|l| CubicalSet::origin_box(&[l[p[0]].clone(), l[p[1]].clone(), l[p[2]].clone()]))
                .collect();
            boxes[0].union(&boxes[1]).unwrap().union(&boxes[2]).unwrap()
        })
        .collect();
    for a in &tripods {
        for b in &tripods {
            assert!(equal_up_to_isometry(a, b).is_some());
        }
    }
    let cube = CubicalSet::origin_box(&[Rat::new(1, 2), Rat::new(1, 2), Rat::new(1, 2)]);
    let tube = CubicalSet::origin_box(&[Rat::new(1, 2), Rat::new(1, 4), Rat::one()]);
    assert!(equal_up_to_isometry(&cube, &tube).is_none());
}
