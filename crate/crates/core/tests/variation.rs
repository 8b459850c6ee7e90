use cubeiso_core::symmetrize::symmetrize_all;
use cubeiso_core::variation::{
    check_stationarity, classify_psi, event_horizon, is_special, reduce_to_special, singular_points, translate_slice,
    Direction, StepKind, VariationError,
};
use cubeiso_core::{devoxelize, CubicalSet, Rat, VoxelSet};
use proptest::collection::vec;
use proptest::prelude::*;

fn symmetrized_sets(max3: usize) -> impl Strategy<Value = CubicalSet> {
    (2usize..=3)
        .prop_flat_map(move |n| (Just(n), 1usize..=if n == 2 { 6 } else { max3 }))
        .prop_flat_map(|(n, m)| (Just(n), Just(m), vec(any::<bool>(), m.pow(n as u32))))
        .prop_map(|(n, m, bits)| {
            let v = VoxelSet::from_cells(n, m, bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i));
            symmetrize_all(&devoxelize(&v)).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn translation_is_linear_inside_the_horizon(x in symmetrized_sets(4), num in 1i64..8) {
        let frac = Rat::new(num, 8);
        for axis in 0..x.dim() {
            for s in singular_points(&x, axis) {
                let data = classify_psi(&x, axis, &s).unwrap();
                prop_assert_eq!(data.boundary_measure(), &data.plus + &data.zero + &data.minus);
                for dir in [Direction::Up, Direction::Down] {
                    let ev = event_horizon(&x, axis, &s, dir);
                    let d = match dir { Direction::Up => &ev.distance * &frac, Direction::Down => -(&ev.distance * &frac) };
                    let y = translate_slice(&x, axis, &s, &d).unwrap();
                    prop_assert_eq!(y.relative_perimeter() - x.relative_perimeter(), &data.signed_perimeter * &d);
                    prop_assert_eq!(y.volume() - x.volume(), &data.area * &d);
                    let too_far = match dir { Direction::Up => ev.distance.clone(), Direction::Down => -ev.distance.clone() };
                    let beyond = matches!(translate_slice(&x, axis, &s, &too_far), Err(VariationError::BeyondHorizon(_)));
                    prop_assert!(beyond);
                }
            }
        }
    }

    #[test]
    fn reduction_is_sound(x in symmetrized_sets(4)) {
        prop_assume!(!x.is_empty());
        let red = reduce_to_special(&x).unwrap();
        prop_assert!(is_special(&red.set));
        prop_assert_eq!(red.set.volume(), x.volume());
        prop_assert!(red.set.relative_perimeter() <= x.relative_perimeter());
        let mut cur = x.relative_perimeter();
        for step in &red.log {
            prop_assert_eq!(&step.delta_vol, &Rat::zero());
            prop_assert!(!step.delta_relper.is_positive());
            if step.kind == StepKind::Merge {
                prop_assert_eq!(&step.delta_relper, &Rat::zero());
            }
            cur += &step.delta_relper;
        }
        prop_assert_eq!(cur, red.set.relative_perimeter());
    }

    #[test]
    fn special_sets_are_fixed_by_reduction(a in 1i64..8, b in 1i64..8, c in 1i64..9) {
        let x = CubicalSet::origin_box(&[Rat::new(a, 8), Rat::new(b, 8), Rat::new(c, 8)]);
        let red = reduce_to_special(&x).unwrap();
        prop_assert!(red.log.is_empty());
        prop_assert_eq!(red.set, x);
    }
}

#[test]
fn box_slices_have_first_variation_sum_of_reciprocals() {
    let (a, b, c) = (Rat::new(1, 2), Rat::new(1, 3), Rat::new(1, 4));
    let x = CubicalSet::origin_box(&[a.clone(), b.clone(), c.clone()]);
    let rep = check_stationarity(&x).unwrap();
    let fv: Vec<Rat> = rep.slices.iter().map(|s| s.first_var.clone()).collect();
    assert_eq!(fv, vec![b.recip() + c.recip(), a.recip() + c.recip(), a.recip() + b.recip()]);
    assert!(!rep.stationary);
    let cube = CubicalSet::origin_box(&[a.clone(), a.clone(), a.clone()]);
    let rep = check_stationarity(&cube).unwrap();
    assert!(rep.stationary);
    assert!(rep.slices.iter().all(|s| s.first_var == Rat::int(2) / &a));
}

#[test]
fn not_symmetrized_is_rejected() {
    let x = CubicalSet::origin_box(&[Rat::new(1, 2), Rat::one()]).complement();
    assert_eq!(check_stationarity(&x), Err(VariationError::NotSymmetrized));
    assert!(reduce_to_special(&x).unwrap().log[0].kind == StepKind::Symmetrize);
}
