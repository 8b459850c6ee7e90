//! Singular slices, their first variation, and slice-translation moves.
//!
//! For a symmetrized set every interior singular slice `S` at `x_i = s` is the
//! difference `C(s-) \ C(s+)` of the cross-sections just below and above.
//! Translating `S` by `d` along `e_i` changes volume by `A d` and relative
//! perimeter by `P d` until the next event, where `P` is the signed boundary
//! measure of `S`: `+1` on edges facing the outside of `C(s-)`, `-1` on edges
//! facing `C(s+)`, `0` on the cube boundary.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::geometry::{CubicalSet, GeometryError};
use crate::grid::{flat, strides, Grid, Odometer};
use crate::rat::Rat;
use crate::symmetrize::{is_symmetrized, symmetrize_all};

/// One interior singular slice with its first-variation data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceData {
    pub axis: usize,
    pub position: Rat,
    /// The slice region, a set of dimension `n - 1`.
    pub region: CubicalSet,
    pub area: Rat,
    /// Boundary measure where `psi = +1`.
    pub plus: Rat,
    /// Boundary measure on the cube boundary, `psi = 0`.
    pub zero: Rat,
    /// Boundary measure where `psi = -1`.
    pub minus: Rat,
    /// `plus - minus`.
    pub signed_perimeter: Rat,
    /// `signed_perimeter / area`.
    pub first_var: Rat,
}

impl SliceData {
    pub fn boundary_measure(&self) -> Rat {
        &self.plus + &self.zero + &self.minus
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EventKind {
    SliceHits0,
    SliceHits1,
    SlicesCollide,
    SliceAreaChanges,
}

impl EventKind {
    pub fn name(self) -> &'static str {
        match self {
            EventKind::SliceHits0 => "slice-hits-0",
            EventKind::SliceHits1 => "slice-hits-1",
            EventKind::SlicesCollide => "slices-collide",
            EventKind::SliceAreaChanges => "slice-area-changes",
        }
    }
}

/// The first event met by a moving slice, at `distance` from the start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariationEvent {
    pub kind: EventKind,
    pub distance: Rat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

/// A slice named by axis and position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceRef {
    pub axis: usize,
    pub position: Rat,
}

impl SliceRef {
    pub fn new(axis: usize, position: Rat) -> Self {
        SliceRef { axis, position }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Symmetrize,
    Merge,
    Improve,
}

impl StepKind {
    pub fn name(self) -> &'static str {
        match self {
            StepKind::Symmetrize => "symmetrize",
            StepKind::Merge => "merge",
            StepKind::Improve => "improve",
        }
    }
}

/// One perturbation with exact bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub kind: StepKind,
    /// Moved slices, in the order they were moved.
    pub slices: Vec<SliceRef>,
    /// Signed displacement of each moved slice.
    pub displacements: Vec<Rat>,
    /// Volume carried from the shrinking slice to the growing one.
    pub transfer: Rat,
    /// The event that stopped the motion; `None` for small interior moves.
    pub event: Option<EventKind>,
    pub delta_relper: Rat,
    pub delta_vol: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub set: CubicalSet,
    pub record: StepRecord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VariationError {
    Geometry(GeometryError),
    NotSymmetrized,
    NotSingular { axis: usize, position: Rat },
    /// `merge_step` needs equal first variations.
    UnequalFirstVariation,
    /// `improve_step` needs distinct first variations.
    EqualFirstVariation,
    /// Both slices of a pair must be distinct, and ordered for `merge_step`.
    BadPair,
    BeyondHorizon(VariationEvent),
    /// No admissible small move found for a cross-direction pair.
    NoImprovement,
    EmptySet,
    IterationCap { cap: usize, log: Vec<StepRecord> },
}

impl From<GeometryError> for VariationError {
    fn from(e: GeometryError) -> Self {
        VariationError::Geometry(e)
    }
}

impl fmt::Display for VariationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VariationError::Geometry(e) => write!(f, "{e}"),
            VariationError::NotSymmetrized => f.write_str("set is not symmetrized"),
            VariationError::NotSingular { axis, position } => {
                write!(f, "{position} is not a singular point along axis {axis}")
            }
            VariationError::UnequalFirstVariation => {
                f.write_str("first variations differ; use an improving step")
            }
            VariationError::EqualFirstVariation => {
                f.write_str("first variations are equal; use a merging step")
            }
            VariationError::BadPair => f.write_str("invalid slice pair"),
            VariationError::BeyondHorizon(ev) => {
                write!(f, "displacement reaches event {} at distance {}", ev.kind.name(), ev.distance)
            }
            VariationError::NoImprovement => f.write_str("no improving small move found"),
            VariationError::EmptySet => f.write_str("set is empty"),
            VariationError::IterationCap { cap, log } => {
                write!(f, "reduction exceeded {cap} steps ({} logged)", log.len())
            }
        }
    }
}

/// Interior positions along `axis` where the cross-section changes.
pub fn singular_points(x: &CubicalSet, axis: usize) -> Vec<Rat> {
    x.interior_planes(axis)
}

/// Slice data without the symmetrization check.
fn slice_data(x: &CubicalSet, axis: usize, s: &Rat) -> Result<SliceData, VariationError> {
    if axis >= x.dim() {
        return Err(GeometryError::AxisOutOfRange { axis, dim: x.dim() }.into());
    }
    let g = Grid::of_set(x);
    let k = match g.coords[axis].binary_search(s) {
        Ok(k) if k > 0 && k + 1 < g.coords[axis].len() => k,
        _ => return Err(VariationError::NotSingular { axis, position: s.clone() }),
    };
    let below = g.layer(axis, k - 1);
    let above = g.layer(axis, k);
    let in_s: Vec<bool> = below.occ.iter().zip(&above.occ).map(|(b, a)| *b && !*a).collect();
    let shape = below.shape();
    let st = strides(&shape);
    let (mut plus, mut zero, mut minus) = (Rat::zero(), Rat::zero(), Rat::zero());
    for j in 0..shape.len() {
        let mut sub_shape = shape.clone();
        sub_shape.remove(j);
        for p in 0..=shape[j] {
            for sub in Odometer::full(&sub_shape) {
                let cell = |q: usize| {
                    let mut idx = sub.clone();
                    idx.insert(j, q);
                    flat(&st, &idx)
                };
                let m = below.facet_measure(j, &sub);
                if p == 0 || p == shape[j] {
                    if in_s[cell(if p == 0 { 0 } else { p - 1 })] {
                        zero += m;
                    }
                    continue;
                }
                let (l, r) = (cell(p - 1), cell(p));
                if in_s[l] == in_s[r] {
                    continue;
                }
                let other = if in_s[l] { r } else { l };
                if above.occ[other] {
                    minus += m;
                } else {
                    plus += m;
                }
            }
        }
    }
    let region = Grid { coords: below.coords.clone(), occ: in_s }.into_set();
    let area = region.volume();
    if !area.is_positive() {
        return Err(VariationError::NotSingular { axis, position: s.clone() });
    }
    let signed_perimeter = &plus - &minus;
    let first_var = &signed_perimeter / &area;
    Ok(SliceData { axis, position: s.clone(), region, area, plus, zero, minus, signed_perimeter, first_var })
}

/// The slice at `(axis, s)` of a symmetrized set with its sign
/// classification and first variation.
pub fn classify_psi(x: &CubicalSet, axis: usize, s: &Rat) -> Result<SliceData, VariationError> {
    if !is_symmetrized(x) {
        return Err(VariationError::NotSymmetrized);
    }
    slice_data(x, axis, s)
}

/// Distance the slice at `s` can move in `dir` before its piecewise-linear
/// regime ends: the next singular point, or the cube wall.
pub fn event_horizon(x: &CubicalSet, axis: usize, s: &Rat, dir: Direction) -> VariationEvent {
    let pts = singular_points(x, axis);
    match dir {
        Direction::Up => match pts.iter().find(|p| *p > s) {
            Some(p) => VariationEvent { kind: EventKind::SliceAreaChanges, distance: p - s },
            None => VariationEvent { kind: EventKind::SliceHits1, distance: Rat::one() - s },
        },
        Direction::Down => match pts.iter().rev().find(|p| *p < s) {
            Some(p) => VariationEvent { kind: EventKind::SliceAreaChanges, distance: s - p },
            None => VariationEvent { kind: EventKind::SliceHits0, distance: s.clone() },
        },
    }
}

/// Event for two slices on the same axis moving toward each other at
/// speeds `u` (lower slice) and `w` (upper slice).
pub fn collision_event(s1: &Rat, s2: &Rat, u: &Rat, w: &Rat) -> VariationEvent {
    VariationEvent { kind: EventKind::SlicesCollide, distance: (s2 - s1) / (u + w) }
}

/// Add (`d > 0`) or remove (`d < 0`) the slab over `region` between `s` and
/// `s + d`, without any horizon check.
fn shift(x: &CubicalSet, axis: usize, s: &Rat, region: &CubicalSet, d: &Rat) -> Result<CubicalSet, VariationError> {
    if d.is_zero() {
        return Ok(x.clone());
    }
    let end = s + d;
    if d.is_positive() {
        Ok(x.union(&region.extrude(axis, s, &end)?)?)
    } else {
        Ok(x.difference(&region.extrude(axis, &end, s)?)?)
    }
}

/// Move the singular slice at `(axis, s)` by `d`, strictly inside its event
/// horizon.
pub fn translate_slice(x: &CubicalSet, axis: usize, s: &Rat, d: &Rat) -> Result<CubicalSet, VariationError> {
    let data = classify_psi(x, axis, s)?;
    if d.is_zero() {
        return Ok(x.clone());
    }
    let dir = if d.is_positive() { Direction::Up } else { Direction::Down };
    let ev = event_horizon(x, axis, s, dir);
    if d.abs() >= ev.distance {
        return Err(VariationError::BeyondHorizon(ev));
    }
    shift(x, axis, s, &data.region, d)
}

fn finish(x: &CubicalSet, set: CubicalSet, mut record: StepRecord) -> Step {
    record.delta_relper = set.relative_perimeter() - x.relative_perimeter();
    record.delta_vol = set.volume() - x.volume();
    Step { set, record }
}

/// Opposed motion on one axis: `grow` moves up, `shrink` moves down, volume
/// flowing from one to the other at equal rates, until the first event.
fn paired_same_axis(x: &CubicalSet, grow: &SliceData, shrink: &SliceData, kind: StepKind) -> Result<Step, VariationError> {
    let axis = grow.axis;
    let up = event_horizon(x, axis, &grow.position, Direction::Up);
    let down = event_horizon(x, axis, &shrink.position, Direction::Down);
    let mut best = (&grow.area * &up.distance, up.kind);
    let t_down = &shrink.area * &down.distance;
    if t_down < best.0 {
        best = (t_down, down.kind);
    }
    if grow.position < shrink.position {
        let between = singular_points(x, axis)
            .iter()
            .any(|p| *p > grow.position && *p < shrink.position);
        if !between {
            let ev = collision_event(&grow.position, &shrink.position, &grow.area.recip(), &shrink.area.recip());
            best = (ev.distance, EventKind::SlicesCollide);
        }
    }
    let (t, event) = best;
    let sigma = &t / &grow.area;
    let tau = &t / &shrink.area;
    let y = shift(x, axis, &grow.position, &grow.region, &sigma)?;
    let y = shift(&y, axis, &shrink.position, &shrink.region, &-tau.clone())?;
    let record = StepRecord {
        kind,
        slices: vec![
            SliceRef::new(axis, grow.position.clone()),
            SliceRef::new(axis, shrink.position.clone()),
        ],
        displacements: vec![sigma, -tau],
        transfer: t,
        event: Some(event),
        delta_relper: Rat::zero(),
        delta_vol: Rat::zero(),
    };
    Ok(finish(x, y, record))
}

/// Move the slices at `s1 < s2` on `axis`, which have equal first variation,
/// toward each other with volume-balanced speeds until the first event.
/// Volume and relative perimeter are unchanged and the number of singular
/// points along `axis` drops.
pub fn merge_step(x: &CubicalSet, axis: usize, s1: &Rat, s2: &Rat) -> Result<Step, VariationError> {
    if s1 >= s2 {
        return Err(VariationError::BadPair);
    }
    let a = classify_psi(x, axis, s1)?;
    let b = slice_data(x, axis, s2)?;
    if a.first_var != b.first_var {
        return Err(VariationError::UnequalFirstVariation);
    }
    paired_same_axis(x, &a, &b, StepKind::Merge)
}

/// Grow the slice with smaller first variation and shrink the other by the
/// same volume. On one axis the motion runs to the first event; across axes
/// a small move is chosen and its strict perimeter decrease verified exactly.
pub fn improve_step(x: &CubicalSet, first: &SliceRef, second: &SliceRef) -> Result<Step, VariationError> {
    if first == second {
        return Err(VariationError::BadPair);
    }
    let a = classify_psi(x, first.axis, &first.position)?;
    let b = slice_data(x, second.axis, &second.position)?;
    if a.first_var == b.first_var {
        return Err(VariationError::EqualFirstVariation);
    }
    let (grow, shrink) = if a.first_var < b.first_var { (a, b) } else { (b, a) };
    if grow.axis == shrink.axis {
        return paired_same_axis(x, &grow, &shrink, StepKind::Improve);
    }
    improve_cross_axis(x, &grow, &shrink)
}

fn improve_cross_axis(x: &CubicalSet, grow: &SliceData, shrink: &SliceData) -> Result<Step, VariationError> {
    let up = event_horizon(x, grow.axis, &grow.position, Direction::Up);
    let down = event_horizon(x, shrink.axis, &shrink.position, Direction::Down);
    let mut t = (&grow.area * &up.distance).min(&shrink.area * &down.distance) / Rat::int(2);
    let (relper, vol) = (x.relative_perimeter(), x.volume());
    let half = Rat::new(1, 2);
    for _ in 0..64 {
        if let Some(step) = try_cross_move(x, grow, shrink, &t, &relper, &vol)? {
            return Ok(step);
        }
        t = &t * &half;
    }
    Err(VariationError::NoImprovement)
}

fn try_cross_move(
    x: &CubicalSet,
    grow: &SliceData,
    shrink: &SliceData,
    t: &Rat,
    relper: &Rat,
    vol: &Rat,
) -> Result<Option<Step>, VariationError> {
    let sigma = t / &grow.area;
    let y = shift(x, grow.axis, &grow.position, &grow.region, &sigma)?;
    // the second slice is re-derived on the moved set, which absorbs the
    // interaction of the two moves into its area
    let Ok(moved) = slice_data(&y, shrink.axis, &shrink.position) else {
        return Ok(None);
    };
    let tau = t / &moved.area;
    let ev = event_horizon(&y, shrink.axis, &shrink.position, Direction::Down);
    if tau >= ev.distance {
        return Ok(None);
    }
    let z = shift(&y, shrink.axis, &shrink.position, &moved.region, &-tau.clone())?;
    if z.volume() != *vol || z.relative_perimeter() >= *relper || !is_symmetrized(&z) {
        return Ok(None);
    }
    let record = StepRecord {
        kind: StepKind::Improve,
        slices: vec![
            SliceRef::new(grow.axis, grow.position.clone()),
            SliceRef::new(shrink.axis, shrink.position.clone()),
        ],
        displacements: vec![sigma, -tau],
        transfer: t.clone(),
        event: None,
        delta_relper: Rat::zero(),
        delta_vol: Rat::zero(),
    };
    Ok(Some(finish(x, z, record)))
}

/// Every interior singular slice with its first variation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StationarityReport {
    pub slices: Vec<SliceData>,
    /// All first variations equal (vacuously true with fewer than two slices).
    pub stationary: bool,
}

impl StationarityReport {
    /// Slices with the smallest and largest first variation, first occurrence.
    pub fn extremes(&self) -> Option<(&SliceData, &SliceData)> {
        let lo = self.slices.iter().min_by(|a, b| a.first_var.cmp(&b.first_var))?;
        let hi = self.slices.iter().max_by(|a, b| a.first_var.cmp(&b.first_var).then(core::cmp::Ordering::Greater))?;
        Some((lo, hi))
    }
}

pub fn check_stationarity(x: &CubicalSet) -> Result<StationarityReport, VariationError> {
    if !is_symmetrized(x) {
        return Err(VariationError::NotSymmetrized);
    }
    let mut slices = Vec::new();
    for axis in 0..x.dim() {
        for s in singular_points(x, axis) {
            slices.push(slice_data(x, axis, &s)?);
        }
    }
    let stationary = slices.windows(2).all(|w| w[0].first_var == w[1].first_var);
    Ok(StationarityReport { slices, stationary })
}

/// Symmetrized, nonempty (so it contains a corner cube at the origin), and
/// at most one interior singular point along each axis.
pub fn is_special(x: &CubicalSet) -> bool {
    !x.is_empty() && (0..x.dim()).all(|a| singular_points(x, a).len() <= 1) && is_symmetrized(x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub set: CubicalSet,
    pub log: Vec<StepRecord>,
}

/// Symmetrize, then merge or improve slice pairs until at most one singular
/// point remains along each axis.
pub fn reduce_to_special(x: &CubicalSet) -> Result<Reduction, VariationError> {
    if x.is_empty() {
        return Err(VariationError::EmptySet);
    }
    let mut log = Vec::new();
    let mut cur = symmetrize_all(x).map_err(|_| VariationError::NotSymmetrized)?;
    if cur != *x {
        log.push(StepRecord {
            kind: StepKind::Symmetrize,
            slices: Vec::new(),
            displacements: Vec::new(),
            transfer: Rat::zero(),
            event: None,
            delta_relper: cur.relative_perimeter() - x.relative_perimeter(),
            delta_vol: cur.volume() - x.volume(),
        });
    }
    let cap = 16 * (x.total_singular_count().max(cur.total_singular_count()) + x.dim());
    let mut steps = 0;
    loop {
        let crowded: Vec<usize> = (0..cur.dim()).filter(|&a| singular_points(&cur, a).len() >= 2).collect();
        let Some(&first_axis) = crowded.first() else {
            return Ok(Reduction { set: cur, log });
        };
        if steps >= cap {
            return Err(VariationError::IterationCap { cap, log });
        }
        steps += 1;
        let mut equal_pair = None;
        'search: for &axis in &crowded {
            let slices: Vec<SliceData> = singular_points(&cur, axis)
                .iter()
                .map(|s| slice_data(&cur, axis, s))
                .collect::<Result<_, _>>()?;
            for i in 0..slices.len() {
                for j in i + 1..slices.len() {
                    if slices[i].first_var == slices[j].first_var {
                        equal_pair = Some((axis, slices[i].position.clone(), slices[j].position.clone()));
                        break 'search;
                    }
                }
            }
        }
        let step = match equal_pair {
            Some((axis, s1, s2)) => merge_step(&cur, axis, &s1, &s2)?,
            None => {
                let slices: Vec<SliceData> = singular_points(&cur, first_axis)
                    .iter()
                    .map(|s| slice_data(&cur, first_axis, s))
                    .collect::<Result<_, _>>()?;
                let lo = slices.iter().min_by(|a, b| a.first_var.cmp(&b.first_var)).expect("two slices");
                let hi = slices.iter().max_by(|a, b| a.first_var.cmp(&b.first_var)).expect("two slices");
                improve_step(
                    &cur,
                    &SliceRef::new(first_axis, lo.position.clone()),
                    &SliceRef::new(first_axis, hi.position.clone()),
                )?
            }
        };
        log.push(step.record);
        cur = step.set;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::AxisBox;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn cube(a: Rat) -> CubicalSet {
        CubicalSet::origin_box(&[a.clone(), a.clone(), a])
    }

    #[test]
    fn box_face_first_variation() {
        let (a, b, c) = (r(1, 3), r(1, 2), r(2, 5));
        let x = CubicalSet::origin_box(&[a.clone(), b.clone(), c.clone()]);
        let d = classify_psi(&x, 2, &c).unwrap();
        assert_eq!(d.area, &a * &b);
        assert_eq!(d.plus, &a + &b);
        assert_eq!(d.minus, Rat::zero());
        assert_eq!(d.zero, &a + &b);
        assert_eq!(d.first_var, (&a + &b) / (&a * &b));
    }

    #[test]
    fn singular_points_of_cube() {
        let a = r(2, 5);
        assert_eq!(singular_points(&cube(a.clone()), 0), vec![a]);
        assert!(singular_points(&CubicalSet::full(3), 1).is_empty());
    }

    #[test]
    fn cube_translation_matches_first_variation() {
        let a = r(1, 2);
        let x = cube(a.clone());
        let d = r(1, 10);
        let y = translate_slice(&x, 2, &a, &d).unwrap();
        assert_eq!(y, CubicalSet::origin_box(&[a.clone(), a.clone(), &a + &d]));
        assert_eq!(y.relative_perimeter() - x.relative_perimeter(), Rat::int(2) * &a * &d);
        assert_eq!(translate_slice(&x, 2, &a, &Rat::zero()).unwrap(), x);
        assert!(matches!(
            translate_slice(&x, 2, &a, &a),
            Err(VariationError::BeyondHorizon(VariationEvent { kind: EventKind::SliceHits1, .. }))
        ));
    }

    #[test]
    fn horizon_kinds() {
        let a = r(1, 3);
        let x = cube(a.clone());
        assert_eq!(
            event_horizon(&x, 0, &a, Direction::Up),
            VariationEvent { kind: EventKind::SliceHits1, distance: r(2, 3) }
        );
        // three-step staircase along axis 0
        let steps = [(r(1, 4), Rat::one()), (r(1, 2), r(1, 2)), (r(3, 4), r(1, 4))];
        let boxes: Vec<AxisBox> = steps
            .iter()
            .map(|(w, h)| AxisBox::origin(&[w.clone(), h.clone()]).unwrap())
            .collect();
        let st = CubicalSet::normalize(2, &boxes).unwrap();
        assert_eq!(
            event_horizon(&st, 0, &r(1, 2), Direction::Up),
            VariationEvent { kind: EventKind::SliceAreaChanges, distance: r(1, 4) }
        );
        assert_eq!(
            event_horizon(&st, 0, &r(1, 4), Direction::Down),
            VariationEvent { kind: EventKind::SliceHits0, distance: r(1, 4) }
        );
    }

    #[test]
    fn stationarity_of_cube_and_tube() {
        let rep = check_stationarity(&cube(r(1, 4))).unwrap();
        assert_eq!(rep.slices.len(), 3);
        assert!(rep.stationary);
        assert!(rep.slices.iter().all(|s| s.first_var == Rat::int(8)));
        let tube = CubicalSet::origin_box(&[r(1, 3), r(1, 2), Rat::one()]);
        assert!(!check_stationarity(&tube).unwrap().stationary);
    }

    #[test]
    fn merge_symmetric_staircase() {
        // the two lower steps both have first variation 0
        let boxes = [
            AxisBox::origin(&[r(1, 4), r(7, 8)]).unwrap(),
            AxisBox::origin(&[r(1, 2), r(1, 2)]).unwrap(),
            AxisBox::origin(&[r(3, 4), r(1, 4)]).unwrap(),
        ];
        let x = CubicalSet::normalize(2, &boxes).unwrap();
        let pts = singular_points(&x, 0);
        assert_eq!(pts.len(), 3);
        let step = merge_step(&x, 0, &pts[0], &pts[1]).unwrap();
        assert_eq!(step.record.delta_vol, Rat::zero());
        assert_eq!(step.record.delta_relper, Rat::zero());
        assert_eq!(singular_points(&step.set, 0).len(), 2);
        assert!(matches!(merge_step(&x, 0, &pts[1], &pts[2]), Err(VariationError::UnequalFirstVariation)));
    }

    #[test]
    fn improve_reduces_staircase() {
        let boxes = [
            AxisBox::origin(&[r(1, 5), r(4, 5)]).unwrap(),
            AxisBox::origin(&[r(3, 5), r(1, 5)]).unwrap(),
        ];
        let x = CubicalSet::normalize(2, &boxes).unwrap();
        let pts = singular_points(&x, 0);
        let step = improve_step(&x, &SliceRef::new(0, pts[0].clone()), &SliceRef::new(0, pts[1].clone())).unwrap();
        assert_eq!(step.record.delta_vol, Rat::zero());
        assert!(step.record.delta_relper.is_negative());
    }

    #[test]
    fn reduction_of_special_set_is_identity() {
        let x = CubicalSet::origin_box(&[r(1, 3), r(1, 3), Rat::one()]);
        let red = reduce_to_special(&x).unwrap();
        assert_eq!(red.set, x);
        assert!(red.log.is_empty());
        assert!(is_special(&red.set));
    }
}
