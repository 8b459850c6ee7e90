//! Classification of special subsets of `[0,1]^3`.
//!
//! A special set has at most one singular point per axis, so up to a cube
//! isometry it is one of seven parametrized families. Boxes, tubes and slabs
//! are compared with the isoperimetric profile; the other four families get an
//! explicit competitor of equal volume and smaller relative perimeter.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::enclosure::{Enclosure, Polynomial, RootError};
use crate::geometry::{AxisBox, CubicalSet, GeometryError, Side};
use crate::isometry::{permutations, CubeIsometry};
use crate::rat::Rat;
use crate::variation::{
    check_stationarity, improve_step, is_special, reduce_to_special, singular_points, SliceRef,
    StationarityReport, VariationError,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassifyError {
    NotSpecial,
    WrongDimension(usize),
    VolumeOutOfRange(Rat),
    /// A face or family pattern that a special set cannot have.
    Structural(&'static str),
    InvalidParameters(&'static str),
    NoCompetitor,
    /// The set is not contained in the designated face, or is empty or all of it.
    ImproperSubset,
    Geometry(GeometryError),
    Variation(VariationError),
    Root(RootError),
}

impl From<GeometryError> for ClassifyError {
    fn from(e: GeometryError) -> Self {
        ClassifyError::Geometry(e)
    }
}

impl From<VariationError> for ClassifyError {
    fn from(e: VariationError) -> Self {
        ClassifyError::Variation(e)
    }
}

impl From<RootError> for ClassifyError {
    fn from(e: RootError) -> Self {
        ClassifyError::Root(e)
    }
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::NotSpecial => f.write_str("set is not special"),
            ClassifyError::WrongDimension(n) => write!(f, "classification needs dimension 3, got {n}"),
            ClassifyError::VolumeOutOfRange(v) => write!(f, "volume {v} outside the admissible range"),
            ClassifyError::Structural(msg) => write!(f, "inconsistent special set: {msg}"),
            ClassifyError::InvalidParameters(msg) => write!(f, "invalid family parameters: {msg}"),
            ClassifyError::NoCompetitor => f.write_str("no better competitor exists for this family"),
            ClassifyError::ImproperSubset => f.write_str("subset is empty, not proper, or outside the face"),
            ClassifyError::Geometry(e) => write!(f, "{e}"),
            ClassifyError::Variation(e) => write!(f, "{e}"),
            ClassifyError::Root(e) => write!(f, "{e}"),
        }
    }
}

/// Shape of a face `X ∩ {x_i = ξ}` of a special set, in the two remaining
/// coordinates taken in increasing axis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaceForm {
    Empty,
    /// `[0,a] x [0,b]`.
    Rect(Rat, Rat),
    /// `([0,a] x [0,1]) ∪ ([0,1] x [0,b])`.
    LShape(Rat, Rat),
}

/// Classify the face at `ξ ∈ {0, 1}` perpendicular to `axis`.
pub fn face_form(x: &CubicalSet, axis: usize, xi: u8) -> Result<FaceForm, ClassifyError> {
    if x.dim() != 3 {
        return Err(ClassifyError::WrongDimension(x.dim()));
    }
    if !is_special(x) {
        return Err(ClassifyError::NotSpecial);
    }
    let face = match xi {
        0 => x.cross_section(axis, &Rat::zero(), Side::Above)?,
        1 => x.cross_section(axis, &Rat::one(), Side::Below)?,
        _ => return Err(ClassifyError::Structural("face position must be 0 or 1")),
    };
    if face.is_empty() {
        return if xi == 1 { Ok(FaceForm::Empty) } else { Err(ClassifyError::Structural("empty face at 0")) };
    }
    let boxes = face.boxes();
    let origin = |b: &AxisBox| b.lo().iter().all(Rat::is_zero);
    if boxes.len() == 1 && origin(&boxes[0]) {
        return Ok(FaceForm::Rect(boxes[0].hi()[0].clone(), boxes[0].hi()[1].clone()));
    }
    let p0 = face.interior_planes(0);
    let p1 = face.interior_planes(1);
    if p0.len() == 1 && p1.len() == 1 {
        let (a, b) = (p0[0].clone(), p1[0].clone());
        let l = CubicalSet::origin_box(&[a.clone(), Rat::one()]).union(&CubicalSet::origin_box(&[Rat::one(), b.clone()]))?;
        if l == face {
            return Ok(FaceForm::LShape(a, b));
        }
    }
    Err(ClassifyError::Structural("face is neither a rectangle nor an L-shape"))
}

/// The seven families of special subsets of `[0,1]^3`, in the orientation
/// where each set is anchored at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecialFamily {
    /// `[0,a] x [0,b] x [0,c]`.
    BoxI(Rat, Rat, Rat),
    /// `[0,a] x [0,b] x [0,1]`.
    TubeII(Rat, Rat),
    /// `[0,a] x [0,1]^2`.
    SlabIII(Rat),
    /// `([0,a] x [0,1]^2) ∪ ([0,1] x [0,b] x [0,1]) ∪ ([0,1]^2 x [0,c])`.
    TriSlabA(Rat, Rat, Rat),
    /// `L(a,b) x [0,c]` with `L(a,b) = ([0,a] x [0,1]) ∪ ([0,1] x [0,b])`.
    LPrismB(Rat, Rat, Rat),
    /// `([0,a] x [0,1]^2) ∪ ([0,1] x [0,b] x [0,c])`.
    SlabLegC(Rat, Rat, Rat),
    /// `([0,a] x [0,1] x [0,c]) ∪ ([0,1] x [0,b] x [0,c]) ∪ ([0,a] x [0,b] x [0,1])`.
    TripodD(Rat, Rat, Rat),
}

/// Family tags without parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    BoxI,
    TubeII,
    SlabIII,
    TriSlabA,
    LPrismB,
    SlabLegC,
    TripodD,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 7] = [
        FamilyKind::BoxI,
        FamilyKind::TubeII,
        FamilyKind::SlabIII,
        FamilyKind::TriSlabA,
        FamilyKind::LPrismB,
        FamilyKind::SlabLegC,
        FamilyKind::TripodD,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::BoxI => "box",
            FamilyKind::TubeII => "tube",
            FamilyKind::SlabIII => "slab",
            FamilyKind::TriSlabA => "tri-slab",
            FamilyKind::LPrismB => "l-prism",
            FamilyKind::SlabLegC => "slab-leg",
            FamilyKind::TripodD => "tripod",
        }
    }

    /// Build the family member whose singular point along axis `k` is `q[k]`
    /// (1 meaning none), if the pattern fits.
    fn from_points(self, q: &[Rat; 3]) -> Option<SpecialFamily> {
        let one = Rat::one();
        let [a, b, c] = q.clone();
        let fam = match self {
            FamilyKind::BoxI => SpecialFamily::BoxI(a, b, c),
            FamilyKind::TubeII if c == one => SpecialFamily::TubeII(a, b),
            FamilyKind::SlabIII if b == one && c == one => SpecialFamily::SlabIII(a),
            FamilyKind::TriSlabA => SpecialFamily::TriSlabA(a, b, c),
            FamilyKind::LPrismB => SpecialFamily::LPrismB(a, b, c),
            FamilyKind::SlabLegC => SpecialFamily::SlabLegC(a, b, c),
            FamilyKind::TripodD => SpecialFamily::TripodD(a, b, c),
            _ => return None,
        };
        fam.validate().ok().map(|_| fam)
    }
}

fn boxed(lo: [&Rat; 3], hi: [&Rat; 3]) -> AxisBox {
    AxisBox::new(lo.iter().map(|r| (*r).clone()).collect(), hi.iter().map(|r| (*r).clone()).collect())
        .expect("positive side lengths")
}

fn open_unit(x: &Rat) -> bool {
    x.is_positive() && *x < Rat::one()
}

impl SpecialFamily {
    pub fn kind(&self) -> FamilyKind {
        match self {
            SpecialFamily::BoxI(..) => FamilyKind::BoxI,
            SpecialFamily::TubeII(..) => FamilyKind::TubeII,
            SpecialFamily::SlabIII(..) => FamilyKind::SlabIII,
            SpecialFamily::TriSlabA(..) => FamilyKind::TriSlabA,
            SpecialFamily::LPrismB(..) => FamilyKind::LPrismB,
            SpecialFamily::SlabLegC(..) => FamilyKind::SlabLegC,
            SpecialFamily::TripodD(..) => FamilyKind::TripodD,
        }
    }

    /// `(a, b, c)`, padding with 1 for families with fewer parameters.
    pub fn params(&self) -> [Rat; 3] {
        let one = Rat::one();
        match self {
            SpecialFamily::SlabIII(a) => [a.clone(), one.clone(), one],
            SpecialFamily::TubeII(a, b) => [a.clone(), b.clone(), one],
            SpecialFamily::BoxI(a, b, c)
            | SpecialFamily::TriSlabA(a, b, c)
            | SpecialFamily::LPrismB(a, b, c)
            | SpecialFamily::SlabLegC(a, b, c)
            | SpecialFamily::TripodD(a, b, c) => [a.clone(), b.clone(), c.clone()],
        }
    }

    pub fn validate(&self) -> Result<(), ClassifyError> {
        let [a, b, c] = self.params();
        let ok = match self {
            SpecialFamily::SlabIII(_) => a.is_positive() && a <= Rat::one(),
            SpecialFamily::TubeII(..) => open_unit(&a) && open_unit(&b),
            SpecialFamily::LPrismB(..) => open_unit(&a) && open_unit(&b) && c.is_positive() && c <= Rat::one(),
            _ => open_unit(&a) && open_unit(&b) && open_unit(&c),
        };
        if ok {
            Ok(())
        } else {
            Err(ClassifyError::InvalidParameters("parameter outside the family range"))
        }
    }

    /// The exact set.
    pub fn realize(&self) -> Result<CubicalSet, ClassifyError> {
        self.validate()?;
        let [a, b, c] = self.params();
        let (z, o) = (Rat::zero(), Rat::one());
        let lo = [&z, &z, &z];
        let boxes = match self {
            SpecialFamily::BoxI(..) | SpecialFamily::TubeII(..) | SpecialFamily::SlabIII(..) => {
                vec![boxed(lo, [&a, &b, &c])]
            }
            SpecialFamily::TriSlabA(..) => {
                vec![boxed(lo, [&a, &o, &o]), boxed(lo, [&o, &b, &o]), boxed(lo, [&o, &o, &c])]
            }
            SpecialFamily::LPrismB(..) => vec![boxed(lo, [&a, &o, &c]), boxed(lo, [&o, &b, &c])],
            SpecialFamily::SlabLegC(..) => vec![boxed(lo, [&a, &o, &o]), boxed(lo, [&o, &b, &c])],
            SpecialFamily::TripodD(..) => {
                vec![boxed(lo, [&a, &o, &c]), boxed(lo, [&o, &b, &c]), boxed(lo, [&a, &b, &o])]
            }
        };
        Ok(CubicalSet::normalize(3, &boxes)?)
    }
}

/// Isometry permuting axes so that axis `k` goes to `perm[k]`.
fn axis_map(perm: &[usize]) -> CubeIsometry {
    CubeIsometry::new(perm.to_vec(), vec![false; perm.len()]).expect("valid permutation")
}

/// Family and parameters of a special set, with `g` such that
/// `g.apply(family.realize()) == x`.
pub fn special_family(x: &CubicalSet) -> Result<(SpecialFamily, CubeIsometry), ClassifyError> {
    if x.dim() != 3 {
        return Err(ClassifyError::WrongDimension(x.dim()));
    }
    if !is_special(x) {
        return Err(ClassifyError::NotSpecial);
    }
    let p: Vec<Rat> = (0..3)
        .map(|a| singular_points(x, a).into_iter().next().unwrap_or_else(Rat::one))
        .collect();
    for kind in FamilyKind::ALL {
        for perm in permutations(3) {
            let q = [p[perm[0]].clone(), p[perm[1]].clone(), p[perm[2]].clone()];
            let Some(fam) = kind.from_points(&q) else { continue };
            let g = axis_map(&perm);
            if g.apply(&fam.realize()?) == *x {
                return Ok((fam, g));
            }
        }
    }
    Err(ClassifyError::Structural("face pattern outside the seven families"))
}

/// Cube, tube and slab in three dimensions; square and strip in two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShapeKind {
    Cube,
    Tube,
    Slab,
    Square,
    Strip,
}

impl ShapeKind {
    pub fn name(self) -> &'static str {
        match self {
            ShapeKind::Cube => "cube",
            ShapeKind::Tube => "tube",
            ShapeKind::Slab => "slab",
            ShapeKind::Square => "square",
            ShapeKind::Strip => "strip",
        }
    }
}

/// Minimal relative perimeter at one volume and the shapes attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileEntry {
    pub volume: Rat,
    pub value: Enclosure,
    pub kinds: Vec<ShapeKind>,
}

/// Crossover volume of cube and tube, `(2/3)^6`.
pub fn v1() -> Rat {
    Rat::new(64, 729)
}

/// Crossover volume of tube and slab.
pub fn v2() -> Rat {
    Rat::new(1, 4)
}

fn check_volume(v: &Rat) -> Result<(), ClassifyError> {
    if v.is_positive() && *v <= Rat::new(1, 2) {
        Ok(())
    } else {
        Err(ClassifyError::VolumeOutOfRange(v.clone()))
    }
}

/// `3 V^{2/3}`.
pub fn cube_value(v: &Rat, bits: u32) -> Enclosure {
    Enclosure::nth_root(&v.pow(2), 3, bits).affine(&Rat::int(3), &Rat::zero())
}

/// `2 V^{1/2}`.
pub fn tube_value(v: &Rat, bits: u32) -> Enclosure {
    Enclosure::nth_root(v, 2, bits).affine(&Rat::int(2), &Rat::zero())
}

/// `min(3V^{2/3}, 2V^{1/2}, 1)` on `(0, 1/2]`. The argmin is decided by
/// comparing integer powers: cube vs tube is `729 V` vs `64`, tube vs slab is
/// `4 V` vs `1`, cube vs slab is `27 V^2` vs `1`.
pub fn profile(v: &Rat, bits: u32) -> Result<ProfileEntry, ClassifyError> {
    check_volume(v)?;
    let cube_tube = (Rat::int(729) * v).cmp(&Rat::int(64));
    let tube_slab = (Rat::int(4) * v).cmp(&Rat::one());
    let cube_slab = (Rat::int(27) * v.pow(2)).cmp(&Rat::one());
    // Less means the first shape is strictly better
    let mut kinds = Vec::new();
    if cube_tube != Ordering::Greater && cube_slab != Ordering::Greater {
        kinds.push(ShapeKind::Cube);
    }
    if cube_tube != Ordering::Less && tube_slab != Ordering::Greater {
        kinds.push(ShapeKind::Tube);
    }
    if cube_slab != Ordering::Less && tube_slab != Ordering::Less {
        kinds.push(ShapeKind::Slab);
    }
    let value = match kinds[0] {
        ShapeKind::Cube => cube_value(v, bits),
        ShapeKind::Tube => tube_value(v, bits),
        _ => Enclosure::exact(Rat::one()),
    };
    Ok(ProfileEntry { volume: v.clone(), value, kinds })
}

/// Two-dimensional profile `min(2 sqrt V, 1)`.
pub fn profile2d(v: &Rat, bits: u32) -> Result<ProfileEntry, ClassifyError> {
    check_volume(v)?;
    let (value, kinds) = match (Rat::int(4) * v).cmp(&Rat::one()) {
        Ordering::Less => (tube_value(v, bits), vec![ShapeKind::Square]),
        Ordering::Equal => (Enclosure::exact(Rat::one()), vec![ShapeKind::Square, ShapeKind::Strip]),
        Ordering::Greater => (Enclosure::exact(Rat::one()), vec![ShapeKind::Strip]),
    };
    Ok(ProfileEntry { volume: v.clone(), value, kinds })
}

/// Minimal relative perimeter (in `[0,1]^2`) of sets of area `v` inside the
/// strip `[0,a] x [0,1]`: `min(2 sqrt V, 1)` when `V <= a^2`, otherwise
/// `min(1, a + V/a)`.
pub fn strip_profile2d(a: &Rat, v: &Rat, bits: u32) -> Result<Enclosure, ClassifyError> {
    if !open_unit(a) {
        return Err(ClassifyError::InvalidParameters("strip width must lie in (0,1)"));
    }
    if !v.is_positive() || v > a {
        return Err(ClassifyError::VolumeOutOfRange(v.clone()));
    }
    if *v <= a.pow(2) {
        if Rat::int(4) * v < Rat::one() {
            Ok(tube_value(v, bits))
        } else {
            Ok(Enclosure::exact(Rat::one()))
        }
    } else {
        Ok(Enclosure::exact(Rat::one().min(a + &(v / a))))
    }
}

/// Set of equal volume and smaller relative perimeter, with exact deltas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Competitor {
    pub set: CubicalSet,
    pub construction: &'static str,
    pub delta_vol: Rat,
    pub delta_relper: Rat,
}

impl Competitor {
    fn against(x: &CubicalSet, set: CubicalSet, construction: &'static str) -> Competitor {
        let delta_vol = set.volume() - x.volume();
        let delta_relper = set.relative_perimeter() - x.relative_perimeter();
        Competitor { set, construction, delta_vol, delta_relper }
    }

    /// Same volume, strictly smaller relative perimeter.
    pub fn is_certificate(&self) -> bool {
        self.delta_vol.is_zero() && self.delta_relper.is_negative()
    }
}

/// A box, tube or slab of volume `v` with rational sides whose relative
/// perimeter is below `target`. Volumes above 1/2 use complements.
pub fn profile_competitor(v: &Rat, target: &Rat) -> Option<CubicalSet> {
    let one = Rat::one();
    if !v.is_positive() || *v >= one {
        return None;
    }
    if *v > Rat::new(1, 2) {
        return profile_competitor(&(&one - v), target).map(|s| s.complement());
    }
    let mut cands = vec![CubicalSet::origin_box(&[v.clone(), one.clone(), one.clone()])];
    for bits in [8u32, 16, 32, 64, 128] {
        let p = Enclosure::nth_root(v, 2, bits).midpoint();
        let q = v / &p;
        if p.is_positive() && p <= one && q.is_positive() && q <= one {
            cands.push(CubicalSet::origin_box(&[p, q, one.clone()]));
        }
        let p = Enclosure::nth_root(v, 3, bits).midpoint();
        let q = v / &p.pow(2);
        if p.is_positive() && p <= one && q.is_positive() && q <= one {
            cands.push(CubicalSet::origin_box(&[p.clone(), p, q]));
        }
        if cands.iter().any(|s| s.relative_perimeter() < *target) {
            break;
        }
    }
    cands
        .into_iter()
        .map(|s| (s.relative_perimeter(), s))
        .filter(|(rp, _)| rp < target)
        .min_by(|a, b| a.0.cmp(&b.0))
        .map(|(_, s)| s)
}

fn leg_rotation(a: &Rat, b: &Rat, c: &Rat) -> Option<CubicalSet> {
    // move the x3 leg above height c to the side x1 in [a, a+w]
    let one = Rat::one();
    let w = a * b * (&one - c) / ((&one - b) * c);
    let end = a + &w;
    if end > one {
        return None;
    }
    let z = Rat::zero();
    let boxes = [boxed([&z, &z, &z], [&end, &one, c]), boxed([&z, &z, &z], [&one, b, c])];
    CubicalSet::normalize(3, &boxes).ok()
}

/// Explicit better competitor for the four non-minimizing families.
pub fn competitor(family: &SpecialFamily) -> Result<Competitor, ClassifyError> {
    let x = family.realize()?;
    let v = x.volume();
    let [a, b, c] = family.params();
    let one = Rat::one();
    let mut tries: Vec<(CubicalSet, &'static str)> = Vec::new();
    match family {
        SpecialFamily::BoxI(..) | SpecialFamily::TubeII(..) | SpecialFamily::SlabIII(..) => {
            return Err(ClassifyError::NoCompetitor);
        }
        SpecialFamily::TriSlabA(..) => {
            tries.push((CubicalSet::origin_box(&[v.clone(), one.clone(), one.clone()]), "slab replacement"));
        }
        SpecialFamily::LPrismB(..) => {
            let w = &a + &b - &a * &b;
            if w < one {
                tries.push((CubicalSet::origin_box(&[w, one.clone(), c.clone()]), "strip substitution"));
            }
        }
        SpecialFamily::SlabLegC(..) => {
            let t = &a + &(&one - &a) * &b * &c;
            if t <= one {
                tries.push((CubicalSet::origin_box(&[t, one.clone(), one.clone()]), "leg folded into slab"));
            }
        }
        SpecialFamily::TripodD(..) => {
            let p = [a.clone(), b.clone(), c.clone()];
            for perm in permutations(3) {
                // tripod with parameters q is the image of x under the axis map perm^-1
                let q = [p[perm[0]].clone(), p[perm[1]].clone(), p[perm[2]].clone()];
                if let Some(set) = leg_rotation(&q[0], &q[1], &q[2]) {
                    tries.push((axis_map(&perm).apply(&set), "leg rotation"));
                }
            }
        }
    }
    let mut best: Option<Competitor> = None;
    for (set, name) in tries {
        let cand = Competitor::against(&x, set, name);
        if cand.is_certificate() && best.as_ref().map_or(true, |b| cand.delta_relper < b.delta_relper) {
            best = Some(cand);
        }
    }
    if let Some(best) = best {
        return Ok(best);
    }
    profile_competitor(&v, &x.relative_perimeter())
        .map(|s| Competitor::against(&x, s, "profile shape"))
        .ok_or(ClassifyError::NoCompetitor)
}

/// Parameters at which all first variations agree and the volume is `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StationaryPoint {
    pub a: Enclosure,
    pub b: Enclosure,
    pub c: Enclosure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stationarity {
    Solutions(Vec<StationaryPoint>),
    Infeasible { reason: &'static str },
}

fn symmetric(a: Enclosure) -> StationaryPoint {
    StationaryPoint { a: a.clone(), b: a.clone(), c: a }
}

/// `1 - a` forced on the slab-with-leg family by equal first variations once
/// `b = c`: `b (1 - b^2) / (1 + b^2)`, always below `1/2`.
pub fn slab_leg_forced_complement(b: &Rat) -> Rat {
    let b2 = b.pow(2);
    b * &(Rat::one() - &b2) / (Rat::one() + &b2)
}

/// Solve the stationarity equations of `family` at volume `v`.
pub fn stationary_parameters(family: FamilyKind, v: &Rat, bits: u32) -> Result<Stationarity, ClassifyError> {
    check_volume(v)?;
    let one = Rat::one();
    let exact_one = Enclosure::exact(one.clone());
    let sol = |p: StationaryPoint| Ok(Stationarity::Solutions(vec![p]));
    match family {
        FamilyKind::BoxI => sol(symmetric(Enclosure::nth_root(v, 3, bits))),
        FamilyKind::TubeII => {
            let a = Enclosure::nth_root(v, 2, bits);
            sol(StationaryPoint { a: a.clone(), b: a, c: exact_one })
        }
        FamilyKind::SlabIII => sol(StationaryPoint { a: Enclosure::exact(v.clone()), b: exact_one.clone(), c: exact_one }),
        FamilyKind::TriSlabA => {
            // 1 - (1-a)^3 = V
            let r = Enclosure::nth_root(&(&one - v), 3, bits);
            sol(symmetric(r.affine(&Rat::int(-1), &one)))
        }
        FamilyKind::TripodD => {
            // 3a^2 - 2a^3 = V, increasing on (0,1)
            let p = Polynomial::new(vec![-v.clone(), Rat::zero(), Rat::int(3), Rat::int(-2)]);
            sol(symmetric(p.root_in(&Rat::zero(), &one, bits)?))
        }
        FamilyKind::SlabLegC => Ok(Stationarity::Infeasible {
            reason: "equal first variations force b = c and a > 1/2, so the volume exceeds 1/2",
        }),
        FamilyKind::LPrismB => Ok(Stationarity::Solutions(l_prism_stationary(v, bits)?)),
    }
}

/// `a = b` from the two side slices. With `c = 1`, `2a - a^2 = V`. With
/// `c < 1`, `c = V/u` for `u = a(2-a)` and the top slice gives
/// `u^2 (1-a) - V u - 2V (1-a)^2 = 0` on `a > 1 - sqrt(1-V)`.
fn l_prism_stationary(v: &Rat, bits: u32) -> Result<Vec<StationaryPoint>, ClassifyError> {
    let one = Rat::one();
    let mut out = Vec::new();
    let a_full = Enclosure::nth_root(&(&one - v), 2, bits).affine(&Rat::int(-1), &one);
    out.push(StationaryPoint { a: a_full.clone(), b: a_full.clone(), c: Enclosure::exact(one.clone()) });

    let u = Polynomial::from_ints(&[0, 2, -1]);
    let om = Polynomial::from_ints(&[1, -1]);
    let q = u
        .mul(&u)
        .mul(&om)
        .add(&u.scale(&-v.clone()))
        .add(&om.mul(&om).scale(&(Rat::int(-2) * v)));
    let lo = a_full.hi().clone();
    let steps = 4096i64;
    let width = (&one - &lo) / Rat::int(steps);
    let mut prev = lo.clone();
    let mut prev_val = q.eval(&prev);
    for k in 1..=steps {
        let cur = &lo + &(&width * &Rat::int(k));
        let val = q.eval(&cur);
        if prev_val.signum() * val.signum() < 0 || (val.is_zero() && k < steps) {
            let a = q.root_in(&prev, &cur, bits)?;
            let c = a.map_monotone(false, |t| v / &(t * &(Rat::int(2) - t)));
            out.push(StationaryPoint { a: a.clone(), b: a, c });
        }
        prev = cur;
        prev_val = val;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    MinimizerCube,
    MinimizerTube,
    MinimizerSlab,
    NotMinimizer,
    /// Volume 0 or 1: relative perimeter 0.
    Trivial,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::MinimizerCube => "minimizer-cube",
            Verdict::MinimizerTube => "minimizer-tube",
            Verdict::MinimizerSlab => "minimizer-slab",
            Verdict::NotMinimizer => "not-minimizer",
            Verdict::Trivial => "trivial",
        }
    }

    fn of(kind: ShapeKind) -> Verdict {
        match kind {
            ShapeKind::Cube => Verdict::MinimizerCube,
            ShapeKind::Tube => Verdict::MinimizerTube,
            _ => Verdict::MinimizerSlab,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    /// Every minimizing kind at this volume; two entries at a tie.
    pub kinds: Vec<ShapeKind>,
    /// The set that was analysed (reduced and/or complemented input).
    pub analysed: CubicalSet,
    pub volume: Rat,
    pub relper: Rat,
    pub family: Option<(SpecialFamily, CubeIsometry)>,
    pub stationarity: Option<StationarityReport>,
    /// Certificate against the input set, for `NotMinimizer`.
    pub competitor: Option<Competitor>,
    pub notes: Vec<String>,
}

/// Verdict for a special subset of `[0,1]^3` with volume in `(0, 1/2]`.
pub fn classify_special(x: &CubicalSet, bits: u32) -> Result<ClassificationResult, ClassifyError> {
    if x.dim() != 3 {
        return Err(ClassifyError::WrongDimension(x.dim()));
    }
    let volume = x.volume();
    check_volume(&volume)?;
    let (family, g) = special_family(x)?;
    let report = check_stationarity(x)?;
    let relper = x.relative_perimeter();
    let mut result = ClassificationResult {
        verdict: Verdict::NotMinimizer,
        kinds: Vec::new(),
        analysed: x.clone(),
        volume: volume.clone(),
        relper: relper.clone(),
        family: Some((family.clone(), g.clone())),
        stationarity: None,
        competitor: None,
        notes: Vec::new(),
    };
    let shape = match family.kind() {
        FamilyKind::BoxI if report.stationary => Some(ShapeKind::Cube),
        FamilyKind::TubeII if report.stationary => Some(ShapeKind::Tube),
        FamilyKind::SlabIII => Some(ShapeKind::Slab),
        _ => None,
    };
    if let Some(kind) = shape {
        let pr = profile(&volume, bits)?;
        if pr.kinds.contains(&kind) {
            result.verdict = Verdict::of(kind);
            if pr.kinds.len() > 1 {
                result.notes.push(alloc::format!(
                    "tie: {} attain the profile value",
                    pr.kinds.iter().map(|k| k.name()).collect::<Vec<_>>().join(" and ")
                ));
            }
            result.kinds = pr.kinds;
        } else {
            let set = profile_competitor(&volume, &relper).ok_or(ClassifyError::NoCompetitor)?;
            result.competitor = Some(Competitor::against(x, set, "profile shape"));
        }
        result.stationarity = Some(report);
        return Ok(result);
    }
    let family_comp = match family.kind() {
        FamilyKind::BoxI | FamilyKind::TubeII => None,
        _ => competitor(&family).ok().map(|c| Competitor { set: g.apply(&c.set), ..c }),
    };
    let comp = match family_comp {
        Some(c) => c,
        None => {
            let (lo, hi) = report.extremes().ok_or(ClassifyError::Structural("no singular slices"))?;
            let step = improve_step(
                x,
                &SliceRef::new(lo.axis, lo.position.clone()),
                &SliceRef::new(hi.axis, hi.position.clone()),
            )?;
            Competitor::against(x, step.set, "first-variation step")
        }
    };
    result.competitor = Some(comp);
    result.stationarity = Some(report);
    Ok(result)
}

/// Classify any subset of `[0,1]^3`: volumes above 1/2 through the
/// complement, non-special sets after reduction.
pub fn classify(x: &CubicalSet, bits: u32) -> Result<ClassificationResult, ClassifyError> {
    if x.dim() != 3 {
        return Err(ClassifyError::WrongDimension(x.dim()));
    }
    let volume = x.volume();
    let relper = x.relative_perimeter();
    if volume.is_zero() || volume == Rat::one() {
        return Ok(ClassificationResult {
            verdict: Verdict::Trivial,
            kinds: Vec::new(),
            analysed: x.clone(),
            volume,
            relper,
            family: None,
            stationarity: None,
            competitor: None,
            notes: vec![String::from("volume 0 or 1 has relative perimeter 0")],
        });
    }
    if volume > Rat::new(1, 2) {
        let mut r = classify(&x.complement(), bits)?;
        r.notes.insert(0, String::from("classified through the complement"));
        if let Some(c) = r.competitor.take() {
            r.competitor = Some(Competitor::against(x, c.set.complement(), c.construction));
        }
        r.volume = volume;
        r.relper = relper;
        return Ok(r);
    }
    if is_special(x) {
        return classify_special(x, bits);
    }
    let reduced = reduce_to_special(x)?;
    let mut r = classify_special(&reduced.set, bits)?;
    r.notes.insert(0, alloc::format!("input not special; reduced in {} steps", reduced.log.len()));
    if reduced.set.relative_perimeter() < relper {
        r.verdict = Verdict::NotMinimizer;
        r.kinds.clear();
        r.competitor = Some(Competitor::against(x, reduced.set, "reduction"));
    } else if let Some(c) = r.competitor.take() {
        r.competitor = Some(Competitor::against(x, c.set, c.construction));
    }
    r.volume = volume;
    r.relper = relper;
    Ok(r)
}

/// Outcome of checking the strict inequalities that rule out a second
/// minimizer obtained by splitting the final slice of a cube, tube or slab.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub kind: ShapeKind,
    pub area: Rat,
    /// Relative perimeter of `T` in `[0,1]^2`.
    pub relper: Rat,
    /// `relper / area`, the first variation of `T`.
    pub ratio: Rat,
    /// First variation of the rest of the face.
    pub rest_first_var: Rat,
    /// `2/a` for the cube, `1/a` for the tube, `0` for the slab.
    pub threshold: Rat,
    /// The two-dimensional lower bound used for `relper`.
    pub bound: Enclosure,
    /// `relper` is at least the bound (certified).
    pub bound_holds: bool,
    /// `ratio > threshold`; for the slab, `ratio > 0 > rest_first_var`.
    pub strict: bool,
}

/// Audit a proper subset `T` of the face `{a} x F` of a cube, tube or slab
/// with side `a`, where `F` is `[0,a]^2`, `[0,a] x [0,1]` or `[0,1]^2`.
pub fn uniqueness_audit(kind: ShapeKind, a: &Rat, t: &CubicalSet, bits: u32) -> Result<AuditReport, ClassifyError> {
    if t.dim() != 2 {
        return Err(ClassifyError::WrongDimension(t.dim()));
    }
    let one = Rat::one();
    let (face, face_relper) = match kind {
        ShapeKind::Cube => (CubicalSet::origin_box(&[a.clone(), a.clone()]), Rat::int(2) * a),
        ShapeKind::Tube => (CubicalSet::origin_box(&[a.clone(), one.clone()]), one.clone()),
        ShapeKind::Slab => (CubicalSet::full(2), Rat::zero()),
        _ => return Err(ClassifyError::InvalidParameters("audit applies to cube, tube or slab")),
    };
    if !open_unit(a) && kind != ShapeKind::Slab {
        return Err(ClassifyError::InvalidParameters("side must lie in (0,1)"));
    }
    let area = t.volume();
    let face_area = face.volume();
    if area.is_zero() || area >= face_area || t.difference(&face)? != CubicalSet::empty(2) {
        return Err(ClassifyError::ImproperSubset);
    }
    let relper = t.relative_perimeter();
    let ratio = &relper / &area;
    let rest_first_var = (&face_relper - &relper) / (&face_area - &area);
    let bound = match kind {
        ShapeKind::Tube if area > a.pow(2) => Enclosure::exact(one.clone().min(a + &(&area / a))),
        _ if Rat::int(4) * &area < one => tube_value(&area, bits),
        _ => Enclosure::exact(one.clone()),
    };
    // relper >= 2 sqrt(A) is decided as relper^2 >= 4 A
    let bound_holds = if bound.is_exact() {
        relper >= *bound.lo()
    } else {
        relper.pow(2) >= Rat::int(4) * &area
    };
    let (threshold, strict) = match kind {
        ShapeKind::Cube => {
            let th = Rat::int(2) / a;
            let s = ratio > th;
            (th, s)
        }
        ShapeKind::Tube => {
            let th = a.recip();
            let s = ratio > th;
            (th, s)
        }
        _ => (Rat::zero(), ratio.is_positive() && rest_first_var.is_negative()),
    };
    Ok(AuditReport { kind, area, relper, ratio, rest_first_var, threshold, bound, bound_holds, strict })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn tie_volumes_are_exact() {
        let p1 = profile(&v1(), 64).unwrap();
        assert_eq!(p1.kinds, vec![ShapeKind::Cube, ShapeKind::Tube]);
        assert_eq!(p1.value, Enclosure::exact(r(16, 27)));
        let p2 = profile(&v2(), 64).unwrap();
        assert_eq!(p2.kinds, vec![ShapeKind::Tube, ShapeKind::Slab]);
        assert_eq!(p2.value, Enclosure::exact(Rat::one()));
        assert_eq!(profile(&r(1, 2), 64).unwrap().kinds, vec![ShapeKind::Slab]);
        assert!(profile(&r(3, 4), 64).is_err());
    }

    #[test]
    fn profile_in_two_dimensions() {
        assert_eq!(profile2d(&r(1, 4), 64).unwrap().kinds, vec![ShapeKind::Square, ShapeKind::Strip]);
        assert_eq!(profile2d(&r(1, 16), 64).unwrap().value, Enclosure::exact(r(1, 2)));
        assert_eq!(profile2d(&r(3, 10), 64).unwrap().value, Enclosure::exact(Rat::one()));
    }

    #[test]
    fn strip_profile_branches() {
        let e = strip_profile2d(&r(1, 2), &r(1, 8), 64).unwrap();
        assert!(e.lo().pow(2) < r(1, 2) && e.hi().pow(2) > r(1, 2));
        assert_eq!(strip_profile2d(&r(1, 2), &r(3, 8), 64).unwrap(), Enclosure::exact(Rat::one()));
        assert_eq!(strip_profile2d(&r(3, 4), &r(5, 8), 64).unwrap(), Enclosure::exact(Rat::one()));
        // V <= a^2 but a strip beats the square
        assert_eq!(strip_profile2d(&r(5, 6), &r(1, 2), 64).unwrap(), Enclosure::exact(Rat::one()));
        assert!(strip_profile2d(&r(1, 2), &r(3, 4), 64).is_err());
    }

    #[test]
    fn faces_of_cube_and_tri_slab() {
        let a = r(1, 3);
        let cube = CubicalSet::origin_box(&[a.clone(), a.clone(), a.clone()]);
        assert_eq!(face_form(&cube, 0, 0).unwrap(), FaceForm::Rect(a.clone(), a.clone()));
        assert_eq!(face_form(&cube, 0, 1).unwrap(), FaceForm::Empty);
        let x = SpecialFamily::TriSlabA(r(1, 5), r(1, 4), r(1, 3)).realize().unwrap();
        assert_eq!(face_form(&x, 0, 0).unwrap(), FaceForm::Rect(Rat::one(), Rat::one()));
        assert_eq!(face_form(&x, 0, 1).unwrap(), FaceForm::LShape(r(1, 4), r(1, 3)));
    }

    #[test]
    fn family_round_trip_through_isometry() {
        let fams = [
            SpecialFamily::BoxI(r(1, 2), r(1, 3), r(1, 4)),
            SpecialFamily::TubeII(r(1, 2), r(1, 3)),
            SpecialFamily::SlabIII(r(2, 5)),
            SpecialFamily::TriSlabA(r(1, 5), r(1, 4), r(1, 3)),
            SpecialFamily::LPrismB(r(1, 5), r(1, 4), r(1, 3)),
            SpecialFamily::LPrismB(r(1, 5), r(1, 4), Rat::one()),
            SpecialFamily::SlabLegC(r(1, 5), r(1, 4), r(1, 3)),
            SpecialFamily::TripodD(r(1, 5), r(1, 4), r(1, 3)),
        ];
        for fam in fams {
            let x = fam.realize().unwrap();
            let (found, g) = special_family(&x).unwrap();
            assert_eq!(found.kind(), fam.kind());
            assert_eq!(g.apply(&found.realize().unwrap()), x);
            let swapped = CubeIsometry::swap(3, 0, 2).apply(&x);
            let (f2, g2) = special_family(&swapped).unwrap();
            assert_eq!(f2.kind(), fam.kind());
            assert_eq!(g2.apply(&f2.realize().unwrap()), swapped);
        }
    }

    #[test]
    fn documented_competitor_deltas() {
        let c = competitor(&SpecialFamily::TripodD(r(3, 10), r(3, 10), r(3, 10))).unwrap();
        assert_eq!(c.delta_vol, Rat::zero());
        assert_eq!(c.delta_relper, r(-21, 100));
        let c = competitor(&SpecialFamily::TriSlabA(r(1, 5), r(1, 5), r(1, 5))).unwrap();
        assert_eq!(c.delta_relper, r(-23, 25));
        let (a, b) = (r(1, 4), r(1, 3));
        let c = competitor(&SpecialFamily::SlabLegC(a.clone(), b.clone(), b.clone())).unwrap();
        assert_eq!(c.delta_relper, b.pow(2) - Rat::int(2) * &b * (Rat::one() - &a));
        assert!(matches!(competitor(&SpecialFamily::SlabIII(r(1, 2))), Err(ClassifyError::NoCompetitor)));
    }

    #[test]
    fn l_prism_beyond_strip_substitution() {
        // a + b >= 1: the cross-section is already a 2D minimizer
        let fam = SpecialFamily::LPrismB(r(3, 4), r(3, 4), r(1, 2));
        let c = competitor(&fam).unwrap();
        assert!(c.is_certificate());
        assert_eq!(c.construction, "profile shape");
    }

    #[test]
    fn stationary_symmetric_solutions() {
        let s = stationary_parameters(FamilyKind::BoxI, &r(1, 8), 64).unwrap();
        assert_eq!(s, Stationarity::Solutions(vec![symmetric(Enclosure::exact(r(1, 2)))]));
        let Stationarity::Solutions(sol) = stationary_parameters(FamilyKind::TriSlabA, &r(1, 2), 64).unwrap() else {
            panic!("expected a solution")
        };
        let cubic = Polynomial::from_ints(&[-1, 6, -6, 2]);
        let root = cubic.root_in(&Rat::zero(), &r(3, 10), 64).unwrap();
        assert!(sol[0].a.lo() <= root.hi() && root.lo() <= sol[0].a.hi());
        assert!(matches!(
            stationary_parameters(FamilyKind::SlabLegC, &r(1, 4), 64).unwrap(),
            Stationarity::Infeasible { .. }
        ));
        let Stationarity::Solutions(d) = stationary_parameters(FamilyKind::TripodD, &r(1, 2), 64).unwrap() else {
            panic!("expected a solution")
        };
        assert_eq!(d[0].a, Enclosure::exact(r(1, 2)));
    }

    #[test]
    fn slab_leg_forced_parameter_exceeds_half() {
        for k in 1..20 {
            let b = r(k, 20);
            assert!(slab_leg_forced_complement(&b) < r(1, 2));
        }
    }

    #[test]
    fn classify_basic_shapes() {
        let slab = CubicalSet::origin_box(&[r(1, 2), Rat::one(), Rat::one()]);
        assert_eq!(classify(&slab, 64).unwrap().verdict, Verdict::MinimizerSlab);
        let tube = CubicalSet::origin_box(&[r(8, 27), r(8, 27), Rat::one()]);
        let res = classify(&tube, 64).unwrap();
        assert_eq!(res.verdict, Verdict::MinimizerTube);
        assert_eq!(res.kinds, vec![ShapeKind::Cube, ShapeKind::Tube]);
        let tripod = SpecialFamily::TripodD(r(1, 5), r(1, 5), r(1, 5)).realize().unwrap();
        let res = classify(&tripod, 64).unwrap();
        assert_eq!(res.verdict, Verdict::NotMinimizer);
        assert!(res.competitor.unwrap().is_certificate());
        let cube = CubicalSet::origin_box(&[r(1, 2), r(1, 2), r(1, 2)]);
        let res = classify(&cube, 64).unwrap();
        assert_eq!(res.verdict, Verdict::NotMinimizer);
        assert!(res.competitor.unwrap().is_certificate());
    }

    #[test]
    fn audit_examples() {
        let t = CubicalSet::origin_box(&[r(1, 4), r(1, 4)]);
        let rep = uniqueness_audit(ShapeKind::Cube, &r(1, 2), &t, 64).unwrap();
        assert_eq!(rep.ratio, Rat::int(8));
        assert!(rep.strict && rep.bound_holds);
        let t = CubicalSet::origin_box(&[r(1, 2), r(3, 4)]);
        let rep = uniqueness_audit(ShapeKind::Tube, &r(1, 2), &t, 64).unwrap();
        assert!(rep.strict && rep.bound_holds);
        let rep = uniqueness_audit(ShapeKind::Slab, &r(1, 2), &t, 64).unwrap();
        assert!(rep.strict);
        let full = CubicalSet::origin_box(&[r(1, 2), r(1, 2)]);
        assert!(uniqueness_audit(ShapeKind::Cube, &r(1, 2), &full, 64).is_err());
    }
}
