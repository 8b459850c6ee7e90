//! Cubical subsets of the unit cube as canonical unions of axis-aligned boxes.
//!
//! A [`CubicalSet`] is a closed union of full-dimensional boxes in `[0,1]^n`.
//! Sets that agree up to measure zero have the same canonical box list, so
//! equality of sets is equality of values.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::grid::{flat, Grid, Odometer};
use crate::rat::Rat;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometryError {
    DimensionMismatch { expected: usize, found: usize },
    UnsupportedDimension(usize),
    /// A box with `lo >= hi` along some axis.
    DegenerateBox { axis: usize },
    OutsideUnitCube { axis: usize, value: Rat },
    AxisOutOfRange { axis: usize, dim: usize },
    /// Requested a one-sided limit that does not exist (below 0 or above 1).
    Domain(&'static str),
    /// A coordinate that is not an integer multiple of `1/res`.
    Alignment { box_index: usize, axis: usize, value: Rat, res: usize },
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            GeometryError::UnsupportedDimension(n) => {
                write!(f, "dimension {n} outside supported range 1..={MAX_DIM}")
            }
            GeometryError::DegenerateBox { axis } => write!(f, "degenerate box along axis {axis}"),
            GeometryError::OutsideUnitCube { axis, value } => {
                write!(f, "coordinate {value} on axis {axis} outside [0,1]")
            }
            GeometryError::AxisOutOfRange { axis, dim } => {
                write!(f, "axis {axis} out of range for dimension {dim}")
            }
            GeometryError::Domain(msg) => write!(f, "domain error: {msg}"),
            GeometryError::Alignment { box_index, axis, value, res } => write!(
                f,
                "box {box_index}: coordinate {value} on axis {axis} is not a multiple of 1/{res}"
            ),
        }
    }
}

/// A closed axis-aligned box `prod [lo_i, hi_i]` with `lo_i < hi_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AxisBox {
    lo: Vec<Rat>,
    hi: Vec<Rat>,
}

impl AxisBox {
    pub fn new(lo: Vec<Rat>, hi: Vec<Rat>) -> Result<Self, GeometryError> {
        if lo.len() != hi.len() {
            return Err(GeometryError::DimensionMismatch { expected: lo.len(), found: hi.len() });
        }
        if let Some(axis) = lo.iter().zip(&hi).position(|(l, h)| l >= h) {
            return Err(GeometryError::DegenerateBox { axis });
        }
        Ok(AxisBox { lo, hi })
    }

    pub(crate) fn new_unchecked(lo: Vec<Rat>, hi: Vec<Rat>) -> Self {
        AxisBox { lo, hi }
    }

    /// `[0, s_1] x ... x [0, s_n]`.
    pub fn origin(sides: &[Rat]) -> Result<Self, GeometryError> {
        AxisBox::new(vec![Rat::zero(); sides.len()], sides.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[Rat] {
        &self.lo
    }

    pub fn hi(&self) -> &[Rat] {
        &self.hi
    }

    pub fn volume(&self) -> Rat {
        self.lo.iter().zip(&self.hi).map(|(l, h)| h - l).fold(Rat::one(), |a, b| a * b)
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        p.iter().zip(self.lo.iter().zip(&self.hi)).all(|(x, (l, h))| l <= x && x <= h)
    }
}

/// A flat piece of the relative boundary perpendicular to `axis`;
/// `lo[axis] == hi[axis]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub axis: usize,
    pub lo: Vec<Rat>,
    pub hi: Vec<Rat>,
    /// The set lies on the low side of the facet.
    pub occupied_below: bool,
}

/// Which one-sided limit of a cross-section to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Below,
    Above,
}

/// A cubical subset of `[0,1]^n` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubicalSet {
    dim: usize,
    boxes: Vec<AxisBox>,
}

fn check_axis(dim: usize, axis: usize) -> Result<(), GeometryError> {
    if axis >= dim {
        Err(GeometryError::AxisOutOfRange { axis, dim })
    } else {
        Ok(())
    }
}

impl CubicalSet {
    /// Canonical disjoint decomposition of the union of `boxes`.
    pub fn normalize(dim: usize, boxes: &[AxisBox]) -> Result<Self, GeometryError> {
        if dim > MAX_DIM {
            return Err(GeometryError::UnsupportedDimension(dim));
        }
        for b in boxes {
            if b.dim() != dim {
                return Err(GeometryError::DimensionMismatch { expected: dim, found: b.dim() });
            }
            for axis in 0..dim {
                for v in [&b.lo[axis], &b.hi[axis]] {
                    if v.is_negative() || *v > Rat::one() {
                        return Err(GeometryError::OutsideUnitCube { axis, value: v.clone() });
                    }
                }
            }
        }
        Ok(Grid::rasterize(Grid::coords_of(dim, boxes), boxes).into_set())
    }

    pub(crate) fn from_canonical(dim: usize, boxes: Vec<AxisBox>) -> Self {
        CubicalSet { dim, boxes }
    }

    pub fn empty(dim: usize) -> Self {
        CubicalSet { dim, boxes: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        CubicalSet { dim, boxes: vec![AxisBox::new_unchecked(vec![Rat::zero(); dim], vec![Rat::one(); dim])] }
    }

    /// The box `[0,s_1] x ... x [0,s_n]` as a set. Panics on sides outside `(0,1]`.
    pub fn origin_box(sides: &[Rat]) -> Self {
        CubicalSet::normalize(sides.len(), &[AxisBox::origin(sides).expect("positive sides")])
            .expect("sides within the unit cube")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn boxes(&self) -> &[AxisBox] {
        &self.boxes
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        self.boxes.iter().any(|b| b.contains(p))
    }

    pub fn volume(&self) -> Rat {
        self.boxes.iter().map(AxisBox::volume).sum()
    }

    /// Boundary measure of the set, excluding the part on the boundary of the
    /// unit cube.
    pub fn relative_perimeter(&self) -> Rat {
        Grid::of_set(self).relative_perimeter()
    }

    /// The relative boundary as axis-aligned facets of the minimal grid.
    pub fn boundary_facets(&self) -> Vec<Facet> {
        let g = Grid::of_set(self);
        g.boundary_facets()
            .into_iter()
            .map(|(axis, k, sub, occupied_below)| {
                let mut lo = Vec::with_capacity(self.dim);
                let mut hi = Vec::with_capacity(self.dim);
                let mut j = 0;
                for a in 0..self.dim {
                    if a == axis {
                        lo.push(g.coords[a][k].clone());
                        hi.push(g.coords[a][k].clone());
                    } else {
                        lo.push(g.coords[a][sub[j]].clone());
                        hi.push(g.coords[a][sub[j] + 1].clone());
                        j += 1;
                    }
                }
                Facet { axis, lo, hi, occupied_below }
            })
            .collect()
    }

    /// Per-axis sorted coordinates of the minimal grid, including 0 and 1.
    pub fn grid_coords(&self) -> Vec<Vec<Rat>> {
        Grid::coords_of(self.dim, &self.boxes)
    }

    /// Interior coordinates along `axis` across which the cross-section
    /// changes. For a canonical set these are exactly the grid coordinates.
    pub fn interior_planes(&self, axis: usize) -> Vec<Rat> {
        let mut c = Grid::coords_of(self.dim, &self.boxes).swap_remove(axis);
        c.retain(|x| x.is_positive() && *x < Rat::one());
        c
    }

    /// The one-sided limit cross-section at `x_axis = s`, as a set of
    /// dimension `n - 1`.
    pub fn cross_section(&self, axis: usize, s: &Rat, side: Side) -> Result<CubicalSet, GeometryError> {
        check_axis(self.dim, axis)?;
        if s.is_negative() || *s > Rat::one() {
            return Err(GeometryError::Domain("cross-section position outside [0,1]"));
        }
        match side {
            Side::Below if s.is_zero() => return Err(GeometryError::Domain("no cross-section below 0")),
            Side::Above if *s == Rat::one() => return Err(GeometryError::Domain("no cross-section above 1")),
            _ => {}
        }
        let g = Grid::of_set(self);
        let k = layer_index(&g.coords[axis], s, side);
        Ok(g.layer(axis, k).into_set())
    }

    /// Closure of the symmetric difference of the cross-sections just below
    /// and just above `s`. Positive measure exactly at singular points.
    pub fn boundary_slice(&self, axis: usize, s: &Rat) -> Result<CubicalSet, GeometryError> {
        check_axis(self.dim, axis)?;
        if !s.is_positive() || *s >= Rat::one() {
            return Err(GeometryError::Domain("slice position must lie in (0,1)"));
        }
        let g = Grid::of_set(self);
        let below = g.layer(axis, layer_index(&g.coords[axis], s, Side::Below));
        let above = g.layer(axis, layer_index(&g.coords[axis], s, Side::Above));
        Ok(below.zip_occ(&above, |a, b| a != b).into_set())
    }

    /// Closure of `[0,1]^n \ X`.
    pub fn complement(&self) -> CubicalSet {
        Grid::of_set(self).map_occ(|o| !o).into_set()
    }

    fn combine(&self, other: &CubicalSet, op: impl Fn(bool, bool) -> bool) -> Result<CubicalSet, GeometryError> {
        if self.dim != other.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let (a, b) = Grid::pair(self, other);
        Ok(a.zip_occ(&b, op).into_set())
    }

    pub fn union(&self, other: &CubicalSet) -> Result<CubicalSet, GeometryError> {
        self.combine(other, |a, b| a || b)
    }

    /// Regularized intersection (lower-dimensional contact is dropped).
    pub fn intersection(&self, other: &CubicalSet) -> Result<CubicalSet, GeometryError> {
        self.combine(other, |a, b| a && b)
    }

    /// Closure of `self \ other`.
    pub fn difference(&self, other: &CubicalSet) -> Result<CubicalSet, GeometryError> {
        self.combine(other, |a, b| a && !b)
    }

    /// `{ x : x without coordinate axis lies in self, x_axis in [lo, hi] }`,
    /// a set of dimension `n + 1`.
    pub fn extrude(&self, axis: usize, lo: &Rat, hi: &Rat) -> Result<CubicalSet, GeometryError> {
        if axis > self.dim {
            return Err(GeometryError::AxisOutOfRange { axis, dim: self.dim + 1 });
        }
        if lo >= hi {
            return Ok(CubicalSet::empty(self.dim + 1));
        }
        let boxes: Vec<AxisBox> = self
            .boxes
            .iter()
            .map(|b| {
                let mut l = b.lo.clone();
                let mut h = b.hi.clone();
                l.insert(axis, lo.clone());
                h.insert(axis, hi.clone());
                AxisBox::new_unchecked(l, h)
            })
            .collect();
        CubicalSet::normalize(self.dim + 1, &boxes)
    }

    /// Product `self x other` in dimension `n + m`.
    pub fn product(&self, other: &CubicalSet) -> CubicalSet {
        let mut boxes = Vec::new();
        for a in &self.boxes {
            for b in &other.boxes {
                let lo = a.lo.iter().chain(&b.lo).cloned().collect();
                let hi = a.hi.iter().chain(&b.hi).cloned().collect();
                boxes.push(AxisBox::new_unchecked(lo, hi));
            }
        }
        CubicalSet::normalize(self.dim + other.dim, &boxes).expect("product of valid sets")
    }

    /// Number of interior planes, summed over all axes.
    pub fn total_singular_count(&self) -> usize {
        (0..self.dim).map(|a| self.interior_planes(a).len()).sum()
    }

    /// 1-measure of `{ t : y + t e_axis in X }` for every cell `y` of the
    /// perpendicular grid, along with that grid.
    pub(crate) fn column_lengths(&self, axis: usize) -> (Vec<Vec<Rat>>, Vec<Rat>) {
        let g = Grid::of_set(self);
        let shape = g.shape();
        let st = g.strides();
        let mut sub_shape = shape.clone();
        sub_shape.remove(axis);
        let mut lengths = Vec::with_capacity(sub_shape.iter().product());
        for sub in Odometer::full(&sub_shape) {
            let mut f = Rat::zero();
            for k in 0..shape[axis] {
                let mut idx = sub.clone();
                idx.insert(axis, k);
                if g.occ[flat(&st, &idx)] {
                    f += g.width(axis, k);
                }
            }
            lengths.push(f);
        }
        let mut coords = g.coords;
        coords.remove(axis);
        (coords, lengths)
    }
}

/// Index of the grid layer adjacent to `s` on the given side.
pub(crate) fn layer_index(coords: &[Rat], s: &Rat, side: Side) -> usize {
    let cells = coords.len() - 1;
    match side {
        // coords[k] < s <= coords[k+1]
        Side::Below => (0..cells).find(|&k| coords[k] < *s && *s <= coords[k + 1]).unwrap_or(0),
        // coords[k] <= s < coords[k+1]
        Side::Above => (0..cells).find(|&k| coords[k] <= *s && *s < coords[k + 1]).unwrap_or(cells - 1),
    }
}
