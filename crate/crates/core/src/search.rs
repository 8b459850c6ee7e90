//! Exhaustive lattice search over monotone voxel sets.
//!
//! Symmetrization never increases relative perimeter, so the discrete
//! minimum over all `k`-cell subsets of the `m^n` grid is attained by a
//! staircase (`n = 2`) or plane partition (`n = 3`). Shapes are encoded by
//! column heights and enumerated in lexicographic order; the first height
//! partitions the stream into independent shards.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::bitgrid::BitGrid;
use crate::classify::{profile, profile2d, ShapeKind};
use crate::enclosure::Enclosure;
use crate::isometry::CubeIsometry;
use crate::rat::Rat;
use crate::voxel::VoxelSet;

/// Largest resolution enumerated exhaustively in two dimensions.
pub const MAX_RES_2D: usize = 6;
/// Largest resolution enumerated exhaustively in three dimensions.
pub const MAX_RES_3D: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchError {
    UnsupportedDimension(usize),
    ResolutionCap { dim: usize, res: usize, cap: usize },
    /// `k` above half the cells, or above what the region holds.
    CellCount { k: usize, max: usize },
    /// Heights out of range or not monotone.
    InvalidHeights,
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::UnsupportedDimension(n) => write!(f, "search supports dimensions 2 and 3, got {n}"),
            SearchError::ResolutionCap { dim, res, cap } => {
                write!(f, "resolution {res} exceeds the exhaustive cap {cap} in dimension {dim}")
            }
            SearchError::CellCount { k, max } => write!(f, "cell count {k} exceeds {max}"),
            SearchError::InvalidHeights => f.write_str("column heights are not a monotone shape"),
        }
    }
}

fn check_caps(dim: usize, res: usize) -> Result<(), SearchError> {
    let cap = match dim {
        2 => MAX_RES_2D,
        3 => MAX_RES_3D,
        _ => return Err(SearchError::UnsupportedDimension(dim)),
    };
    if res == 0 || res > cap {
        return Err(SearchError::ResolutionCap { dim, res, cap });
    }
    Ok(())
}

/// Largest height allowed at `pos` given the heights already placed.
fn height_bound(dim: usize, res: usize, pos: usize, h: &[u8]) -> u8 {
    let mut b = res as u8;
    if dim == 2 {
        if pos > 0 {
            b = h[pos - 1];
        }
    } else {
        let (i, j) = (pos / res, pos % res);
        if i > 0 {
            b = b.min(h[pos - res]);
        }
        if j > 0 {
            b = b.min(h[pos - 1]);
        }
    }
    b
}

/// Boundary faces of a height field, excluding faces on the cube boundary.
fn height_faces(dim: usize, res: usize, h: &[u8]) -> u32 {
    let m = res as u8;
    let diff = |a: u8, b: u8| u32::from(a.abs_diff(b));
    let mut faces: u32 = h.iter().filter(|&&v| v > 0 && v < m).count() as u32;
    if dim == 2 {
        faces += h.windows(2).map(|w| diff(w[0], w[1])).sum::<u32>();
    } else {
        for i in 0..res {
            for j in 0..res {
                let v = h[i * res + j];
                if i + 1 < res {
                    faces += diff(v, h[(i + 1) * res + j]);
                }
                if j + 1 < res {
                    faces += diff(v, h[i * res + j + 1]);
                }
            }
        }
    }
    faces
}

fn heights_to_voxels(dim: usize, res: usize, h: &[u8]) -> VoxelSet {
    let mut v = VoxelSet::empty(dim, res);
    for (col, &height) in h.iter().enumerate() {
        for z in 0..height as usize {
            v.set(col * res + z, true);
        }
    }
    v
}

/// A symmetrized voxel set given by its column heights along the last axis.
/// For `n = 2`, `heights[i]` is the column over `x_1`-cell `i`; for `n = 3`,
/// `heights[i m + j]` is the column over cell `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneShape {
    dim: usize,
    res: usize,
    heights: Vec<u8>,
}

impl MonotoneShape {
    pub fn from_heights(dim: usize, res: usize, heights: Vec<u8>) -> Result<Self, SearchError> {
        if dim != 2 && dim != 3 {
            return Err(SearchError::UnsupportedDimension(dim));
        }
        if res == 0 || res > u8::MAX as usize || heights.len() != res.pow(dim as u32 - 1) {
            return Err(SearchError::InvalidHeights);
        }
        if (0..heights.len()).any(|p| heights[p] > height_bound(dim, res, p, &heights)) {
            return Err(SearchError::InvalidHeights);
        }
        Ok(MonotoneShape { dim, res, heights })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn res(&self) -> usize {
        self.res
    }

    pub fn heights(&self) -> &[u8] {
        &self.heights
    }

    pub fn cell_count(&self) -> usize {
        self.heights.iter().map(|&h| h as usize).sum()
    }

    pub fn face_count(&self) -> u32 {
        height_faces(self.dim, self.res, &self.heights)
    }

    pub fn volume(&self) -> Rat {
        Rat::new(self.cell_count() as i64, self.res.pow(self.dim as u32) as i64)
    }

    pub fn relative_perimeter(&self) -> Rat {
        Rat::new(i64::from(self.face_count()), self.res.pow(self.dim as u32 - 1) as i64)
    }

    pub fn to_voxels(&self) -> VoxelSet {
        heights_to_voxels(self.dim, self.res, &self.heights)
    }
}

fn fill(dim: usize, res: usize, pos: usize, h: &mut Vec<u8>, f: &mut impl FnMut(&[u8])) {
    if pos == h.len() {
        f(h);
        return;
    }
    for v in 0..=height_bound(dim, res, pos, h) {
        h[pos] = v;
        fill(dim, res, pos + 1, h, f);
    }
}

/// Shards of the enumeration, one per value of the first column height.
pub fn shard_count(res: usize) -> usize {
    res + 1
}

/// Visit every monotone height field whose first column has height `first`.
pub fn for_each_in_shard(dim: usize, res: usize, first: usize, mut f: impl FnMut(&[u8])) -> Result<(), SearchError> {
    check_caps(dim, res)?;
    if first > res {
        return Ok(());
    }
    let mut h = vec![0u8; res.pow(dim as u32 - 1)];
    h[0] = first as u8;
    fill(dim, res, 1, &mut h, &mut f);
    Ok(())
}

/// Visit every monotone height field, in lexicographic order.
pub fn for_each_monotone(dim: usize, res: usize, mut f: impl FnMut(&[u8])) -> Result<(), SearchError> {
    check_caps(dim, res)?;
    for first in 0..shard_count(res) {
        for_each_in_shard(dim, res, first, &mut f)?;
    }
    Ok(())
}

/// Every monotone shape exactly once, in lexicographic order of heights.
pub fn enumerate_monotone(dim: usize, res: usize) -> Result<Vec<MonotoneShape>, SearchError> {
    let mut out = Vec::new();
    for_each_monotone(dim, res, |h| out.push(MonotoneShape { dim, res, heights: h.to_vec() }))?;
    Ok(out)
}

/// Discrete minimum at one cell count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteResult {
    pub dim: usize,
    pub res: usize,
    pub k: usize,
    pub min: Rat,
    /// Orbit representatives, sorted.
    pub minimizers: Vec<VoxelSet>,
    /// Grid-representable cube/tube/slab (or square/strip) shapes with `k`
    /// cells that are among the minimizers.
    pub kinds: Vec<ShapeKind>,
}

impl BruteResult {
    pub fn volume(&self) -> Rat {
        Rat::new(self.k as i64, self.res.pow(self.dim as u32) as i64)
    }
}

/// Running `(min, argmin)` per cell count; shards combine by [`Sweep::merge`]
/// and the result does not depend on how the stream was split.
#[derive(Clone, Debug)]
pub struct Sweep {
    dim: usize,
    res: usize,
    only: Option<usize>,
    best: Vec<Option<(u32, Vec<Vec<u8>>)>>,
}

impl Sweep {
    /// Track every `k <= m^n / 2`, or only `only`.
    pub fn new(dim: usize, res: usize, only: Option<usize>) -> Self {
        let half = res.pow(dim as u32) / 2;
        Sweep { dim, res, only, best: vec![None; half + 1] }
    }

    pub fn absorb(&mut self, h: &[u8]) {
        let k: usize = h.iter().map(|&v| v as usize).sum();
        if k >= self.best.len() || self.only.is_some_and(|o| o != k) {
            return;
        }
        let faces = height_faces(self.dim, self.res, h);
        match &mut self.best[k] {
            Some((f, list)) if *f == faces => list.push(h.to_vec()),
            Some((f, _)) if *f < faces => {}
            slot => *slot = Some((faces, vec![h.to_vec()])),
        }
    }

    pub fn merge(mut self, other: Sweep) -> Sweep {
        for (mine, theirs) in self.best.iter_mut().zip(other.best) {
            match (mine.as_mut(), theirs) {
                (_, None) => {}
                (None, t) => *mine = t,
                (Some((f, list)), Some((g, more))) => match g.cmp(f) {
                    Ordering::Less => *mine = Some((g, more)),
                    Ordering::Equal => list.extend(more),
                    Ordering::Greater => {}
                },
            }
        }
        self
    }

    pub fn finish(self) -> Vec<BruteResult> {
        let group = CubeIsometry::all(self.dim);
        let face_unit = self.res.pow(self.dim as u32 - 1) as i64;
        let (dim, res) = (self.dim, self.res);
        self.best
            .into_iter()
            .enumerate()
            .filter_map(|(k, slot)| slot.map(|s| (k, s)))
            .map(|(k, (faces, shapes))| {
                let mut minimizers: Vec<VoxelSet> =
                    shapes.iter().map(|h| heights_to_voxels(dim, res, h).orbit_representative(&group)).collect();
                minimizers.sort();
                minimizers.dedup();
                let kinds = minimizer_kinds(dim, res, k, &minimizers, &group);
                BruteResult { dim, res, k, min: Rat::new(i64::from(faces), face_unit), minimizers, kinds }
            })
            .collect()
    }
}

/// Discrete minima for every `k` from 0 to `m^n / 2`.
pub fn brute_min_all(dim: usize, res: usize) -> Result<Vec<BruteResult>, SearchError> {
    let mut sweep = Sweep::new(dim, res, None);
    for_each_monotone(dim, res, |h| sweep.absorb(h))?;
    Ok(sweep.finish())
}

/// Minimal relative perimeter over `k`-cell subsets of the `m^n` grid, with
/// minimizers up to isometry. Requires `k <= m^n / 2`.
pub fn brute_min(dim: usize, res: usize, k: usize) -> Result<BruteResult, SearchError> {
    check_caps(dim, res)?;
    let half = res.pow(dim as u32) / 2;
    if k > half {
        return Err(SearchError::CellCount { k, max: half });
    }
    let mut sweep = Sweep::new(dim, res, Some(k));
    for_each_monotone(dim, res, |h| sweep.absorb(h))?;
    Ok(sweep.finish().pop().expect("every k <= m^n has a monotone shape"))
}

/// The same minimum over all subsets, monotone or not. Only for grids with at
/// most 16 cells: `n = 2, m <= 4` or `n = 3, m <= 2`.
pub fn brute_min_general(dim: usize, res: usize, k: usize) -> Result<BruteResult, SearchError> {
    let cap = match dim {
        2 => 4,
        3 => 2,
        _ => return Err(SearchError::UnsupportedDimension(dim)),
    };
    if res == 0 || res > cap {
        return Err(SearchError::ResolutionCap { dim, res, cap });
    }
    let cells = res.pow(dim as u32);
    if k > cells / 2 {
        return Err(SearchError::CellCount { k, max: cells / 2 });
    }
    let grid = BitGrid::new(dim, res).expect("at most 16 cells");
    let mut best: Option<(u32, Vec<u32>)> = None;
    for x in grid.all_subsets() {
        if x.count_ones() as usize != k {
            continue;
        }
        let faces = grid.face_count(x);
        match &mut best {
            Some((f, list)) if *f == faces => list.push(x),
            Some((f, _)) if *f < faces => {}
            slot => *slot = Some((faces, vec![x])),
        }
    }
    let (faces, masks) = best.expect("some subset has k cells");
    let group = CubeIsometry::all(dim);
    let mut minimizers: Vec<VoxelSet> = masks
        .into_iter()
        .map(|x| grid.to_voxels(x).orbit_representative(&group))
        .collect();
    minimizers.sort();
    minimizers.dedup();
    let kinds = minimizer_kinds(dim, res, k, &minimizers, &group);
    Ok(BruteResult { dim, res, k, min: Rat::new(i64::from(faces), res.pow(dim as u32 - 1) as i64), minimizers, kinds })
}

/// Minimal relative perimeter in `[0,1]^2` of `k`-cell sets confined to the
/// first `a_cells` columns of the `m x m` grid.
pub fn strip_brute_min(res: usize, a_cells: usize, k: usize) -> Result<Rat, SearchError> {
    check_caps(2, res)?;
    if a_cells == 0 || a_cells > res {
        return Err(SearchError::CellCount { k: a_cells, max: res });
    }
    if k > a_cells * res {
        return Err(SearchError::CellCount { k, max: a_cells * res });
    }
    let mut best = u32::MAX;
    for_each_monotone(2, res, |h| {
        if h[a_cells..].iter().all(|&v| v == 0) && h.iter().map(|&v| v as usize).sum::<usize>() == k {
            best = best.min(height_faces(2, res, h));
        }
    })?;
    Ok(Rat::new(i64::from(best), res as i64))
}

fn minimizer_kinds(dim: usize, res: usize, k: usize, minimizers: &[VoxelSet], group: &[CubeIsometry]) -> Vec<ShapeKind> {
    let mut kinds: Vec<ShapeKind> = canonical_shapes(dim, res, k)
        .into_iter()
        .filter(|(_, v)| minimizers.contains(&v.orbit_representative(group)))
        .map(|(kind, _)| kind)
        .collect();
    kinds.sort();
    kinds
}

/// Origin-anchored boxes with `k` cells that realize a cube, tube or slab
/// (square or strip in the plane).
pub fn canonical_shapes(dim: usize, res: usize, k: usize) -> Vec<(ShapeKind, VoxelSet)> {
    let block = |sides: &[usize]| -> VoxelSet {
        let mut v = VoxelSet::empty(dim, res);
        for i in 0..v.len() {
            if v.cell_of(i).iter().zip(sides).all(|(c, s)| c < s) {
                v.set(i, true);
            }
        }
        v
    };
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    for t in 1..=res {
        if dim == 3 {
            if t * t * t == k {
                out.push((ShapeKind::Cube, block(&[t, t, t])));
            }
            if t * t * res == k && t < res {
                out.push((ShapeKind::Tube, block(&[t, t, res])));
            }
            if t * res * res == k && t < res {
                out.push((ShapeKind::Slab, block(&[t, res, res])));
            }
        } else {
            if t * t == k {
                out.push((ShapeKind::Square, block(&[t, t])));
            }
            if t * res == k && t < res {
                out.push((ShapeKind::Strip, block(&[t, res])));
            }
        }
    }
    out
}

/// Continuous minimum at volume `k / m^n` (profile, with complements above
/// one half and zero at the trivial volumes).
pub fn continuous_bound(dim: usize, res: usize, k: usize, bits: u32) -> Result<Enclosure, SearchError> {
    let cells = res.pow(dim as u32);
    if k > cells {
        return Err(SearchError::CellCount { k, max: cells });
    }
    let kk = k.min(cells - k);
    if kk == 0 {
        return Ok(Enclosure::exact(Rat::zero()));
    }
    let v = Rat::new(kk as i64, cells as i64);
    let entry = match dim {
        2 => profile2d(&v, bits),
        3 => profile(&v, bits),
        _ => return Err(SearchError::UnsupportedDimension(dim)),
    };
    Ok(entry.expect("volume in (0, 1/2]").value)
}

/// Certified `x >= bound`, refining the enclosure when it straddles `x`.
pub fn certified_at_least(x: &Rat, bound: impl Fn(u32) -> Enclosure) -> bool {
    for bits in [64u32, 128, 256, 512] {
        match bound(bits).compare(x) {
            Some(Ordering::Less) | Some(Ordering::Equal) => return true,
            Some(Ordering::Greater) => return false,
            None => {}
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumeration_counts() {
        assert_eq!(enumerate_monotone(2, 2).unwrap().len(), 6);
        assert_eq!(enumerate_monotone(3, 2).unwrap().len(), 20);
        assert!(matches!(enumerate_monotone(3, 5), Err(SearchError::ResolutionCap { .. })));
        assert!(matches!(enumerate_monotone(2, 7), Err(SearchError::ResolutionCap { .. })));
    }

    #[test]
    fn height_faces_match_voxel_faces() {
        for s in enumerate_monotone(3, 3).unwrap() {
            let v = s.to_voxels();
            assert!(v.is_monotone());
            assert_eq!(v.count(), s.cell_count());
            assert_eq!(v.face_count() as u32, s.face_count());
        }
    }

    #[test]
    fn documented_minima() {
        let r = brute_min(3, 4, 8).unwrap();
        assert_eq!(r.min, Rat::new(3, 4));
        assert!(r.kinds.contains(&ShapeKind::Cube));
        let r = brute_min(2, 4, 4).unwrap();
        assert_eq!(r.min, Rat::one());
        assert_eq!(r.kinds, vec![ShapeKind::Square, ShapeKind::Strip]);
        let r = brute_min(3, 2, 4).unwrap();
        assert_eq!(r.min, Rat::one());
        assert_eq!(r.kinds, vec![ShapeKind::Slab]);
        assert_eq!(brute_min_general(2, 4, 8).unwrap().min, Rat::one());
    }

    #[test]
    fn strip_examples() {
        assert_eq!(strip_brute_min(4, 2, 4).unwrap(), Rat::one());
        // the width-3/8 strip attaining 1 is off the grid; a + V/a is what remains
        assert_eq!(strip_brute_min(4, 2, 6).unwrap(), Rat::new(5, 4));
        assert_eq!(strip_brute_min(4, 2, 8).unwrap(), Rat::one());
        assert_eq!(strip_brute_min(4, 2, 1).unwrap(), Rat::new(1, 2));
    }

    #[test]
    fn shards_merge_to_the_full_sweep() {
        let mut parts: Vec<Sweep> = Vec::new();
        for first in 0..shard_count(3) {
            let mut s = Sweep::new(3, 3, None);
            for_each_in_shard(3, 3, first, |h| s.absorb(h)).unwrap();
            parts.push(s);
        }
        let merged = parts.into_iter().rev().reduce(Sweep::merge).unwrap().finish();
        assert_eq!(merged, brute_min_all(3, 3).unwrap());
    }
}
