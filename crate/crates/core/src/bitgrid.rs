//! Grids of at most 32 cells packed into a `u32`, for exhaustive sweeps over
//! all subsets. Cell order matches [`VoxelSet`](crate::VoxelSet).

use alloc::vec;
use alloc::vec::Vec;

use crate::isometry::CubeIsometry;
use crate::voxel::VoxelSet;

#[derive(Clone, Debug)]
pub struct BitGrid {
    dim: usize,
    res: usize,
    cells: usize,
    /// Per axis: stride and mask of cells with a `+` neighbour.
    faces: Vec<(usize, u32)>,
    /// Per axis: column masks and, per column, the lowest-`k`-cells masks.
    columns: Vec<Vec<(u32, Vec<u32>, Vec<u32>)>>,
    /// Per axis: pairs `(c, c', shift)` of adjacent columns, `c' = c << shift`.
    adjacent: Vec<Vec<(usize, usize, usize)>>,
    /// Per isometry, byte lookup tables.
    images: Vec<[[u32; 256]; 4]>,
}

impl BitGrid {
    /// `None` when the grid has more than 32 cells.
    pub fn new(dim: usize, res: usize) -> Option<BitGrid> {
        let cells = res.checked_pow(dim as u32)?;
        if cells > 32 || res == 0 || dim == 0 {
            return None;
        }
        let probe = VoxelSet::empty(dim, res);
        let coord = |i: usize| probe.cell_of(i);
        let stride = |a: usize| res.pow((dim - 1 - a) as u32);
        let faces = (0..dim)
            .map(|a| {
                let m = (0..cells).filter(|&i| coord(i)[a] + 1 < res).fold(0u32, |m, i| m | 1 << i);
                (stride(a), m)
            })
            .collect();
        let mut columns = Vec::new();
        let mut adjacent = Vec::new();
        for a in 0..dim {
            let bases: Vec<usize> = (0..cells).filter(|&i| coord(i)[a] == 0).collect();
            let cols: Vec<(u32, Vec<u32>, Vec<u32>)> = bases
                .iter()
                .map(|&b| {
                    let bit = |t: usize| 1u32 << (b + t * stride(a));
                    let mask = (0..res).fold(0, |m, t| m | bit(t));
                    let low = (0..=res).map(|k| (0..k).fold(0, |m, t| m | bit(t))).collect();
                    let high = (0..=res).map(|k| (res - k..res).fold(0, |m, t| m | bit(t))).collect();
                    (mask, low, high)
                })
                .collect();
            let mut adj = Vec::new();
            for (ci, &b) in bases.iter().enumerate() {
                for other in (0..dim).filter(|&o| o != a) {
                    if coord(b)[other] + 1 < res {
                        let cj = bases.iter().position(|&x| x == b + stride(other)).expect("neighbour column");
                        adj.push((ci, cj, stride(other)));
                    }
                }
            }
            columns.push(cols);
            adjacent.push(adj);
        }
        let images = CubeIsometry::all(dim)
            .iter()
            .map(|g| {
                let target: Vec<usize> = (0..cells).map(|i| probe.index_of(&g.apply_cell(&coord(i), res))).collect();
                let mut t = [[0u32; 256]; 4];
                for (chunk, table) in t.iter_mut().enumerate() {
                    for (byte, slot) in table.iter_mut().enumerate() {
                        *slot = (0..8)
                            .filter(|&k| byte >> k & 1 == 1 && chunk * 8 + k < cells)
                            .fold(0, |m, k| m | 1 << target[chunk * 8 + k]);
                    }
                }
                t
            })
            .collect();
        Some(BitGrid { dim, res, cells, faces, columns, adjacent, images })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn res(&self) -> usize {
        self.res
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    /// Interior faces between an occupied and an empty cell, per axis.
    pub fn axis_faces(&self, x: u32) -> Vec<u32> {
        self.faces.iter().map(|&(s, m)| ((x ^ (x >> s)) & m).count_ones()).collect()
    }

    pub fn face_count(&self, x: u32) -> u32 {
        self.faces.iter().map(|&(s, m)| ((x ^ (x >> s)) & m).count_ones()).sum()
    }

    /// Push every column along `axis` to the low end.
    pub fn steiner(&self, x: u32, axis: usize) -> u32 {
        self.columns[axis].iter().fold(0, |acc, (mask, low, _)| acc | low[(x & mask).count_ones() as usize])
    }

    /// Relative perimeter is unchanged by `steiner(., axis)` exactly when
    /// every column is empty, full or an interval at one end, and adjacent
    /// columns are nested.
    pub fn column_condition(&self, x: u32, axis: usize) -> bool {
        let cols = &self.columns[axis];
        let anchored = cols.iter().all(|(mask, low, high)| {
            let p = x & mask;
            let k = p.count_ones() as usize;
            p == low[k] || p == high[k]
        });
        anchored
            && self.adjacent[axis].iter().all(|&(c, d, shift)| {
                let p = x & cols[c].0;
                let q = (x & cols[d].0) >> shift;
                p & q == p || p & q == q
            })
    }

    pub fn group_len(&self) -> usize {
        self.images.len()
    }

    /// Image under the `g`-th element of [`CubeIsometry::all`].
    pub fn apply(&self, x: u32, g: usize) -> u32 {
        let t = &self.images[g];
        t[0][(x & 0xff) as usize] | t[1][(x >> 8 & 0xff) as usize] | t[2][(x >> 16 & 0xff) as usize] | t[3][(x >> 24) as usize]
    }

    pub fn is_isometric(&self, x: u32, y: u32) -> bool {
        x.count_ones() == y.count_ones() && (0..self.images.len()).any(|g| self.apply(x, g) == y)
    }

    pub fn to_voxels(&self, x: u32) -> VoxelSet {
        VoxelSet::from_cells(self.dim, self.res, (0..self.cells).filter(|&i| x >> i & 1 == 1))
    }

    pub fn from_voxels(&self, v: &VoxelSet) -> u32 {
        assert_eq!((v.dim(), v.res()), (self.dim, self.res));
        v.cells().into_iter().fold(0, |m, i| m | 1 << i)
    }

    /// Every subset, as masks `0 .. 2^cells`.
    pub fn all_subsets(&self) -> impl Iterator<Item = u32> {
        let end = if self.cells == 32 { u32::MAX } else { (1u32 << self.cells) - 1 };
        0..=end
    }
}

/// Outcome of the exhaustive equality-case sweep on one grid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EqualityCaseSweep {
    pub checked: u64,
    /// Perimeter kept by some symmetrization.
    pub equal: u64,
    /// Perimeter kept but the set is not isometric to its symmetrization.
    pub not_isometric: u64,
    pub first_counterexample: Option<(u32, usize)>,
    /// Sets where perimeter equality and the column condition disagree.
    pub column_mismatches: u64,
}

/// For every subset and axis compare perimeter equality under Steiner
/// symmetrization with (a) isometry to the result and (b) the column
/// condition.
pub fn equality_case_sweep(grid: &BitGrid) -> EqualityCaseSweep {
    let mut out = EqualityCaseSweep::default();
    for x in grid.all_subsets() {
        let before = grid.face_count(x);
        for axis in 0..grid.dim() {
            let s = grid.steiner(x, axis);
            let equal = grid.face_count(s) == before;
            out.checked += 1;
            if equal != grid.column_condition(x, axis) {
                out.column_mismatches += 1;
            }
            if equal {
                out.equal += 1;
                if !grid.is_isometric(x, s) {
                    out.not_isometric += 1;
                    out.first_counterexample.get_or_insert((x, axis));
                }
            }
        }
    }
    out
}

/// Fixed list of small grids used by the equality-case sweep.
pub fn equality_case_grids() -> Vec<(usize, usize)> {
    vec![(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::devoxelize;
    use crate::symmetrize::steiner;
    use crate::voxelize;

    #[test]
    fn agrees_with_exact_geometry() {
        let g = BitGrid::new(3, 2).unwrap();
        for x in g.all_subsets() {
            let v = g.to_voxels(x);
            assert_eq!(g.face_count(x) as usize, v.face_count());
            let set = devoxelize(&v);
            for axis in 0..3 {
                let s = voxelize(&steiner(&set, axis).unwrap(), 2).unwrap();
                assert_eq!(g.from_voxels(&s), g.steiner(x, axis));
            }
            for (k, iso) in CubeIsometry::all(3).iter().enumerate().step_by(7) {
                assert_eq!(g.to_voxels(g.apply(x, k)), v.apply_isometry(iso));
            }
        }
    }

    #[test]
    fn opposite_corners_keep_perimeter_without_isometry() {
        let g = BitGrid::new(2, 3).unwrap();
        let x = (1 << 2) | (1 << 6);
        let s = g.steiner(x, 0);
        assert_eq!(g.face_count(s), g.face_count(x));
        assert!(g.column_condition(x, 0));
        assert!(!g.is_isometric(x, s));
    }

    #[test]
    fn too_many_cells() {
        assert!(BitGrid::new(3, 4).is_none());
        assert!(BitGrid::new(2, 5).is_some());
    }
}
