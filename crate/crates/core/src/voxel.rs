//! Fixed-resolution occupancy grids.

use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::{AxisBox, CubicalSet, GeometryError, MAX_DIM};
use crate::grid::{flat, strides, Grid, Odometer};
use crate::isometry::CubeIsometry;
use crate::rat::Rat;

/// `res^dim` cells; cell `(a_1, ..., a_n)` is the box `prod [a_i/res, (a_i+1)/res]`
/// and has flat index `((a_1 res + a_2) res + ...) + a_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VoxelSet {
    dim: usize,
    res: usize,
    words: Vec<u64>,
}

impl VoxelSet {
    pub fn empty(dim: usize, res: usize) -> Self {
        assert!(res >= 1 && dim <= MAX_DIM);
        let len = res.pow(dim as u32);
        VoxelSet { dim, res, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_cells(dim: usize, res: usize, cells: impl IntoIterator<Item = usize>) -> Self {
        let mut v = VoxelSet::empty(dim, res);
        for c in cells {
            v.set(c, true);
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn res(&self) -> usize {
        self.res
    }

    pub fn len(&self) -> usize {
        self.res.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, on: bool) {
        assert!(i < self.len(), "cell index out of range");
        if on {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Occupied flat indices, ascending.
    pub fn cells(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.get(i)).collect()
    }

    pub fn shape(&self) -> Vec<usize> {
        vec![self.res; self.dim]
    }

    pub fn index_of(&self, cell: &[usize]) -> usize {
        flat(&strides(&self.shape()), cell)
    }

    pub fn cell_of(&self, mut i: usize) -> Vec<usize> {
        let mut c = vec![0; self.dim];
        for k in (0..self.dim).rev() {
            c[k] = i % self.res;
            i /= self.res;
        }
        c
    }

    /// Faces shared by an occupied and an empty cell. Faces on the boundary
    /// of the cube are not counted.
    pub fn face_count(&self) -> usize {
        let st = strides(&self.shape());
        let mut count = 0;
        for i in 0..self.len() {
            let cell = self.cell_of(i);
            for axis in 0..self.dim {
                if cell[axis] + 1 < self.res && self.get(i) != self.get(i + st[axis]) {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn volume(&self) -> Rat {
        Rat::new(self.count() as i64, self.len() as i64)
    }

    /// `face_count / res^(n-1)`.
    pub fn relative_perimeter(&self) -> Rat {
        let face = self.res.pow(self.dim.saturating_sub(1) as u32);
        Rat::new(self.face_count() as i64, face as i64)
    }

    pub fn complement(&self) -> VoxelSet {
        VoxelSet::from_cells(self.dim, self.res, (0..self.len()).filter(|&i| !self.get(i)))
    }

    pub fn apply_isometry(&self, g: &CubeIsometry) -> VoxelSet {
        let mut out = VoxelSet::empty(self.dim, self.res);
        for i in self.cells() {
            let c = g.apply_cell(&self.cell_of(i), self.res);
            let j = out.index_of(&c);
            out.set(j, true);
        }
        out
    }

    /// Indicator non-increasing along every axis.
    pub fn is_monotone(&self) -> bool {
        let st = strides(&self.shape());
        (0..self.len()).all(|i| {
            let cell = self.cell_of(i);
            (0..self.dim).all(|a| cell[a] + 1 >= self.res || self.get(i) || !self.get(i + st[a]))
        })
    }

    /// Smallest image under `group`, the orbit representative used for
    /// deduplication.
    pub fn orbit_representative(&self, group: &[CubeIsometry]) -> VoxelSet {
        group.iter().map(|g| self.apply_isometry(g)).min_by(|a, b| a.cells().cmp(&b.cells())).unwrap_or_else(|| self.clone())
    }
}

/// Rasterize a set whose coordinates are all multiples of `1/res`.
pub fn voxelize(x: &CubicalSet, res: usize) -> Result<VoxelSet, GeometryError> {
    if res == 0 {
        return Err(GeometryError::Domain("resolution must be positive"));
    }
    let m = Rat::int(res as i64);
    let mut v = VoxelSet::empty(x.dim(), res);
    for (bi, b) in x.boxes().iter().enumerate() {
        let mut lo = Vec::with_capacity(x.dim());
        let mut hi = Vec::with_capacity(x.dim());
        for axis in 0..x.dim() {
            for (val, dst) in [(&b.lo()[axis], &mut lo), (&b.hi()[axis], &mut hi)] {
                let scaled = val * &m;
                if !scaled.is_integer() {
                    return Err(GeometryError::Alignment { box_index: bi, axis, value: val.clone(), res });
                }
                dst.push(usize::try_from(scaled.floor()).expect("coordinate within [0,1]"));
            }
        }
        for cell in Odometer::new(lo, hi) {
            let i = v.index_of(&cell);
            v.set(i, true);
        }
    }
    Ok(v)
}

pub fn devoxelize(v: &VoxelSet) -> CubicalSet {
    let res = v.res() as i64;
    let coords: Vec<Vec<Rat>> = (0..v.dim()).map(|_| (0..=res).map(|k| Rat::new(k, res)).collect()).collect();
    let occ = (0..v.len()).map(|i| v.get(i)).collect();
    Grid { coords, occ }.into_set()
}

/// Box list of the occupied cells, one unit box each (not canonical).
pub fn cell_boxes(v: &VoxelSet) -> Vec<AxisBox> {
    let res = v.res() as i64;
    v.cells()
        .into_iter()
        .map(|i| {
            let c = v.cell_of(i);
            let lo = c.iter().map(|&a| Rat::new(a as i64, res)).collect();
            let hi = c.iter().map(|&a| Rat::new(a as i64 + 1, res)).collect();
            AxisBox::new_unchecked(lo, hi)
        })
        .collect()
}
