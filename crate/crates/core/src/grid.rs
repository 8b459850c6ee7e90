//! Cell-grid representation used internally by every set operation.
//!
//! A grid stores, per axis, a sorted coordinate list running from 0 to 1 and
//! one occupancy flag per cell of the induced product partition. Cells are
//! indexed row-major with axis 0 slowest.

use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::{AxisBox, CubicalSet};
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Grid {
    pub coords: Vec<Vec<Rat>>,
    pub occ: Vec<bool>,
}

/// Odometer over a box of multi-indices `[lo_k, hi_k)`, axis 0 slowest.
pub(crate) struct Odometer {
    lo: Vec<usize>,
    hi: Vec<usize>,
    cur: Vec<usize>,
    done: bool,
}

impl Odometer {
    pub fn new(lo: Vec<usize>, hi: Vec<usize>) -> Self {
        let done = lo.iter().zip(&hi).any(|(l, h)| l >= h);
        Odometer { cur: lo.clone(), lo, hi, done }
    }

    pub fn full(shape: &[usize]) -> Self {
        Odometer::new(vec![0; shape.len()], shape.to_vec())
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let mut axis = self.cur.len();
        loop {
            if axis == 0 {
                self.done = true;
                break;
            }
            axis -= 1;
            self.cur[axis] += 1;
            if self.cur[axis] < self.hi[axis] {
                break;
            }
            self.cur[axis] = self.lo[axis];
        }
        Some(out)
    }
}

pub(crate) fn strides(shape: &[usize]) -> Vec<usize> {
    let mut st = vec![1; shape.len()];
    for k in (0..shape.len().saturating_sub(1)).rev() {
        st[k] = st[k + 1] * shape[k + 1];
    }
    st
}

pub(crate) fn flat(strides: &[usize], idx: &[usize]) -> usize {
    strides.iter().zip(idx).map(|(s, i)| s * i).sum()
}

fn position(coords: &[Rat], x: &Rat) -> usize {
    coords.binary_search(x).expect("coordinate missing from refinement grid")
}

impl Grid {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.coords.iter().map(|c| c.len() - 1).collect()
    }

    pub fn strides(&self) -> Vec<usize> {
        strides(&self.shape())
    }

    pub fn width(&self, axis: usize, k: usize) -> Rat {
        &self.coords[axis][k + 1] - &self.coords[axis][k]
    }

    /// Coordinates `{0, 1}` plus every box endpoint, per axis.
    pub fn coords_of(dim: usize, boxes: &[AxisBox]) -> Vec<Vec<Rat>> {
        let mut coords: Vec<Vec<Rat>> = (0..dim).map(|_| vec![Rat::zero(), Rat::one()]).collect();
        for b in boxes {
            for axis in 0..dim {
                coords[axis].push(b.lo()[axis].clone());
                coords[axis].push(b.hi()[axis].clone());
            }
        }
        for c in &mut coords {
            c.sort();
            c.dedup();
        }
        coords
    }

    pub fn merge_coords(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                let mut c: Vec<Rat> = x.iter().chain(y).cloned().collect();
                c.sort();
                c.dedup();
                c
            })
            .collect()
    }

    /// Rasterize `boxes` onto `coords`, which must contain every box endpoint.
    pub fn rasterize(coords: Vec<Vec<Rat>>, boxes: &[AxisBox]) -> Grid {
        let shape: Vec<usize> = coords.iter().map(|c| c.len() - 1).collect();
        let st = strides(&shape);
        let mut occ = vec![false; shape.iter().product()];
        for b in boxes {
            let lo: Vec<usize> = (0..coords.len()).map(|a| position(&coords[a], &b.lo()[a])).collect();
            let hi: Vec<usize> = (0..coords.len()).map(|a| position(&coords[a], &b.hi()[a])).collect();
            for idx in Odometer::new(lo, hi) {
                occ[flat(&st, &idx)] = true;
            }
        }
        Grid { coords, occ }
    }

    pub fn of_set(set: &CubicalSet) -> Grid {
        Grid::rasterize(Grid::coords_of(set.dim(), set.boxes()), set.boxes())
    }

    pub fn of_set_on(set: &CubicalSet, coords: Vec<Vec<Rat>>) -> Grid {
        Grid::rasterize(coords, set.boxes())
    }

    /// Both sets rasterized on their common refinement.
    pub fn pair(a: &CubicalSet, b: &CubicalSet) -> (Grid, Grid) {
        let ca = Grid::coords_of(a.dim(), a.boxes());
        let cb = Grid::coords_of(b.dim(), b.boxes());
        let coords = Grid::merge_coords(&ca, &cb);
        (Grid::of_set_on(a, coords.clone()), Grid::of_set_on(b, coords))
    }

    /// Occupancy of the `(n-1)`-dimensional layer `k` perpendicular to `axis`.
    pub fn layer(&self, axis: usize, k: usize) -> Grid {
        let shape = self.shape();
        let st = strides(&shape);
        let mut sub_shape = shape.clone();
        sub_shape.remove(axis);
        let mut occ = Vec::with_capacity(sub_shape.iter().product());
        for mut idx in Odometer::full(&sub_shape) {
            idx.insert(axis, k);
            occ.push(self.occ[flat(&st, &idx)]);
        }
        let mut coords = self.coords.clone();
        coords.remove(axis);
        Grid { coords, occ }
    }

    /// Drop interior coordinates across which nothing changes. The result is
    /// the unique coarsest grid for the point set.
    pub fn minimize(self) -> Grid {
        let mut g = self;
        for axis in 0..g.dim() {
            let len = g.coords[axis].len() - 1;
            if len <= 1 {
                continue;
            }
            let layers: Vec<Grid> = (0..len).map(|k| g.layer(axis, k)).collect();
            let mut keep = vec![0usize];
            for k in 1..len {
                if layers[k].occ != layers[*keep.last().unwrap()].occ {
                    keep.push(k);
                }
            }
            if keep.len() == len {
                continue;
            }
            let mut new_coords: Vec<Rat> = keep.iter().map(|&k| g.coords[axis][k].clone()).collect();
            new_coords.push(Rat::one());
            let mut coords = g.coords.clone();
            coords[axis] = new_coords;
            let shape: Vec<usize> = coords.iter().map(|c| c.len() - 1).collect();
            let st = strides(&shape);
            let old_st = g.strides();
            let mut occ = vec![false; shape.iter().product()];
            for idx in Odometer::full(&shape) {
                let mut src = idx.clone();
                src[axis] = keep[idx[axis]];
                occ[flat(&st, &idx)] = g.occ[flat(&old_st, &src)];
            }
            g = Grid { coords, occ };
        }
        g
    }

    /// Greedy box decomposition: from each unused occupied cell in index
    /// order, grow along axis 0, then axis 1, and so on.
    pub fn boxes(&self) -> Vec<AxisBox> {
        let shape = self.shape();
        let st = strides(&shape);
        let n = shape.len();
        let mut used = vec![false; self.occ.len()];
        let mut out = Vec::new();
        for (f, start) in Odometer::full(&shape).enumerate() {
            if !self.occ[f] || used[f] {
                continue;
            }
            let mut ext = vec![1usize; n];
            for axis in 0..n {
                loop {
                    let next = start[axis] + ext[axis];
                    if next >= shape[axis] {
                        break;
                    }
                    let mut lo = start.clone();
                    let mut hi: Vec<usize> = start.iter().zip(&ext).map(|(s, e)| s + e).collect();
                    lo[axis] = next;
                    hi[axis] = next + 1;
                    let free = Odometer::new(lo, hi).all(|idx| {
                        let g = flat(&st, &idx);
                        self.occ[g] && !used[g]
                    });
                    if !free {
                        break;
                    }
                    ext[axis] += 1;
                }
            }
            let hi: Vec<usize> = start.iter().zip(&ext).map(|(s, e)| s + e).collect();
            for idx in Odometer::new(start.clone(), hi.clone()) {
                used[flat(&st, &idx)] = true;
            }
            let lo_c = (0..n).map(|a| self.coords[a][start[a]].clone()).collect();
            let hi_c = (0..n).map(|a| self.coords[a][hi[a]].clone()).collect();
            out.push(AxisBox::new_unchecked(lo_c, hi_c));
        }
        out.sort();
        out
    }

    pub fn into_set(self) -> CubicalSet {
        let dim = self.dim();
        let g = self.minimize();
        CubicalSet::from_canonical(dim, g.boxes())
    }

    /// Measure of the facet between layers `k-1` and `k` along `axis` at the
    /// `(n-1)`-cell `sub` (indices of the other axes in order).
    pub fn facet_measure(&self, axis: usize, sub: &[usize]) -> Rat {
        let mut m = Rat::one();
        let mut j = 0;
        for a in 0..self.dim() {
            if a == axis {
                continue;
            }
            m = m * self.width(a, sub[j]);
            j += 1;
        }
        m
    }

    /// Facets on interior planes where occupancy changes: `(axis, k, sub,
    /// occupied_below)` with `sub` the cell index in the other axes.
    pub fn boundary_facets(&self) -> Vec<(usize, usize, Vec<usize>, bool)> {
        let shape = self.shape();
        let st = strides(&shape);
        let mut out = Vec::new();
        for axis in 0..self.dim() {
            let mut sub_shape = shape.clone();
            sub_shape.remove(axis);
            for k in 1..shape[axis] {
                for sub in Odometer::full(&sub_shape) {
                    let mut below = sub.clone();
                    below.insert(axis, k - 1);
                    let mut above = sub.clone();
                    above.insert(axis, k);
                    let b = self.occ[flat(&st, &below)];
                    if b != self.occ[flat(&st, &above)] {
                        out.push((axis, k, sub, b));
                    }
                }
            }
        }
        out
    }

    /// Relative perimeter: for each axis and each interior plane, the measure
    /// of the facets where occupancy changes across the plane.
    pub fn relative_perimeter(&self) -> Rat {
        self.boundary_facets().iter().map(|(axis, _, sub, _)| self.facet_measure(*axis, sub)).sum()
    }

    pub fn map_occ(mut self, f: impl Fn(bool) -> bool) -> Grid {
        for o in &mut self.occ {
            *o = f(*o);
        }
        self
    }

    pub fn zip_occ(mut self, other: &Grid, f: impl Fn(bool, bool) -> bool) -> Grid {
        debug_assert_eq!(self.coords, other.coords);
        for (o, p) in self.occ.iter_mut().zip(&other.occ) {
            *o = f(*o, *p);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odometer_order_is_row_major() {
        let cells: Vec<Vec<usize>> = Odometer::full(&[2, 3]).collect();
        assert_eq!(cells.len(), 6);
        assert_eq!(cells[0], vec![0, 0]);
        assert_eq!(cells[1], vec![0, 1]);
        assert_eq!(cells[3], vec![1, 0]);
        assert_eq!(Odometer::full(&[]).count(), 1);
        assert_eq!(Odometer::full(&[0, 2]).count(), 0);
    }

    #[test]
    fn strides_match_odometer() {
        let shape = [3, 2, 4];
        let st = strides(&shape);
        for (f, idx) in Odometer::full(&shape).enumerate() {
            assert_eq!(flat(&st, &idx), f);
        }
    }
}
