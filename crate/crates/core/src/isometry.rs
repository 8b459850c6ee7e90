//! Symmetries of the unit cube: signed axis permutations.

use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::{AxisBox, CubicalSet};
use crate::rat::Rat;

/// `x -> y` with `y[perm[i]] = x[i]`, or `1 - x[i]` when `flip[i]` is set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeIsometry {
    perm: Vec<usize>,
    flip: Vec<bool>,
}

impl CubeIsometry {
    pub fn identity(dim: usize) -> Self {
        CubeIsometry { perm: (0..dim).collect(), flip: vec![false; dim] }
    }

    /// `None` unless `perm` is a permutation of `0..n` and `flip` has length `n`.
    pub fn new(perm: Vec<usize>, flip: Vec<bool>) -> Option<Self> {
        let n = perm.len();
        if flip.len() != n {
            return None;
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return None;
            }
            seen[p] = true;
        }
        Some(CubeIsometry { perm, flip })
    }

    pub fn swap(dim: usize, a: usize, b: usize) -> Self {
        let mut perm: Vec<usize> = (0..dim).collect();
        perm.swap(a, b);
        CubeIsometry { perm, flip: vec![false; dim] }
    }

    pub fn reflect(dim: usize, axis: usize) -> Self {
        let mut flip = vec![false; dim];
        flip[axis] = true;
        CubeIsometry { perm: (0..dim).collect(), flip }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn flip(&self) -> &[bool] {
        &self.flip
    }

    pub fn apply_point(&self, x: &[Rat]) -> Vec<Rat> {
        let mut y = vec![Rat::zero(); x.len()];
        for (i, xi) in x.iter().enumerate() {
            y[self.perm[i]] = if self.flip[i] { Rat::one() - xi } else { xi.clone() };
        }
        y
    }

    /// Integer-grid version of [`apply_point`](Self::apply_point) on cell
    /// indices `0..res`.
    pub fn apply_cell(&self, cell: &[usize], res: usize) -> Vec<usize> {
        let mut y = vec![0; cell.len()];
        for (i, &c) in cell.iter().enumerate() {
            y[self.perm[i]] = if self.flip[i] { res - 1 - c } else { c };
        }
        y
    }

    /// `self` after `other`: `x -> self(other(x))`.
    pub fn compose(&self, other: &CubeIsometry) -> CubeIsometry {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut flip = vec![false; n];
        for i in 0..n {
            let mid = other.perm[i];
            perm[i] = self.perm[mid];
            flip[i] = other.flip[i] ^ self.flip[mid];
        }
        CubeIsometry { perm, flip }
    }

    pub fn inverse(&self) -> CubeIsometry {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut flip = vec![false; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            flip[self.perm[i]] = self.flip[i];
        }
        CubeIsometry { perm, flip }
    }

    pub fn apply_box(&self, b: &AxisBox) -> AxisBox {
        let n = b.dim();
        let mut lo = vec![Rat::zero(); n];
        let mut hi = vec![Rat::zero(); n];
        for i in 0..n {
            let j = self.perm[i];
            if self.flip[i] {
                lo[j] = Rat::one() - &b.hi()[i];
                hi[j] = Rat::one() - &b.lo()[i];
            } else {
                lo[j] = b.lo()[i].clone();
                hi[j] = b.hi()[i].clone();
            }
        }
        AxisBox::new_unchecked(lo, hi)
    }

    pub fn apply(&self, x: &CubicalSet) -> CubicalSet {
        assert_eq!(self.dim(), x.dim(), "isometry dimension");
        let boxes: Vec<AxisBox> = x.boxes().iter().map(|b| self.apply_box(b)).collect();
        CubicalSet::normalize(x.dim(), &boxes).expect("isometries preserve the unit cube")
    }

    /// All `2^n n!` isometries, permutations in lexicographic order, then
    /// flip masks in increasing order.
    pub fn all(dim: usize) -> Vec<CubeIsometry> {
        let mut out = Vec::new();
        for perm in permutations(dim) {
            for mask in 0..(1usize << dim) {
                let flip = (0..dim).map(|i| mask >> i & 1 == 1).collect();
                out.push(CubeIsometry { perm: perm.clone(), flip });
            }
        }
        out
    }

    /// The `n!` pure axis permutations.
    pub fn permutations(dim: usize) -> Vec<CubeIsometry> {
        permutations(dim)
            .into_iter()
            .map(|perm| CubeIsometry { perm, flip: vec![false; dim] })
            .collect()
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Whether some cube isometry maps `x` onto `y`; returns the first such in
/// the order of [`CubeIsometry::all`].
pub fn equal_up_to_isometry(x: &CubicalSet, y: &CubicalSet) -> Option<CubeIsometry> {
    if x.dim() != y.dim() || x.volume() != y.volume() {
        return None;
    }
    CubeIsometry::all(x.dim()).into_iter().find(|g| g.apply(x) == *y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn group_order() {
        assert_eq!(CubeIsometry::all(1).len(), 2);
        assert_eq!(CubeIsometry::all(2).len(), 8);
        assert_eq!(CubeIsometry::all(3).len(), 48);
        assert_eq!(permutations(4).len(), 24);
    }

    #[test]
    fn compose_and_inverse() {
        let all = CubeIsometry::all(3);
        let p = [r(1, 5), r(2, 7), r(3, 4)];
        for g in all.iter().step_by(5) {
            assert_eq!(g.compose(&g.inverse()), CubeIsometry::identity(3));
            for h in all.iter().step_by(7) {
                let lhs = g.compose(h).apply_point(&p);
                let rhs = g.apply_point(&h.apply_point(&p));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn reflection_and_swap_examples() {
        let a = r(1, 3);
        let slab = CubicalSet::origin_box(&[a.clone(), Rat::one(), Rat::one()]);
        let image = CubeIsometry::reflect(3, 0).apply(&slab);
        let expect = CubicalSet::normalize(
            3,
            &[AxisBox::new(vec![r(2, 3), Rat::zero(), Rat::zero()], vec![Rat::one(); 3]).unwrap()],
        )
        .unwrap();
        assert_eq!(image, expect);
        let b = r(1, 2);
        let x = CubicalSet::origin_box(&[a.clone(), b.clone(), Rat::one()]);
        assert_eq!(CubeIsometry::swap(3, 0, 1).apply(&x), CubicalSet::origin_box(&[b, a, Rat::one()]));
        assert_eq!(CubeIsometry::identity(3).apply(&x), x);
    }

    #[test]
    fn tube_orientations_are_equivalent() {
        let a = r(2, 5);
        let x = CubicalSet::origin_box(&[a.clone(), a.clone(), Rat::one()]);
        let y = CubicalSet::origin_box(&[Rat::one(), a.clone(), a.clone()]);
        let g = equal_up_to_isometry(&x, &y).expect("permutation");
        assert_eq!(g.apply(&x), y);
    }

    #[test]
    fn cube_is_not_a_tube() {
        let cube = CubicalSet::origin_box(&[r(1, 2), r(1, 2), r(1, 2)]);
        let tube = CubicalSet::origin_box(&[r(1, 2), r(1, 4), Rat::one()]);
        assert_eq!(cube.volume(), tube.volume());
        assert!(equal_up_to_isometry(&cube, &tube).is_none());
    }
}
