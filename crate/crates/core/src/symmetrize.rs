//! Steiner symmetrization toward the coordinate hyperplanes through the origin.

use alloc::vec::Vec;
use core::fmt;

use crate::geometry::{AxisBox, CubicalSet, GeometryError};
use crate::grid::{flat, strides, Grid, Odometer};
use crate::rat::Rat;

/// Column measure over one cell of the perpendicular grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnProfile {
    /// The `(n-1)`-dimensional base cell, as a box in the coordinates other than the axis.
    pub base: AxisBox,
    /// Length of the column inside the set.
    pub length: Rat,
}

impl ColumnProfile {
    /// `[0, length]`, or `None` for an empty column.
    pub fn interval(&self) -> Option<(Rat, Rat)> {
        if self.length.is_zero() {
            None
        } else {
            Some((Rat::zero(), self.length.clone()))
        }
    }
}

/// Piecewise-constant column measures of `x` along `axis`.
pub fn column_profiles(x: &CubicalSet, axis: usize) -> Vec<ColumnProfile> {
    let (coords, lengths) = x.column_lengths(axis);
    let shape: Vec<usize> = coords.iter().map(|c| c.len() - 1).collect();
    Odometer::full(&shape)
        .zip(lengths)
        .map(|(idx, length)| {
            let lo = idx.iter().enumerate().map(|(a, &k)| coords[a][k].clone()).collect();
            let hi = idx.iter().enumerate().map(|(a, &k)| coords[a][k + 1].clone()).collect();
            ColumnProfile { base: AxisBox::new_unchecked(lo, hi), length }
        })
        .collect()
}

/// Push every column along `axis` down to `[0, f(y)]`.
pub fn steiner(x: &CubicalSet, axis: usize) -> Result<CubicalSet, GeometryError> {
    if axis >= x.dim() {
        return Err(GeometryError::AxisOutOfRange { axis, dim: x.dim() });
    }
    let (mut coords, lengths) = x.column_lengths(axis);
    let mut heights: Vec<Rat> = lengths.clone();
    heights.push(Rat::zero());
    heights.push(Rat::one());
    heights.sort();
    heights.dedup();
    let cells_along = heights.len() - 1;
    let sub_shape: Vec<usize> = coords.iter().map(|c| c.len() - 1).collect();
    coords.insert(axis, heights.clone());
    let shape = {
        let mut s = sub_shape.clone();
        s.insert(axis, cells_along);
        s
    };
    let st = strides(&shape);
    let mut occ = alloc::vec![false; shape.iter().product()];
    for (sub, f) in Odometer::full(&sub_shape).zip(&lengths) {
        for k in 0..cells_along {
            if heights[k + 1] <= *f {
                let mut idx = sub.clone();
                idx.insert(axis, k);
                occ[flat(&st, &idx)] = true;
            }
        }
    }
    Ok(Grid { coords, occ }.into_set())
}

/// Fixed point of every Steiner symmetrization.
pub fn is_symmetrized(x: &CubicalSet) -> bool {
    (0..x.dim()).all(|a| steiner(x, a).map(|s| s == *x).unwrap_or(false))
}

/// Symmetrized along `axis` only.
pub fn is_symmetrized_along(x: &CubicalSet, axis: usize) -> bool {
    steiner(x, axis).map(|s| s == *x).unwrap_or(false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotSymmetrizedError {
    pub axis: usize,
}

impl fmt::Display for NotSymmetrizedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "symmetrization along axes 0..n left axis {} unsymmetrized", self.axis)
    }
}

/// Symmetrize along axes `0, 1, ..., n-1`, once each, then verify.
pub fn symmetrize_all(x: &CubicalSet) -> Result<CubicalSet, NotSymmetrizedError> {
    let mut y = x.clone();
    for axis in 0..x.dim() {
        y = steiner(&y, axis).expect("axis in range");
    }
    match (0..y.dim()).find(|&a| !is_symmetrized_along(&y, a)) {
        Some(axis) => Err(NotSymmetrizedError { axis }),
        None => Ok(y),
    }
}
