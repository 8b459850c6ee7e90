//! JSON set and voxel files. Rationals are always `"p/q"` strings, object
//! keys are sorted, boxes come in canonical order and cells ascend.

use std::fmt;

use cubeiso_core::enclosure::Enclosure;
use cubeiso_core::geometry::MAX_DIM;
use cubeiso_core::rat::ParseRatError;
use cubeiso_core::{AxisBox, CubicalSet, GeometryError, Rat, VoxelSet};
use serde_json::{json, Map, Value};

#[derive(Debug)]
pub enum FormatError {
    Json(serde_json::Error),
    /// Missing or mistyped field, named by its JSON path.
    Schema(String),
    Rational { path: String, source: ParseRatError },
    Geometry(GeometryError),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Json(e) => write!(f, "malformed JSON: {e}"),
            FormatError::Schema(msg) => write!(f, "schema error: {msg}"),
            FormatError::Rational { path, source } => write!(f, "{path}: {source}"),
            FormatError::Geometry(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FormatError {}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e)
    }
}

impl From<GeometryError> for FormatError {
    fn from(e: GeometryError) -> Self {
        FormatError::Geometry(e)
    }
}

pub fn rat(r: &Rat) -> Value {
    Value::String(r.to_pq())
}

/// `"p/q"` when exact, otherwise `["lo", "hi"]`.
pub fn enclosure(e: &Enclosure) -> Value {
    match e.as_exact() {
        Some(r) => rat(r),
        None => json!([e.lo().to_pq(), e.hi().to_pq()]),
    }
}

pub fn set_json(x: &CubicalSet) -> Value {
    let boxes: Vec<Value> = x
        .boxes()
        .iter()
        .map(|b| {
            json!({
                "hi": b.hi().iter().map(rat).collect::<Vec<_>>(),
                "lo": b.lo().iter().map(rat).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "boxes": boxes, "dim": x.dim() })
}

pub fn voxel_json(v: &VoxelSet) -> Value {
    json!({ "cells": v.cells(), "dim": v.dim(), "res": v.res() })
}

/// Pretty JSON with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, FormatError> {
    obj.get(key).ok_or_else(|| FormatError::Schema(format!("{path}: missing \"{key}\"")))
}

fn as_usize(v: &Value, path: &str) -> Result<usize, FormatError> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| FormatError::Schema(format!("{path}: expected a non-negative integer")))
}

fn parse_rat(v: &Value, path: &str) -> Result<Rat, FormatError> {
    let s = v.as_str().ok_or_else(|| FormatError::Schema(format!("{path}: expected a \"p/q\" string")))?;
    s.parse().map_err(|source| FormatError::Rational { path: path.to_string(), source })
}

fn parse_point(v: &Value, dim: usize, path: &str) -> Result<Vec<Rat>, FormatError> {
    let arr = v.as_array().ok_or_else(|| FormatError::Schema(format!("{path}: expected an array")))?;
    if arr.len() != dim {
        return Err(FormatError::Schema(format!("{path}: expected {dim} coordinates, got {}", arr.len())));
    }
    arr.iter().enumerate().map(|(i, c)| parse_rat(c, &format!("{path}[{i}]"))).collect()
}

fn parse_dim(obj: &Map<String, Value>) -> Result<usize, FormatError> {
    let dim = as_usize(field(obj, "dim", "$")?, "$.dim")?;
    if dim == 0 || dim > MAX_DIM {
        return Err(FormatError::Geometry(GeometryError::UnsupportedDimension(dim)));
    }
    Ok(dim)
}

/// Parse either file format into a canonical set.
pub fn parse_set(text: &str) -> Result<CubicalSet, FormatError> {
    let value: Value = serde_json::from_str(text)?;
    let obj = value.as_object().ok_or_else(|| FormatError::Schema("$: expected an object".into()))?;
    if obj.contains_key("res") {
        return Ok(cubeiso_core::devoxelize(&voxels_from(obj)?));
    }
    let dim = parse_dim(obj)?;
    let boxes = field(obj, "boxes", "$")?
        .as_array()
        .ok_or_else(|| FormatError::Schema("$.boxes: expected an array".into()))?;
    let mut out = Vec::with_capacity(boxes.len());
    for (i, b) in boxes.iter().enumerate() {
        let path = format!("$.boxes[{i}]");
        let bo = b.as_object().ok_or_else(|| FormatError::Schema(format!("{path}: expected an object")))?;
        let lo = parse_point(field(bo, "lo", &path)?, dim, &format!("{path}.lo"))?;
        let hi = parse_point(field(bo, "hi", &path)?, dim, &format!("{path}.hi"))?;
        out.push(AxisBox::new(lo, hi)?);
    }
    Ok(CubicalSet::normalize(dim, &out)?)
}

fn voxels_from(obj: &Map<String, Value>) -> Result<VoxelSet, FormatError> {
    let dim = parse_dim(obj)?;
    let res = as_usize(field(obj, "res", "$")?, "$.res")?;
    if res == 0 || res.checked_pow(dim as u32).map_or(true, |n| n > 1 << 24) {
        return Err(FormatError::Schema("$.res: resolution out of range".into()));
    }
    let cells = field(obj, "cells", "$")?
        .as_array()
        .ok_or_else(|| FormatError::Schema("$.cells: expected an array".into()))?;
    let len = res.pow(dim as u32);
    let mut v = VoxelSet::empty(dim, res);
    for (i, c) in cells.iter().enumerate() {
        let idx = as_usize(c, &format!("$.cells[{i}]"))?;
        if idx >= len {
            return Err(FormatError::Schema(format!("$.cells[{i}]: index {idx} outside 0..{len}")));
        }
        v.set(idx, true);
    }
    Ok(v)
}

pub fn parse_voxels(text: &str) -> Result<VoxelSet, FormatError> {
    let value: Value = serde_json::from_str(text)?;
    let obj = value.as_object().ok_or_else(|| FormatError::Schema("$: expected an object".into()))?;
    voxels_from(obj)
}
