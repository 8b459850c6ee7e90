//! Wavefront OBJ export of the relative boundary of a 3D set, plus the
//! wireframe of the unit cube.

use std::collections::BTreeMap;
use std::fmt::Write;

use cubeiso_core::{CubicalSet, Facet, GeometryError, Rat};

type Point = [Rat; 3];

/// Outward-oriented quad with corners in counter-clockwise order.
fn quad(f: &Facet) -> [Point; 4] {
    let (u, v) = match f.axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let corner = |pu: &Rat, pv: &Rat| {
        let mut p: Point = [f.lo[0].clone(), f.lo[1].clone(), f.lo[2].clone()];
        p[u] = pu.clone();
        p[v] = pv.clone();
        p
    };
    let mut q = [
        corner(&f.lo[u], &f.lo[v]),
        corner(&f.hi[u], &f.lo[v]),
        corner(&f.hi[u], &f.hi[v]),
        corner(&f.lo[u], &f.hi[v]),
    ];
    // e_u x e_v is -e_1 for the middle axis
    let ccw_normal_positive = f.axis != 1;
    if ccw_normal_positive != f.occupied_below {
        q.swap(1, 3);
    }
    q
}

/// Decimal coordinate with trailing zeros removed.
fn coord(r: &Rat) -> String {
    let s = r.to_decimal(12);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

#[derive(Default)]
struct Vertices {
    index: BTreeMap<Point, usize>,
    order: Vec<Point>,
}

impl Vertices {
    fn id(&mut self, p: &Point) -> usize {
        if let Some(&i) = self.index.get(p) {
            return i;
        }
        self.order.push(p.clone());
        self.index.insert(p.clone(), self.order.len());
        self.order.len()
    }
}

/// OBJ text for the boundary of `x` inside the open cube. Quads are split
/// along the diagonal whose sorted endpoints compare smaller when
/// `triangulate` is set.
pub fn obj(x: &CubicalSet, triangulate: bool) -> Result<String, GeometryError> {
    if x.dim() != 3 {
        return Err(GeometryError::UnsupportedDimension(x.dim()));
    }
    let mut verts = Vertices::default();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for f in x.boundary_facets() {
        let q = quad(&f);
        let ids: Vec<usize> = q.iter().map(|p| verts.id(p)).collect();
        if !triangulate {
            faces.push(ids);
            continue;
        }
        let key = |a: usize, b: usize| if q[a] <= q[b] { (&q[a], &q[b]) } else { (&q[b], &q[a]) };
        if key(0, 2) <= key(1, 3) {
            faces.push(vec![ids[0], ids[1], ids[2]]);
            faces.push(vec![ids[0], ids[2], ids[3]]);
        } else {
            faces.push(vec![ids[1], ids[2], ids[3]]);
            faces.push(vec![ids[1], ids[3], ids[0]]);
        }
    }
    let (z, o) = (Rat::zero(), Rat::one());
    let mut corners = Vec::new();
    for i in 0..8usize {
        let p: Point = [0, 1, 2].map(|k| if i >> (2 - k) & 1 == 1 { o.clone() } else { z.clone() });
        corners.push(verts.id(&p));
    }
    let mut out = String::from("# relative boundary and unit cube wireframe\n");
    for p in &verts.order {
        let _ = writeln!(out, "v {} {} {}", coord(&p[0]), coord(&p[1]), coord(&p[2]));
    }
    out.push_str("g boundary\n");
    for f in &faces {
        out.push('f');
        for i in f {
            let _ = write!(out, " {i}");
        }
        out.push('\n');
    }
    out.push_str("g wireframe\n");
    for i in 0..8usize {
        for bit in [4usize, 2, 1] {
            if i & bit == 0 {
                let _ = writeln!(out, "l {} {}", corners[i], corners[i | bit]);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(text: &str, prefix: &str) -> usize {
        text.lines().filter(|l| l.starts_with(prefix)).count()
    }

    #[test]
    fn half_cube_has_three_inner_faces() {
        let h = Rat::new(1, 2);
        let x = CubicalSet::origin_box(&[h.clone(), h.clone(), h]);
        let text = obj(&x, false).unwrap();
        assert_eq!(count(&text, "f "), 3);
        assert_eq!(count(&text, "l "), 12);
        // 7 distinct face corners, none on a cube corner
        assert_eq!(count(&text, "v "), 7 + 8);
        assert_eq!(count(&obj(&x, true).unwrap(), "f "), 6);
    }

    #[test]
    fn quads_face_away_from_the_set() {
        let h = Rat::new(1, 2);
        let x = CubicalSet::origin_box(&[h.clone(), h.clone(), h]);
        for f in x.boundary_facets() {
            let q = quad(&f);
            let d = |a: &Point, b: &Point| [0, 1, 2].map(|k| &b[k] - &a[k]);
            let (e1, e2) = (d(&q[0], &q[1]), d(&q[0], &q[2]));
            let (i, j) = ((f.axis + 1) % 3, (f.axis + 2) % 3);
            let normal = &e1[i] * &e2[j] - &e1[j] * &e2[i];
            assert_eq!(normal.is_positive(), f.occupied_below, "axis {}", f.axis);
        }
    }

    #[test]
    fn plane_sets_are_rejected() {
        assert!(obj(&CubicalSet::full(2), false).is_err());
    }
}
