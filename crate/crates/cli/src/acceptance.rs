//! The acceptance suite behind `cubeiso verify`. Every criterion is a list
//! of named checks; a criterion passes when all of its checks do. Random
//! samples draw from ChaCha streams keyed by criterion and sample index, so
//! results do not depend on the number of worker threads.

use std::time::{Duration, Instant};

use cubeiso_core::bitgrid::{equality_case_grids, equality_case_sweep, BitGrid};
use cubeiso_core::classify::{
    competitor, cube_value, profile, profile2d, stationary_parameters, strip_profile2d, tube_value, uniqueness_audit,
    v1, v2, FamilyKind, ShapeKind, SpecialFamily, Stationarity,
};
use cubeiso_core::enclosure::{tolerance, Enclosure, Polynomial};
use cubeiso_core::search::{brute_min_general, canonical_shapes, certified_at_least, strip_brute_min, MonotoneShape};
use cubeiso_core::symmetrize::{is_symmetrized_along, steiner, symmetrize_all};
use cubeiso_core::variation::{
    classify_psi, event_horizon, is_special, reduce_to_special, singular_points, translate_slice, Direction,
};
use cubeiso_core::{devoxelize, AxisBox, CubicalSet, Rat, VoxelSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::parallel::{par_map, sweep};

#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    pub jobs: usize,
    pub bits: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 0x5eed, jobs: 1, bits: 64 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// `PASS`/`FAIL`, id, name, time, and the first failing check if any.
    pub fn line(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!("{verdict} {:>2} {} ({:.1}s)", self.id, self.name, self.elapsed.as_secs_f64());
        if let Some(c) = self.failed_checks().next() {
            s.push_str(&format!(": {}: {}", c.name, c.detail));
        }
        s
    }
}

fn check(checks: &mut Vec<Check>, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
    checks.push(Check { name: name.into(), passed, detail: detail.into() });
}

/// Count of failures over a sample, with the first failing sample described.
#[derive(Default)]
struct Tally {
    total: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn add(&mut self, outcome: Result<(), String>) {
        self.total += 1;
        if let Err(e) = outcome {
            self.failures += 1;
            self.first.get_or_insert(e);
        }
    }

    fn push(self, checks: &mut Vec<Check>, name: &str) {
        let detail = match &self.first {
            None => format!("{} samples", self.total),
            Some(e) => format!("{} of {} samples fail; first: {e}", self.failures, self.total),
        };
        check(checks, name, self.failures == 0, detail);
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(cfg: &Config, criterion: u8, index: usize) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(cfg.seed);
    r.set_stream((u64::from(criterion) << 32) | index as u64);
    r
}

fn random_voxels(r: &mut ChaCha8Rng, dim: usize, res: usize) -> VoxelSet {
    let p = r.gen_range(0.05..0.95);
    let cells: Vec<usize> = (0..res.pow(dim as u32)).filter(|_| r.gen_bool(p)).collect();
    VoxelSet::from_cells(dim, res, cells)
}

/// Random plane partition in the `m^3` grid with at least one cell.
fn random_monotone3(r: &mut ChaCha8Rng, res: usize) -> MonotoneShape {
    let mut h = vec![0u8; res * res];
    h[0] = r.gen_range(1..=res as u8);
    for p in 1..h.len() {
        let (i, j) = (p / res, p % res);
        let mut b = res as u8;
        if i > 0 {
            b = b.min(h[p - res]);
        }
        if j > 0 {
            b = b.min(h[p - 1]);
        }
        h[p] = r.gen_range(0..=b);
    }
    MonotoneShape::from_heights(3, res, h).expect("heights respect the bounds")
}

fn unit_rat(r: &mut ChaCha8Rng, hi_num: i64, hi_den: i64) -> Rat {
    let den = [7i64, 12, 30, 64, 101, 1000][r.gen_range(0..6)];
    // numerator in 1..den * hi, so the value lies in (0, hi)
    let top = (den * hi_num + hi_den - 1) / hi_den;
    Rat::new(r.gen_range(1..top.max(2)), den)
}

pub type Runner = fn(&Config) -> Vec<Check>;

pub const CRITERIA: [(u8, &str, Runner); 10] = [
    (1, "exact threshold identities", c1_thresholds),
    (2, "tri-slab cubic root and quadratic sign", c2_cubic),
    (3, "competitor certificates", c3_competitors),
    (4, "stationarity symmetry", c4_stationarity),
    (5, "symmetrization properties", c5_symmetrization),
    (6, "first-variation exactness", c6_first_variation),
    (7, "reduction soundness", c7_reduction),
    (8, "oracle agreement", c8_oracle),
    (9, "strip sub-problem", c9_strip),
    (10, "uniqueness audits", c10_audits),
];

pub fn run_criterion(id: u8, cfg: &Config) -> Option<CriterionReport> {
    let &(id, name, f) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let checks = f(cfg);
    Some(CriterionReport { id, name, checks, elapsed: start.elapsed() })
}

/// Run every criterion in order, calling `each` as reports complete.
pub fn run_all(cfg: &Config, mut each: impl FnMut(&CriterionReport)) -> Vec<CriterionReport> {
    CRITERIA
        .iter()
        .map(|c| {
            let rep = run_criterion(c.0, cfg).expect("listed criterion");
            each(&rep);
            rep
        })
        .collect()
}

fn c1_thresholds(cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    let t = Enclosure::exact(Rat::new(16, 27));
    check(&mut out, "V1 = (2/3)^6", v1() == Rat::new(2, 3).pow(6), v1().to_pq());
    let (c, tb) = (cube_value(&v1(), cfg.bits), tube_value(&v1(), cfg.bits));
    check(&mut out, "3 V1^(2/3) = 16/27", c == t, c.to_string());
    check(&mut out, "2 V1^(1/2) = 16/27", tb == t, tb.to_string());
    let t2 = tube_value(&v2(), cfg.bits);
    check(&mut out, "2 V2^(1/2) = 1", v2() == Rat::new(1, 4) && t2 == Enclosure::exact(Rat::one()), t2.to_string());
    let k1 = profile(&v1(), cfg.bits).map(|p| p.kinds);
    check(&mut out, "kinds at V1", k1 == Ok(vec![ShapeKind::Cube, ShapeKind::Tube]), format!("{k1:?}"));
    let k2 = profile(&v2(), cfg.bits).map(|p| p.kinds);
    check(&mut out, "kinds at V2", k2 == Ok(vec![ShapeKind::Tube, ShapeKind::Slab]), format!("{k2:?}"));
    out
}

fn c2_cubic(_: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    let cubic = Polynomial::from_ints(&[-1, 6, -6, 2]);
    let bound = Rat::new(3, 10);
    match cubic.root_in(&Rat::zero(), &bound, 64) {
        Ok(root) => {
            let inside = root.lo().is_positive() && *root.hi() <= bound;
            check(&mut out, "root in (0, 3/10]", inside, root.to_decimal(20));
            check(&mut out, "width <= 2^-64", root.width() <= tolerance(64), root.width().to_decimal(24));
        }
        Err(e) => check(&mut out, "root in (0, 3/10]", false, e.to_string()),
    }
    let quad = Polynomial::from_ints(&[-2, 6, -3]);
    for k in 0..=3 {
        let a = Rat::new(k, 10);
        let q = quad.eval(&a);
        check(&mut out, format!("-3a^2+6a-2 < 0 at a = {}", a.to_pq()), q.is_negative(), q.to_pq());
    }
    out
}

fn sample_family(r: &mut ChaCha8Rng, kind: FamilyKind) -> SpecialFamily {
    loop {
        let (a, b, c) = (unit_rat(r, 1, 1), unit_rat(r, 1, 1), unit_rat(r, 1, 1));
        let fam = match kind {
            FamilyKind::TriSlabA => SpecialFamily::TriSlabA(a, b, c),
            FamilyKind::SlabLegC => SpecialFamily::SlabLegC(a, b, c),
            _ => SpecialFamily::TripodD(a, b, c),
        };
        if fam.realize().is_ok_and(|x| x.volume() <= Rat::new(1, 2)) {
            return fam;
        }
    }
}

fn certify(fam: &SpecialFamily) -> Result<(), String> {
    let comp = competitor(fam).map_err(|e| format!("{fam:?}: {e}"))?;
    let vol = fam.realize().map_err(|e| e.to_string())?.volume();
    ensure(comp.delta_vol.is_zero() && comp.set.volume() == vol, || format!("{fam:?}: volume changes by {}", comp.delta_vol))?;
    ensure(comp.delta_relper.is_negative(), || format!("{fam:?}: relper changes by {}", comp.delta_relper))
}

fn c3_competitors(cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    let kinds = [FamilyKind::TriSlabA, FamilyKind::SlabLegC, FamilyKind::TripodD];
    for (fi, &kind) in kinds.iter().enumerate() {
        let mut tally = Tally::default();
        for res in par_map(100, cfg.jobs, |i| certify(&sample_family(&mut rng(cfg, 3, fi * 1000 + i), kind))) {
            tally.add(res);
        }
        // the symmetric stationary points, where they exist
        for v in [Rat::new(1, 10), Rat::new(1, 4), Rat::new(1, 2)] {
            if let Ok(Stationarity::Solutions(sol)) = stationary_parameters(kind, &v, cfg.bits) {
                for p in sol {
                    let (a, b, c) = (p.a.midpoint(), p.b.midpoint(), p.c.midpoint());
                    let fam = match kind {
                        FamilyKind::TriSlabA => SpecialFamily::TriSlabA(a, b, c),
                        _ => SpecialFamily::TripodD(a, b, c),
                    };
                    tally.add(certify(&fam));
                }
            }
        }
        tally.push(&mut out, &format!("{} dVol = 0, dRelPer < 0", kind.name()));
    }
    let mut tally = Tally::default();
    for res in par_map(100, cfg.jobs, |i| {
        let a = unit_rat(&mut rng(cfg, 3, 9000 + i), 1, 2);
        let fam = SpecialFamily::TripodD(a.clone(), a.clone(), a.clone());
        let comp = competitor(&fam).map_err(|e| e.to_string())?;
        let want = -(&a * &(Rat::one() - &a));
        ensure(comp.delta_relper == want, || format!("a = {a}: {} != {want}", comp.delta_relper))
    }) {
        tally.add(res);
    }
    tally.push(&mut out, "symmetric tripod dRelPer = -a(1-a)");
    out
}

fn c4_stationarity(cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    for v in [Rat::new(1, 10), Rat::new(1, 4), Rat::new(1, 2)] {
        for kind in [FamilyKind::BoxI, FamilyKind::TriSlabA, FamilyKind::TripodD, FamilyKind::TubeII] {
            let name = format!("{} at V = {}", kind.name(), v.to_pq());
            match stationary_parameters(kind, &v, cfg.bits) {
                Ok(Stationarity::Solutions(sol)) => {
                    let ok = !sol.is_empty()
                        && sol.iter().all(|p| p.a == p.b && (kind == FamilyKind::TubeII || p.b == p.c));
                    let want = if kind == FamilyKind::TubeII { "a = b" } else { "a = b = c" };
                    check(&mut out, name, ok, format!("{} solutions, {want}", sol.len()));
                }
                Ok(Stationarity::Infeasible { reason }) => check(&mut out, name, false, reason),
                Err(e) => check(&mut out, name, false, e.to_string()),
            }
        }
        let name = format!("slab-leg infeasible at V = {}", v.to_pq());
        match stationary_parameters(FamilyKind::SlabLegC, &v, cfg.bits) {
            Ok(Stationarity::Infeasible { reason }) => check(&mut out, name, true, reason),
            other => check(&mut out, name, false, format!("{other:?}")),
        }
    }
    out
}

fn symmetrization_sample(cfg: &Config, i: usize) -> Result<(), String> {
    let mut r = rng(cfg, 5, i);
    let (dim, res) = if i % 2 == 0 { (2, r.gen_range(1..=8)) } else { (3, r.gen_range(1..=6)) };
    let v = random_voxels(&mut r, dim, res);
    let x = devoxelize(&v);
    let tag = || format!("n={dim} m={res} cells={:?}", v.cells());
    let mut sym = Vec::with_capacity(dim);
    for axis in 0..dim {
        let s = steiner(&x, axis).map_err(|e| e.to_string())?;
        ensure(s.volume() == x.volume(), || format!("volume changes along {axis}: {}", tag()))?;
        ensure(s.relative_perimeter() <= x.relative_perimeter(), || format!("perimeter grows along {axis}: {}", tag()))?;
        ensure(steiner(&s, axis).as_ref() == Ok(&s), || format!("not idempotent along {axis}: {}", tag()))?;
        sym.push(s);
    }
    for (i, s) in sym.iter().enumerate() {
        for j in (0..dim).filter(|&j| j != i) {
            let y = steiner(s, j).map_err(|e| e.to_string())?;
            ensure(is_symmetrized_along(&y, i), || format!("axis {i} lost after symmetrizing along {j}: {}", tag()))?;
        }
    }
    Ok(())
}

fn c5_symmetrization(cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    let mut tally = Tally::default();
    for res in par_map(10_000, cfg.jobs, |i| symmetrization_sample(cfg, i)) {
        tally.add(res);
    }
    tally.push(&mut out, "volume, perimeter, idempotence, stability");
    let grids = equality_case_grids();
    let sweeps = par_map(grids.len(), cfg.jobs, |g| {
        let (n, m) = grids[g];
        equality_case_sweep(&BitGrid::new(n, m).expect("grid fits in 32 cells"))
    });
    let mut mismatches = 0;
    let mut literal = Vec::new();
    let mut first = None;
    for (&(n, m), s) in grids.iter().zip(&sweeps) {
        mismatches += s.column_mismatches;
        if s.not_isometric > 0 {
            literal.push(format!("n={n} m={m}: {} of {} equality cases", s.not_isometric, s.equal));
            if first.is_none() {
                first = s.first_counterexample.map(|(mask, axis)| {
                    let cells = BitGrid::new(n, m).expect("grid fits").to_voxels(mask).cells();
                    format!("n={n} m={m} cells {cells:?} along axis {axis}")
                });
            }
        }
    }
    let checked: u64 = sweeps.iter().map(|s| s.checked).sum();
    check(
        &mut out,
        "equality iff every column is an end interval and columns nest",
        mismatches == 0,
        format!("{checked} (set, axis) pairs, {mismatches} mismatches"),
    );
    check(
        &mut out,
        "equality only for isometric images",
        literal.is_empty(),
        if literal.is_empty() {
            format!("{checked} (set, axis) pairs")
        } else {
            format!("counterexample {}; {}", first.unwrap_or_default(), literal.join("; "))
        },
    );
    out
}

fn first_variation_sample(cfg: &Config, i: usize) -> Result<usize, String> {
    let mut r = rng(cfg, 6, i);
    let (dim, res) = if i % 2 == 0 { (2, r.gen_range(1..=6)) } else { (3, r.gen_range(1..=4)) };
    let x = symmetrize_all(&devoxelize(&random_voxels(&mut r, dim, res))).map_err(|e| e.to_string())?;
    let mut slices = 0;
    for axis in 0..dim {
        for s in singular_points(&x, axis) {
            let data = classify_psi(&x, axis, &s).map_err(|e| e.to_string())?;
            slices += 1;
            for dir in [Direction::Up, Direction::Down] {
                let ev = event_horizon(&x, axis, &s, dir);
                let mut d = &ev.distance * &Rat::new(r.gen_range(1..16), 16);
                if dir == Direction::Down {
                    d = -d;
                }
                let y = translate_slice(&x, axis, &s, &d).map_err(|e| e.to_string())?;
                let tag = || format!("axis {axis} s={s} d={d} in {x:?}");
                ensure(y.relative_perimeter() - x.relative_perimeter() == &data.signed_perimeter * &d, || {
                    format!("perimeter change is not P d: {}", tag())
                })?;
                ensure(y.volume() - x.volume() == &data.area * &d, || format!("volume change is not A d: {}", tag()))?;
            }
        }
    }
    Ok(slices)
}

fn c6_first_variation(cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    let mut tally = Tally::default();
    let mut slices = 0;
    for res in par_map(1000, cfg.jobs, |i| first_variation_sample(cfg, i)) {
        slices += res.as_ref().copied().unwrap_or(0);
        tally.add(res.map(|_| ()));
    }
    tally.push(&mut out, "translation changes relper by P d and volume by A d");
    check(&mut out, "singular slices exercised", slices > 0, format!("{slices} slices"));
    out
}

fn reduction_sample(cfg: &Config, i: usize) -> Result<(), String> {
    let mut r = rng(cfg, 7, i);
    let res = r.gen_range(2..=5);
    let shape = random_monotone3(&mut r, res);
    let x = devoxelize(&shape.to_voxels());
    let tag = || format!("m={res} heights {:?}", shape.heights());
    let red = reduce_to_special(&x).map_err(|e| format!("{}: {e}", tag()))?;
    ensure(is_special(&red.set), || format!("output is not special: {}", tag()))?;
    ensure(red.set.volume() == x.volume(), || format!("volume changes: {}", tag()))?;
    ensure(red.set.relative_perimeter() <= x.relative_perimeter(), || format!("perimeter grows: {}", tag()))?;
    let total: Rat = red.log.iter().map(|s| &s.delta_relper).sum();
    ensure(&x.relative_perimeter() + &total == red.set.relative_perimeter(), || format!("log does not add up: {}", tag()))?;
    ensure(red.log.iter().all(|s| s.delta_vol.is_zero() && !s.delta_relper.is_positive()), || {
        format!("a logged step changes volume or raises perimeter: {}", tag())
    })
}

fn c7_reduction(cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    let mut tally = Tally::default();
    for res in par_map(1000, cfg.jobs, |i| reduction_sample(cfg, i)) {
        tally.add(res);
    }
    tally.push(&mut out, "special output, same volume, no perimeter increase");
    out
}

fn c8_oracle(cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    for (n, m) in [(2usize, 1usize), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2)] {
        let mut tally = Tally::default();
        match sweep(n, m, None, cfg.jobs) {
            Ok(rows) => {
                for row in rows {
                    tally.add(match brute_min_general(n, m, row.k) {
                        Ok(g) => ensure(g.min == row.min, || format!("k={}: general {} vs monotone {}", row.k, g.min, row.min)),
                        Err(e) => Err(e.to_string()),
                    });
                }
            }
            Err(e) => tally.add(Err(e.to_string())),
        }
        tally.push(&mut out, &format!("general = monotone minimum, n={n} m={m}"));
    }
    let grids: Vec<(usize, usize)> = (1..=6).map(|m| (2, m)).chain((1..=4).map(|m| (3, m))).collect();
    for (n, m) in grids {
        let rows = match sweep(n, m, None, cfg.jobs) {
            Ok(rows) => rows,
            Err(e) => {
                check(&mut out, format!("n={n} m={m}"), false, e.to_string());
                continue;
            }
        };
        let mut bound = Tally::default();
        let mut repr = Tally::default();
        for row in rows.iter().filter(|r| r.k > 0) {
            let v = row.volume();
            let entry = if n == 2 { profile2d(&v, cfg.bits) } else { profile(&v, cfg.bits) };
            let entry = match entry {
                Ok(e) => e,
                Err(e) => {
                    bound.add(Err(e.to_string()));
                    continue;
                }
            };
            let at_least = certified_at_least(&row.min, |bits| {
                let e = if n == 2 { profile2d(&v, bits) } else { profile(&v, bits) };
                e.expect("volume in range").value
            });
            bound.add(ensure(at_least, || format!("k={}: {} below {}", row.k, row.min, entry.value)));
            // optimal kinds that the grid can draw must show up among the minimizers
            let drawable: Vec<ShapeKind> = canonical_shapes(n, m, row.k).into_iter().map(|(k, _)| k).collect();
            for kind in entry.kinds.iter().filter(|k| drawable.contains(k)) {
                repr.add(ensure(row.kinds.contains(kind), || {
                    format!("k={}: {} not among minimizers {:?}", row.k, kind.name(), row.kinds)
                }));
            }
        }
        bound.push(&mut out, &format!("discrete minimum >= profile, n={n} m={m}"));
        repr.push(&mut out, &format!("representable optimal shapes minimize, n={n} m={m}"));
    }
    out
}

/// Relative perimeters of the strip shapes the grid can draw with `k` cells.
fn strip_candidates(m: usize, a_cells: usize, k: usize) -> Vec<Rat> {
    let mut out = Vec::new();
    let t = (1..=a_cells).find(|t| t * t == k);
    if let Some(t) = t {
        out.push(Rat::new(2 * t as i64, m as i64));
    }
    if k % m == 0 && k / m <= a_cells {
        out.push(Rat::one());
    }
    if k % a_cells == 0 && k / a_cells < m {
        out.push(Rat::new((a_cells + k / a_cells) as i64, m as i64));
    }
    out
}

fn c9_strip(cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    for m in [4usize, 6] {
        let mut lower = Tally::default();
        let mut equal = Tally::default();
        for a_cells in 1..m {
            let a = Rat::new(a_cells as i64, m as i64);
            for k in 1..=a_cells * m {
                let v = Rat::new(k as i64, (m * m) as i64);
                let tag = format!("a={} V={}", a.to_pq(), v.to_pq());
                let (disc, cont) = match (strip_brute_min(m, a_cells, k), strip_profile2d(&a, &v, cfg.bits)) {
                    (Ok(d), Ok(c)) => (d, c),
                    (d, c) => {
                        lower.add(Err(format!("{tag}: {d:?} {c:?}")));
                        continue;
                    }
                };
                let ok = certified_at_least(&disc, |bits| strip_profile2d(&a, &v, bits).expect("valid strip volume"));
                lower.add(ensure(ok, || format!("{tag}: discrete {disc} below {cont}")));
                if let Some(c) = cont.as_exact() {
                    if strip_candidates(m, a_cells, k).contains(c) {
                        equal.add(ensure(disc == *c, || format!("{tag}: discrete {disc} vs {c}")));
                    }
                }
            }
        }
        lower.push(&mut out, &format!("discrete >= continuous, m={m}"));
        equal.push(&mut out, &format!("equality at representable volumes, m={m}"));
    }
    out
}

/// Random proper union of cells of a `g x h` grid on the face `[0,w] x [0,l]`.
fn random_face_subset(r: &mut ChaCha8Rng, w: &Rat, l: &Rat) -> CubicalSet {
    let (g, h) = (r.gen_range(2..=4i64), r.gen_range(1..=4i64));
    let total = (g * h) as usize;
    loop {
        let pick: Vec<bool> = (0..total).map(|_| r.gen_bool(0.5)).collect();
        let count = pick.iter().filter(|&&p| p).count();
        if count == 0 || count == total {
            continue;
        }
        let boxes: Vec<AxisBox> = (0..total)
            .filter(|&c| pick[c])
            .map(|c| {
                let (i, j) = ((c as i64) / h, (c as i64) % h);
                let lo = vec![w * &Rat::new(i, g), l * &Rat::new(j, h)];
                let hi = vec![w * &Rat::new(i + 1, g), l * &Rat::new(j + 1, h)];
                AxisBox::new(lo, hi).expect("cell inside the face")
            })
            .collect();
        return CubicalSet::normalize(2, &boxes).expect("cells inside the unit square");
    }
}

fn audit_sample(cfg: &Config, i: usize) -> Result<(), String> {
    let mut r = rng(cfg, 10, i);
    let (kind, a, t) = if i % 2 == 0 {
        let a = Rat::new(r.gen_range(1..=40), 90);
        let t = random_face_subset(&mut r, &a, &a);
        (ShapeKind::Cube, a, t)
    } else {
        let a = Rat::new(r.gen_range(1..=50), 100);
        let t = random_face_subset(&mut r, &a, &Rat::one());
        (ShapeKind::Tube, a, t)
    };
    let rep = uniqueness_audit(kind, &a, &t, cfg.bits).map_err(|e| format!("{} a={a}: {e}", kind.name()))?;
    let tag = || format!("{} a={a} T={t:?}: ratio {} vs {}", kind.name(), rep.ratio, rep.threshold);
    ensure(rep.bound_holds, || format!("2D bound fails: {}", tag()))?;
    ensure(rep.strict, || format!("not strict: {}", tag()))
}

fn c10_audits(cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    let mut tally = Tally::default();
    for res in par_map(1000, cfg.jobs, |i| audit_sample(cfg, i)) {
        tally.add(res);
    }
    tally.push(&mut out, "cube ratio > 2/a and tube ratio > 1/a");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_criteria_pass() {
        let cfg = Config::default();
        for id in [1, 2, 4] {
            let rep = run_criterion(id, &cfg).unwrap();
            assert!(rep.passed(), "{}", rep.line());
        }
    }

    #[test]
    fn strip_candidates_cover_the_three_shapes() {
        assert_eq!(strip_candidates(4, 2, 4), vec![Rat::new(1, 1), Rat::one(), Rat::new(4, 4)]);
        assert_eq!(strip_candidates(4, 2, 6), vec![Rat::new(5, 4)]);
    }

    #[test]
    fn streams_are_independent_of_thread_count() {
        let cfg = Config::default();
        let a = par_map(8, 1, |i| rng(&cfg, 6, i).gen::<u64>());
        let b = par_map(8, 3, |i| rng(&cfg, 6, i).gen::<u64>());
        assert_eq!(a, b);
    }
}
