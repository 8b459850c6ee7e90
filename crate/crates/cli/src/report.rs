//! Machine-readable reports: JSONL reduction logs, JSON classification and
//! first-variation reports, CSV tables.

use cubeiso_core::classify::{ClassificationResult, Competitor, ProfileEntry, ShapeKind, Stationarity};
use cubeiso_core::enclosure::Enclosure;
use cubeiso_core::search::BruteResult;
use cubeiso_core::variation::{SliceData, StationarityReport, StepRecord};
use cubeiso_core::{CubeIsometry, Rat};
use serde_json::{json, Value};

use crate::format::{enclosure, rat, set_json};

/// Fractional digits in human-readable decimal fields.
pub const DECIMAL_DIGITS: usize = 12;

fn kinds_list(kinds: &[ShapeKind]) -> Vec<&'static str> {
    kinds.iter().map(|k| k.name()).collect()
}

fn kinds_joined(kinds: &[ShapeKind]) -> String {
    kinds_list(kinds).join("+")
}

/// `p/q` when exact, `[lo,hi]` otherwise, for CSV cells.
pub fn enclosure_cell(e: &Enclosure) -> String {
    match e.as_exact() {
        Some(r) => r.to_pq(),
        None => format!("[{},{}]", e.lo().to_pq(), e.hi().to_pq()),
    }
}

fn isometry_json(g: &CubeIsometry) -> Value {
    json!({ "flip": g.flip(), "perm": g.perm() })
}

pub fn step_json(step: &StepRecord) -> Value {
    let slices: Vec<Value> =
        step.slices.iter().map(|s| json!({ "axis": s.axis, "position": rat(&s.position) })).collect();
    json!({
        "delta_relper": rat(&step.delta_relper),
        "delta_vol": rat(&step.delta_vol),
        "displacements": step.displacements.iter().map(rat).collect::<Vec<_>>(),
        "event": step.event.map(|e| e.name()),
        "kind": step.kind.name(),
        "slices": slices,
        "transfer": rat(&step.transfer),
    })
}

/// One compact JSON object per line.
pub fn reduction_jsonl(log: &[StepRecord]) -> String {
    let mut out = String::new();
    for step in log {
        out.push_str(&step_json(step).to_string());
        out.push('\n');
    }
    out
}

pub fn slice_json(s: &SliceData) -> Value {
    json!({
        "area": rat(&s.area),
        "axis": s.axis,
        "first_var": rat(&s.first_var),
        "first_var_decimal": s.first_var.to_decimal(DECIMAL_DIGITS),
        "minus": rat(&s.minus),
        "plus": rat(&s.plus),
        "position": rat(&s.position),
        "signed_perimeter": rat(&s.signed_perimeter),
        "zero": rat(&s.zero),
    })
}

pub fn firstvar_json(rep: &StationarityReport) -> Value {
    json!({
        "slices": rep.slices.iter().map(slice_json).collect::<Vec<_>>(),
        "stationary": rep.stationary,
    })
}

fn competitor_json(c: &Competitor) -> Value {
    json!({
        "certificate": c.is_certificate(),
        "construction": c.construction,
        "delta_relper": rat(&c.delta_relper),
        "delta_relper_decimal": c.delta_relper.to_decimal(DECIMAL_DIGITS),
        "delta_vol": rat(&c.delta_vol),
        "set": set_json(&c.set),
    })
}

pub fn stationarity_json(s: &Stationarity) -> Value {
    match s {
        Stationarity::Solutions(sol) => json!({
            "solutions": sol
                .iter()
                .map(|p| json!({ "a": enclosure(&p.a), "b": enclosure(&p.b), "c": enclosure(&p.c) }))
                .collect::<Vec<_>>(),
        }),
        Stationarity::Infeasible { reason } => json!({ "infeasible": reason }),
    }
}

pub fn classification_json(res: &ClassificationResult) -> Value {
    let family = res.family.as_ref().map(|(fam, g)| {
        json!({
            "isometry": isometry_json(g),
            "kind": fam.kind().name(),
            "params": fam.params().iter().map(rat).collect::<Vec<_>>(),
        })
    });
    json!({
        "analysed": set_json(&res.analysed),
        "competitor": res.competitor.as_ref().map(competitor_json),
        "family": family,
        "first_variation": res.stationarity.as_ref().map(firstvar_json),
        "kinds": kinds_list(&res.kinds),
        "notes": res.notes,
        "relper": rat(&res.relper),
        "relper_decimal": res.relper.to_decimal(DECIMAL_DIGITS),
        "verdict": res.verdict.name(),
        "volume": rat(&res.volume),
        "volume_decimal": res.volume.to_decimal(DECIMAL_DIGITS),
    })
}

/// `V1` or `V2` when `v` is a threshold volume.
pub fn threshold_flag(v: &Rat) -> &'static str {
    if *v == cubeiso_core::classify::v1() {
        "V1"
    } else if *v == cubeiso_core::classify::v2() {
        "V2"
    } else {
        ""
    }
}

pub fn profile_csv(rows: &[ProfileEntry]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["V", "value", "value_decimal", "kinds", "threshold"])?;
    for r in rows {
        w.write_record([
            r.volume.to_pq(),
            enclosure_cell(&r.value),
            r.value.to_decimal(DECIMAL_DIGITS),
            kinds_joined(&r.kinds),
            threshold_flag(&r.volume).to_string(),
        ])?;
    }
    finish(w)
}

/// Search rows with the continuous bound at the same volume.
pub fn search_csv(rows: &[(BruteResult, Enclosure)]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "m", "k", "V", "discrete_min", "continuous_bound", "n_minimizers", "kinds"])?;
    for (r, bound) in rows {
        w.write_record([
            r.dim.to_string(),
            r.res.to_string(),
            r.k.to_string(),
            r.volume().to_pq(),
            r.min.to_pq(),
            enclosure_cell(bound),
            r.minimizers.len().to_string(),
            kinds_joined(&r.kinds),
        ])?;
    }
    finish(w)
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, csv::Error> {
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("CSV fields are ASCII"))
}
