//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every call takes and returns JSON strings; the `*_json` functions hold
//! the logic and are what the native tests exercise.

use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

use dsel_edit::edition::build_rng_graph;
use dsel_edit::ps::{select_prototypes, PsParams};
use dsel_edit::search::FitnessEvaluator;
use dsel_edit::synth::{generate, SynthKind, SynthSpec};
use dsel_edit::{Dataset, PsMethod};

/// Region size the harness protects; smaller PS results are flagged.
const GUARD: usize = 7;

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct Points {
    pub x: Vec<[f64; 2]>,
    pub y: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct Selection {
    pub mask: Vec<bool>,
    pub retained: usize,
    pub reduction: f64,
    /// Subset fitness (α = 0.5) of the returned mask.
    pub fitness: f64,
    pub accuracy: f64,
    /// The harness would replace this result with the full set.
    pub below_guard: bool,
    pub millis: f64,
}

fn to_dataset(points: &Points) -> Result<Dataset, String> {
    let rows: Vec<Vec<f64>> = points.x.iter().map(|p| p.to_vec()).collect();
    Dataset::from_rows("canvas", &rows, points.y.clone(), Some(2)).map_err(|e| e.to_string())
}

fn parse(points_json: &str) -> Result<Points, String> {
    serde_json::from_str(points_json).map_err(|e| format!("bad points: {e}"))
}

pub fn generate_json(kind: &str, n: usize, seed: u64) -> Result<String, String> {
    let kind: SynthKind = kind.parse().map_err(|e: dsel_edit::Error| e.to_string())?;
    let d = generate(&SynthSpec::with_default_noise(kind, n, seed)).map_err(|e| e.to_string())?;
    let pts = Points {
        x: d.rows().map(|r| [r[0], r[1]]).collect(),
        y: d.labels().to_vec(),
    };
    serde_json::to_string(&pts).map_err(|e| e.to_string())
}

/// Runs `method` on the points; `now` supplies a millisecond clock.
pub fn select_json(points_json: &str, method: &str, seed: u64, now: impl Fn() -> f64) -> Result<String, String> {
    let d = to_dataset(&parse(points_json)?)?;
    let method: PsMethod = method.parse().map_err(|e: dsel_edit::Error| e.to_string())?;
    let params = PsParams {
        min_retained: 1,
        ..PsParams::default()
    };
    let t = now();
    let out = select_prototypes(method, &d, &params, seed).map_err(|e| e.to_string())?;
    let millis = now() - t;
    let ev = FitnessEvaluator::new(&d, params.alpha).map_err(|e| e.to_string())?;
    let sel = Selection {
        retained: out.mask.retained_count(),
        reduction: out.mask.reduction_rate(),
        fitness: ev.fitness(&out.mask),
        accuracy: ev.accuracy(&out.mask),
        below_guard: out.guarded || out.mask.retained_count() < GUARD.min(d.len()),
        mask: out.mask.bits().to_vec(),
        millis,
    };
    serde_json::to_string(&sel).map_err(|e| e.to_string())
}

pub fn rng_edges_json(points_json: &str) -> Result<String, String> {
    let d = to_dataset(&parse(points_json)?)?;
    let g = build_rng_graph(&d).map_err(|e| e.to_string())?;
    serde_json::to_string(&g.edges()).map_err(|e| e.to_string())
}

#[wasm_bindgen]
extern "C" {
    #[wasm_bindgen(js_namespace = performance, js_name = now)]
    fn performance_now() -> f64;
}

/// `{x: [[f64, f64]], y: [0|1]}` for a synthetic problem.
#[wasm_bindgen]
pub fn generate_points(kind: &str, n: usize, seed: u64) -> Result<String, JsValue> {
    generate_json(kind, n, seed).map_err(|e| JsValue::from_str(&e))
}

/// Applies a PS method (`ENN`, `RNG`, `RMHC`, `SSMA`, `GGA`, `CHC`).
#[wasm_bindgen]
pub fn select(points_json: &str, method: &str, seed: u64) -> Result<String, JsValue> {
    select_json(points_json, method, seed, performance_now).map_err(|e| JsValue::from_str(&e))
}

/// Relative neighbourhood graph edges as `[[i, j], ...]`.
#[wasm_bindgen]
pub fn rng_edges(points_json: &str) -> Result<String, JsValue> {
    rng_edges_json(points_json).map_err(|e| JsValue::from_str(&e))
}
