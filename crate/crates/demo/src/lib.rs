//! Browser demo: ICD dump, θ sweep and full pipeline solve over text inputs.
//! The plain functions return `Result<String, String>` and are tested
//! natively; the `#[wasm_bindgen]` wrappers only convert errors.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use ptolemaic_core::fvsp::{
    build_lp, derandomize, evaluate_theta, solve_lp, theta_candidates, FvspInstance, RoundingParams,
};
use ptolemaic_core::gen::fixture;
use ptolemaic_core::graph::WeightedGraph;
use ptolemaic_core::icd::{brute_force_icd, build_icd};
use ptolemaic_core::obstruction::is_c4_gem_free;
use ptolemaic_core::pipeline::{hit_c4_gem, reduce_to_fvsp, solve_ptolemaic_deletion};

fn parse_graph(text: &str) -> Result<WeightedGraph, String> {
    text.parse().map_err(|e| format!("graph: {e}"))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output types serialize")
}

/// Graph text for a named fixture.
pub fn fixture_text(name: &str) -> Result<String, String> {
    fixture(name).map(|g| g.to_text()).ok_or_else(|| format!("unknown fixture `{name}`"))
}

/// ICD in text or DOT form. Graphs with an induced C4 or gem fall back to
/// the brute-force construction.
pub fn icd_dump(graph: &str, dot: bool) -> Result<String, String> {
    let g = parse_graph(graph)?;
    let icd = if is_c4_gem_free(&g) { build_icd(&g) } else { brute_force_icd(&g) }.map_err(|e| e.to_string())?;
    Ok(if dot { icd.to_dot() } else { icd.to_text() })
}

/// Full pipeline result as JSON.
pub fn solve(graph: &str) -> Result<String, String> {
    let g = parse_graph(graph)?;
    let result = solve_ptolemaic_deletion(&g).map_err(|e| format!("{} stage: {e}", e.stage()))?;
    Ok(to_json(&result))
}

#[derive(Serialize)]
struct SweepPoint {
    theta: f64,
    weight: Option<f64>,
    step1: Option<f64>,
    step3: Option<f64>,
    cleanup: Option<f64>,
    deleted: Vec<usize>,
    error: Option<String>,
}

#[derive(Serialize)]
struct Sweep {
    nodes: usize,
    arcs: usize,
    lp_value: f64,
    chosen_theta: f64,
    chosen_weight: f64,
    points: Vec<SweepPoint>,
}

/// Rounding outcome at every θ candidate. Accepts an FVSP instance (`d`
/// header) or a graph, which is first cleared of C4s and gems and then
/// reduced to its ICD.
pub fn theta_sweep(text: &str) -> Result<String, String> {
    let is_instance = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with('d'));
    let inst = if is_instance {
        text.parse::<FvspInstance>().map_err(|e| format!("instance: {e}"))?
    } else {
        let g = parse_graph(text)?;
        let hit = hit_c4_gem(&g).map_err(|e| e.to_string())?;
        reduce_to_fvsp(&g.remove_vertices(&hit.deleted).0).map_err(|e| e.to_string())?.1
    };
    inst.validate().map_err(|e| e.to_string())?;
    let params = RoundingParams::default();
    let lp = solve_lp(&build_lp(&inst)).map_err(|e| e.to_string())?;
    let points = theta_candidates(&inst, &lp, &params)
        .into_iter()
        .map(|theta| match evaluate_theta(&inst, &lp, &params, theta) {
            Ok(o) => SweepPoint {
                theta,
                weight: Some(o.weight),
                step1: Some(o.stages.step1),
                step3: Some(o.stages.step3),
                cleanup: Some(o.stages.cleanup),
                deleted: (0..inst.n()).filter(|&v| o.deleted[v]).collect(),
                error: None,
            },
            Err(e) => SweepPoint {
                theta,
                weight: None,
                step1: None,
                step3: None,
                cleanup: None,
                deleted: Vec::new(),
                error: Some(e.to_string()),
            },
        })
        .collect();
    let best = derandomize(&inst, &lp, &params).map_err(|e| e.to_string())?;
    Ok(to_json(&Sweep {
        nodes: inst.n(),
        arcs: inst.m(),
        lp_value: lp.objective,
        chosen_theta: best.theta(),
        chosen_weight: best.weight,
        points,
    }))
}

#[wasm_bindgen(js_name = fixture)]
pub fn js_fixture(name: &str) -> Result<String, JsError> {
    fixture_text(name).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = icdDump)]
pub fn js_icd_dump(graph: &str, dot: bool) -> Result<String, JsError> {
    icd_dump(graph, dot).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = solve)]
pub fn js_solve(graph: &str) -> Result<String, JsError> {
    solve(graph).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = thetaSweep)]
pub fn js_theta_sweep(text: &str) -> Result<String, JsError> {
    theta_sweep(text).map_err(|e| JsError::new(&e))
}
