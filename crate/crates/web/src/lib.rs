//! wasm-bindgen bindings for the static demo page in `www/`.
//!
//! Every export returns a JSON string. Failures come back as a thrown
//! `Error` whose message is `{"code":..,"message":..}`. The `*_json`
//! functions are the same operations without the JS types, so they can be
//! exercised natively.

use nbkemeny::closed_forms::closed_form;
use nbkemeny::nb_vertex::nb_kemeny_pair;
use nbkemeny::report::{analyze_graph, AnalysisReport, ErrorInfo};
use nbkemeny::srw::srw_analyze;
use nbkemeny::{parse_graph6, FamilySpec, Graph};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest graph the page will analyse; the pipelines are dense and cubic in `2m`.
pub const MAX_DEMO_VERTICES: usize = 40;
/// Most points `family_curve` will compute in one call.
pub const MAX_CURVE_POINTS: usize = 64;

#[derive(Serialize)]
struct Analysis {
    edges: Vec<(usize, usize)>,
    report: AnalysisReport,
}

#[derive(Serialize)]
struct CurvePoint {
    value: usize,
    family: FamilySpec,
    n: usize,
    nb: Option<f64>,
    srw: f64,
    nb_closed_form: Option<f64>,
    srw_closed_form: Option<f64>,
}

fn fail(e: &nbkemeny::Error) -> String {
    serde_json::to_string(&ErrorInfo::from(e)).expect("error info serializes")
}

fn too_large(n: usize) -> String {
    fail(&nbkemeny::Error::TooLarge {
        n,
        max: MAX_DEMO_VERTICES,
    })
}

fn analysis_json(g: &Graph, family: Option<FamilySpec>, tol: f64) -> Result<String, String> {
    if g.n() > MAX_DEMO_VERTICES {
        return Err(too_large(g.n()));
    }
    let report = analyze_graph(g, family, tol, false).map_err(|e| fail(&e))?;
    let out = Analysis {
        edges: g.edges(),
        report,
    };
    Ok(serde_json::to_string(&out).expect("report serializes"))
}

pub fn analyze_graph6_json(text: &str, tol: f64) -> Result<String, String> {
    let g = parse_graph6(text.trim()).map_err(|e| fail(&e))?;
    analysis_json(&g, None, tol)
}

pub fn analyze_family_json(name: &str, params: &str, tol: f64) -> Result<String, String> {
    let spec = FamilySpec::parse(name, params).map_err(|e| fail(&e))?;
    spec.validate().map_err(|e| fail(&e))?;
    if spec.vertex_count() > MAX_DEMO_VERTICES {
        return Err(too_large(spec.vertex_count()));
    }
    let g = spec.generate().map_err(|e| fail(&e))?;
    analysis_json(&g, Some(spec), tol)
}

/// Both constants along one family, varying the parameter `vary` over
/// `from..=to` with the others taken from `params`. Infeasible members are skipped.
pub fn family_curve_json(name: &str, params: &str, vary: &str, from: usize, to: usize) -> Result<String, String> {
    if to < from || to - from >= MAX_CURVE_POINTS {
        return Err(fail(&nbkemeny::Error::InvalidParam(format!(
            "range {from}..={to} must be non-empty and hold at most {MAX_CURVE_POINTS} values"
        ))));
    }
    let mut points = Vec::new();
    for value in from..=to {
        let mut pairs: Vec<String> = params
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty() && p.split('=').next().map(str::trim) != Some(vary))
            .map(str::to_string)
            .collect();
        pairs.push(format!("{vary}={value}"));
        let spec = FamilySpec::parse(name, &pairs.join(",")).map_err(|e| fail(&e))?;
        if spec.validate().is_err() || spec.vertex_count() > MAX_DEMO_VERTICES {
            continue;
        }
        let g = spec.generate().map_err(|e| fail(&e))?;
        let srw = srw_analyze(&g).map_err(|e| fail(&e))?;
        let cf = closed_form(&spec).map_err(|e| fail(&e))?;
        points.push(CurvePoint {
            value,
            family: spec,
            n: g.n(),
            nb: nb_kemeny_pair(&g).ok().map(|(hitting, _)| hitting),
            srw: srw.kemeny_hitting,
            nb_closed_form: cf.nb_value,
            srw_closed_form: cf.srw_value,
        });
    }
    Ok(serde_json::to_string(&points).expect("points serialize"))
}

fn throw(message: String) -> JsError {
    JsError::new(&message)
}

/// Analyse a graph6 string.
#[wasm_bindgen]
pub fn analyze_graph6(text: &str, tol: f64) -> Result<String, JsError> {
    analyze_graph6_json(text, tol).map_err(throw)
}

/// Analyse a family member, `params` as `k=v,...`.
#[wasm_bindgen]
pub fn analyze_family(name: &str, params: &str, tol: f64) -> Result<String, JsError> {
    analyze_family_json(name, params, tol).map_err(throw)
}

#[wasm_bindgen]
pub fn family_curve(name: &str, params: &str, vary: &str, from: usize, to: usize) -> Result<String, JsError> {
    family_curve_json(name, params, vary, from, to).map_err(throw)
}

/// Family names and their parameter keys, for populating the page controls.
#[wasm_bindgen]
pub fn families() -> String {
    let list: Vec<serde_json::Value> = nbkemeny::families::FAMILIES
        .iter()
        .map(|(name, params)| serde_json::json!({ "family": name, "params": params }))
        .collect();
    serde_json::to_string(&list).expect("listing serializes")
}
