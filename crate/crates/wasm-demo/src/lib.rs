//! wasm-bindgen exports for the static demo page in `www/`. Each export
//! returns a JSON string; the plain `*_json` functions hold the logic so they
//! can be tested natively.

use serde_json::{json, Value};
use viennot_core::characters::{dim_irreducible, verify_graded_decomposition};
use viennot_core::perm::ColoredPermutation;
use viennot_core::shadow::{iterated_decompositions, schensted_insert, shadow_monomial};
use viennot_core::stats::{analyze, count_fast, CountPath, GradedSeries, StatKind, DEFAULT_FAST_BOUND};
use wasm_bindgen::prelude::*;

/// Keeps the page responsive; exhaustive work is never done here.
const MAX_N: usize = 40;
const MAX_R: usize = 6;
const MAX_STRATA_N: usize = 8;

fn check_size(n: usize, r: usize, max_n: usize) -> Result<(), String> {
    if r == 0 || r > MAX_R {
        return Err(format!("r must be between 1 and {MAX_R}"));
    }
    if n > max_n {
        return Err(format!("n must be at most {max_n} here"));
    }
    Ok(())
}

/// Shadow lines at every level, color layers, tableaux and shadow monomial.
pub fn shadow_diagram_json(word: &str) -> Result<String, String> {
    let w = ColoredPermutation::parse(word, None).map_err(|e| e.to_string())?;
    if w.n() > MAX_N {
        return Err(format!("at most {MAX_N} entries"));
    }
    let layers: Vec<Value> =
        w.diagram().layers().iter().enumerate().map(|(c, l)| json!({ "color": c, "points": l.points() })).collect();
    let base = w.diagram().layer(0).clone();
    let pair = schensted_insert(w.sigma());
    let m = shadow_monomial(&w);
    let v = json!({
        "n": w.n(),
        "r": w.r(),
        "w": w.to_string(),
        "layers": layers,
        "levels": iterated_decompositions(&w.sigma().points()),
        "color0_levels": iterated_decompositions(&base),
        "p": pair.p,
        "q": pair.q,
        "monomial": m.to_string(),
        "degree": m.degree(),
    });
    Ok(v.to_string())
}

/// Hilbert coefficients with log-concavity and unimodality findings.
pub fn hilbert_histogram_json(n: usize, r: usize) -> Result<String, String> {
    check_size(n, r, MAX_N)?;
    let table = count_fast(StatKind::C, n, r, DEFAULT_FAST_BOUND).map_err(|e| e.to_string())?;
    let series = GradedSeries::from_table(&table);
    let a = analyze(&table);
    let v = json!({
        "n": n,
        "r": r,
        "coefficients": series.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "series": series.to_string(),
        "log_concave": a.table.is_log_concave(),
        "violations_k": a.table.violations,
        "unimodal": a.unimodality.unimodal,
        "peak_k": a.unimodality.peak,
    });
    Ok(v.to_string())
}

/// Irreducible labels per degree with their dimensions.
pub fn strata_json(n: usize, r: usize) -> Result<String, String> {
    check_size(n, r, MAX_STRATA_N)?;
    let report = verify_graded_decomposition(n, r, CountPath::Fast, u64::MAX).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|row| {
            let labels: Vec<Value> = viennot_core::strata(n, r, row.k)
                .iter()
                .map(|l| json!({ "label": l.to_string(), "dim": dim_irreducible(l).to_string() }))
                .collect();
            json!({
                "k": row.k,
                "labels": labels,
                "sum_dim_sq": row.sum_dim_sq.to_string(),
                "hilbert_coeff": row.hilbert_coeff.to_string(),
                "match": row.matches,
            })
        })
        .collect();
    Ok(json!({ "n": n, "r": r, "rows": rows, "passed": report.passed() }).to_string())
}

#[wasm_bindgen]
pub fn shadow_diagram(word: &str) -> Result<String, JsError> {
    shadow_diagram_json(word).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn hilbert_histogram(n: usize, r: usize) -> Result<String, JsError> {
    hilbert_histogram_json(n, r).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn strata_report(n: usize, r: usize) -> Result<String, JsError> {
    strata_json(n, r).map_err(|e| JsError::new(&e))
}
