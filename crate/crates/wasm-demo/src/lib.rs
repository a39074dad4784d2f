//! Browser bindings: parameter tables, an end-to-end run and the entropy curve,
//! each returned as a JSON string.

use labelweight_hss::analysis::entropy::entropy_curve as curve;
use labelweight_hss::analysis::table::{emit_table, TableKind};
use labelweight_hss::codes::goppa::{goppa_build, GoppaPolynomial, SupportSet};
use labelweight_hss::codes::hermitian::hermitian_build;
use labelweight_hss::codes::rs::rs_build;
use labelweight_hss::codes::LabeledCode;
use labelweight_hss::galois::Fe;
use labelweight_hss::hss::{run_end_to_end, synthesize_eval, HssParams, LabelweightStatus};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn to_js(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

pub fn rate_table_value(kind: &str, dt: u64, servers: &str) -> Result<Value, String> {
    let kind = match kind {
        "goppa" => TableKind::Goppa,
        "hermitian" => TableKind::Hermitian,
        "gv-example" => TableKind::GvExample { q: 2, eps: 0.05 },
        other => return Err(format!("unknown table `{other}`")),
    };
    let servers: Vec<u64> = if servers.trim().is_empty() {
        kind.default_servers().to_vec()
    } else {
        servers
            .split(',')
            .map(|s| s.trim().parse::<u64>().map_err(|_| format!("bad server count `{}`", s.trim())))
            .collect::<Result<_, _>>()?
    };
    let table = emit_table(kind, dt, &servers).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            json!({
                "s": r.baseline.s,
                "baseline_rate": r.baseline.printed_rate(),
                "baseline_amort": r.baseline.printed_amortization(),
                "ours_rate": r.ours.printed_rate(),
                "ours_amort": r.ours.printed_amortization(),
                "exact_baseline_rate": r.baseline.rate,
                "exact_ours_rate": r.ours.rate,
                "pct_rate": r.pct_rate(),
                "pct_amort": r.pct_amort(),
            })
        })
        .collect();
    Ok(json!({ "rows": rows, "markdown": table.to_markdown() }))
}

fn build_code(family: &str, a: u32, b: u32) -> Result<(LabeledCode, String), String> {
    let e = |e: labelweight_hss::error::Error| e.to_string();
    match family {
        "goppa" => {
            let c = goppa_build(a, b as usize, GoppaPolynomial::Auto, SupportSet::AllOfField).map_err(e)?;
            let name = format!("Goppa u={a} r={b}, g = {}", c.polynomial);
            Ok((c.code, name))
        }
        "hermitian" => Ok((hermitian_build(a, b as usize).map_err(e)?.code, format!("Hermitian q={a} k={b}"))),
        "rs" => Ok((rs_build(a, a as usize, b as usize).map_err(e)?, format!("Reed-Solomon [{a},{b}] over GF({a})"))),
        other => Err(format!("unknown code family `{other}`")),
    }
}

pub fn run_demo_value(family: &str, a: u32, b: u32, t: usize, d: usize, trials: u32, seed: u64) -> Result<Value, String> {
    if trials == 0 || trials > 1000 {
        return Err("trials must lie in 1..=1000".into());
    }
    let (code, name) = build_code(family, a, b)?;
    let params = HssParams::new(code.s(), t, d, code.dimension(), d).map_err(|e| e.to_string())?;
    let scheme = synthesize_eval(&code, &params).map_err(|e| e.to_string())?;
    let field = scheme.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut correct = 0;
    let mut sample = Value::Null;
    for i in 0..trials {
        let x: Vec<Vec<Fe>> = (0..params.ell)
            .map(|_| (0..params.m).map(|_| Fe(rng.random_range(0..field.order()))).collect())
            .collect();
        let run = run_end_to_end(&scheme, &x, rng.random()).map_err(|e| e.to_string())?;
        if run.passed {
            correct += 1;
        }
        if i == 0 {
            let vals = |v: &[Fe]| v.iter().map(|e| e.0).collect::<Vec<_>>();
            sample = json!({
                "secrets": x.iter().map(|row| vals(row)).collect::<Vec<_>>(),
                "downloaded": vals(&run.z),
                "outputs": vals(&run.outputs),
                "expected": vals(&run.expected),
            });
        }
    }
    let labelweight = match scheme.labelweight {
        LabelweightStatus::Verified(w) => json!(w),
        _ => Value::Null,
    };
    let rate = scheme.rate().map_err(|e| e.to_string())?;
    Ok(json!({
        "code": name,
        "field": field.to_string(),
        "s": params.s,
        "n": scheme.n(),
        "ell": params.ell,
        "dt": params.dt(),
        "labelweight": labelweight,
        "rate": rate.to_string(),
        "monomials": scheme.monomials.len(),
        "eval_entries": scheme.eval_entries(),
        "trials": trials,
        "correct": correct,
        "sample": sample,
    }))
}

pub fn entropy_curve_value(q: f64, w: f64, points: usize) -> Result<Value, String> {
    if q < 2.0 || w <= 0.0 || !(2..=2000).contains(&points) {
        return Err("need q ≥ 2, w > 0 and 2 ≤ points ≤ 2000".into());
    }
    let pts: Vec<[f64; 2]> = curve(q, w, points).into_iter().map(|(x, h)| [x, h]).collect();
    Ok(json!({ "q": q, "w": w, "peak": 1.0 - q.powf(-w), "points": pts }))
}

/// Baseline versus construction rows for `kind` in {goppa, hermitian, gv-example}.
#[wasm_bindgen]
pub fn rate_table(kind: &str, dt: u32, servers: &str) -> Result<String, JsValue> {
    to_js(rate_table_value(kind, dt as u64, servers))
}

/// Builds a scheme and runs `trials` seeded share/evaluate/reconstruct rounds.
/// `a`, `b` are (u, r) for Goppa and (q, k) for Hermitian and Reed-Solomon.
#[wasm_bindgen]
pub fn run_demo(family: &str, a: u32, b: u32, t: u32, d: u32, trials: u32, seed: u32) -> Result<String, JsValue> {
    to_js(run_demo_value(family, a, b, t as usize, d as usize, trials, seed as u64))
}

#[wasm_bindgen]
pub fn entropy_curve(q: f64, w: f64, points: u32) -> Result<String, JsValue> {
    to_js(entropy_curve_value(q, w, points as usize))
}
