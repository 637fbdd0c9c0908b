//! WebAssembly bindings for the static demo page in `www/`.

use std::fmt::Write;
use std::sync::Arc;

use stlc_core::dsl::{parse_controls, parse_system};
use stlc_core::freelie::{identify, BasisConfig, Bracket, Family, HallBasis};
use stlc_core::obstruction::{Analyzer, Outcome};
use stlc_core::rational::{self, to_f64};
use stlc_core::signals::xi;
use stlc_core::vectorfields::BracketTable;
use wasm_bindgen::prelude::*;

/// Longest bracket the page may ask for; keeps the browser responsive.
pub const MAX_LENGTH: usize = 8;

fn vector(v: &[stlc_core::Q]) -> String {
    let parts: Vec<String> = v.iter().map(rational::fmt).collect();
    format!("({})", parts.join(", "))
}

/// Symmetric drift verdict at `(k, m)` as pretty JSON.
pub fn check_text(system: &str, k: usize, m: usize) -> Result<String, String> {
    let doc = parse_system(system).map_err(|e| e.to_string())?;
    let cap = 2 * k + 2;
    if cap > MAX_LENGTH {
        return Err(format!("k = {k} needs brackets of length {cap}; the demo stops at {MAX_LENGTH}"));
    }
    let analyzer = Analyzer::new(&doc.to_system(), cap).map_err(|e| e.to_string())?;
    let verdict = analyzer.verdict_symmetric(k, m).map_err(|e| e.to_string())?;
    let headline = match (&verdict.outcome, &verdict.witness, &verdict.blocking_case) {
        (Outcome::Obstruction, Some(w), _) => format!("Obstruction, witness {}", vector(w)),
        (_, _, Some(b)) => format!("Inconclusive, {}", b.tag()),
        _ => "Inconclusive".to_string(),
    };
    let body = serde_json::to_string_pretty(&verdict).map_err(|e| e.to_string())?;
    Ok(format!("{headline}\n\n{body}"))
}

/// Hall members up to `max_length` with their values at the origin.
pub fn brackets_text(system: &str, max_length: usize) -> Result<String, String> {
    let doc = parse_system(system).map_err(|e| e.to_string())?;
    let basis = HallBasis::with_config(BasisConfig::new(max_length).with_cap(MAX_LENGTH)).map_err(|e| e.to_string())?;
    let table = BracketTable::new(&doc.to_system(), Arc::new(basis)).map_err(|e| e.to_string())?;
    let mut out = String::new();
    for (i, b) in table.basis().members().iter().enumerate() {
        let family = identify(b).map(|f| format!("  {f}")).unwrap_or_default();
        writeln!(out, "{b}{family}  f(0) = {}", vector(table.value_at_zero(i))).expect("string write");
    }
    Ok(out)
}

/// `xi_b(t)` for a bracket or family name; an empty `t` means the horizon.
pub fn xi_text(controls: &str, bracket: &str, t: &str) -> Result<String, String> {
    let controls = parse_controls(controls).map_err(|e| e.to_string())?;
    let target = Bracket::parse(bracket).or_else(|_| Family::parse(bracket).map(|f| f.bracket()))?;
    let t = if t.trim().is_empty() {
        controls.horizon().clone()
    } else {
        rational::parse(t).ok_or_else(|| format!("'{t}' is not a rational number"))?
    };
    let value = xi(&target, &t, &controls).map_err(|e| e.to_string())?;
    Ok(format!("{} ~ {}", rational::fmt(&value), to_f64(&value)))
}

#[wasm_bindgen]
pub fn check(system: &str, k: usize, m: usize) -> Result<String, JsValue> {
    check_text(system, k, m).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn brackets(system: &str, max_length: usize) -> Result<String, JsValue> {
    brackets_text(system, max_length).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = xi)]
pub fn xi_value(controls: &str, bracket: &str, t: &str) -> Result<String, JsValue> {
    xi_text(controls, bracket, t).map_err(|e| JsValue::from_str(&e))
}
