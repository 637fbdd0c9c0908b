//! `check`: drift verdicts over a parameter grid.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};
use stlc_core::freelie::{w, BasisConfig, Control, HallBasis, ObstructionParams};
use stlc_core::obstruction::{Analyzer, ObstructionVerdict, Outcome};
use stlc_core::rational;

use crate::args::CheckArgs;
use crate::report::{digest, Report};
use crate::{basis_cap, fmt_vector, is_stdout, load_system, parse_range, parse_rational, write_json, CmdResult, Failure};

fn grid(a: &CheckArgs) -> Result<Vec<ObstructionParams>, Failure> {
    let ks = parse_range("--k-range", &a.k_range)?;
    let ms = parse_range("--m-range", &a.m_range)?;
    if !a.asym {
        return Ok(ks.iter().flat_map(|&k| ms.iter().map(move |&m| ObstructionParams::Symmetric { k, m })).collect());
    }
    let kps = match &a.kprime_range {
        Some(r) => parse_range("--kprime-range", r)?,
        None => ks.clone(),
    };
    let mps = match &a.mprime_range {
        Some(r) => parse_range("--mprime-range", r)?,
        None => ms.clone(),
    };
    let mut out = Vec::new();
    for &k in &ks {
        for &kp in kps.iter().filter(|&&kp| kp <= k) {
            for &m in &ms {
                for &mp in &mps {
                    out.push(ObstructionParams::Asymmetric { k, kp, m, mp });
                }
            }
        }
    }
    if out.is_empty() {
        return Err(Failure::Usage("no (k, k') pair with k' <= k in the given ranges".into()));
    }
    Ok(out)
}

fn summary(v: &ObstructionVerdict) -> String {
    let params = match v.params {
        ObstructionParams::Symmetric { k, m } => format!("symmetric  k={k} m={m}"),
        ObstructionParams::Asymmetric { k, kp, m, mp } => format!("asymmetric k={k} k'={kp} m={m} m'={mp}"),
    };
    let detail = match (&v.witness, &v.blocking_case) {
        (Some(w), _) => format!("witness {}", fmt_vector(w)),
        (None, Some(b)) => b.tag().to_string(),
        (None, None) => String::new(),
    };
    let outcome = match v.outcome {
        Outcome::Obstruction => "Obstruction",
        Outcome::Inconclusive => "Inconclusive",
    };
    let trunc = if v.truncated { "  [truncated]" } else { "" };
    format!("{params}  {outcome:<12}  {detail}{trunc}")
}

pub fn run(a: &CheckArgs) -> CmdResult {
    let loaded = load_system(&a.input)?;
    let params = grid(a)?;
    let theta = a.sussmann.as_deref().map(|t| parse_rational("--sussmann", t)).transpose()?;
    let k_max = params.iter().map(|p| p.orders().0).max().expect("nonempty grid");
    let length_cap = a.length_cap.unwrap_or(2 * k_max + 2);
    let cap = basis_cap()?;
    if length_cap > cap {
        return Err(Failure::Usage(format!("length cap {length_cap} exceeds the basis cap {cap}; raise {}", crate::MAX_LEN_VAR)));
    }
    let basis = HallBasis::with_config(BasisConfig::new(length_cap).with_cap(cap)).map_err(Failure::error)?;
    let system = loaded.doc.to_system();
    let analyzer = Analyzer::with_basis(&system, Arc::new(basis)).map_err(Failure::error)?;

    let verdicts: Vec<(ObstructionVerdict, f64)> = params
        .par_iter()
        .map(|p| {
            let start = Instant::now();
            let v = match *p {
                ObstructionParams::Symmetric { k, m } => analyzer.verdict_symmetric(k, m),
                ObstructionParams::Asymmetric { k, kp, m, mp } => analyzer.verdict_asymmetric(k, kp, m, mp),
            };
            v.map(|v| (v, start.elapsed().as_secs_f64() * 1e3))
        })
        .collect::<Result<_, _>>()
        .map_err(Failure::error)?;

    let quiet = is_stdout(&a.json);
    let mut checks: Vec<Value> = Vec::new();
    let mut found = false;
    let mut truncated = false;
    for (v, ms) in &verdicts {
        if !quiet {
            println!("{}", summary(v));
        }
        found |= v.outcome == Outcome::Obstruction;
        truncated |= v.truncated;
        let mut entry = json!({ "check": "drift" });
        entry.as_object_mut().expect("object").extend(serde_json::to_value(v).map_err(Failure::error)?.as_object().expect("struct").clone());
        if a.timing {
            entry["elapsed_ms"] = json!(ms);
        }
        checks.push(entry);
    }

    if let Some(theta) = &theta {
        let mut ks: Vec<usize> = params.iter().map(|p| p.orders().0).collect();
        ks.dedup();
        for k in ks {
            let target = w(Control::U, k, 0);
            let out = analyzer.sussmann(theta, &target).map_err(Failure::error)?;
            if !quiet {
                let verdict = if out.in_span { "holds" } else { "fails" };
                println!("S({}) on {target}: {verdict}{}", rational::fmt(theta), if out.truncated { "  [truncated]" } else { "" });
            }
            truncated |= out.truncated;
            let mut entry = json!({ "check": "sussmann", "theta": rational::fmt(theta), "bracket": target.to_string() });
            entry.as_object_mut().expect("object").extend(serde_json::to_value(&out).map_err(Failure::error)?.as_object().expect("struct").clone());
            checks.push(entry);
        }
    }

    let mut heuristic = false;
    if a.quartic {
        let (out, trunc) = analyzer.quartic().map_err(Failure::error)?;
        heuristic = true;
        truncated |= trunc;
        found |= out.holds;
        if !quiet {
            let detail = out.witness.as_ref().map(|w| format!("  witness {}", fmt_vector(w))).unwrap_or_default();
            println!("quartic  {}{detail}  [heuristic]", if out.holds { "holds" } else { "fails" });
        }
        let mut entry = json!({ "check": "quartic", "heuristic": true, "truncated": trunc });
        entry.as_object_mut().expect("object").extend(serde_json::to_value(&out).map_err(Failure::error)?.as_object().expect("struct").clone());
        checks.push(entry);
    }

    if let Some(path) = &a.json {
        let flags = format!(
            "k={} m={} asym={} kp={:?} mp={:?} cap={length_cap} quartic={} sussmann={:?}",
            a.k_range, a.m_range, a.asym, a.kprime_range, a.mprime_range, a.quartic, a.sussmann
        );
        let input = digest(&[loaded.text.as_bytes(), loaded.override_key().as_bytes(), flags.as_bytes()]);
        let mut report = Report::new("check", input, Some(loaded.info()), checks);
        report.truncated = truncated;
        report.heuristic = heuristic;
        write_json(path, &report)?;
    }
    Ok(if found { ExitCode::SUCCESS } else { ExitCode::from(3) })
}
