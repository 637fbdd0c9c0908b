//! `simulate`: adaptive integration under a control file.

use std::process::ExitCode;

use serde::Serialize;
use stlc_core::dsl::parse_controls;
use stlc_core::rational::{self, to_f64};
use stlc_core::signals::{l2_squared, ControlPair};
use stlc_core::simulate::{exact_state_oracle, integrate, IntegratorStats, Tolerance};

use crate::args::SimulateArgs;
use crate::report::{digest, Report};
use crate::{is_stdout, load_system, parse_rational, read_file, write_json, CmdResult, Failure};

#[derive(Serialize)]
struct OracleComparison {
    exact: Vec<String>,
    max_abs_error: f64,
}

#[derive(Serialize)]
struct SimulationEntry {
    t: String,
    final_state: Vec<f64>,
    /// `||u_1||^2 + ||v_1||^2` in `L^2(0, t)`, exact.
    primitive_energy: String,
    stats: IntegratorStats,
    oracle: Option<OracleComparison>,
}

fn primitive_energy(controls: &ControlPair, t: &stlc_core::Q) -> Result<stlc_core::Q, Failure> {
    let u1 = controls.u().primitive().restrict(t).map_err(Failure::error)?;
    let v1 = controls.v().primitive().restrict(t).map_err(Failure::error)?;
    Ok(l2_squared(&u1) + l2_squared(&v1))
}

pub fn run(a: &SimulateArgs) -> CmdResult {
    let loaded = load_system(&a.input)?;
    let control_text = read_file(&a.controls)?;
    let controls = parse_controls(&control_text).map_err(|e| Failure::Error(format!("{}:{e}", a.controls.display())))?;
    let t = match &a.t {
        Some(t) => parse_rational("--t", t)?,
        None => controls.horizon().clone(),
    };
    let tol = Tolerance::new(a.rel_tol).map_err(|e| Failure::Usage(format!("--rel-tol: {e}")))?;
    let system = loaded.doc.to_system();
    let traj = integrate(&system, &controls, &t, tol).map_err(Failure::error)?;
    let energy = primitive_energy(&controls, &t)?;

    let oracle = if a.oracle {
        let exact = exact_state_oracle(&system, &controls, &t).map_err(Failure::error)?;
        let max_abs_error = exact.iter().zip(traj.final_state()).map(|(e, x)| (to_f64(e) - x).abs()).fold(0.0, f64::max);
        Some(OracleComparison { exact: exact.iter().map(rational::fmt).collect(), max_abs_error })
    } else {
        None
    };

    if !is_stdout(&a.json) {
        println!("t = {}", rational::fmt(&t));
        for (i, x) in traj.final_state().iter().enumerate() {
            match &oracle {
                Some(o) => println!("x{} = {x:.12e}  exact {}", i + 1, o.exact[i]),
                None => println!("x{} = {x:.12e}", i + 1),
            }
        }
        println!("|(u1,v1)|^2 = {} ({:.6e})", rational::fmt(&energy), to_f64(&energy));
        println!("steps {} rejected {}", traj.stats.steps, traj.stats.rejected);
        if let Some(o) = &oracle {
            println!("max |x - exact| = {:.3e}", o.max_abs_error);
        }
    }

    if let Some(path) = &a.csv {
        let mut w = csv::Writer::from_path(path).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))?;
        let mut header = vec!["t".to_string()];
        header.extend((1..=system.dim()).map(|i| format!("x{i}")));
        w.write_record(&header).map_err(Failure::error)?;
        for (t, x) in traj.times.iter().zip(&traj.states) {
            let mut row = vec![format!("{t:e}")];
            row.extend(x.iter().map(|v| format!("{v:e}")));
            w.write_record(&row).map_err(Failure::error)?;
        }
        w.flush().map_err(Failure::error)?;
    }

    if let Some(path) = &a.json {
        let flags = format!("t={} rel_tol={:e} oracle={}", rational::fmt(&t), a.rel_tol, a.oracle);
        let input = digest(&[loaded.text.as_bytes(), loaded.override_key().as_bytes(), control_text.as_bytes(), flags.as_bytes()]);
        let entry = SimulationEntry {
            t: rational::fmt(&t),
            final_state: traj.final_state().to_vec(),
            primitive_energy: rational::fmt(&energy),
            stats: traj.stats.clone(),
            oracle,
        };
        write_json(path, &Report::new("simulate", input, Some(loaded.info()), vec![entry]))?;
    }
    Ok(ExitCode::SUCCESS)
}
