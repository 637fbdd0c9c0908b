//! `brackets`: Hall basis listing.

use std::process::ExitCode;
use std::sync::Arc;

use serde::Serialize;
use stlc_core::freelie::{identify, BasisConfig, Counts, HallBasis};
use stlc_core::rational::{self, Q};
use stlc_core::vectorfields::BracketTable;

use crate::args::BracketsArgs;
use crate::report::{digest, Report};
use crate::{basis_cap, fmt_vector, is_stdout, load_system, write_json, CmdResult, Failure};

#[derive(Serialize)]
struct Row {
    index: usize,
    bracket: String,
    family: Option<String>,
    counts: Counts,
    value_at_zero: Option<Vec<String>>,
}

pub fn run(a: &BracketsArgs) -> CmdResult {
    let loaded = load_system(&a.input)?;
    let cap = basis_cap()?;
    let basis = Arc::new(HallBasis::with_config(BasisConfig::new(a.max_length).with_cap(cap)).map_err(Failure::error)?);
    let table = if a.eval_at_zero {
        Some(BracketTable::new(&loaded.doc.to_system(), basis.clone()).map_err(Failure::error)?)
    } else {
        None
    };
    let values = |i: usize| -> Option<&[Q]> { table.as_ref().map(|t| t.value_at_zero(i)) };

    if !is_stdout(&a.json) {
        let dims = basis.layer_dims();
        for len in 1..=a.max_length {
            println!("length {len}: {} members", dims.get(len - 1).copied().unwrap_or(0));
        }
        for (i, b) in basis.members().iter().enumerate() {
            let c = basis.counts(i);
            let family = identify(b).map(|f| format!("  {f}")).unwrap_or_default();
            let value = values(i).map(|v| format!("  f(0) = {}", fmt_vector(v))).unwrap_or_default();
            println!("{i:>5}  len {}  n0 {} n1 {} n2 {}  {b}{family}{value}", c.len, c.n0, c.n1, c.n2);
        }
    }

    if let Some(path) = &a.json {
        let rows: Vec<Row> = basis
            .members()
            .iter()
            .enumerate()
            .map(|(i, b)| Row {
                index: i,
                bracket: b.to_string(),
                family: identify(b).map(|f| f.to_string()),
                counts: basis.counts(i),
                value_at_zero: values(i).map(|v| v.iter().map(rational::fmt).collect()),
            })
            .collect();
        let flags = format!("max_length={} eval={}", a.max_length, a.eval_at_zero);
        let input = digest(&[loaded.text.as_bytes(), loaded.override_key().as_bytes(), flags.as_bytes()]);
        write_json(path, &Report::new("brackets", input, Some(loaded.info()), rows))?;
    }
    Ok(ExitCode::SUCCESS)
}
