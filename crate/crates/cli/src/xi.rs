//! `xi`: one coordinate of the second kind.

use std::process::ExitCode;

use stlc_core::dsl::parse_controls;
use stlc_core::freelie::{Bracket, Family};
use stlc_core::rational::{self, to_f64};
use stlc_core::signals::xi;

use crate::args::XiArgs;
use crate::{parse_rational, read_file, CmdResult, Failure};

/// A bracket in parenthesized form, or a family name such as `W1 j=1 l=0`.
fn parse_target(text: &str) -> Result<Bracket, Failure> {
    match Bracket::parse(text) {
        Ok(b) => Ok(b),
        Err(bracket_err) => Family::parse(text)
            .map(|f| f.bracket())
            .map_err(|family_err| Failure::Usage(format!("--bracket '{text}': not a bracket ({bracket_err}) nor a family ({family_err})"))),
    }
}

pub fn run(a: &XiArgs) -> CmdResult {
    let target = parse_target(&a.bracket)?;
    let text = read_file(&a.file)?;
    let controls = parse_controls(&text).map_err(|e| Failure::Error(format!("{}:{e}", a.file.display())))?;
    let t = match &a.t {
        Some(t) => parse_rational("--t", t)?,
        None => controls.horizon().clone(),
    };
    let value = xi(&target, &t, &controls).map_err(Failure::error)?;
    println!("{}  ({:.17e})", rational::fmt(&value), to_f64(&value));
    Ok(ExitCode::SUCCESS)
}
