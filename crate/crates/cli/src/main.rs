mod args;
mod brackets;
mod check;
mod report;
mod simulate;
mod xi;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;
use stlc_core::dsl::{parse_system_with, SystemDocument};
use stlc_core::freelie::DEFAULT_CAP;
use stlc_core::rational::{self, Q};

use args::{Cli, Command, SystemInput};
use report::SystemInfo;

/// Environment variable overriding the basis cap.
pub const MAX_LEN_VAR: &str = "STLC_ORACLE_MAX_LEN";

#[derive(Debug)]
pub enum Failure {
    /// Bad flags or flag values; exit code 2.
    Usage(String),
    /// Parse, semantic or runtime failure; exit code 1.
    Error(String),
}

impl Failure {
    pub fn error(e: impl std::fmt::Display) -> Failure {
        Failure::Error(e.to_string())
    }
}

pub type CmdResult = Result<ExitCode, Failure>;

/// A parsed system file with its raw bytes and canonical overrides.
pub struct LoadedSystem {
    pub text: String,
    pub doc: SystemDocument,
    pub overrides: Vec<(String, Q)>,
}

impl LoadedSystem {
    pub fn info(&self) -> SystemInfo {
        SystemInfo {
            name: self.doc.name.clone(),
            dim: self.doc.dim,
            params: self.doc.params.iter().map(|(n, v)| (n.clone(), rational::fmt(v))).collect(),
        }
    }

    /// Overrides as `name=value` lines, sorted, for digests.
    pub fn override_key(&self) -> String {
        self.overrides.iter().map(|(n, v)| format!("{n}={}\n", rational::fmt(v))).collect()
    }
}

pub fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

pub fn parse_rational(flag: &str, text: &str) -> Result<Q, Failure> {
    rational::parse(text).ok_or_else(|| Failure::Usage(format!("{flag}: '{text}' is not a rational number such as 3/2")))
}

pub fn load_system(input: &SystemInput) -> Result<LoadedSystem, Failure> {
    let mut overrides = Vec::new();
    for p in &input.params {
        let (name, value) = p.split_once('=').ok_or_else(|| Failure::Usage(format!("--param: expected NAME=VALUE, got '{p}'")))?;
        overrides.push((name.trim().to_string(), parse_rational("--param", value.trim())?));
    }
    overrides.sort_by(|a, b| a.0.cmp(&b.0));
    let text = read_file(&input.file)?;
    let doc = parse_system_with(&text, &overrides).map_err(|e| Failure::Error(format!("{}:{e}", input.file.display())))?;
    Ok(LoadedSystem { text, doc, overrides })
}

/// Basis cap from the environment, or the library default.
pub fn basis_cap() -> Result<usize, Failure> {
    match std::env::var(MAX_LEN_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("{MAX_LEN_VAR}: expected a positive integer, got '{v}'"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

/// Inclusive range `a..b` or a single value `a`.
pub fn parse_range(flag: &str, text: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Usage(format!("{flag}: expected 'a..b' or 'a' with 1 <= a <= b, got '{text}'"));
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (a.trim().parse::<usize>().map_err(|_| bad())?, b.trim().parse::<usize>().map_err(|_| bad())?),
        None => {
            let a = text.trim().parse::<usize>().map_err(|_| bad())?;
            (a, a)
        }
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

/// Writes pretty JSON with a trailing newline to `path`, or stdout for `-`.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(Failure::error)?;
    text.push('\n');
    if path.as_os_str() == "-" {
        std::io::stdout().write_all(text.as_bytes()).map_err(Failure::error)
    } else {
        fs::write(path, text).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
    }
}

pub fn is_stdout(path: &Option<std::path::PathBuf>) -> bool {
    path.as_ref().is_some_and(|p| p.as_os_str() == "-")
}

pub fn fmt_vector(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(rational::fmt).collect();
    format!("({})", parts.join(", "))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check(a) => check::run(a),
        Command::Brackets(a) => brackets::run(a),
        Command::Simulate(a) => simulate::run(a),
        Command::Xi(a) => xi::run(a),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Error(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
