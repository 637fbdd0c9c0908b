//! Versioned JSON reports.

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "stlc-oracle/report/v1";

#[derive(Serialize, Debug)]
pub struct SystemInfo {
    pub name: String,
    pub dim: usize,
    /// Declared parameters after overrides, as `p/q` strings.
    pub params: Vec<(String, String)>,
}

#[derive(Serialize, Debug)]
pub struct Report<C: Serialize> {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub command: &'static str,
    pub input_digest: String,
    pub system: Option<SystemInfo>,
    pub checks: Vec<C>,
    /// Some result may depend on brackets beyond the length cap.
    pub truncated: bool,
    /// Some result comes from a heuristic search rather than a decision
    /// procedure.
    pub heuristic: bool,
}

impl<C: Serialize> Report<C> {
    pub fn new(command: &'static str, input_digest: String, system: Option<SystemInfo>, checks: Vec<C>) -> Report<C> {
        Report { schema: SCHEMA, tool_version: env!("CARGO_PKG_VERSION"), command, input_digest, system, checks, truncated: false, heuristic: false }
    }
}

/// `sha256:<hex>` over the concatenated inputs.
pub fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    format!("sha256:{:x}", h.finalize())
}
