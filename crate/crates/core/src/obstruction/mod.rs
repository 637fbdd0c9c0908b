//! Decision procedures for drift obstructions.

mod bc;
mod linalg;
mod quartic;
mod verdict;

pub use bc::{bc_classify, is_witness, quadratic_form_pd, BcInput, BcOutcome, BlockingCase};
pub use linalg::{express, solve, solve_form};
pub use quartic::{is_quartic_witness, quartic_bc_check, QuarticOutcome};
pub use verdict::{
    stlc_verdict_asymmetric, stlc_verdict_symmetric, sussmann_stheta_check, Analyzer, CheckError, ObstructionVerdict, Outcome,
    SussmannOutcome,
};
