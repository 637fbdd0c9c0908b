//! Verdicts for one system: quadratic drift checks, the bounded Sussmann
//! condition and the quartic variant.

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use super::bc::{bc_classify, BcInput, BlockingCase};
use super::quartic::{quartic_bc_check, QuarticOutcome};
use crate::freelie::{c, w, BasisConfig, Bracket, Control, HallBasis, HallError, ObstructionParams, ParamError};
use crate::rational::{int, ratio, serde_q, Q};
use crate::vectorfields::{evaluate_bracket, BracketTable, EvalError, PolySystem, RationalSubspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Obstruction,
    Inconclusive,
}

/// Result of a quadratic drift check at fixed parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionVerdict {
    pub params: ObstructionParams,
    pub outcome: Outcome,
    #[serde(serialize_with = "serde_q::vector")]
    pub e1: Vec<Q>,
    #[serde(serialize_with = "serde_q::vector")]
    pub e2: Vec<Q>,
    #[serde(serialize_with = "serde_q::vector")]
    pub e3: Vec<Q>,
    /// Dimension of the compensating span at the origin.
    pub span_rank: usize,
    /// `e1 + e2` when an obstruction is found.
    #[serde(serialize_with = "serde_q::opt_vector")]
    pub direction: Option<Vec<Q>>,
    #[serde(serialize_with = "serde_q::opt_vector")]
    pub witness: Option<Vec<Q>>,
    pub blocking_case: Option<BlockingCase>,
    /// Regime exponent `(pi - 2k) / (pi - 1)`.
    #[serde(serialize_with = "serde_q::scalar")]
    pub exponent: Q,
    /// Same for `(k', m')` in asymmetric checks.
    #[serde(serialize_with = "serde_q::opt_scalar")]
    pub exponent_prime: Option<Q>,
    /// State exponent `1 + 1/pi` in the drift inequality.
    #[serde(serialize_with = "serde_q::scalar")]
    pub state_exponent: Q,
    /// The drift strength as an integral of iterated primitives.
    pub drift_strength: String,
    /// Spans may miss brackets longer than the length cap.
    pub truncated: bool,
}

/// Result of the bounded Sussmann check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SussmannOutcome {
    /// The symmetrized value lies in the span of the lower-weight brackets.
    pub in_span: bool,
    #[serde(serialize_with = "serde_q::vector")]
    pub target: Vec<Q>,
    pub span_rank: usize,
    /// Only brackets up to the length cap were considered and no horizon
    /// was reached below it.
    pub truncated: bool,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("bracket {0} needs an odd number of X0 and an even number of X1 and X2")]
    Parity(String),
    #[error("theta must lie in [0, 1]")]
    Theta,
}

impl From<HallError> for CheckError {
    fn from(e: HallError) -> Self {
        CheckError::Eval(e.into())
    }
}

impl From<ParamError> for CheckError {
    fn from(e: ParamError) -> Self {
        CheckError::Eval(e.into())
    }
}

impl From<crate::vectorfields::FieldError> for CheckError {
    fn from(e: crate::vectorfields::FieldError) -> Self {
        CheckError::Eval(e.into())
    }
}

/// A system together with every Hall bracket evaluated up to a length cap.
#[derive(Debug)]
pub struct Analyzer {
    system: PolySystem,
    table: BracketTable,
    length_cap: usize,
}

impl Analyzer {
    /// Evaluates all Hall members of length at most `length_cap`.
    pub fn new(system: &PolySystem, length_cap: usize) -> Result<Analyzer, CheckError> {
        let cap = length_cap.max(crate::freelie::DEFAULT_CAP);
        let basis = Arc::new(HallBasis::with_config(BasisConfig::new(length_cap).with_cap(cap))?);
        Analyzer::with_basis(system, basis)
    }

    pub fn with_basis(system: &PolySystem, basis: Arc<HallBasis>) -> Result<Analyzer, CheckError> {
        let length_cap = basis.max_length();
        let table = BracketTable::new(system, basis)?;
        Ok(Analyzer { system: system.clone(), table, length_cap })
    }

    pub fn system(&self) -> &PolySystem {
        &self.system
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    pub fn length_cap(&self) -> usize {
        self.length_cap
    }

    fn truncated(&self) -> bool {
        self.table.horizon().is_none_or(|h| h > self.length_cap + 1)
    }

    /// Drift check for `params`; symmetric and asymmetric modes share the
    /// construction with `k' = k` in the symmetric case.
    pub fn verdict(&self, params: &ObstructionParams) -> Result<ObstructionVerdict, CheckError> {
        params.validate()?;
        let needed = params.required_length();
        if self.length_cap < needed {
            return Err(EvalError::CapTooSmall { cap: self.length_cap, needed }.into());
        }
        let (k, kp) = params.orders();
        let e1 = self.table.eval_at_zero(&w(Control::U, k, 0))?;
        let e2 = self.table.eval_at_zero(&w(Control::V, kp, 0))?;
        let e3 = self.table.eval_at_zero(&c(k + kp - 1, 0))?;
        let (span, truncated) = self.table.obstruction_span(params, self.length_cap)?;
        let span_rank = span.rank();
        let bc = bc_classify(&BcInput { e1: e1.clone(), e2: e2.clone(), e3: e3.clone(), span })?;
        let (pi, pi_p) = params.truncation_orders();
        let exponent = regime_exponent(k, pi);
        let exponent_prime = match params {
            ObstructionParams::Symmetric { .. } => None,
            ObstructionParams::Asymmetric { .. } => Some(regime_exponent(kp, pi_p)),
        };
        let direction = bc.holds.then(|| e1.iter().zip(&e2).map(|(a, b)| a + b).collect());
        Ok(ObstructionVerdict {
            params: *params,
            outcome: if bc.holds { Outcome::Obstruction } else { Outcome::Inconclusive },
            e1,
            e2,
            e3,
            span_rank,
            direction,
            witness: bc.witness,
            blocking_case: bc.blocking_case,
            exponent,
            exponent_prime,
            state_exponent: int(1) + ratio(1, pi as i64),
            drift_strength: format!("int_0^t (u_{k}^2 + v_{kp}^2)"),
            truncated,
        })
    }

    pub fn verdict_symmetric(&self, k: usize, m: usize) -> Result<ObstructionVerdict, CheckError> {
        self.verdict(&ObstructionParams::symmetric(k, m)?)
    }

    pub fn verdict_asymmetric(&self, k: usize, kp: usize, m: usize, mp: usize) -> Result<ObstructionVerdict, CheckError> {
        self.verdict(&ObstructionParams::asymmetric(k, kp, m, mp)?)
    }

    /// Is `f_b(0) + f_{swap(b)}(0)` in the span of `f_b'(0)` over Hall
    /// members `b'` of lower weight `n + theta n0`, with `|b'|` within the cap?
    pub fn sussmann(&self, theta: &Q, target_bracket: &Bracket) -> Result<SussmannOutcome, CheckError> {
        if *theta < Q::zero() || *theta > int(1) {
            return Err(CheckError::Theta);
        }
        let counts = target_bracket.counts();
        if counts.n0 % 2 != 1 || !counts.n1.is_multiple_of(2) || !counts.n2.is_multiple_of(2) {
            return Err(CheckError::Parity(target_bracket.to_string()));
        }
        let weight = |n: usize, n0: usize| Q::from_integer(n.into()) + theta * Q::from_integer(n0.into());
        let limit = weight(counts.n(), counts.n0);
        let direct = evaluate_bracket(&self.system, target_bracket)?.at_zero();
        let swapped = evaluate_bracket(&self.system, &target_bracket.swapped())?.at_zero();
        let target: Vec<Q> = direct.iter().zip(&swapped).map(|(a, b)| a + b).collect();
        let mut span = RationalSubspace::zero(self.table.dim());
        let basis = self.table.basis();
        for (i, b) in basis.members().iter().enumerate() {
            let bc = b.counts();
            if weight(bc.n(), bc.n0) < limit && self.table.value_at_zero(i).iter().any(|x| !x.is_zero()) {
                span.insert(self.table.value_at_zero(i))?;
            }
        }
        Ok(SussmannOutcome { in_span: span.contains(&target)?, target, span_rank: span.rank(), truncated: self.truncated() })
    }

    /// Quartic sign condition on `ad_{X2}^i ad_{X1}^{4-i} X0`, `i = 0..4`,
    /// with the compensating span taken over members with one or three
    /// control occurrences. This choice of span is a heuristic.
    pub fn quartic(&self) -> Result<(QuarticOutcome, bool), CheckError> {
        let e: Vec<Vec<Q>> = (0..=4)
            .map(|i| {
                let mut b = Bracket::x0();
                for _ in 0..4 - i {
                    b = Bracket::pair(Bracket::x1(), b);
                }
                for _ in 0..i {
                    b = Bracket::pair(Bracket::x2(), b);
                }
                evaluate_bracket(&self.system, &b).map(|f| f.at_zero())
            })
            .collect::<Result<_, _>>()?;
        let mut span = RationalSubspace::zero(self.table.dim());
        for (i, b) in self.table.basis().members().iter().enumerate() {
            if matches!(b.n(), 1 | 3) {
                span.insert(self.table.value_at_zero(i))?;
            }
        }
        let e: [Vec<Q>; 5] = e.try_into().expect("five brackets");
        Ok((quartic_bc_check(&e, &span)?, self.truncated()))
    }
}

fn regime_exponent(k: usize, pi: usize) -> Q {
    ratio(pi as i64 - 2 * k as i64, pi as i64 - 1)
}

/// One-shot symmetric verdict.
pub fn stlc_verdict_symmetric(system: &PolySystem, k: usize, m: usize, length_cap: usize) -> Result<ObstructionVerdict, CheckError> {
    Analyzer::new(system, length_cap)?.verdict_symmetric(k, m)
}

/// One-shot asymmetric verdict.
pub fn stlc_verdict_asymmetric(
    system: &PolySystem,
    k: usize,
    kp: usize,
    m: usize,
    mp: usize,
    length_cap: usize,
) -> Result<ObstructionVerdict, CheckError> {
    Analyzer::new(system, length_cap)?.verdict_asymmetric(k, kp, m, mp)
}

/// One-shot bounded Sussmann check.
pub fn sussmann_stheta_check(system: &PolySystem, theta: &Q, target: &Bracket, length_cap: usize) -> Result<SussmannOutcome, CheckError> {
    Analyzer::new(system, length_cap)?.sussmann(theta, target)
}
