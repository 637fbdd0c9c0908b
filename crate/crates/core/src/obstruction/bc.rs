//! Exact decision of the quadratic sign condition on `(e1, e2, e3, N)`:
//! is there a form `P` vanishing on `N` with `P(e3)^2 < P(e1) P(e2)`?

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::linalg::{express, independent, is_zero, solve_form};
use crate::rational::{primitive, ratio, serde_q, Q};
use crate::vectorfields::{apply_form, FieldError, RationalSubspace};

/// The three bracket values and the compensating span.
#[derive(Clone, Debug)]
pub struct BcInput {
    pub e1: Vec<Q>,
    pub e2: Vec<Q>,
    pub e3: Vec<Q>,
    pub span: RationalSubspace,
}

/// Why no form exists, with the realized parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case")]
pub enum BlockingCase {
    /// `e1` or `e2` lies in the span.
    ZeroImage,
    /// Images of `e1`, `e2` independent and `e3 = a e1 + b e2` with `ab >= 1/4`.
    IndependentHighCross {
        #[serde(serialize_with = "serde_q::scalar")]
        a: Q,
        #[serde(serialize_with = "serde_q::scalar")]
        b: Q,
    },
    /// `e2 = beta e1` with `beta < 0`.
    NegativeRatio {
        #[serde(serialize_with = "serde_q::scalar")]
        beta: Q,
    },
    /// `e2 = beta e1`, `e3 = gamma e1` with `0 < beta <= gamma^2`.
    RatioDominatedBySquare {
        #[serde(serialize_with = "serde_q::scalar")]
        beta: Q,
        #[serde(serialize_with = "serde_q::scalar")]
        gamma: Q,
    },
}

impl BlockingCase {
    pub fn tag(&self) -> &'static str {
        match self {
            BlockingCase::ZeroImage => "ZeroImage",
            BlockingCase::IndependentHighCross { .. } => "IndependentHighCross",
            BlockingCase::NegativeRatio { .. } => "NegativeRatio",
            BlockingCase::RatioDominatedBySquare { .. } => "RatioDominatedBySquare",
        }
    }
}

/// Result of [`bc_classify`]: exactly one of `witness` and `blocking_case`
/// is present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BcOutcome {
    pub holds: bool,
    #[serde(serialize_with = "serde_q::opt_vector")]
    pub witness: Option<Vec<Q>>,
    pub blocking_case: Option<BlockingCase>,
}

impl BcOutcome {
    fn holds(witness: Vec<Q>) -> BcOutcome {
        BcOutcome { holds: true, witness: Some(witness), blocking_case: None }
    }

    fn fails(case: BlockingCase) -> BcOutcome {
        BcOutcome { holds: false, witness: None, blocking_case: Some(case) }
    }
}

/// Positive definiteness of `(a1, a2) -> a a1^2/2 + b a2^2/2 + g a1 a2`.
pub fn quadratic_form_pd(a: &Q, b: &Q, g: &Q) -> bool {
    a.is_positive() && g * g < a * b
}

/// Whether `p` vanishes on the span and satisfies the strict inequality with
/// `P(e1) > 0`, `P(e2) > 0`.
pub fn is_witness(input: &BcInput, p: &[Q]) -> bool {
    let (p1, p2, p3) = (apply_form(p, &input.e1), apply_form(p, &input.e2), apply_form(p, &input.e3));
    input.span.rows().iter().all(|r| apply_form(p, r).is_zero()) && p1.is_positive() && p2.is_positive() && &p3 * &p3 < p1 * p2
}

/// Exact case analysis on the images in the quotient by the span.
///
/// When a form exists it is built on quotient coordinates, lifted to
/// `Q^d` and scaled to coprime integers.
pub fn bc_classify(input: &BcInput) -> Result<BcOutcome, FieldError> {
    let n = &input.span;
    let q1 = n.quotient_image(&input.e1)?;
    let q2 = n.quotient_image(&input.e2)?;
    let q3 = n.quotient_image(&input.e3)?;
    let r = q1.len();
    if is_zero(&q1) || is_zero(&q2) {
        return Ok(BcOutcome::fails(BlockingCase::ZeroImage));
    }
    let one = Q::one;
    let form = if independent(&[&q1, &q2]) {
        match express(&q3, &[&q1, &q2]) {
            None => solve_form(&[&q1, &q2, &q3], &[one(), one(), Q::zero()], r),
            Some(ab) => {
                let (a, b) = (&ab[0], &ab[1]);
                if a * b >= ratio(1, 4) {
                    return Ok(BcOutcome::fails(BlockingCase::IndependentHighCross { a: a.clone(), b: b.clone() }));
                }
                let p1 = if a.is_zero() {
                    b * b + one()
                } else {
                    (one() - Q::from_integer(2.into()) * a * b) / (Q::from_integer(2.into()) * a * a)
                };
                solve_form(&[&q1, &q2], &[p1, one()], r)
            }
        }
    } else {
        let beta = express(&q2, &[&q1]).expect("parallel images")[0].clone();
        if beta.is_negative() {
            return Ok(BcOutcome::fails(BlockingCase::NegativeRatio { beta }));
        }
        match express(&q3, &[&q1]) {
            None => solve_form(&[&q1, &q3], &[one(), Q::zero()], r),
            Some(g) => {
                let gamma = g[0].clone();
                if beta <= &gamma * &gamma {
                    return Ok(BcOutcome::fails(BlockingCase::RatioDominatedBySquare { beta, gamma }));
                }
                solve_form(&[&q1], &[one()], r)
            }
        }
    };
    let c = form.expect("the prescribed values are on independent images");
    let witness = primitive(&n.lift_form(&c));
    debug_assert!(is_witness(input, &witness));
    Ok(BcOutcome::holds(witness))
}
