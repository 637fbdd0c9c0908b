//! Integer coefficients of the expansions of `[b, b 0^nu]` and of
//! `[M^i_p, M^{i'}_p 0^nu]` along the Hall families.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::rational::{binomial, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoeffKind {
    /// `[b, b 0^nu] = sum_r alpha_r [b 0^r, b 0^{r+1}] 0^{nu-2r-1}`, `2r+1 <= nu`.
    Alpha,
    /// `[M^1_p, M^2_p 0^nu] = sum_r beta_r C_{2p+r, nu-r}`, `0 <= r <= nu`.
    Beta,
    /// `[M^2_p, M^1_p 0^nu] = sum_r gamma_r C_{2p+r, nu-r}`, `0 <= r <= nu`.
    Gamma,
}

/// Coefficient table for `kind` at order `nu`, indexed by `r`.
pub fn expand_coefficients(kind: CoeffKind, nu: usize) -> Vec<Q> {
    match kind {
        CoeffKind::Alpha => alpha(nu),
        CoeffKind::Beta => cross(nu, vec![Q::one()], vec![Q::one(), Q::one()]),
        CoeffKind::Gamma => cross(nu, vec![-Q::one()], vec![Q::zero(), Q::one()]),
    }
}

/// `[b 0^p, b 0^{p+d}]` expands with the same coefficients for every `p`;
/// `T(p, q+1) = T(p, q) 0 - T(p+1, q)` gives `A(d)_r = A(d-1)_r - A(d-2)_{r-1}`.
fn alpha(nu: usize) -> Vec<Q> {
    let mut prev2: Vec<Q> = Vec::new();
    let mut prev1: Vec<Q> = vec![Q::one()];
    if nu == 0 {
        return prev2;
    }
    for _ in 2..=nu {
        let width = prev1.len().max(prev2.len() + 1);
        let next: Vec<Q> = (0..width)
            .map(|r| {
                let a = prev1.get(r).cloned().unwrap_or_else(Q::zero);
                let b = if r >= 1 { prev2.get(r - 1).cloned().unwrap_or_else(Q::zero) } else { Q::zero() };
                a - b
            })
            .collect();
        prev2 = prev1;
        prev1 = next;
    }
    prev1
}

/// `g^{nu+2}_r = g^{nu+1}_r - g^nu_{r-2}` with the given first two rows.
fn cross(nu: usize, row0: Vec<Q>, row1: Vec<Q>) -> Vec<Q> {
    if nu == 0 {
        return row0;
    }
    let (mut prev2, mut prev1) = (row0, row1);
    for n in 2..=nu {
        let next: Vec<Q> = (0..=n)
            .map(|r| {
                let a = prev1.get(r).cloned().unwrap_or_else(Q::zero);
                let b = if r >= 2 { prev2[r - 2].clone() } else { Q::zero() };
                a - b
            })
            .collect();
        prev2 = prev1;
        prev1 = next;
    }
    prev1
}

/// Coefficients of `[a, b 0^nu] = sum_k c_k [a 0^k, b] 0^{nu-k}`:
/// `c_k = (-1)^k C(nu, k)`.
pub fn shift_coefficients(nu: usize) -> Vec<Q> {
    (0..=nu).map(|k| if k % 2 == 0 { binomial(nu, k) } else { -binomial(nu, k) }).collect()
}
