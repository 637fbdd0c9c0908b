//! Small exact linear solves used by the witness constructions.

use num_traits::{One, Zero};

use crate::rational::Q;

/// One solution of `A x = rhs` (free unknowns set to zero), or `None` when
/// the system is inconsistent. `a` is given by rows, each of length `ncols`.
pub fn solve(a: &[Vec<Q>], rhs: &[Q], ncols: usize) -> Option<Vec<Q>> {
    assert_eq!(a.len(), rhs.len());
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            assert_eq!(row.len(), ncols);
            let mut row = row.clone();
            row.push(r.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = Q::one() / &m[rank][col];
        for x in m[rank].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i == rank || m[i][col].is_zero() {
                continue;
            }
            let c = m[i][col].clone();
            let (pivot_row, row) = if i < rank {
                let (lo, hi) = m.split_at_mut(rank);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = m.split_at_mut(i);
                (&lo[rank], &mut hi[0])
            };
            for (x, y) in row.iter_mut().zip(pivot_row) {
                *x -= &c * y;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if m[rank..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = m[i][ncols].clone();
    }
    Some(x)
}

/// Coefficients `c` with `sum c_j basis_j = v`, if `v` lies in the span.
pub fn express(v: &[Q], basis: &[&[Q]]) -> Option<Vec<Q>> {
    let a: Vec<Vec<Q>> = (0..v.len()).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
    solve(&a, v, basis.len())
}

/// A form `c` on `Q^r` with `c . vectors[i] = targets[i]`.
pub fn solve_form(vectors: &[&[Q]], targets: &[Q], r: usize) -> Option<Vec<Q>> {
    let a: Vec<Vec<Q>> = vectors.iter().map(|v| v.to_vec()).collect();
    solve(&a, targets, r)
}

pub fn is_zero(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Whether the given vectors are linearly independent.
pub fn independent(vectors: &[&[Q]]) -> bool {
    let Some(first) = vectors.first() else {
        return true;
    };
    let mut s = crate::vectorfields::RationalSubspace::zero(first.len());
    vectors.iter().all(|v| s.insert(v).expect("common dimension"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|x| int(*x)).collect()
    }

    #[test]
    fn solves_and_detects_inconsistency() {
        let a = vec![v(&[1, 1]), v(&[1, -1]), v(&[2, 0])];
        assert_eq!(solve(&a, &v(&[3, 1, 4]), 2), Some(v(&[2, 1])));
        assert_eq!(solve(&a, &v(&[3, 1, 5]), 2), None);
        assert_eq!(express(&v(&[2, 4]), &[&v(&[1, 2])]), Some(v(&[2])));
        assert!(independent(&[&v(&[1, 0, 0]), &v(&[1, 1, 0])]));
        assert!(!independent(&[&v(&[1, 2]), &v(&[2, 4])]));
    }
}
