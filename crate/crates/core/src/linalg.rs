//! Rank computations for small linear systems `A x = b`.
//!
//! Every routine eliminates column by column over the augmented matrix
//! `(A | b)`, so the pivots found in the first `n` columns are exactly the
//! rank of `A`, and one extra pivot in the last column means the system is
//! inconsistent.

use num_traits::Zero;

use crate::modular::{inv_mod, mul_mod};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SystemRank {
    /// Rank of the coefficient matrix.
    pub coeff: usize,
    /// Rank of the augmented matrix.
    pub augmented: usize,
}

impl SystemRank {
    pub const EMPTY: SystemRank = SystemRank {
        coeff: 0,
        augmented: 0,
    };

    pub fn is_consistent(&self) -> bool {
        self.coeff == self.augmented
    }
}

fn summarize(pivot_cols: &[usize], n_coeff_cols: usize) -> SystemRank {
    let coeff = pivot_cols.iter().filter(|&&c| c < n_coeff_cols).count();
    SystemRank {
        coeff,
        augmented: pivot_cols.len(),
    }
}

/// Exact Gaussian elimination over the rationals. Each row is `coeffs ++ [rhs]`.
pub fn system_rank_rational(rows: &[&[Rational]]) -> SystemRank {
    let Some(width) = rows.first().map(|r| r.len()) else {
        return SystemRank::EMPTY;
    };
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.to_vec()).collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..width {
        if top == m.len() {
            break;
        }
        let Some(p) = (top..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(top, p);
        let pivot = m[top][col].clone();
        for i in top + 1..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let factor = &m[i][col] / &pivot;
            for k in col..width {
                let delta = &factor * &m[top][k];
                m[i][k] -= delta;
            }
        }
        pivots.push(col);
        top += 1;
    }
    summarize(&pivots, width - 1)
}

/// Fraction-free (Bareiss) elimination on integer rows with overflow checks.
///
/// Returns `None` when an intermediate value leaves the `i128` range; callers
/// fall back to [`system_rank_rational`].
pub fn system_rank_integer(rows: &[&[i64]]) -> Option<SystemRank> {
    let Some(width) = rows.first().map(|r| r.len()) else {
        return Some(SystemRank::EMPTY);
    };
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut prev: i128 = 1;
    let mut top = 0;
    for col in 0..width {
        if top == m.len() {
            break;
        }
        let Some(p) = (top..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(top, p);
        let pivot = m[top][col];
        for i in top + 1..m.len() {
            let lead = m[i][col];
            for k in col + 1..width {
                let num = pivot
                    .checked_mul(m[i][k])?
                    .checked_sub(lead.checked_mul(m[top][k])?)?;
                debug_assert_eq!(num % prev, 0, "Bareiss division must be exact");
                m[i][k] = num / prev;
            }
            m[i][col] = 0;
        }
        prev = pivot;
        top += 1;
        pivots.push(col);
    }
    Some(summarize(&pivots, width - 1))
}

/// Elimination over F_p for prime `p`; entries may be negative.
pub fn system_rank_mod_p(rows: &[&[i64]], p: u64) -> SystemRank {
    let Some(width) = rows.first().map(|r| r.len()) else {
        return SystemRank::EMPTY;
    };
    let pi = p as i64;
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v.rem_euclid(pi) as u64).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..width {
        if top == m.len() {
            break;
        }
        let Some(piv) = (top..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(top, piv);
        let inv = inv_mod(m[top][col], p);
        for i in top + 1..m.len() {
            if m[i][col] == 0 {
                continue;
            }
            let factor = mul_mod(m[i][col], inv, p);
            for k in col..width {
                let sub = mul_mod(factor, m[top][k], p);
                m[i][k] = (m[i][k] + p - sub) % p;
            }
        }
        top += 1;
        pivots.push(col);
    }
    summarize(&pivots, width - 1)
}

/// Rank of a plain rational matrix (no right-hand side column).
pub fn matrix_rank(rows: &[Vec<Rational>]) -> usize {
    let padded: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.push(Rational::zero());
            r
        })
        .collect();
    let refs: Vec<&[Rational]> = padded.iter().map(|r| r.as_slice()).collect();
    system_rank_rational(&refs).coeff
}

/// Converts an integer row to `i64` if every entry fits.
pub fn to_i64_row(values: &[num_bigint::BigInt]) -> Option<Vec<i64>> {
    values.iter().map(|v| i64::try_from(v).ok()).collect()
}
