//! Exact univariate and bivariate polynomials, plus the identities linking
//! the Tutte, coboundary and characteristic polynomials of an arrangement.

mod bi;
mod render;
mod uni;
pub mod vars;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

pub use bi::BiPoly;
pub use uni::UniPoly;
use vars::{Q, QT, XY};

use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by (y - 1) left a nonzero remainder")]
    NonExactDivision,
    #[error("evaluation {0} is not a nonnegative integer")]
    InvalidRegionCount(String),
}

pub type Tutte = BiPoly<XY>;
pub type Coboundary = BiPoly<QT>;
pub type Characteristic = UniPoly<Q>;

/// `T(x, y) = (y-1)^{-r} χ̄((x-1)(y-1), y)`.
///
/// The division by `(y-1)^r` must be exact; otherwise `cb` was not the
/// coboundary polynomial of an arrangement of rank `rank`.
pub fn tutte_from_coboundary(cb: &Coboundary, rank: usize) -> Result<Tutte, PolyError> {
    let xm1 = &Tutte::first() - &Tutte::one();
    let ym1 = &Tutte::second() - &Tutte::one();
    let q_sub = &xm1 * &ym1;
    let mut q_powers = vec![Tutte::one()];
    let mut t_powers = vec![Tutte::one()];
    let mut substituted = Tutte::zero();
    for ((i, j), c) in cb.terms() {
        while q_powers.len() <= i {
            let next = q_powers.last().unwrap() * &q_sub;
            q_powers.push(next);
        }
        while t_powers.len() <= j {
            let next = t_powers.last().unwrap() * &Tutte::second();
            t_powers.push(next);
        }
        let term = &(&q_powers[i] * &t_powers[j]) * &Tutte::constant(c.clone());
        substituted = &substituted + &term;
    }
    (0..rank).try_fold(substituted, |p, _| p.div_second_minus_one())
}

/// Whitney: `χ(q) = q^{n-r} χ̄(q, 0)`.
pub fn characteristic_from_coboundary(cb: &Coboundary, dim: usize, rank: usize) -> Characteristic {
    assert!(rank <= dim, "rank {rank} exceeds dimension {dim}");
    cb.eval_second(&int(0)).shift(dim - rank)
}

fn signed_count(value: Rational, negate: bool) -> Result<BigInt, PolyError> {
    let value = if negate { -value } else { value };
    if !value.is_integer() || value.is_negative() {
        return Err(PolyError::InvalidRegionCount(crate::rational::format_rational(&value)));
    }
    Ok(value.to_integer())
}

/// Number of regions, `(-1)^n χ(-1)`.
pub fn regions(chi: &Characteristic, dim: usize) -> Result<BigInt, PolyError> {
    signed_count(chi.eval(&-Rational::one()), dim % 2 == 1)
}

/// Number of relatively bounded regions, `(-1)^r χ(1)`.
pub fn bounded_regions(chi: &Characteristic, rank: usize) -> Result<BigInt, PolyError> {
    signed_count(chi.eval(&Rational::one()), rank % 2 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use proptest::prelude::*;

    fn cb(terms: &[((usize, usize), i64)]) -> Coboundary {
        Coboundary::from_terms(terms.iter().map(|&(k, c)| (k, int(c))))
    }

    fn tutte(terms: &[((usize, usize), i64)]) -> Tutte {
        Tutte::from_terms(terms.iter().map(|&(k, c)| (k, int(c))))
    }

    #[test]
    fn single_hyperplane_tutte() {
        // q + t - 1
        let c = cb(&[((1, 0), 1), ((0, 1), 1), ((0, 0), -1)]);
        assert_eq!(tutte_from_coboundary(&c, 1).unwrap(), tutte(&[((1, 0), 1)]));
    }

    #[test]
    fn three_parallel_lines_tutte() {
        // q + 3t - 3  ->  ((x-1)(y-1) + 3(y-1)) / (y-1) = x + 2
        let c = cb(&[((1, 0), 1), ((0, 1), 3), ((0, 0), -3)]);
        let t = tutte_from_coboundary(&c, 1).unwrap();
        assert_eq!(t, tutte(&[((1, 0), 1), ((0, 0), 2)]));
        assert_eq!(t.to_string(), "x + 2");
    }

    #[test]
    fn empty_tutte() {
        assert_eq!(tutte_from_coboundary(&Coboundary::one(), 0).unwrap(), Tutte::one());
    }

    #[test]
    fn wrong_rank_is_detected() {
        let c = cb(&[((1, 0), 1), ((0, 1), 1), ((0, 0), -1)]);
        assert_eq!(tutte_from_coboundary(&c, 2), Err(PolyError::NonExactDivision));
    }

    #[test]
    fn whitney_specialization() {
        let catalan2 = cb(&[((1, 0), 1), ((0, 1), 3), ((0, 0), -3)]);
        assert_eq!(
            characteristic_from_coboundary(&catalan2, 2, 1),
            UniPoly::from_integers(&[0, -3, 1])
        );
        let single = cb(&[((1, 0), 1), ((0, 1), 1), ((0, 0), -1)]);
        assert_eq!(
            characteristic_from_coboundary(&single, 2, 1),
            UniPoly::from_integers(&[0, -1, 1])
        );
        assert_eq!(
            characteristic_from_coboundary(&Coboundary::one(), 3, 0),
            UniPoly::from_integers(&[0, 0, 0, 1])
        );
    }

    #[test]
    fn zaslavsky_counts() {
        let c2 = UniPoly::from_integers(&[0, -3, 1]);
        assert_eq!(regions(&c2, 2).unwrap(), BigInt::from(4));
        let i2 = UniPoly::from_integers(&[6, -5, 1]);
        assert_eq!(regions(&i2, 2).unwrap(), BigInt::from(12));
        assert_eq!(bounded_regions(&i2, 2).unwrap(), BigInt::from(2));
        let st2 = UniPoly::from_integers(&[0, -2, 1]);
        assert_eq!(regions(&st2, 2).unwrap(), BigInt::from(3));
        assert_eq!(bounded_regions(&st2, 1).unwrap(), BigInt::from(1));
    }

    #[test]
    fn negative_region_count_rejected() {
        // -(q + 5) at q = -1 is -4
        let bad = UniPoly::from_integers(&[5, 1]);
        assert!(regions(&bad, 1).is_err());
        let half = UniPoly::<Q>::from_coeffs(vec![frac(1, 2)]);
        assert!(regions(&half, 2).is_err());
    }

    proptest! {
        /// `χ̄(q0, t0) = (t0 - 1)^r T((q0 + t0 - 1)/(t0 - 1), t0)` on C_2.
        #[test]
        fn tutte_round_trip(qn in -20i64..20, tn in -20i64..20, td in 1i64..5) {
            let t0 = frac(tn, td);
            prop_assume!(t0 != int(1));
            let q0 = int(qn);
            let c = cb(&[((1, 0), 1), ((0, 1), 3), ((0, 0), -3)]);
            let t = tutte_from_coboundary(&c, 1).unwrap();
            let x0 = (&q0 + &t0 - int(1)) / (&t0 - int(1));
            prop_assert_eq!(t.eval(&x0, &t0) * (&t0 - int(1)), c.eval(&q0, &t0));
        }
    }
}
