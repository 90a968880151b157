//! Recovery of `χ̄(q, t)` and `χ(q)` as polynomials in `q` from their values
//! at several primes.

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::finite_field::{self, FqError};
use crate::modular::primes_from;
use crate::poly::vars::{Q, T};
use crate::poly::{Characteristic, Coboundary, UniPoly};
use crate::rational::Rational;
use crate::symmetric::{self, SymmetricError};

/// Smallest prime tried by [`default_primes`].
pub const DEFAULT_FIRST_PRIME: u64 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpolationError {
    #[error("need at least {needed} distinct primes, got {given}")]
    InsufficientPrimes { needed: usize, given: usize },
    #[error("prime {0} is listed twice")]
    DuplicatePrime(u64),
    #[error("interpolated coefficient of {term} is {value}, not an integer")]
    NonIntegral { term: String, value: String },
    #[error("interpolated polynomial has degree {degree} in q, above the bound {bound}")]
    DegreeTooHigh { degree: usize, bound: usize },
    #[error("interpolated characteristic polynomial is not monic of degree {dim}")]
    NotMonic { dim: usize },
    #[error("interpolated polynomial disagrees with the value at q = {0}")]
    Inconsistent(u64),
    #[error(transparent)]
    FiniteField(#[from] FqError),
    #[error(transparent)]
    Symmetric(#[from] SymmetricError),
}

/// How per-prime coboundary values are produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Evaluator {
    /// Point counting over F_q^n.
    #[default]
    PointCount,
    /// Residue-count formula; the arrangement must be symmetric.
    ClosedForm,
}

impl Evaluator {
    pub fn coboundary(self, arr: &Arrangement, q: u64) -> Result<UniPoly<T>, InterpolationError> {
        Ok(match self {
            Evaluator::PointCount => finite_field::coboundary_at_prime(arr, q)?,
            Evaluator::ClosedForm => symmetric::coboundary_closed_form(arr, q)?,
        })
    }
}

/// The unique polynomial of degree `< points.len()` through `points`.
/// The abscissae must be distinct.
pub fn lagrange_interpolate(points: &[(Rational, Rational)]) -> UniPoly<Q> {
    let mut out = UniPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = UniPoly::constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                let factor = UniPoly::from_coeffs(vec![-xj.clone(), Rational::from_integer(1.into())]);
                basis = &basis * &factor.scale(&(Rational::from_integer(1.into()) / (xi - xj)));
            }
        }
        out += &basis;
    }
    out
}

fn check_primes(primes: &[u64], needed: usize) -> Result<(), InterpolationError> {
    for (i, p) in primes.iter().enumerate() {
        if primes[..i].contains(p) {
            return Err(InterpolationError::DuplicatePrime(*p));
        }
    }
    if primes.len() < needed {
        return Err(InterpolationError::InsufficientPrimes {
            needed,
            given: primes.len(),
        });
    }
    Ok(())
}

fn rat(v: u64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Interpolates each `t`-coefficient in `q` through all given values, then
/// checks integrality, the degree bound and agreement at every prime.
pub fn interpolate_coboundary(values: &[(u64, UniPoly<T>)], rank: usize) -> Result<Coboundary, InterpolationError> {
    let primes: Vec<u64> = values.iter().map(|(q, _)| *q).collect();
    check_primes(&primes, rank + 1)?;
    let max_t = values
        .iter()
        .filter_map(|(_, p)| p.degree())
        .max()
        .map_or(0, |d| d + 1);
    let slices: Vec<UniPoly<Q>> = (0..max_t)
        .map(|j| {
            let points: Vec<(Rational, Rational)> = values.iter().map(|(q, p)| (rat(*q), p.coeff(j))).collect();
            lagrange_interpolate(&points)
        })
        .collect();
    let cb = Coboundary::from_second_slices(&slices);
    if let Some(((i, j), c)) = cb.terms().find(|(_, c)| !c.is_integer()) {
        return Err(InterpolationError::NonIntegral {
            term: format!("q^{i}*t^{j}"),
            value: c.to_string(),
        });
    }
    if let Some(degree) = cb.degree_first().filter(|&d| d > rank) {
        return Err(InterpolationError::DegreeTooHigh { degree, bound: rank });
    }
    for (q, p) in values {
        if &cb.eval_first(&rat(*q)) != p {
            return Err(InterpolationError::Inconsistent(*q));
        }
    }
    Ok(cb)
}

/// Monic, integral, degree `dim`, agreeing with every count.
pub fn interpolate_characteristic(values: &[(u64, BigInt)], dim: usize) -> Result<Characteristic, InterpolationError> {
    let primes: Vec<u64> = values.iter().map(|(q, _)| *q).collect();
    check_primes(&primes, dim + 1)?;
    let points: Vec<(Rational, Rational)> = values
        .iter()
        .map(|(q, c)| (rat(*q), Rational::from_integer(c.clone())))
        .collect();
    let chi = lagrange_interpolate(&points);
    if let Some((i, c)) = chi.coeffs().iter().enumerate().find(|(_, c)| !c.is_integer()) {
        return Err(InterpolationError::NonIntegral {
            term: format!("q^{i}"),
            value: c.to_string(),
        });
    }
    if chi.degree() != Some(dim) || chi.leading() != Some(&rat(1)) {
        return Err(InterpolationError::NotMonic { dim });
    }
    Ok(chi)
}

/// The `count` smallest primes `>= 5` certified for `arr`.
pub fn default_primes(arr: &Arrangement, count: usize) -> Result<Vec<u64>, InterpolationError> {
    let mut out = Vec::with_capacity(count);
    for q in primes_from(DEFAULT_FIRST_PRIME) {
        if out.len() == count {
            break;
        }
        if finite_field::certify_prime(arr, q)? {
            out.push(q);
        }
    }
    Ok(out)
}

/// `χ̄(q, t)` symbolic in `q`. Every prime must be certified.
pub fn recover_coboundary(arr: &Arrangement, primes: &[u64], evaluator: Evaluator) -> Result<Coboundary, InterpolationError> {
    check_primes(primes, arr.rank() + 1)?;
    let values = primes
        .par_iter()
        .map(|&q| Ok((q, evaluator.coboundary(arr, q)?)))
        .collect::<Result<Vec<_>, InterpolationError>>()?;
    interpolate_coboundary(&values, arr.rank())
}

/// `χ(q)` from point counts at the given certified primes.
pub fn recover_characteristic(arr: &Arrangement, primes: &[u64]) -> Result<Characteristic, InterpolationError> {
    check_primes(primes, arr.dim() + 1)?;
    let values = primes
        .par_iter()
        .map(|&q| Ok((q, finite_field::characteristic_at_prime(arr, q)?)))
        .collect::<Result<Vec<_>, InterpolationError>>()?;
    interpolate_characteristic(&values, arr.dim())
}

/// [`recover_coboundary`] with the smallest `rank + 1` certified primes.
pub fn coboundary_symbolic(arr: &Arrangement, evaluator: Evaluator) -> Result<Coboundary, InterpolationError> {
    recover_coboundary(arr, &default_primes(arr, arr.rank() + 1)?, evaluator)
}

/// [`recover_characteristic`] with the smallest `dim + 1` certified primes.
pub fn characteristic_symbolic(arr: &Arrangement) -> Result<Characteristic, InterpolationError> {
    recover_characteristic(arr, &default_primes(arr, arr.dim() + 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Hyperplane;
    use crate::families::Family;
    use crate::poly::characteristic_from_coboundary;

    fn cb(s: &[((usize, usize), i64)]) -> Coboundary {
        Coboundary::from_terms(s.iter().map(|&(e, c)| (e, Rational::from_integer(c.into()))))
    }

    #[test]
    fn lagrange_reproduces_points() {
        let pts: Vec<_> = [(1, 2), (2, 5), (4, 17)].iter().map(|&(x, y)| (rat(x), rat(y))).collect();
        assert_eq!(lagrange_interpolate(&pts), UniPoly::from_integers(&[1, 0, 1]));
    }

    #[test]
    fn catalan_two_from_values() {
        let values = vec![(5, UniPoly::from_integers(&[2, 3])), (7, UniPoly::from_integers(&[4, 3]))];
        assert_eq!(
            interpolate_coboundary(&values, 1).unwrap(),
            cb(&[((1, 0), 1), ((0, 1), 3), ((0, 0), -3)])
        );
        let c2 = Family::Catalan.arrangement(2).unwrap();
        assert_eq!(
            recover_coboundary(&c2, &[5, 7], Evaluator::PointCount).unwrap().to_string(),
            "q + 3t - 3"
        );
        assert_eq!(
            recover_coboundary(&c2, &[5, 7], Evaluator::ClosedForm).unwrap().to_string(),
            "q + 3t - 3"
        );
    }

    #[test]
    fn single_hyperplane() {
        let arr = Arrangement::new(2, vec![Hyperplane::from_integers(&[1, 1], 0).unwrap()]).unwrap();
        assert_eq!(
            recover_coboundary(&arr, &[3, 5], Evaluator::PointCount).unwrap().to_string(),
            "q + t - 1"
        );
    }

    #[test]
    fn empty_arrangement() {
        let arr = Arrangement::empty(2);
        assert_eq!(recover_coboundary(&arr, &[3], Evaluator::PointCount).unwrap(), Coboundary::one());
        assert_eq!(characteristic_symbolic(&arr).unwrap().to_string(), "q^2");
    }

    #[test]
    fn characteristic_examples() {
        let i2 = Family::IArrangement.arrangement(2).unwrap();
        assert_eq!(recover_characteristic(&i2, &[5, 7, 11]).unwrap().to_string(), "q^2 - 5q + 6");
        let st2 = Family::ShiThreshold.arrangement(2).unwrap();
        assert_eq!(recover_characteristic(&st2, &[5, 7, 11]).unwrap().to_string(), "q^2 - 2q");
    }

    #[test]
    fn whitney_consistency_and_extra_primes() {
        let i2 = Family::IArrangement.arrangement(2).unwrap();
        let minimal = recover_coboundary(&i2, &[5, 7, 11], Evaluator::PointCount).unwrap();
        let extra = recover_coboundary(&i2, &[5, 7, 11, 13, 17], Evaluator::PointCount).unwrap();
        assert_eq!(minimal, extra);
        assert_eq!(
            characteristic_from_coboundary(&minimal, 2, i2.rank()),
            characteristic_symbolic(&i2).unwrap()
        );
    }

    #[test]
    fn errors() {
        let c2 = Family::Catalan.arrangement(2).unwrap();
        assert_eq!(
            recover_coboundary(&c2, &[5], Evaluator::PointCount),
            Err(InterpolationError::InsufficientPrimes { needed: 2, given: 1 })
        );
        assert_eq!(
            recover_coboundary(&c2, &[5, 5], Evaluator::PointCount),
            Err(InterpolationError::DuplicatePrime(5))
        );
        // 2 and 4 at q = 2, 3 fit 2q - 2 but 1/2 appears for points (2, 1), (3, 1), (5, 2)
        let values = vec![(2, UniPoly::from_integers(&[1])), (3, UniPoly::from_integers(&[1])), (5, UniPoly::from_integers(&[2]))];
        assert!(matches!(
            interpolate_coboundary(&values, 2),
            Err(InterpolationError::NonIntegral { .. })
        ));
        let values = vec![(2, UniPoly::from_integers(&[0])), (3, UniPoly::from_integers(&[0])), (5, UniPoly::from_integers(&[6]))];
        assert!(matches!(
            interpolate_coboundary(&values, 1),
            Err(InterpolationError::DegreeTooHigh { degree: 2, bound: 1 })
        ));
        let values = vec![(2, BigInt::from(0)), (3, BigInt::from(1)), (5, BigInt::from(3))];
        assert_eq!(interpolate_characteristic(&values, 2), Err(InterpolationError::NotMonic { dim: 2 }));
    }

    #[test]
    fn default_primes_skip_uncertified() {
        let st3 = Family::ShiThreshold.arrangement(3).unwrap();
        let primes = default_primes(&st3, 3).unwrap();
        assert_eq!(primes.len(), 3);
        assert!(primes.iter().all(|&q| finite_field::certify_prime(&st3, q).unwrap()));
    }
}
