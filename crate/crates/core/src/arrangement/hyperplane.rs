use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ArrangementError, Permutation};
use crate::rational::{format_rational, primitive_integer_vector, Rational};

/// An affine hyperplane `a_1 x_1 + ... + a_n x_n = b` over the rationals.
///
/// Always stored scaled so that the first nonzero coefficient is `1`; two
/// equations defining the same hyperplane are therefore structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    coeffs: Vec<Rational>,
    rhs: Rational,
}

/// Scales `(coeffs, rhs)` to its unique representative with leading coefficient 1.
pub fn canonicalize(coeffs: Vec<Rational>, rhs: Rational) -> Result<Hyperplane, ArrangementError> {
    let Some(lead) = coeffs.iter().find(|c| !c.is_zero()).cloned() else {
        return Err(ArrangementError::ZeroNormal);
    };
    if lead.is_one() {
        return Ok(Hyperplane { coeffs, rhs });
    }
    let coeffs = coeffs.into_iter().map(|c| c / &lead).collect();
    Ok(Hyperplane {
        coeffs,
        rhs: rhs / lead,
    })
}

impl Hyperplane {
    pub fn new(coeffs: Vec<Rational>, rhs: Rational) -> Result<Self, ArrangementError> {
        canonicalize(coeffs, rhs)
    }

    pub fn from_integers(coeffs: &[i64], rhs: i64) -> Result<Self, ArrangementError> {
        canonicalize(
            coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(),
            Rational::from_integer(rhs.into()),
        )
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn rhs(&self) -> &Rational {
        &self.rhs
    }

    /// Positions with a nonzero coefficient, increasing.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .positions(|c| !c.is_zero())
            .collect()
    }

    /// `coeffs ++ [rhs]`, the row of the augmented system.
    pub fn augmented_row(&self) -> Vec<Rational> {
        let mut row = self.coeffs.clone();
        row.push(self.rhs.clone());
        row
    }

    /// Primitive integer equation with positive leading coefficient.
    pub fn integer_row(&self) -> Vec<BigInt> {
        primitive_integer_vector(&self.augmented_row())
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        assert_eq!(point.len(), self.dim());
        let lhs: Rational = self
            .coeffs
            .iter()
            .zip(point)
            .map(|(a, x)| a * x)
            .sum();
        lhs == self.rhs
    }

    /// `σ·H`: coefficient `a_i` moves onto variable `x_{σ(i)}`.
    pub fn act(&self, sigma: &Permutation) -> Result<Hyperplane, ArrangementError> {
        if sigma.len() != self.dim() {
            return Err(ArrangementError::DimensionMismatch {
                expected: self.dim(),
                found: sigma.len(),
            });
        }
        let mut coeffs = vec![Rational::zero(); self.dim()];
        for (i, a) in self.coeffs.iter().enumerate() {
            coeffs[sigma.apply(i)] = a.clone();
        }
        canonicalize(coeffs, self.rhs.clone())
    }

    /// Pads (or trims trailing zero coefficients) to dimension `n`.
    pub fn embed(&self, n: usize) -> Result<Hyperplane, ArrangementError> {
        if self.coeffs[n.min(self.dim())..].iter().any(|c| !c.is_zero()) {
            return Err(ArrangementError::SupportTooLarge {
                support: self.support().len(),
                dim: n,
            });
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, Rational::zero());
        Ok(Hyperplane {
            coeffs,
            rhs: self.rhs.clone(),
        })
    }

    /// The equation restricted to its support, relabelled onto `x_1..x_j`.
    pub fn compress(&self) -> Hyperplane {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .cloned()
            .collect();
        Hyperplane {
            coeffs,
            rhs: self.rhs.clone(),
        }
    }

    /// The S_n-orbit of this hyperplane inside R^n, `n = self.dim()`.
    ///
    /// Enumerates injective placements of the support rather than all of S_n.
    pub fn orbit(&self) -> BTreeSet<Hyperplane> {
        self.orbit_in(self.dim())
            .expect("the support always fits in the ambient dimension")
    }

    /// The S_n-orbit of this equation placed in R^n.
    pub fn orbit_in(&self, n: usize) -> Result<BTreeSet<Hyperplane>, ArrangementError> {
        let compact = self.compress();
        let j = compact.dim();
        if j > n {
            return Err(ArrangementError::SupportTooLarge { support: j, dim: n });
        }
        let mut orbit = BTreeSet::new();
        for placement in (0..n).permutations(j) {
            let mut coeffs = vec![Rational::zero(); n];
            for (a, &pos) in compact.coeffs.iter().zip(&placement) {
                coeffs[pos] = a.clone();
            }
            orbit.insert(canonicalize(coeffs, compact.rhs.clone())?);
        }
        Ok(orbit)
    }
}

fn write_var(f: &mut fmt::Formatter<'_>, coeff: &Rational, var: usize, first: bool) -> fmt::Result {
    let neg = coeff.is_negative();
    let abs = coeff.abs();
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if !abs.is_one() {
        write!(f, "{}", format_rational(&abs))?;
    }
    write!(f, "x_{}", var + 1)
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write_var(f, c, i, first)?;
            first = false;
        }
        write!(f, " = {}", format_rational(&self.rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn h(coeffs: &[i64], rhs: i64) -> Hyperplane {
        Hyperplane::from_integers(coeffs, rhs).unwrap()
    }

    #[test]
    fn canonical_sign() {
        let c = canonicalize(vec![int(-1), int(1)], int(0)).unwrap();
        assert_eq!(c.coeffs(), &[int(1), int(-1)]);
        assert_eq!(c.rhs(), &int(0));
    }

    #[test]
    fn canonical_scaling() {
        let c = canonicalize(vec![int(2), int(2)], int(2)).unwrap();
        assert_eq!(c, h(&[1, 1], 1));
    }

    #[test]
    fn zero_normal_rejected() {
        assert_eq!(
            canonicalize(vec![int(0), int(0)], int(1)),
            Err(ArrangementError::ZeroNormal)
        );
    }

    #[test]
    fn scaled_equations_compare_equal() {
        let a = Hyperplane::new(vec![frac(1, 2), int(1)], int(1)).unwrap();
        let b = h(&[1, 2], 2);
        assert_eq!(a, b);
        assert_eq!(a.integer_row(), vec![1.into(), 2.into(), 2.into()]);
    }

    #[test]
    fn transposition_action() {
        let sigma = Permutation::from_cycle(2, &[1, 2]).unwrap();
        assert_eq!(h(&[1, -1], 1).act(&sigma).unwrap(), h(&[1, -1], -1));
    }

    #[test]
    fn identity_action() {
        let hp = h(&[3, 0, -2], 5);
        assert_eq!(hp.act(&Permutation::identity(3)).unwrap(), hp);
    }

    #[test]
    fn three_cycle_action() {
        let sigma = Permutation::from_cycle(3, &[1, 2, 3]).unwrap();
        assert_eq!(h(&[1, 1, 0], 1).act(&sigma).unwrap(), h(&[0, 1, 1], 1));
    }

    #[test]
    fn action_dimension_mismatch() {
        let err = h(&[1, 1], 0).act(&Permutation::identity(3)).unwrap_err();
        assert!(matches!(err, ArrangementError::DimensionMismatch { .. }));
    }

    #[test]
    fn braid_orbit() {
        let orbit = h(&[1, -1, 0], 0).orbit();
        let expected: BTreeSet<_> = [h(&[1, -1, 0], 0), h(&[1, 0, -1], 0), h(&[0, 1, -1], 0)].into();
        assert_eq!(orbit, expected);
    }

    #[test]
    fn shifted_orbit_keeps_both_signs() {
        let orbit = h(&[1, -1], 1).orbit();
        let expected: BTreeSet<_> = [h(&[1, -1], 1), h(&[1, -1], -1)].into();
        assert_eq!(orbit, expected);
    }

    #[test]
    fn coordinate_orbit() {
        let orbit = h(&[1, 0, 0], 0).orbit();
        assert_eq!(orbit.len(), 3);
        assert!(orbit.contains(&h(&[0, 0, 1], 0)));
    }

    #[test]
    fn orbit_in_larger_space() {
        assert_eq!(h(&[1, 1], 1).orbit_in(4).unwrap().len(), 6);
        assert!(h(&[1, 1, 1], 0).orbit_in(2).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(h(&[1, -1, 0], -1).to_string(), "x_1 - x_2 = -1");
        assert_eq!(
            Hyperplane::new(vec![int(1), frac(1, 2)], int(0)).unwrap().to_string(),
            "x_1 + 1/2x_2 = 0"
        );
    }
}
