use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::render::write_terms;
use super::vars::Variable;
use crate::rational::Rational;

/// Dense univariate polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<V: Variable> {
    /// `coeffs[d]` multiplies `v^d`; never ends in a zero.
    coeffs: Vec<Rational>,
    _var: PhantomData<V>,
}

impl<V: Variable> UniPoly<V> {
    pub fn zero() -> Self {
        UniPoly {
            coeffs: Vec::new(),
            _var: PhantomData,
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            coeffs,
            _var: PhantomData,
        }
    }

    /// Lowest degree first.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn from_big_integers(coeffs: Vec<BigInt>) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(Rational::from_integer).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> Rational {
        self.coeffs.get(degree).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Multiplies by `v^shift`.
    pub fn shift(&self, shift: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(coeffs)
    }

    pub fn pow(&self, exp: usize) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Relabels the variable.
    pub fn relabel<W: Variable>(&self) -> UniPoly<W> {
        UniPoly {
            coeffs: self.coeffs.clone(),
            _var: PhantomData,
        }
    }
}

impl<V: Variable> Default for UniPoly<V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V: Variable> Add<&UniPoly<V>> for &UniPoly<V> {
    type Output = UniPoly<V>;

    fn add(self, rhs: &UniPoly<V>) -> UniPoly<V> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|d| self.coeff(d) + rhs.coeff(d)).collect();
        UniPoly::from_coeffs(coeffs)
    }
}

impl<V: Variable> AddAssign<&UniPoly<V>> for UniPoly<V> {
    fn add_assign(&mut self, rhs: &UniPoly<V>) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl<V: Variable> Sub<&UniPoly<V>> for &UniPoly<V> {
    type Output = UniPoly<V>;

    fn sub(self, rhs: &UniPoly<V>) -> UniPoly<V> {
        self + &(-rhs)
    }
}

impl<V: Variable> Neg for &UniPoly<V> {
    type Output = UniPoly<V>;

    fn neg(self) -> UniPoly<V> {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl<V: Variable> Mul<&UniPoly<V>> for &UniPoly<V> {
    type Output = UniPoly<V>;

    fn mul(self, rhs: &UniPoly<V>) -> UniPoly<V> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<V: Variable> $tr<UniPoly<V>> for UniPoly<V> {
            type Output = UniPoly<V>;
            fn $m(self, rhs: UniPoly<V>) -> UniPoly<V> {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl<V: Variable> fmt::Display for UniPoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| (c, vec![(V::NAME, d)]));
        write_terms(f, terms)
    }
}

impl<V: Variable> fmt::Debug for UniPoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::vars::{Q, T};
    use crate::rational::int;

    #[test]
    fn arithmetic() {
        let x = UniPoly::<Q>::var();
        let one = UniPoly::<Q>::one();
        assert_eq!(&(&x + &one) + &(&x - &one), x.scale(&int(2)));
        let tm1 = &UniPoly::<T>::var() - &UniPoly::<T>::one();
        assert_eq!(tm1.pow(2), UniPoly::from_integers(&[1, -2, 1]));
    }

    #[test]
    fn rendering() {
        assert_eq!(UniPoly::<Q>::from_integers(&[0, -3, 1]).to_string(), "q^2 - 3q");
        assert_eq!(UniPoly::<T>::from_integers(&[2, 3]).to_string(), "3t + 2");
        assert_eq!(UniPoly::<T>::zero().to_string(), "0");
        assert_eq!(UniPoly::<Q>::from_integers(&[-1]).to_string(), "-1");
    }

    #[test]
    fn eval_and_shift() {
        let p = UniPoly::<Q>::from_integers(&[6, -5, 1]);
        assert_eq!(p.eval(&int(7)), int(20));
        assert_eq!(p.shift(1), UniPoly::from_integers(&[0, 6, -5, 1]));
        assert_eq!(p.degree(), Some(2));
    }
}
