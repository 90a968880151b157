use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::render::write_terms;
use super::vars::{Variable, VariablePair};
use super::{PolyError, UniPoly};
use crate::rational::Rational;

/// Sparse bivariate polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly<V: VariablePair> {
    /// `(i, j) -> c` for the term `c · first^i · second^j`; no zero values.
    terms: BTreeMap<(usize, usize), Rational>,
    _vars: PhantomData<V>,
}

impl<V: VariablePair> BiPoly<V> {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
            _vars: PhantomData,
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, i: usize, j: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    /// The first variable (`x` or `q`).
    pub fn first() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    /// The second variable (`y` or `t`).
    pub fn second() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((usize, usize), Rational)>) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    /// `Σ_j slices[j](first) · second^j`.
    pub fn from_second_slices(slices: &[UniPoly<V::First>]) -> Self {
        let mut p = Self::zero();
        for (j, s) in slices.iter().enumerate() {
            for (i, c) in s.coeffs().iter().enumerate() {
                p.add_term(i, j, c.clone());
            }
        }
        p
    }

    /// `Σ_i first^i · slices[i](second)`.
    pub fn from_first_slices(slices: &[UniPoly<V::Second>]) -> Self {
        let mut p = Self::zero();
        for (i, s) in slices.iter().enumerate() {
            for (j, c) in s.coeffs().iter().enumerate() {
                p.add_term(i, j, c.clone());
            }
        }
        p
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree_first(&self) -> Option<usize> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_second(&self) -> Option<usize> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn eval(&self, first: &Rational, second: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * pow(first, i) * pow(second, j))
            .sum()
    }

    /// Fixes the first variable, leaving a polynomial in the second.
    pub fn eval_first(&self, value: &Rational) -> UniPoly<V::Second> {
        let mut out = vec![Rational::zero(); self.degree_second().map_or(0, |d| d + 1)];
        for (&(i, j), c) in &self.terms {
            out[j] += c * pow(value, i);
        }
        UniPoly::from_coeffs(out)
    }

    /// Fixes the second variable, leaving a polynomial in the first.
    pub fn eval_second(&self, value: &Rational) -> UniPoly<V::First> {
        let mut out = vec![Rational::zero(); self.degree_first().map_or(0, |d| d + 1)];
        for (&(i, j), c) in &self.terms {
            out[i] += c * pow(value, j);
        }
        UniPoly::from_coeffs(out)
    }

    pub fn pow(&self, exp: usize) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact division by `(second - 1)`, by synthetic division on each
    /// `first^i` slice. A nonzero remainder is an error.
    pub fn div_second_minus_one(&self) -> Result<Self, PolyError> {
        let mut slices: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            slices.entry(i).or_default().insert(j, c.clone());
        }
        let mut out = Self::zero();
        for (i, slice) in slices {
            let top = *slice.keys().next_back().expect("slices are nonempty");
            // b_{k-1} = a_k + b_k, remainder a_0 + b_0
            let mut carry = Rational::zero();
            for k in (1..=top).rev() {
                carry += slice.get(&k).cloned().unwrap_or_else(Rational::zero);
                out.add_term(i, k - 1, carry.clone());
            }
            let remainder = carry + slice.get(&0).cloned().unwrap_or_else(Rational::zero);
            if !remainder.is_zero() {
                return Err(PolyError::NonExactDivision);
            }
        }
        Ok(out)
    }

    /// The same terms under different variable labels.
    pub fn relabel<W: VariablePair>(&self) -> BiPoly<W> {
        BiPoly {
            terms: self.terms.clone(),
            _vars: PhantomData,
        }
    }

    /// Terms in graded-lex order: total degree descending, then the first
    /// variable's exponent descending.
    pub fn graded_terms(&self) -> Vec<((usize, usize), &Rational)> {
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by(|a, b| {
            let (ia, ja) = a.0;
            let (ib, jb) = b.0;
            (ib + jb, ib).cmp(&(ia + ja, ia))
        });
        terms
    }
}

fn pow(base: &Rational, exp: usize) -> Rational {
    (0..exp).fold(Rational::one(), |acc, _| acc * base)
}

impl<V: VariablePair> Default for BiPoly<V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V: VariablePair> Add<&BiPoly<V>> for &BiPoly<V> {
    type Output = BiPoly<V>;

    fn add(self, rhs: &BiPoly<V>) -> BiPoly<V> {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl<V: VariablePair> Neg for &BiPoly<V> {
    type Output = BiPoly<V>;

    fn neg(self) -> BiPoly<V> {
        BiPoly::from_terms(self.terms.iter().map(|(&k, c)| (k, -c)))
    }
}

impl<V: VariablePair> Sub<&BiPoly<V>> for &BiPoly<V> {
    type Output = BiPoly<V>;

    fn sub(self, rhs: &BiPoly<V>) -> BiPoly<V> {
        self + &(-rhs)
    }
}

impl<V: VariablePair> Mul<&BiPoly<V>> for &BiPoly<V> {
    type Output = BiPoly<V>;

    fn mul(self, rhs: &BiPoly<V>) -> BiPoly<V> {
        let mut out = BiPoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<V: VariablePair> $tr<BiPoly<V>> for BiPoly<V> {
            type Output = BiPoly<V>;
            fn $m(self, rhs: BiPoly<V>) -> BiPoly<V> {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl<V: VariablePair> fmt::Display for BiPoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.graded_terms().into_iter().map(|((i, j), c)| {
            (
                c,
                vec![(V::First::NAME, i), (V::Second::NAME, j)],
            )
        });
        write_terms(f, terms)
    }
}

impl<V: VariablePair> fmt::Debug for BiPoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}
