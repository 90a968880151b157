//! Truncated exponential generating functions `Σ u_n z^n / n!` with
//! coefficients in `Q[t]`, and the block factorization of the point-count
//! sums of symmetric arrangement families.

use num_bigint::BigInt;
use thiserror::Error;

use crate::arrangement::ArrangementError;
use crate::combinatorics::{binomial, Factorials, WeakCompositions};
use crate::families::Family;
use crate::finite_field::{self, FqError};
use crate::poly::vars::T;
use crate::poly::UniPoly;
use crate::rational::Rational;
use crate::symmetric::{Block, RepEquation, SymmetricError, SymmetricModel};

pub const DEFAULT_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EgfError {
    #[error("truncation orders differ: {left} and {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("reduction of the {family} arrangement in dimension {n} mod {q} is not certified")]
    NotCertified { family: &'static str, n: usize, q: u64 },
    #[error(transparent)]
    Symmetric(#[from] SymmetricError),
    #[error(transparent)]
    FiniteField(#[from] FqError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

/// `u_0, .., u_N`; the `z^n / n!` weights are implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedEgf {
    coeffs: Vec<UniPoly<T>>,
}

impl TruncatedEgf {
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<UniPoly<T>>) -> Self {
        assert!(!coeffs.is_empty(), "an EGF needs at least u_0");
        TruncatedEgf { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> UniPoly<T>) -> Self {
        TruncatedEgf::new((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| UniPoly::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::from_fn(order, |n| if n == 0 { UniPoly::one() } else { UniPoly::zero() })
    }

    /// `e^z`.
    pub fn exp(order: usize) -> Self {
        Self::from_fn(order, |_| UniPoly::one())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &UniPoly<T> {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[UniPoly<T>] {
        &self.coeffs
    }

    pub fn mul(&self, other: &TruncatedEgf) -> Result<TruncatedEgf, EgfError> {
        egf_mul(self, other)
    }

    pub fn pow(&self, exp: usize) -> TruncatedEgf {
        (0..exp).fold(Self::one(self.order()), |acc, _| {
            egf_mul(&acc, self).expect("orders agree")
        })
    }

    /// Every coefficient evaluated at `t = value`.
    pub fn eval_t(&self, value: &Rational) -> Vec<Rational> {
        self.coeffs.iter().map(|c| c.eval(value)).collect()
    }
}

/// Binomial convolution `u_n = Σ_k C(n, k) v_k w_{n-k}`.
pub fn egf_mul(v: &TruncatedEgf, w: &TruncatedEgf) -> Result<TruncatedEgf, EgfError> {
    if v.order() != w.order() {
        return Err(EgfError::OrderMismatch {
            left: v.order(),
            right: w.order(),
        });
    }
    Ok(TruncatedEgf::from_fn(v.order(), |n| {
        let mut acc = UniPoly::zero();
        for k in 0..=n {
            let c = Rational::from_integer(BigInt::from(binomial(n, k)));
            acc += &(&v.coeffs[k] * &w.coeffs[n - k]).scale(&c);
        }
        acc
    }))
}

fn t_power(e: u64) -> UniPoly<T> {
    UniPoly::monomial(Rational::from_integer(1.into()), e as usize)
}

fn from_big(c: num_bigint::BigUint) -> Rational {
    Rational::from_integer(BigInt::from(c))
}

/// `v_n = Σ_{a_1+..+a_k=n} multinomial(n; a) · p(a)` for `k = parts`.
pub fn composition_series(order: usize, parts: usize, mut p: impl FnMut(&[usize]) -> UniPoly<T>) -> TruncatedEgf {
    let factorials = Factorials::up_to(order);
    TruncatedEgf::from_fn(order, |n| {
        let mut acc = UniPoly::zero();
        for a in WeakCompositions::new(n, parts) {
            acc += &p(&a).scale(&from_big(factorials.multinomial(&a)));
        }
        acc
    })
}

/// The series of one block: residues outside its support have count zero,
/// which contributes nothing to its exponent.
pub fn block_series(model: &SymmetricModel, block: &Block, order: usize) -> TruncatedEgf {
    let support: Vec<u64> = block.support().iter().copied().collect();
    let mut counts = vec![0; model.modulus() as usize];
    composition_series(order, support.len(), |a| {
        for (&k, &c) in support.iter().zip(a) {
            counts[k as usize] = c;
        }
        t_power(block.exponent(model.solutions(), &counts))
    })
}

/// Product of the block series, times `e^z` for every residue no solution
/// uses. Its `n`-th coefficient is `Σ_{y ∈ F_q^n} t^{h(y)}` for the family
/// in dimension `n` reduced mod `q`, which is `q^{n-r} χ̄(q, t)` whenever that
/// reduction is certified (see [`family_egf_certified`]).
pub fn family_egf(family: Family, q: u64, order: usize) -> Result<TruncatedEgf, EgfError> {
    let reps = family.representatives().iter().map(RepEquation::new).collect();
    let model = SymmetricModel::new(reps, q)?;
    let partition = model.partition();
    let mut u = TruncatedEgf::exp(order).pow(partition.free_residues(q).len());
    for block in partition.blocks() {
        u = egf_mul(&u, &block_series(&model, block, order))?;
    }
    Ok(u)
}

/// [`family_egf`] after certifying `q` for every dimension from the family's
/// smallest up to `order`.
pub fn family_egf_certified(family: Family, q: u64, order: usize) -> Result<TruncatedEgf, EgfError> {
    for n in family.min_dim()..=order {
        if !finite_field::certify_prime(&family.arrangement(n)?, q)? {
            return Err(EgfError::NotCertified {
                family: family.name(),
                n,
                q,
            });
        }
    }
    family_egf(family, q, order)
}

/// A summand indexed by a vector of nonnegative integers.
pub type Summand<'a> = Box<dyn Fn(&[usize]) -> UniPoly<T> + Sync + 'a>;

/// A multi-index sum split into blocks of `sizes[j]` indices each.
pub struct ConvolutionSpec<'a> {
    pub sizes: Vec<usize>,
    /// Summand for the full index vector.
    pub joint: Summand<'a>,
    /// Summand for each block's own indices.
    pub blocks: Vec<Summand<'a>>,
}

/// Whether the direct sum of `joint` over all compositions agrees with the
/// product of per-block series up to `order`.
pub fn generalized_convolution_check(spec: &ConvolutionSpec<'_>, order: usize) -> bool {
    let total: usize = spec.sizes.iter().sum();
    let direct = composition_series(order, total, |a| (spec.joint)(a));
    let product = spec
        .sizes
        .iter()
        .zip(&spec.blocks)
        .map(|(&size, p)| composition_series(order, size, |a| p(a)))
        .fold(TruncatedEgf::one(order), |acc, v| egf_mul(&acc, &v).expect("orders agree"));
    direct == product
}
