//! Point counting over F_q: `q^{n-r} χ̄(q, t) = Σ_{y ∈ F_q^n} t^{h(y)}`, where
//! `h(y)` is the number of reduced hyperplanes through `y`, together with a
//! check that reducing mod `q` preserves the arrangement's combinatorics.

mod independent;

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::linalg::system_rank_mod_p;
use crate::modular::{inv_mod, is_prime, mul_mod};
use crate::poly::vars::T;
use crate::poly::UniPoly;
use crate::rational::{residue, Rational};

/// Subsets of every size are compared when the arrangement has at most this
/// many hyperplanes; above it only subsets of size `<= n + 1` are.
pub const FULL_SUBSET_CHECK_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FqError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("reduction mod {q} is not certified: {reason}")]
    NotCertified { q: u64, reason: ReductionFailure },
    #[error("point counts are not divisible by {q}^{codim}")]
    NonExactDivision { q: u64, codim: usize },
    #[error("point has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point lives in F_{found}, arrangement was reduced mod {expected}")]
    ModulusMismatch { expected: u64, found: u64 },
    #[error("coordinate {value} is not a residue mod {q}")]
    InvalidCoordinate { value: u64, q: u64 },
}

/// Why a reduction mod `q` is not an isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionFailure {
    /// The normal vector of this hyperplane vanishes mod `q`.
    Degenerate(usize),
    /// Two distinct hyperplanes reduce to the same one.
    Collision(usize, usize),
    /// This subset has a different rank over F_q.
    RankMismatch(Vec<usize>),
    /// This subset is central over exactly one of Q and F_q.
    CentralityMismatch(Vec<usize>),
}

impl fmt::Display for ReductionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionFailure::Degenerate(i) => write!(f, "hyperplane #{i} degenerates"),
            ReductionFailure::Collision(i, j) => write!(f, "hyperplanes #{i} and #{j} collide"),
            ReductionFailure::RankMismatch(m) => write!(f, "rank of subset {m:?} changes"),
            ReductionFailure::CentralityMismatch(m) => {
                write!(f, "centrality of subset {m:?} changes")
            }
        }
    }
}

/// A hyperplane with coprime integer coefficients, leading coefficient positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerHyperplane {
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerArrangement {
    pub dim: usize,
    pub hyperplanes: Vec<IntegerHyperplane>,
}

/// Scales every hyperplane to its primitive integer equation.
pub fn clear_denominators(arr: &Arrangement) -> IntegerArrangement {
    let hyperplanes = arr
        .hyperplanes()
        .iter()
        .map(|h| {
            let mut row = h.integer_row();
            let rhs = row.pop().expect("row has a rhs entry");
            IntegerHyperplane { coeffs: row, rhs }
        })
        .collect();
    IntegerArrangement {
        dim: arr.dim(),
        hyperplanes,
    }
}

/// A point of F_q^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqPoint {
    coords: Vec<u64>,
    q: u64,
}

impl FqPoint {
    pub fn new(coords: Vec<u64>, q: u64) -> Result<Self, FqError> {
        if !is_prime(q) {
            return Err(FqError::NotPrime(q));
        }
        if let Some(&value) = coords.iter().find(|&&c| c >= q) {
            return Err(FqError::InvalidCoordinate { value, q });
        }
        Ok(FqPoint { coords, q })
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }
}

/// The arrangement reduced mod a prime `q`.
///
/// Every reduced equation is normalised to leading coefficient 1 so that
/// equal hyperplanes of F_q^n have equal rows.
#[derive(Clone, Debug)]
pub struct ReducedArrangement {
    q: u64,
    dim: usize,
    /// Distinct reduced rows `(coeffs | rhs)`.
    rows: Vec<Vec<u64>>,
    /// Residue rows of every source hyperplane, aligned with the source.
    source_rows: Vec<Vec<i64>>,
    failure: Option<ReductionFailure>,
}

impl ReducedArrangement {
    pub fn new(arr: &Arrangement, q: u64) -> Result<Self, FqError> {
        if !is_prime(q) {
            return Err(FqError::NotPrime(q));
        }
        let int_arr = clear_denominators(arr);
        let mut failure = None;
        let mut rows = Vec::new();
        let mut source_rows = Vec::new();
        let mut first_seen: HashMap<Vec<u64>, usize> = HashMap::new();
        for (idx, h) in int_arr.hyperplanes.iter().enumerate() {
            let mut row: Vec<u64> = h.coeffs.iter().map(|c| residue(c, q)).collect();
            row.push(residue(&h.rhs, q));
            source_rows.push(row.iter().map(|&v| v as i64).collect());
            let Some(lead) = row[..arr.dim()].iter().copied().find(|&v| v != 0) else {
                failure.get_or_insert(ReductionFailure::Degenerate(idx));
                continue;
            };
            let inv = inv_mod(lead, q);
            let normalized: Vec<u64> = row.iter().map(|&v| mul_mod(v, inv, q)).collect();
            match first_seen.get(&normalized) {
                Some(&j) => {
                    failure.get_or_insert(ReductionFailure::Collision(j, idx));
                }
                None => {
                    first_seen.insert(normalized.clone(), idx);
                    rows.push(normalized);
                }
            }
        }
        Ok(ReducedArrangement {
            q,
            dim: arr.dim(),
            rows,
            source_rows,
            failure,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of distinct reduced hyperplanes.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// First structural failure (degeneration or collision), if any.
    pub fn structural_failure(&self) -> Option<&ReductionFailure> {
        self.failure.as_ref()
    }

    /// `h(y)`: the number of reduced hyperplanes containing `y`.
    pub fn h_count(&self, y: &FqPoint) -> Result<usize, FqError> {
        if y.q != self.q {
            return Err(FqError::ModulusMismatch {
                expected: self.q,
                found: y.q,
            });
        }
        if y.coords.len() != self.dim {
            return Err(FqError::DimensionMismatch {
                expected: self.dim,
                found: y.coords.len(),
            });
        }
        Ok(self.hits(&y.coords))
    }

    #[inline]
    fn hits(&self, coords: &[u64]) -> usize {
        let q = self.q;
        self.rows
            .iter()
            .filter(|row| {
                let lhs = row[..self.dim]
                    .iter()
                    .zip(coords)
                    .fold(0u64, |acc, (&a, &x)| (acc + mul_mod(a, x, q)) % q);
                lhs == row[self.dim]
            })
            .count()
    }

    /// `hist[k]` = number of points of F_q^n on exactly `k` hyperplanes.
    pub fn point_histogram(&self) -> Vec<u64> {
        let q = self.q;
        let total = q.pow(self.dim as u32);
        let chunk = (total / 512).max(1);
        let width = self.rows.len() + 1;
        (0..total.div_ceil(chunk))
            .into_par_iter()
            .map(|k| {
                let mut hist = vec![0u64; width];
                let mut coords = vec![0u64; self.dim];
                for index in k * chunk..((k + 1) * chunk).min(total) {
                    let mut rest = index;
                    for c in coords.iter_mut() {
                        *c = rest % q;
                        rest /= q;
                    }
                    hist[self.hits(&coords)] += 1;
                }
                hist
            })
            .reduce(
                || vec![0u64; width],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    }
}

fn subset_failure(arr: &Arrangement, reduced: &ReducedArrangement, members: &[usize]) -> Option<ReductionFailure> {
    let over_q = arr.system_rank(members);
    let rows: Vec<&[i64]> = members
        .iter()
        .map(|&i| reduced.source_rows[i].as_slice())
        .collect();
    let over_fq = system_rank_mod_p(&rows, reduced.q);
    if over_q.coeff != over_fq.coeff {
        Some(ReductionFailure::RankMismatch(members.to_vec()))
    } else if over_q.is_consistent() != over_fq.is_consistent() {
        Some(ReductionFailure::CentralityMismatch(members.to_vec()))
    } else {
        None
    }
}

/// Checks that reduction mod `q` is an isomorphism of arrangements.
///
/// Requires no degenerations or collisions, and that rank and centrality of
/// every subset agree over Q and F_q. Small integer arrangements are checked
/// by a search over independent subsets. Otherwise all subsets are compared
/// when `|A| <= 20`, and subsets of size `<= n + 1` above that: any rank is
/// witnessed by at most `n` rows and any inconsistency by at most `n + 1`.
pub fn certify(arr: &Arrangement, q: u64) -> Result<Result<(), ReductionFailure>, FqError> {
    let reduced = ReducedArrangement::new(arr, q)?;
    Ok(certify_reduced(arr, &reduced))
}

fn certify_reduced(arr: &Arrangement, reduced: &ReducedArrangement) -> Result<(), ReductionFailure> {
    if let Some(f) = reduced.structural_failure() {
        return Err(f.clone());
    }
    let int_arr = clear_denominators(arr);
    if independent::applicable(&int_arr, reduced.q) {
        let roots = orbit_roots(arr);
        return match independent::first_rank_change(&int_arr, reduced.q, roots.as_deref()) {
            Some(members) => Err(subset_failure(arr, reduced, &members)
                .expect("ranks over Q and F_q differ on this subset")),
            None => Ok(()),
        };
    }
    certify_by_enumeration(arr, reduced)
}

/// One hyperplane index per S_n-orbit, if the arrangement is symmetric.
fn orbit_roots(arr: &Arrangement) -> Option<Vec<usize>> {
    let orbits = arr.orbit_decomposition().ok()?;
    Some(
        orbits
            .iter()
            .map(|o| {
                let first = o.first().expect("orbits are nonempty");
                arr.hyperplanes().iter().position(|h| h == first).expect("orbit lies in the arrangement")
            })
            .collect(),
    )
}

fn certify_by_enumeration(arr: &Arrangement, reduced: &ReducedArrangement) -> Result<(), ReductionFailure> {
    let m = arr.len();
    let failure = if m <= FULL_SUBSET_CHECK_LIMIT {
        (1u64..1 << m).into_par_iter().find_map_first(|mask| {
            let members: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
            subset_failure(arr, reduced, &members)
        })
    } else {
        (2..=(arr.dim() + 1).min(m)).find_map(|k| {
            let subsets: Vec<Vec<usize>> = (0..m).combinations(k).collect();
            subsets
                .into_par_iter()
                .find_map_first(|members| subset_failure(arr, reduced, &members))
        })
    };
    match failure {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

/// Whether reduction of `arr` mod `q` is certified correct.
pub fn certify_prime(arr: &Arrangement, q: u64) -> Result<bool, FqError> {
    Ok(certify(arr, q)?.is_ok())
}

/// Divides each point count by `q^codim`, refusing if any division is inexact.
pub fn coboundary_from_histogram(hist: &[u64], q: u64, codim: usize) -> Result<UniPoly<T>, FqError> {
    let counts = UniPoly::from_coeffs(
        hist.iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect(),
    );
    divide_by_prime_power(&counts, q, codim)
}

/// `p / q^codim`, which must again have integer coefficients.
pub fn divide_by_prime_power(p: &UniPoly<T>, q: u64, codim: usize) -> Result<UniPoly<T>, FqError> {
    let divisor = Rational::from_integer(BigInt::from(q).pow(codim as u32));
    let out = p.scale(&(Rational::from_integer(1.into()) / divisor));
    if !out.is_integral() {
        return Err(FqError::NonExactDivision { q, codim });
    }
    Ok(out)
}

fn require_certified(arr: &Arrangement, q: u64) -> Result<ReducedArrangement, FqError> {
    let reduced = ReducedArrangement::new(arr, q)?;
    certify_reduced(arr, &reduced).map_err(|reason| FqError::NotCertified { q, reason })?;
    Ok(reduced)
}

/// `χ̄(q, t)` for this prime, as a polynomial in `t`.
pub fn coboundary_at_prime(arr: &Arrangement, q: u64) -> Result<UniPoly<T>, FqError> {
    let reduced = require_certified(arr, q)?;
    coboundary_from_histogram(&reduced.point_histogram(), q, arr.dim() - arr.rank())
}

/// Same as [`coboundary_at_prime`] without the certification step.
pub fn coboundary_at_prime_unchecked(arr: &Arrangement, q: u64) -> Result<UniPoly<T>, FqError> {
    let reduced = ReducedArrangement::new(arr, q)?;
    coboundary_from_histogram(&reduced.point_histogram(), q, arr.dim() - arr.rank())
}

/// `χ(q) = |F_q^n \ Ā|`.
pub fn characteristic_at_prime(arr: &Arrangement, q: u64) -> Result<BigInt, FqError> {
    let reduced = require_certified(arr, q)?;
    let hist = reduced.point_histogram();
    Ok(BigInt::from(hist.first().copied().unwrap_or(0)))
}
