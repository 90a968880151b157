//! Exact rational hyperplane arrangements, the S_n action on them, and the
//! rank function.

mod hyperplane;
mod permutation;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

pub use hyperplane::{canonicalize, Hyperplane};
pub use permutation::Permutation;

use crate::linalg::{system_rank_integer, system_rank_rational, to_i64_row, SystemRank};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("not a hyperplane: the coefficient vector is zero")]
    ZeroNormal,
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("equation with {support} variables does not fit in dimension {dim}")]
    SupportTooLarge { support: usize, dim: usize },
    #[error("subarrangement indices must be strictly increasing and below {len}")]
    InvalidMembers { len: usize },
}

/// A finite set of distinct hyperplanes in R^n.
#[derive(Clone, Debug)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
    rank: usize,
    /// Primitive integer rows `(coeffs | rhs)` when every entry fits in `i64`.
    small_rows: Option<Vec<Vec<i64>>>,
}

impl Arrangement {
    /// Builds an arrangement, dropping repeated hyperplanes (first occurrence wins).
    pub fn new(
        dim: usize,
        hyperplanes: impl IntoIterator<Item = Hyperplane>,
    ) -> Result<Self, ArrangementError> {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for h in hyperplanes {
            if h.dim() != dim {
                return Err(ArrangementError::DimensionMismatch {
                    expected: dim,
                    found: h.dim(),
                });
            }
            if seen.insert(h.clone()) {
                list.push(h);
            }
        }
        let small_rows = list
            .iter()
            .map(|h| to_i64_row(&h.integer_row()))
            .collect::<Option<Vec<_>>>();
        let mut arr = Arrangement {
            dim,
            hyperplanes: list,
            rank: 0,
            small_rows,
        };
        let all: Vec<usize> = (0..arr.len()).collect();
        arr.rank = arr.system_rank(&all).coeff;
        Ok(arr)
    }

    pub fn empty(dim: usize) -> Self {
        Arrangement {
            dim,
            hyperplanes: Vec::new(),
            rank: 0,
            small_rows: Some(Vec::new()),
        }
    }

    /// The union of the S_n-orbits of `representatives` inside R^n.
    pub fn from_orbits(dim: usize, representatives: &[Hyperplane]) -> Result<Self, ArrangementError> {
        let mut all = Vec::new();
        for rep in representatives {
            all.extend(rep.orbit_in(dim)?);
        }
        Arrangement::new(dim, all)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn contains(&self, h: &Hyperplane) -> bool {
        self.hyperplanes.contains(h)
    }

    pub fn as_set(&self) -> BTreeSet<Hyperplane> {
        self.hyperplanes.iter().cloned().collect()
    }

    pub fn full(&self) -> Subarrangement<'_> {
        Subarrangement {
            parent: self,
            members: (0..self.len()).collect(),
        }
    }

    pub fn subarrangement(&self, members: Vec<usize>) -> Result<Subarrangement<'_>, ArrangementError> {
        let increasing = members.windows(2).all(|w| w[0] < w[1]);
        if !increasing || members.last().is_some_and(|&m| m >= self.len()) {
            return Err(ArrangementError::InvalidMembers { len: self.len() });
        }
        Ok(Subarrangement {
            parent: self,
            members,
        })
    }

    /// Coefficient and augmented ranks of the system formed by `members`.
    pub fn system_rank(&self, members: &[usize]) -> SystemRank {
        if let Some(rows) = &self.small_rows {
            let refs: Vec<&[i64]> = members.iter().map(|&i| rows[i].as_slice()).collect();
            if let Some(r) = system_rank_integer(&refs) {
                return r;
            }
        }
        self.system_rank_rational(members)
    }

    /// Same as [`Arrangement::system_rank`] but always over the rationals.
    pub fn system_rank_rational(&self, members: &[usize]) -> SystemRank {
        let rows: Vec<Vec<Rational>> = members
            .iter()
            .map(|&i| self.hyperplanes[i].augmented_row())
            .collect();
        let refs: Vec<&[Rational]> = rows.iter().map(|r| r.as_slice()).collect();
        system_rank_rational(&refs)
    }

    /// Integer rows `(coeffs | rhs)` when they fit in `i64`.
    pub fn small_rows(&self) -> Option<&[Vec<i64>]> {
        self.small_rows.as_deref()
    }

    /// `σ·A`.
    pub fn act(&self, sigma: &Permutation) -> Result<Arrangement, ArrangementError> {
        let moved = self
            .hyperplanes
            .iter()
            .map(|h| h.act(sigma))
            .collect::<Result<Vec<_>, _>>()?;
        Arrangement::new(self.dim, moved)
    }

    /// Whether `σ·A = A` for every σ in S_n, checked through orbit closure.
    pub fn is_symmetric(&self) -> bool {
        let set = self.as_set();
        self.hyperplanes.iter().all(|h| {
            h.orbit_in(self.dim)
                .map(|o| o.is_subset(&set))
                .unwrap_or(false)
        })
    }

    /// Partition into S_n-orbits, each listed in canonical order. Orbits not
    /// fully contained in the arrangement are reported as `Err(orbit)`.
    pub fn orbit_decomposition(&self) -> Result<Vec<BTreeSet<Hyperplane>>, BTreeSet<Hyperplane>> {
        let set = self.as_set();
        let mut assigned: HashSet<&Hyperplane> = HashSet::new();
        let mut orbits = Vec::new();
        for h in &self.hyperplanes {
            if assigned.contains(h) {
                continue;
            }
            let orbit = h.orbit_in(self.dim).expect("hyperplane lives in R^n");
            if !orbit.is_subset(&set) {
                return Err(orbit);
            }
            for member in &self.hyperplanes {
                if orbit.contains(member) {
                    assigned.insert(member);
                }
            }
            orbits.push(orbit);
        }
        Ok(orbits)
    }
}

impl PartialEq for Arrangement {
    /// Set equality.
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.as_set() == other.as_set()
    }
}

impl Eq for Arrangement {}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.dim)?;
        for h in &self.hyperplanes {
            writeln!(f, "{h}")?;
        }
        Ok(())
    }
}

/// A subset of an arrangement, addressed by indices into the parent.
#[derive(Clone, Debug)]
pub struct Subarrangement<'a> {
    parent: &'a Arrangement,
    members: Vec<usize>,
}

impl<'a> Subarrangement<'a> {
    pub fn parent(&self) -> &'a Arrangement {
        self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn hyperplanes(&self) -> impl Iterator<Item = &'a Hyperplane> + '_ {
        self.members.iter().map(|&i| &self.parent.hyperplanes[i])
    }

    /// Whether the hyperplanes have a common point; the empty set is central.
    pub fn is_central(&self) -> bool {
        self.parent.system_rank(&self.members).is_consistent()
    }

    /// `r(B)`: `n - dim ∩B` for central `B`, and the largest rank of a
    /// central subset otherwise.
    ///
    /// Both equal the rank of the coefficient matrix: any basis of the
    /// normals of `B` is itself a consistent system.
    pub fn rank(&self) -> usize {
        self.parent.system_rank(&self.members).coeff
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(coeffs: &[i64], rhs: i64) -> Hyperplane {
        Hyperplane::from_integers(coeffs, rhs).unwrap()
    }

    fn arr(dim: usize, hs: &[(&[i64], i64)]) -> Arrangement {
        Arrangement::new(dim, hs.iter().map(|(c, b)| h(c, *b))).unwrap()
    }

    #[test]
    fn deduplicates_scaled_copies() {
        let a = Arrangement::new(2, [h(&[1, -1], 0), h(&[-2, 2], 0), h(&[1, 0], 1)]).unwrap();
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn rejects_mixed_dimensions() {
        assert!(Arrangement::new(2, [h(&[1, -1], 0), h(&[1, 0, 0], 0)]).is_err());
    }

    #[test]
    fn empty_is_central_rank_zero() {
        let a = Arrangement::empty(3);
        assert!(a.full().is_central());
        assert_eq!(a.full().rank(), 0);
        assert_eq!(a.rank(), 0);
    }

    #[test]
    fn parallel_pair() {
        let a = arr(2, &[(&[1, 0], 0), (&[1, 0], 1)]);
        assert!(!a.full().is_central());
        assert_eq!(a.full().rank(), 1);
        assert!(a.subarrangement(vec![1]).unwrap().is_central());
    }

    #[test]
    fn braid_triangle_central() {
        let a = arr(3, &[(&[1, -1, 0], 0), (&[0, 1, -1], 0), (&[1, 0, -1], 0)]);
        assert!(a.full().is_central());
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn single_braid_hyperplane_rank() {
        assert_eq!(arr(2, &[(&[1, -1], 0)]).rank(), 1);
    }

    #[test]
    fn invalid_members() {
        let a = arr(2, &[(&[1, 0], 0), (&[1, 0], 1)]);
        assert!(a.subarrangement(vec![1, 0]).is_err());
        assert!(a.subarrangement(vec![2]).is_err());
    }

    #[test]
    fn orbit_decomposition_detects_asymmetry() {
        let a = arr(3, &[(&[1, -1, 0], 0), (&[1, 0, -1], 0)]);
        assert!(!a.is_symmetric());
        assert!(a.orbit_decomposition().is_err());
        let full = Arrangement::from_orbits(3, &[h(&[1, -1], 0)]).unwrap();
        assert!(full.is_symmetric());
        assert_eq!(full.orbit_decomposition().unwrap().len(), 1);
    }
}
