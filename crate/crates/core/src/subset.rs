//! Tutte and coboundary polynomials straight from their defining sums over
//! central subarrangements.
//!
//! Every subset is handled independently with a fresh elimination. The work
//! is split into contiguous ranges of subset masks whose tallies are added
//! together, so the result does not depend on the number of threads.

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::poly::{Coboundary, Tutte};
use crate::rational::Rational;

pub const DEFAULT_MAX_HYPERPLANES: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubsetError {
    #[error("{len} hyperplanes exceed the enumeration cap of {cap}")]
    TooManyHyperplanes { len: usize, cap: usize },
}

#[derive(Clone, Copy, Debug)]
pub struct SubsetOptions {
    pub max_hyperplanes: usize,
    pub parallel: bool,
}

impl Default for SubsetOptions {
    fn default() -> Self {
        SubsetOptions {
            max_hyperplanes: DEFAULT_MAX_HYPERPLANES,
            parallel: true,
        }
    }
}

/// Number of central subsets of each (rank, size).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCensus {
    rank: usize,
    /// `counts[r][s]`
    counts: Vec<Vec<u64>>,
}

impl CentralCensus {
    fn zeroed(rank: usize, len: usize) -> Self {
        CentralCensus {
            rank,
            counts: vec![vec![0; len + 1]; rank + 1],
        }
    }

    fn merge(mut self, other: CentralCensus) -> Self {
        for (row, other_row) in self.counts.iter_mut().zip(other.counts) {
            for (a, b) in row.iter_mut().zip(other_row) {
                *a += b;
            }
        }
        self
    }

    pub fn count(&self, rank: usize, size: usize) -> u64 {
        self.counts
            .get(rank)
            .and_then(|row| row.get(size))
            .copied()
            .unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    fn nonzero(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.counts.iter().enumerate().flat_map(|(r, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(move |(s, &c)| (r, s, c))
        })
    }

    /// `Σ (x-1)^{r(A)-r(B)} (y-1)^{|B|-r(B)}`.
    pub fn tutte(&self) -> Tutte {
        let xm1 = &Tutte::first() - &Tutte::one();
        let ym1 = &Tutte::second() - &Tutte::one();
        let mut out = Tutte::zero();
        for (r, s, c) in self.nonzero() {
            let term = &xm1.pow(self.rank - r) * &ym1.pow(s - r);
            out = &out + &(&term * &Tutte::constant(count(c)));
        }
        out
    }

    /// `Σ q^{r(A)-r(B)} (t-1)^{|B|}`.
    pub fn coboundary(&self) -> Coboundary {
        let q = Coboundary::first();
        let tm1 = &Coboundary::second() - &Coboundary::one();
        let mut out = Coboundary::zero();
        for (r, s, c) in self.nonzero() {
            let term = &q.pow(self.rank - r) * &tm1.pow(s);
            out = &out + &(&term * &Coboundary::constant(count(c)));
        }
        out
    }
}

fn count(c: u64) -> Rational {
    Rational::from_integer(BigInt::from(c))
}

fn tally_range(arr: &Arrangement, masks: std::ops::Range<u64>) -> CentralCensus {
    let mut census = CentralCensus::zeroed(arr.rank(), arr.len());
    let mut members = Vec::with_capacity(arr.len());
    for mask in masks {
        members.clear();
        members.extend((0..arr.len()).filter(|&i| mask >> i & 1 == 1));
        let rank = arr.system_rank(&members);
        if rank.is_consistent() {
            census.counts[rank.coeff][members.len()] += 1;
        }
    }
    census
}

/// Tallies every central subset of `arr` by rank and size.
pub fn central_census(arr: &Arrangement, opts: SubsetOptions) -> Result<CentralCensus, SubsetError> {
    if arr.len() > opts.max_hyperplanes || arr.len() >= 63 {
        return Err(SubsetError::TooManyHyperplanes {
            len: arr.len(),
            cap: opts.max_hyperplanes.min(62),
        });
    }
    let total = 1u64 << arr.len();
    if !opts.parallel {
        return Ok(tally_range(arr, 0..total));
    }
    let chunk = (total / 256).max(1);
    let census = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|k| tally_range(arr, k * chunk..((k + 1) * chunk).min(total)))
        .reduce(
            || CentralCensus::zeroed(arr.rank(), arr.len()),
            CentralCensus::merge,
        );
    Ok(census)
}

pub fn tutte_by_definition(arr: &Arrangement) -> Result<Tutte, SubsetError> {
    tutte_by_definition_with(arr, SubsetOptions::default())
}

pub fn tutte_by_definition_with(arr: &Arrangement, opts: SubsetOptions) -> Result<Tutte, SubsetError> {
    Ok(central_census(arr, opts)?.tutte())
}

pub fn coboundary_by_definition(arr: &Arrangement) -> Result<Coboundary, SubsetError> {
    coboundary_by_definition_with(arr, SubsetOptions::default())
}

pub fn coboundary_by_definition_with(
    arr: &Arrangement,
    opts: SubsetOptions,
) -> Result<Coboundary, SubsetError> {
    Ok(central_census(arr, opts)?.coboundary())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Hyperplane;
    use crate::families::Family;
    use crate::rational::int;

    fn h(coeffs: &[i64], rhs: i64) -> Hyperplane {
        Hyperplane::from_integers(coeffs, rhs).unwrap()
    }

    fn qt(terms: &[((usize, usize), i64)]) -> Coboundary {
        Coboundary::from_terms(terms.iter().map(|&(k, c)| (k, int(c))))
    }

    #[test]
    fn single_hyperplane() {
        let a = Arrangement::new(2, [h(&[1, -1], 0)]).unwrap();
        assert_eq!(tutte_by_definition(&a).unwrap(), Tutte::first());
        assert_eq!(
            coboundary_by_definition(&a).unwrap(),
            qt(&[((1, 0), 1), ((0, 1), 1), ((0, 0), -1)])
        );
    }

    #[test]
    fn braid_triangle() {
        let a = Family::WeylA.arrangement(3).unwrap();
        let t = tutte_by_definition(&a).unwrap();
        assert_eq!(t.to_string(), "x^2 + x + y");
        // q^2 + 3q(t-1) + (3 + (t-1))(t-1)^2
        let q = Coboundary::first();
        let tm1 = &Coboundary::second() - &Coboundary::one();
        let expected = &(&q.pow(2) + &(&(&q * &tm1) * &Coboundary::constant(int(3))))
            + &(&(&Coboundary::constant(int(3)) + &tm1) * &tm1.pow(2));
        assert_eq!(coboundary_by_definition(&a).unwrap(), expected);
    }

    #[test]
    fn catalan_two() {
        let a = Family::Catalan.arrangement(2).unwrap();
        assert_eq!(
            coboundary_by_definition(&a).unwrap(),
            qt(&[((1, 0), 1), ((0, 1), 3), ((0, 0), -3)])
        );
    }

    #[test]
    fn empty_arrangement() {
        let a = Arrangement::empty(3);
        assert_eq!(tutte_by_definition(&a).unwrap(), Tutte::one());
        assert_eq!(coboundary_by_definition(&a).unwrap(), Coboundary::one());
    }

    #[test]
    fn cap_enforced() {
        let a = Family::Catalan.arrangement(4).unwrap();
        let opts = SubsetOptions {
            max_hyperplanes: 10,
            parallel: true,
        };
        assert_eq!(
            central_census(&a, opts),
            Err(SubsetError::TooManyHyperplanes { len: 18, cap: 10 })
        );
    }

    #[test]
    fn parallel_matches_sequential() {
        let a = Family::IArrangement.arrangement(3).unwrap();
        let seq = central_census(&a, SubsetOptions { parallel: false, ..Default::default() }).unwrap();
        let par = central_census(&a, SubsetOptions::default()).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn coboundary_at_t_one_is_q_to_rank() {
        for family in Family::ALL {
            let a = family.arrangement(3).unwrap();
            let cb = coboundary_by_definition(&a).unwrap();
            let at_one = cb.eval_second(&int(1));
            assert_eq!(at_one, crate::poly::UniPoly::monomial(int(1), a.rank()), "{family}");
        }
    }
}
