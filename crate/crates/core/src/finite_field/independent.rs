//! Certification by depth-first search over independent subsets.
//!
//! If `S` is independent over both Q and F_q and `h` lies in the span of `S`
//! over both, then every superset of `S ∪ {h}` has the same ranks as the
//! superset without `h`, over both fields. Only subsets independent over Q
//! (in the augmented matrix) therefore need to be visited.
//!
//! Ranks over Q are taken modulo [`WITNESS_PRIME`], which is exact as long as
//! no minor of the augmented matrix reaches that prime in absolute value.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::modular::inv_mod;
use crate::rational::residue;

use super::IntegerArrangement;

pub const WITNESS_PRIME: u64 = 2_147_483_647;

/// Row echelon basis over F_p for `p < 2^32`, stored flat so that the
/// search can push and pop rows without allocating.
#[derive(Clone, Debug)]
struct Echelon {
    p: u64,
    width: usize,
    pivots: Vec<usize>,
    data: Vec<u64>,
}

impl Echelon {
    fn new(p: u64, width: usize) -> Self {
        Echelon {
            p,
            width,
            pivots: Vec::new(),
            data: Vec::new(),
        }
    }

    /// Adds `row` to the basis if it is independent of it.
    fn push(&mut self, row: &[u64]) -> bool {
        let (p, w) = (self.p, self.width);
        let start = self.data.len();
        self.data.extend_from_slice(&row[..w]);
        let (basis, new) = self.data.split_at_mut(start);
        for (k, &pivot) in self.pivots.iter().enumerate() {
            let c = new[pivot];
            if c != 0 {
                for (v, b) in new.iter_mut().zip(&basis[k * w..(k + 1) * w]) {
                    *v = (*v + (p - c) * b) % p;
                }
            }
        }
        let Some(pivot) = new.iter().position(|&v| v != 0) else {
            self.data.truncate(start);
            return false;
        };
        let inv = inv_mod(new[pivot], p);
        new.iter_mut().for_each(|v| *v = *v * inv % p);
        self.pivots.push(pivot);
        true
    }

    fn pop(&mut self) {
        self.pivots.pop();
        self.data.truncate(self.data.len() - self.width);
    }
}

/// Augmented and coefficient bases over Q (via the witness prime) and F_q.
#[derive(Clone, Debug)]
struct State {
    augmented: [Echelon; 2],
    coeff: [Echelon; 2],
}

/// Whether the search is exact for `arr`: `q < 2^32` and the Hadamard bound
/// of every square submatrix of size `<= n + 1` stays below [`WITNESS_PRIME`].
pub fn applicable(arr: &IntegerArrangement, q: u64) -> bool {
    if q > u32::MAX as u64 {
        return false;
    }
    let mut norms: Vec<BigInt> = arr
        .hyperplanes
        .iter()
        .map(|h| h.coeffs.iter().chain([&h.rhs]).map(|c| c * c).sum())
        .collect();
    norms.sort_unstable_by(|a, b| b.cmp(a));
    let bound: BigInt = norms.iter().take(arr.dim + 1).fold(BigInt::one(), |acc, n| acc * n);
    bound < BigInt::from(WITNESS_PRIME) * BigInt::from(WITNESS_PRIME)
}

/// First subset (as source indices) whose augmented or coefficient rank
/// differs between Q and F_q, if any.
///
/// With `roots = None` every subset is covered. When the arrangement is
/// invariant under a group that maps every hyperplane into `roots`, passing
/// them restricts the search to subsets containing a root.
pub fn first_rank_change(arr: &IntegerArrangement, q: u64, roots: Option<&[usize]>) -> Option<Vec<usize>> {
    let primes = [WITNESS_PRIME, q];
    let rows: Vec<[Vec<u64>; 2]> = arr
        .hyperplanes
        .iter()
        .map(|h| primes.map(|p| h.coeffs.iter().chain([&h.rhs]).map(|c| residue(c, p)).collect()))
        .collect();
    let m = rows.len();
    let dim = arr.dim;
    let root_list: Vec<usize> = roots.map_or_else(|| (0..m).collect(), <[usize]>::to_vec);
    root_list.into_par_iter().find_map_first(|root| {
        let candidates: Vec<usize> = match roots {
            Some(_) => (0..m).filter(|&k| k != root).collect(),
            None => (root + 1..m).collect(),
        };
        let mut state = State {
            augmented: primes.map(|p| Echelon::new(p, dim + 1)),
            coeff: primes.map(|p| Echelon::new(p, dim)),
        };
        let mut members = Vec::new();
        Search {
            rows: &rows,
            candidates: &candidates,
        }
        .visit(&mut state, root, 0, &mut members)
    })
}

struct Search<'a> {
    rows: &'a [[Vec<u64>; 2]],
    candidates: &'a [usize],
}

impl Search<'_> {
    /// Adds hyperplane `h`, then every later candidate from `next` on.
    fn visit(&self, state: &mut State, h: usize, next: usize, members: &mut Vec<usize>) -> Option<Vec<usize>> {
        members.push(h);
        let aug = [0, 1].map(|f| state.augmented[f].push(&self.rows[h][f]));
        let coeff = [0, 1].map(|f| state.coeff[f].push(&self.rows[h][f]));
        let found = if aug[0] != aug[1] || coeff[0] != coeff[1] {
            Some(members.clone())
        } else if aug[0] {
            (next..self.candidates.len()).find_map(|i| self.visit(state, self.candidates[i], i + 1, members))
        } else {
            None
        };
        for f in 0..2 {
            if aug[f] {
                state.augmented[f].pop();
            }
            if coeff[f] {
                state.coeff[f].pop();
            }
        }
        members.pop();
        found
    }
}
