//! Closed-form coboundary polynomials of symmetric arrangements.
//!
//! A symmetric arrangement is described by one representative equation per
//! S_n-orbit. Over F_q the number of hyperplanes through `y` depends only on
//! the residue counts `a_k = #{i : y_i = k}`:
//!
//! ```text
//! h(y) = Σ_E Σ_{x ∈ Sol(Ē)} Π_{k ∈ S(x)} C(a_k, o_k(x))
//! ```
//!
//! where `Sol(Ē)` lists stabilizer orbits of solutions. Summing `t^{h}` over
//! weak compositions `(a_0, .., a_{q-1})` of `n`, weighted by multinomials,
//! gives `q^{n-r} χ̄(q, t)`.
//!
//! The count above is exact only when every solution `x` is fixed by exactly
//! `Π o_k(x)!` stabilizer elements (positions holding equal values must be
//! interchangeable). [`SymmetricModel::new`] refuses equations that break this.

mod partition;
mod representative;
mod solutions;

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use thiserror::Error;

pub use partition::{indice_partition, Block, IndicePartition, SolutionRef};
pub use representative::{extract_representatives, RepEquation, Stabilizer};
pub use solutions::{raw_solutions, solutions_mod_q, CanonicalSolution};

use crate::arrangement::{Arrangement, ArrangementError, Permutation};
use crate::combinatorics::{Factorials, WeakCompositions};
use crate::finite_field::{self, FqError, FqPoint, ReducedArrangement};
use crate::modular::{inv_mod, is_prime, mul_mod};
use crate::poly::vars::T;
use crate::poly::UniPoly;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetricError {
    #[error("arrangement is not symmetric: orbit member {missing} is missing")]
    NotSymmetric { missing: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("a coefficient of {equation} vanishes mod {q}")]
    VanishingCoefficient { equation: String, q: u64 },
    #[error("orbits of {first} and {second} collide mod {q}")]
    RepresentativeCollision { first: String, second: String, q: u64 },
    #[error(
        "residue-count formula does not apply to {equation}: solution {solution} is fixed by \
         {fixing} stabilizer elements, not {expected}"
    )]
    LemmaInapplicable {
        equation: String,
        solution: String,
        fixing: usize,
        expected: usize,
    },
    #[error("h({point:?}) is {symbolic} by residue counts but {direct} by direct count")]
    HDisagreement {
        point: Vec<u64>,
        symbolic: u64,
        direct: u64,
    },
    #[error("point lives in F_{found}, model is over F_{expected}")]
    ModulusMismatch { expected: u64, found: u64 },
    #[error(transparent)]
    FiniteField(#[from] FqError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

/// Representative equations with their canonical solution sets mod `q`.
#[derive(Clone, Debug)]
pub struct SymmetricModel {
    q: u64,
    equations: Vec<RepEquation>,
    solutions: Vec<Vec<CanonicalSolution>>,
}

fn normalized(row: &[u64], q: u64) -> Vec<u64> {
    let inv = inv_mod(row[0], q);
    row.iter().map(|&v| mul_mod(v, inv, q)).collect()
}

impl SymmetricModel {
    pub fn new(equations: Vec<RepEquation>, q: u64) -> Result<Self, SymmetricError> {
        if !is_prime(q) {
            return Err(SymmetricError::NotPrime(q));
        }
        let solutions = equations
            .iter()
            .map(|e| solutions_mod_q(e, q))
            .collect::<Result<Vec<_>, _>>()?;
        let model = SymmetricModel {
            q,
            equations,
            solutions,
        };
        model.check_orbits_stay_distinct()?;
        model.check_lemma_applies()?;
        Ok(model)
    }

    pub fn from_arrangement(arr: &Arrangement, q: u64) -> Result<Self, SymmetricError> {
        Self::new(extract_representatives(arr)?, q)
    }

    /// Distinct orbit members must stay distinct after reduction: no
    /// permutation may map one reduced representative onto another, or onto
    /// itself unless it already did so over Q.
    fn check_orbits_stay_distinct(&self) -> Result<(), SymmetricError> {
        let q = self.q;
        let rows = self
            .equations
            .iter()
            .map(|e| solutions::reduced_row(e, q))
            .collect::<Result<Vec<_>, _>>()?;
        for (i, j) in (0..self.equations.len()).tuple_combinations().chain((0..self.equations.len()).map(|i| (i, i))) {
            let (ei, ek) = (&self.equations[i], &self.equations[j]);
            if ei.arity() != ek.arity() {
                continue;
            }
            let arity = ei.arity();
            let target = normalized(&rows[j], q);
            let stab = ei.stabilizer();
            for images in (0..arity).permutations(arity) {
                let perm = Permutation::new(images).expect("itertools yields permutations");
                if i == j && stab.perms().contains(&perm) {
                    continue;
                }
                let mut moved = vec![0; arity + 1];
                for (pos, &a) in rows[i][..arity].iter().enumerate() {
                    moved[perm.apply(pos)] = a;
                }
                moved[arity] = rows[i][arity];
                if normalized(&moved, q) == target {
                    return Err(SymmetricError::RepresentativeCollision {
                        first: ei.to_string(),
                        second: ek.to_string(),
                        q,
                    });
                }
            }
        }
        Ok(())
    }

    fn check_lemma_applies(&self) -> Result<(), SymmetricError> {
        for (eq, sols) in self.equations.iter().zip(&self.solutions) {
            if let Some(bad) = sols.iter().find(|s| s.fixing_order() != s.occurrence_factorials()) {
                return Err(SymmetricError::LemmaInapplicable {
                    equation: eq.to_string(),
                    solution: bad.to_string(),
                    fixing: bad.fixing_order(),
                    expected: bad.occurrence_factorials(),
                });
            }
        }
        Ok(())
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn equations(&self) -> &[RepEquation] {
        &self.equations
    }

    pub fn solutions(&self) -> &[Vec<CanonicalSolution>] {
        &self.solutions
    }

    pub fn max_arity(&self) -> usize {
        self.equations.iter().map(RepEquation::arity).max().unwrap_or(0)
    }

    pub fn partition(&self) -> IndicePartition {
        indice_partition(&self.solutions, self.q)
    }

    /// Residue counts `|A_k(y)|` for `k = 0..q`.
    pub fn residue_counts(&self, y: &[u64]) -> Vec<usize> {
        let mut counts = vec![0; self.q as usize];
        for &v in y {
            counts[v as usize] += 1;
        }
        counts
    }

    /// `h(y)` from residue counts alone.
    pub fn h_symbolic(&self, y: &FqPoint) -> Result<u64, SymmetricError> {
        if y.modulus() != self.q {
            return Err(SymmetricError::ModulusMismatch {
                expected: self.q,
                found: y.modulus(),
            });
        }
        let counts = self.residue_counts(y.coords());
        Ok(self
            .solutions
            .iter()
            .flatten()
            .map(|s| s.weight(&counts))
            .sum())
    }

    /// Compares [`SymmetricModel::h_symbolic`] with a direct count on the
    /// expanded arrangement at every given point.
    pub fn cross_check<'a>(
        &self,
        reduced: &ReducedArrangement,
        points: impl IntoIterator<Item = &'a FqPoint>,
    ) -> Result<(), SymmetricError> {
        for y in points {
            let symbolic = self.h_symbolic(y)?;
            let direct = reduced.h_count(y)? as u64;
            if symbolic != direct {
                return Err(SymmetricError::HDisagreement {
                    point: y.coords().to_vec(),
                    symbolic,
                    direct,
                });
            }
        }
        Ok(())
    }

    /// `Σ_{a_0+..+a_{q-1}=n} multinomial(n; a) · t^{exponent(a)}` with the
    /// exponent read off `partition`. Equals `Σ_{y ∈ F_q^n} t^{h(y)}`.
    pub fn composition_sum_with(&self, n: usize, partition: &IndicePartition) -> UniPoly<T> {
        let factorials = Factorials::up_to(n);
        let compositions: Vec<Vec<usize>> = WeakCompositions::new(n, self.q as usize).collect();
        let tally = compositions
            .par_iter()
            .fold(BTreeMap::<u64, BigUint>::new, |mut acc, a| {
                let e = partition.exponent(&self.solutions, a);
                *acc.entry(e).or_default() += factorials.multinomial(a);
                acc
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (e, c) in b {
                    *a.entry(e).or_default() += c;
                }
                a
            });
        let mut coeffs = vec![Rational::from_integer(0.into()); tally.keys().max().map_or(0, |&e| e as usize + 1)];
        for (e, c) in tally {
            coeffs[e as usize] = Rational::from_integer(BigInt::from(c));
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn composition_sum(&self, n: usize) -> UniPoly<T> {
        self.composition_sum_with(n, &self.partition())
    }
}

/// A deterministic spread of at most `limit` points of F_q^n.
pub(crate) fn sample_points(q: u64, n: usize, limit: u64) -> Vec<FqPoint> {
    let total = q.saturating_pow(n as u32);
    let step = (total / limit.max(1)).max(1) | 1;
    (0..total.min(limit))
        .map(|k| {
            let mut rest = (k * step) % total;
            let coords = (0..n)
                .map(|_| {
                    let c = rest % q;
                    rest /= q;
                    c
                })
                .collect();
            FqPoint::new(coords, q).expect("valid point")
        })
        .collect()
}

/// `χ̄(q, t)` of a symmetric arrangement for a certified prime `q`.
pub fn coboundary_closed_form(arr: &Arrangement, q: u64) -> Result<UniPoly<T>, SymmetricError> {
    let reduced = ReducedArrangement::new(arr, q)?;
    finite_field::certify(arr, q)?.map_err(|reason| FqError::NotCertified { q, reason })?;
    let model = SymmetricModel::from_arrangement(arr, q)?;
    model.cross_check(&reduced, &sample_points(q, arr.dim(), 257))?;
    let sum = model.composition_sum(arr.dim());
    Ok(finite_field::divide_by_prime_power(&sum, q, arr.dim() - arr.rank())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Hyperplane;
    use crate::families::Family;
    use std::collections::BTreeSet;

    fn rep(coeffs: &[i64], rhs: i64) -> RepEquation {
        RepEquation::new(&Hyperplane::from_integers(coeffs, rhs).unwrap())
    }

    fn model(family: Family, q: u64) -> SymmetricModel {
        SymmetricModel::new(
            family.representatives().iter().map(RepEquation::new).collect(),
            q,
        )
        .unwrap()
    }

    fn block_values(m: &SymmetricModel, b: &Block) -> BTreeSet<Vec<u64>> {
        b.members()
            .iter()
            .map(|r| m.solutions()[r.equation][r.index].values().to_vec())
            .collect()
    }

    #[test]
    fn braid_partition_is_diagonal() {
        let m = model(Family::WeylA, 5);
        let p = m.partition();
        assert_eq!(p.len(), 5);
        for (k, b) in p.blocks().iter().enumerate() {
            assert_eq!(block_values(&m, b), [vec![k as u64, k as u64]].into());
        }
    }

    #[test]
    fn catalan_partition_is_one_block() {
        let m = model(Family::Catalan, 5);
        let p = m.partition();
        assert_eq!(p.len(), 1);
        assert_eq!(p.blocks()[0].members().len(), 10);
    }

    #[test]
    fn i_arrangement_partition_mod_seven() {
        let m = model(Family::IArrangement, 7);
        let p = m.partition();
        let blocks: Vec<BTreeSet<Vec<u64>>> = p.blocks().iter().map(|b| block_values(&m, b)).collect();
        assert_eq!(
            blocks,
            vec![
                [vec![0], vec![1], vec![0, 1]].into(),
                [vec![2, 6]].into(),
                [vec![3, 5]].into(),
                [vec![4, 4]].into(),
            ]
        );
        assert!(p.is_sound(m.solutions()));
        assert!(p.free_residues(7).is_empty());
    }

    #[test]
    fn h_symbolic_examples() {
        let c2 = model(Family::Catalan, 5);
        assert_eq!(c2.h_symbolic(&FqPoint::new(vec![0, 0], 5).unwrap()).unwrap(), 1);
        let st = model(Family::ShiThreshold, 5);
        assert_eq!(st.h_symbolic(&FqPoint::new(vec![2, 3], 5).unwrap()).unwrap(), 1);
        let a = model(Family::WeylA, 7);
        // Σ_k C(|A_k|, 2) with counts {3: 0, 2: 1, 1: 2}
        let y = FqPoint::new(vec![0, 0, 0, 1, 1, 2], 7).unwrap();
        assert_eq!(a.h_symbolic(&y).unwrap(), 3 + 1);
    }

    #[test]
    fn closed_form_examples() {
        let a1 = Family::WeylA.arrangement(2).unwrap();
        assert_eq!(coboundary_closed_form(&a1, 3).unwrap(), UniPoly::from_integers(&[2, 1]));
        let c2 = Family::Catalan.arrangement(2).unwrap();
        assert_eq!(coboundary_closed_form(&c2, 5).unwrap(), UniPoly::from_integers(&[2, 3]));
        for q in [3, 5, 7] {
            assert_eq!(coboundary_closed_form(&Arrangement::empty(3), q).unwrap(), UniPoly::one());
        }
    }

    #[test]
    fn refined_partition_gives_same_sum() {
        let m = model(Family::IArrangement, 7);
        let fine = IndicePartition::singletons(m.solutions());
        for n in 2..5 {
            assert_eq!(m.composition_sum(n), m.composition_sum_with(n, &fine));
        }
    }

    #[test]
    fn lemma_refusal() {
        // (0, 0) solves x_1 + 2x_2 = 0 but the swap does not fix the equation
        let err = SymmetricModel::new(vec![rep(&[1, 2], 0)], 5).unwrap_err();
        assert!(matches!(err, SymmetricError::LemmaInapplicable { fixing: 1, expected: 2, .. }), "{err}");
    }

    #[test]
    fn representative_collisions() {
        // x_1 + x_2 = 0 and x_1 + x_2 = 5 coincide mod 5
        let err = SymmetricModel::new(vec![rep(&[1, 1], 0), rep(&[1, 1], 5)], 5).unwrap_err();
        assert!(matches!(err, SymmetricError::RepresentativeCollision { .. }));
        // x_1 - x_2 = 1 and its swap x_1 - x_2 = -1 coincide mod 2
        let err = SymmetricModel::new(vec![rep(&[1, -1], 1)], 2).unwrap_err();
        assert!(matches!(err, SymmetricError::RepresentativeCollision { .. }));
    }

    #[test]
    fn uncertified_prime_is_refused() {
        let c5 = Family::Catalan.arrangement(5).unwrap();
        assert!(matches!(
            coboundary_closed_form(&c5, 5),
            Err(SymmetricError::FiniteField(FqError::NotCertified { .. }))
        ));
    }

    #[test]
    fn sample_points_are_distinct() {
        let pts = sample_points(5, 3, 50);
        let set: BTreeSet<_> = pts.iter().map(|p| p.coords().to_vec()).collect();
        assert_eq!(set.len(), 50);
        assert_eq!(sample_points(3, 2, 100).len(), 9);
    }
}
