use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use super::{RepEquation, SymmetricError};
use crate::combinatorics::binomial;
use crate::modular::{inv_mod, is_prime, mul_mod};
use crate::rational::residue;

/// One stabilizer orbit of solutions of a reduced representative equation,
/// represented by its lexicographically least member.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalSolution {
    values: Vec<u64>,
    /// `k -> o_k(x)`; the keys are the support `S(x)`.
    occurrences: BTreeMap<u64, usize>,
    orbit_size: usize,
    /// Number of stabilizer elements fixing `values`.
    fixing: usize,
}

impl CanonicalSolution {
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `S(x)`, increasing.
    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.occurrences.keys().copied()
    }

    /// `o_k(x)`.
    pub fn occurrence(&self, k: u64) -> usize {
        self.occurrences.get(&k).copied().unwrap_or(0)
    }

    pub fn occurrences(&self) -> &BTreeMap<u64, usize> {
        &self.occurrences
    }

    /// Size of the stabilizer orbit this solution stands for.
    pub fn orbit_size(&self) -> usize {
        self.orbit_size
    }

    pub fn fixing_order(&self) -> usize {
        self.fixing
    }

    /// `Π_{k ∈ S(x)} o_k(x)!`
    pub fn occurrence_factorials(&self) -> usize {
        self.occurrences
            .values()
            .map(|&o| (1..=o).product::<usize>())
            .product()
    }

    /// `Π_{k ∈ S(x)} C(counts[k], o_k(x))`, where `counts[k]` is the number of
    /// coordinates equal to `k`.
    pub fn weight(&self, counts: &[usize]) -> u64 {
        self.occurrences
            .iter()
            .map(|(&k, &o)| binomial(counts[k as usize], o))
            .product()
    }
}

impl fmt::Display for CanonicalSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.len() == 1 {
            write!(f, "{}", self.values[0])
        } else {
            write!(f, "({})", self.values.iter().join(", "))
        }
    }
}

/// Reduced equation coefficients, or an error when one vanishes mod `q`.
pub(crate) fn reduced_row(eq: &RepEquation, q: u64) -> Result<Vec<u64>, SymmetricError> {
    let row: Vec<u64> = eq
        .equation()
        .integer_row()
        .iter()
        .map(|v| residue(v, q))
        .collect();
    if row[..eq.arity()].contains(&0) {
        return Err(SymmetricError::VanishingCoefficient {
            equation: eq.to_string(),
            q,
        });
    }
    Ok(row)
}

/// Every ordered solution of the reduced equation in F_q^j, lexicographic.
pub fn raw_solutions(eq: &RepEquation, q: u64) -> Result<Vec<Vec<u64>>, SymmetricError> {
    if !is_prime(q) {
        return Err(SymmetricError::NotPrime(q));
    }
    let row = reduced_row(eq, q)?;
    let j = eq.arity();
    let (a1, rest, b) = (row[0], &row[1..j], row[j]);
    let inv = inv_mod(a1, q);
    if j == 1 {
        return Ok(vec![vec![mul_mod(b, inv, q)]]);
    }
    let mut out = Vec::with_capacity((q as usize).pow(j as u32 - 1));
    for free in (0..j - 1).map(|_| 0..q).multi_cartesian_product() {
        let partial = rest
            .iter()
            .zip(&free)
            .fold(0u64, |acc, (&a, &x)| (acc + mul_mod(a, x, q)) % q);
        let x1 = mul_mod((b + q - partial) % q, inv, q);
        let mut sol = Vec::with_capacity(j);
        sol.push(x1);
        sol.extend(free);
        out.push(sol);
    }
    out.sort();
    Ok(out)
}

/// `Sol(Ē)` up to the stabilizer action, one lexicographically least
/// representative per orbit, sorted.
pub fn solutions_mod_q(eq: &RepEquation, q: u64) -> Result<Vec<CanonicalSolution>, SymmetricError> {
    let stab = eq.stabilizer();
    let mut seen: BTreeMap<Vec<u64>, CanonicalSolution> = BTreeMap::new();
    for x in raw_solutions(eq, q)? {
        let orbit = stab.orbit(&x);
        let least = orbit.first().expect("orbit contains x").clone();
        if seen.contains_key(&least) {
            continue;
        }
        let mut occurrences = BTreeMap::new();
        for &v in &least {
            *occurrences.entry(v).or_insert(0) += 1;
        }
        let fixing = stab.fixing(&least);
        seen.insert(
            least.clone(),
            CanonicalSolution {
                values: least,
                occurrences,
                orbit_size: orbit.len(),
                fixing,
            },
        );
    }
    Ok(seen.into_values().collect())
}
