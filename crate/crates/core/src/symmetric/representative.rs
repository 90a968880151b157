use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use super::SymmetricError;
use crate::arrangement::{Arrangement, Hyperplane, Permutation};

/// A representative equation `a_1 x_1 + .. + a_j x_j = b` with every `a_i ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepEquation {
    equation: Hyperplane,
}

impl RepEquation {
    /// Relabels the support of `h` onto `x_1..x_j`.
    pub fn new(h: &Hyperplane) -> Self {
        RepEquation {
            equation: h.compress(),
        }
    }

    pub fn arity(&self) -> usize {
        self.equation.dim()
    }

    pub fn equation(&self) -> &Hyperplane {
        &self.equation
    }

    pub fn stabilizer(&self) -> Stabilizer {
        Stabilizer::of(&self.equation)
    }
}

impl fmt::Display for RepEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.equation.fmt(f)
    }
}

/// Permutations π of `[j]` with `π·E = E` as hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilizer {
    perms: Vec<Permutation>,
}

impl Stabilizer {
    pub fn of(equation: &Hyperplane) -> Self {
        let j = equation.dim();
        let perms: Vec<Permutation> = (0..j)
            .permutations(j)
            .map(|images| Permutation::new(images).expect("itertools yields permutations"))
            .filter(|p| equation.act(p).as_ref() == Ok(equation))
            .collect();
        let stab = Stabilizer { perms };
        debug_assert!(stab.is_group());
        stab
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    /// Contains the identity and is closed under composition.
    pub fn is_group(&self) -> bool {
        let set: BTreeSet<&Permutation> = self.perms.iter().collect();
        self.perms.iter().any(Permutation::is_identity)
            && self
                .perms
                .iter()
                .cartesian_product(&self.perms)
                .all(|(a, b)| set.contains(&a.compose(b)))
    }

    /// `x ∘ π = (x_{π(1)}, .., x_{π(j)})`, the action on solution tuples.
    pub fn apply(perm: &Permutation, x: &[u64]) -> Vec<u64> {
        (0..x.len()).map(|i| x[perm.apply(i)]).collect()
    }

    pub fn orbit(&self, x: &[u64]) -> BTreeSet<Vec<u64>> {
        self.perms.iter().map(|p| Self::apply(p, x)).collect()
    }

    /// Number of stabilizer elements fixing `x`.
    pub fn fixing(&self, x: &[u64]) -> usize {
        self.perms
            .iter()
            .filter(|p| Self::apply(p, x) == x)
            .count()
    }
}

impl fmt::Display for Stabilizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.perms.iter().join(", "))
    }
}

/// Splits a symmetric arrangement into S_n-orbits and returns one
/// representative equation per orbit.
///
/// Within an orbit the representative is the lexicographically greatest
/// member supported on `x_1..x_j`; the list is sorted by arity, then equation.
pub fn extract_representatives(arr: &Arrangement) -> Result<Vec<RepEquation>, SymmetricError> {
    let orbits = arr.orbit_decomposition().map_err(|orbit| {
        let set = arr.as_set();
        let missing = orbit
            .iter()
            .find(|h| !set.contains(h))
            .expect("an incomplete orbit has a missing member");
        SymmetricError::NotSymmetric {
            missing: missing.to_string(),
        }
    })?;
    let mut reps: Vec<RepEquation> = orbits
        .iter()
        .map(|orbit| {
            let j = orbit.first().expect("orbits are nonempty").support().len();
            let initial: Vec<usize> = (0..j).collect();
            let best = orbit
                .iter()
                .filter(|h| h.support() == initial)
                .max()
                .expect("every orbit has a member on the first j variables");
            RepEquation::new(best)
        })
        .collect();
    reps.sort_by(|a, b| (a.arity(), &a.equation).cmp(&(b.arity(), &b.equation)));
    Ok(reps)
}
