use std::fmt;

use super::ArrangementError;

/// A permutation of `{0, .., n-1}` stored as its image vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, ArrangementError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(ArrangementError::NotAPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation of `[n]` from one cycle written with 1-based
    /// points, e.g. `(1 2 3)` is `from_cycle(3, &[1, 2, 3])`.
    pub fn from_cycle(n: usize, cycle: &[usize]) -> Result<Self, ArrangementError> {
        let mut images: Vec<usize> = (0..n).collect();
        for (k, &from) in cycle.iter().enumerate() {
            let to = cycle[(k + 1) % cycle.len()];
            if from == 0 || from > n || to == 0 || to > n {
                return Err(ArrangementError::NotAPermutation(cycle.to_vec()));
            }
            images[from - 1] = to - 1;
        }
        Permutation::new(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
    }

    #[test]
    fn cycle_and_inverse() {
        let s = Permutation::from_cycle(3, &[1, 2, 3]).unwrap();
        assert_eq!(s.images(), &[1, 2, 0]);
        assert!(s.compose(&s.inverse()).is_identity());
        assert_eq!(s.compose(&s).images(), &[2, 0, 1]);
    }
}
