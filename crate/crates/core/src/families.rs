//! Built-in symmetric arrangement families, addressable by name.

use std::fmt;
use std::str::FromStr;

use crate::arrangement::{Arrangement, ArrangementError, Hyperplane};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `x_i = x_j`, the Weyl arrangement of type A_{n-1}.
    WeylA,
    /// `x_i - x_j ∈ {0, 1}` for `i ≠ j`.
    Catalan,
    /// `x_i + x_j ∈ {0, 1}` for `i ≠ j`.
    ShiThreshold,
    /// `x_i ∈ {0, 1}` and `x_i + x_j = 1` for `i ≠ j`.
    IArrangement,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::WeylA,
        Family::Catalan,
        Family::ShiThreshold,
        Family::IArrangement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::WeylA => "weyl-a",
            Family::Catalan => "catalan",
            Family::ShiThreshold => "shi-threshold",
            Family::IArrangement => "i-arrangement",
        }
    }

    /// Representative equations on their own support.
    pub fn representatives(self) -> Vec<Hyperplane> {
        let rows: &[(&[i64], i64)] = match self {
            Family::WeylA => &[(&[1, -1], 0)],
            Family::Catalan => &[(&[1, -1], 0), (&[1, -1], 1)],
            Family::ShiThreshold => &[(&[1, 1], 0), (&[1, 1], 1)],
            Family::IArrangement => &[(&[1], 0), (&[1], 1), (&[1, 1], 1)],
        };
        rows.iter()
            .map(|(c, b)| Hyperplane::from_integers(c, *b).expect("nonzero normals"))
            .collect()
    }

    /// Smallest dimension in which every representative fits.
    pub fn min_dim(self) -> usize {
        self.representatives()
            .iter()
            .map(Hyperplane::dim)
            .max()
            .unwrap_or(0)
    }

    pub fn arrangement(self, n: usize) -> Result<Arrangement, ArrangementError> {
        Arrangement::from_orbits(n, &self.representatives())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown family '{0}' (expected weyl-a, catalan, shi-threshold or i-arrangement)")]
pub struct UnknownFamily(pub String);

impl FromStr for Family {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| UnknownFamily(s.to_string()))
    }
}
