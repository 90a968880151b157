//! Type-level variable labels. A coboundary polynomial in `(q, t)` can never
//! be added to a Tutte polynomial in `(x, y)` by accident.

use std::fmt::Debug;
use std::hash::Hash;

pub trait Variable: Copy + Clone + Debug + Default + PartialEq + Eq + Hash + Send + Sync + 'static {
    const NAME: &'static str;
}

pub trait VariablePair: Copy + Clone + Debug + Default + PartialEq + Eq + Hash + Send + Sync + 'static {
    type First: Variable;
    type Second: Variable;
}

macro_rules! variable {
    ($name:ident, $label:literal) => {
        #[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
        pub struct $name;

        impl Variable for $name {
            const NAME: &'static str = $label;
        }
    };
}

variable!(X, "x");
variable!(Y, "y");
variable!(Q, "q");
variable!(T, "t");

/// Tutte polynomial variables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct XY;

impl VariablePair for XY {
    type First = X;
    type Second = Y;
}

/// Coboundary polynomial variables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct QT;

impl VariablePair for QT {
    type First = Q;
    type Second = T;
}
