//! Exact Tutte, coboundary and characteristic polynomials of rational
//! hyperplane arrangements.

pub mod arrangement;
pub mod linalg;
pub mod modular;
pub mod poly;
pub mod rational;
pub mod combinatorics;
pub mod families;
pub mod subset;
pub mod finite_field;
pub mod symmetric;
pub mod interpolation;
pub mod egf;
pub mod format;
