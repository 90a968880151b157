//! Exact rational helpers shared by every module.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

/// Renders an integer without a denominator, anything else as `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Scales a rational vector to the primitive integer vector on the same ray.
///
/// The result has coprime entries and the same signs as the input.
pub fn primitive_integer_vector(values: &[Rational]) -> Vec<BigInt> {
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled: Vec<BigInt> = values
        .iter()
        .map(|v| (v * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = scaled
        .iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if gcd.is_zero() || gcd.is_one() {
        return scaled;
    }
    scaled.into_iter().map(|v| v / &gcd).collect()
}

/// Reduces an integer modulo `p` into `0..p`.
pub fn residue(v: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = v.mod_floor(&m);
    u64::try_from(r).expect("residue fits in u64")
}

/// Residue of a rational whose denominator is invertible mod `p`.
pub fn rational_residue(v: &Rational, p: u64) -> Option<u64> {
    let den = residue(v.denom(), p);
    if den == 0 {
        return None;
    }
    let num = residue(v.numer(), p);
    Some(crate::modular::mul_mod(num, crate::modular::inv_mod(den, p), p))
}
