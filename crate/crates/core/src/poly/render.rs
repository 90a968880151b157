use std::fmt;

use num_traits::{One, Signed};

use crate::rational::{format_rational, Rational};

/// Writes `c_1 m_1 + c_2 m_2 - ...` with `m_i` given as `(name, exponent)` lists.
pub(crate) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a Rational, Vec<(&'static str, usize)>)>,
{
    let mut first = true;
    for (coeff, vars) in terms {
        let monomial = vars
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(name, e)| if *e == 1 { name.to_string() } else { format!("{name}^{e}") })
            .collect::<Vec<_>>()
            .join("*");
        let neg = coeff.is_negative();
        let abs = coeff.abs();
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        if monomial.is_empty() {
            write!(f, "{}", format_rational(&abs))?;
        } else if abs.is_one() {
            write!(f, "{monomial}")?;
        } else if abs.is_integer() {
            write!(f, "{}{monomial}", abs.numer())?;
        } else {
            write!(f, "{}*{monomial}", format_rational(&abs))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}
