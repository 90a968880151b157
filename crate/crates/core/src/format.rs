//! The plain-text arrangement format and JSON rendering of polynomials.
//!
//! ```text
//! # comment
//! dim 2
//! 1 -1 = 0
//! 1 -1 = 1/2
//! ```
//!
//! or a single line `family <name> n=<k>`.

use serde::Serialize;
use thiserror::Error;

use crate::arrangement::{Arrangement, ArrangementError, Hyperplane};
use crate::families::Family;
use crate::poly::vars::{Variable, VariablePair};
use crate::poly::{BiPoly, UniPoly};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty input")]
    Empty,
    #[error("expected `dim <n>` or `family <name> n=<k>`")]
    MissingHeader,
    #[error("invalid number `{0}`")]
    InvalidNumber(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("expected `=`")]
    MissingEquals,
    #[error("expected {expected} coefficients, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("all coefficients are zero")]
    ZeroNormal,
    #[error("unexpected `{0}`")]
    Unexpected(String),
    #[error("dimension {n} is below the family minimum {min}")]
    DimensionTooSmall { n: usize, min: usize },
}

/// What an input file describes.
#[derive(Clone, Debug, PartialEq)]
pub enum Input {
    Explicit(Arrangement),
    Family { family: Family, n: usize },
}

impl Input {
    pub fn arrangement(&self) -> Result<Arrangement, ArrangementError> {
        match self {
            Input::Explicit(a) => Ok(a.clone()),
            Input::Family { family, n } => family.arrangement(*n),
        }
    }
}

/// Whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain([(line.len(), ' ')]) {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(before, _)| before)
}

pub fn parse_arrangement(text: &str) -> Result<Input, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, tokens(strip_comment(l))))
        .filter(|(_, t)| !t.is_empty());
    let err = |line, column, kind| ParseError { line, column, kind };
    let Some((line, header)) = lines.next() else {
        return Err(err(1, 1, ParseErrorKind::Empty));
    };
    match header.as_slice() {
        [(_, "dim"), (col, n)] => {
            let dim: usize = n
                .parse()
                .map_err(|_| err(line, *col, ParseErrorKind::InvalidNumber(n.to_string())))?;
            let hyperplanes = lines
                .map(|(line, toks)| parse_hyperplane(line, &toks, dim))
                .collect::<Result<Vec<_>, _>>()?;
            let arr = Arrangement::new(dim, hyperplanes).expect("dimensions checked while parsing");
            Ok(Input::Explicit(arr))
        }
        [(_, "family"), (name_col, name), (n_col, n)] => {
            let family: Family = name
                .parse()
                .map_err(|_| err(line, *name_col, ParseErrorKind::UnknownFamily(name.to_string())))?;
            let value = n
                .strip_prefix("n=")
                .and_then(|v| v.parse::<usize>().ok())
                .ok_or_else(|| err(line, *n_col, ParseErrorKind::InvalidNumber(n.to_string())))?;
            if value < family.min_dim() {
                return Err(err(
                    line,
                    *n_col,
                    ParseErrorKind::DimensionTooSmall {
                        n: value,
                        min: family.min_dim(),
                    },
                ));
            }
            if let Some((line, toks)) = lines.next() {
                return Err(err(line, toks[0].0, ParseErrorKind::Unexpected(toks[0].1.to_string())));
            }
            Ok(Input::Family { family, n: value })
        }
        _ => Err(err(line, header[0].0, ParseErrorKind::MissingHeader)),
    }
}

fn parse_hyperplane(line: usize, toks: &[(usize, &str)], dim: usize) -> Result<Hyperplane, ParseError> {
    let err = |column, kind| ParseError { line, column, kind };
    let number = |&(col, s): &(usize, &str)| {
        parse_rational(s).ok_or_else(|| err(col, ParseErrorKind::InvalidNumber(s.to_string())))
    };
    let Some(eq) = toks.iter().position(|(_, s)| *s == "=") else {
        let column = toks.last().map_or(1, |(c, s)| c + s.len());
        return Err(err(column, ParseErrorKind::MissingEquals));
    };
    let coeffs = toks[..eq].iter().map(number).collect::<Result<Vec<Rational>, _>>()?;
    if coeffs.len() != dim {
        return Err(err(
            toks[0].0,
            ParseErrorKind::DimensionMismatch {
                expected: dim,
                found: coeffs.len(),
            },
        ));
    }
    let rhs = match &toks[eq + 1..] {
        [t] => number(t)?,
        [] => return Err(err(toks[eq].0 + 1, ParseErrorKind::InvalidNumber(String::new()))),
        [_, (col, s), ..] => return Err(err(*col, ParseErrorKind::Unexpected(s.to_string()))),
    };
    Hyperplane::new(coeffs, rhs).map_err(|_| err(toks[0].0, ParseErrorKind::ZeroNormal))
}

/// Renders an arrangement in the text format accepted by [`parse_arrangement`].
pub fn arrangement_to_text(arr: &Arrangement) -> String {
    let mut out = format!("dim {}\n", arr.dim());
    for h in arr.hyperplanes() {
        for c in h.coeffs() {
            out.push_str(&format_rational(c));
            out.push(' ');
        }
        out.push_str("= ");
        out.push_str(&format_rational(h.rhs()));
        out.push('\n');
    }
    out
}

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct JsonTerm {
    pub exp: Vec<usize>,
    pub coeff: String,
}

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct JsonPoly {
    pub variables: Vec<&'static str>,
    pub terms: Vec<JsonTerm>,
}

impl<V: VariablePair> From<&BiPoly<V>> for JsonPoly {
    fn from(p: &BiPoly<V>) -> Self {
        JsonPoly {
            variables: vec![V::First::NAME, V::Second::NAME],
            terms: p
                .graded_terms()
                .into_iter()
                .map(|((i, j), c)| JsonTerm {
                    exp: vec![i, j],
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }
}

impl<V: Variable> From<&UniPoly<V>> for JsonPoly {
    fn from(p: &UniPoly<V>) -> Self {
        JsonPoly {
            variables: vec![V::NAME],
            terms: p
                .coeffs()
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(i, c)| JsonTerm {
                    exp: vec![i],
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }
}

pub fn to_json(p: impl Into<JsonPoly>) -> String {
    serde_json::to_string(&p.into()).expect("polynomials serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Coboundary;
    use crate::rational::int;

    fn kind(text: &str) -> (usize, usize, ParseErrorKind) {
        let e = parse_arrangement(text).unwrap_err();
        (e.line, e.column, e.kind)
    }

    #[test]
    fn explicit_catalan() {
        let Input::Explicit(a) = parse_arrangement("dim 2\n1 -1 = 0\n1 -1 = 1\n1 -1 = -1\n").unwrap() else {
            panic!("expected an explicit arrangement");
        };
        assert_eq!(a, Family::Catalan.arrangement(2).unwrap());
    }

    #[test]
    fn family_line() {
        assert_eq!(
            parse_arrangement("# Catalan\nfamily catalan n=3\n").unwrap(),
            Input::Family { family: Family::Catalan, n: 3 }
        );
    }

    #[test]
    fn rationals_and_comments() {
        let Input::Explicit(a) = parse_arrangement("dim 2 # plane\n\n2 1/2 = 3/4 # line\n").unwrap() else {
            panic!();
        };
        assert_eq!(a.hyperplanes()[0].coeffs()[1], crate::rational::frac(1, 4));
    }

    #[test]
    fn errors() {
        assert_eq!(kind("dim 2\n0 0 = 1"), (2, 1, ParseErrorKind::ZeroNormal));
        assert_eq!(
            kind("dim 2\n1 -1 = 0\n1 2 3 = 0"),
            (3, 1, ParseErrorKind::DimensionMismatch { expected: 2, found: 3 })
        );
        assert_eq!(kind("dim 2\n1 x = 0"), (2, 3, ParseErrorKind::InvalidNumber("x".into())));
        assert_eq!(kind("dim 2\n1 1 0"), (2, 6, ParseErrorKind::MissingEquals));
        assert_eq!(kind("dim 2\n1 1 = 0 4"), (2, 9, ParseErrorKind::Unexpected("4".into())));
        assert_eq!(kind("\n  # nothing\n"), (1, 1, ParseErrorKind::Empty));
        assert_eq!(kind("hello"), (1, 1, ParseErrorKind::MissingHeader));
        assert_eq!(kind("family braid n=3"), (1, 8, ParseErrorKind::UnknownFamily("braid".into())));
        assert_eq!(
            kind("family catalan n=1"),
            (1, 16, ParseErrorKind::DimensionTooSmall { n: 1, min: 2 })
        );
        assert_eq!(
            kind("family catalan n=2\n1 1 = 0"),
            (2, 1, ParseErrorKind::Unexpected("1".into()))
        );
    }

    #[test]
    fn text_round_trip() {
        for f in Family::ALL {
            let a = f.arrangement(3).unwrap();
            assert_eq!(parse_arrangement(&arrangement_to_text(&a)).unwrap(), Input::Explicit(a));
        }
    }

    #[test]
    fn json_shape() {
        let cb = Coboundary::from_terms([((1, 0), int(1)), ((0, 1), int(3)), ((0, 0), int(-3))]);
        assert_eq!(
            to_json(&cb),
            r#"{"variables":["q","t"],"terms":[{"exp":[1,0],"coeff":"1"},{"exp":[0,1],"coeff":"3"},{"exp":[0,0],"coeff":"-3"}]}"#
        );
        let chi = UniPoly::<crate::poly::vars::Q>::from_integers(&[6, -5, 1]);
        assert_eq!(
            to_json(&chi),
            r#"{"variables":["q"],"terms":[{"exp":[2],"coeff":"1"},{"exp":[1],"coeff":"-5"},{"exp":[0],"coeff":"6"}]}"#
        );
    }
}
