//! Text grammar for exact scalars, shared by the CLI and all file formats.
//!
//! Whitespace-insensitive forms: `n` (integer), `a/b` (rational), and
//! `(a+b*sqrt(d))/c` or `(a-b*sqrt(d))/c` (quadratic). Printing produces the
//! same grammar; parse-print-parse is the identity on canonical values.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;

use super::ExactNumber;
use crate::error::{Error, Result};

impl fmt::Display for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactNumber::Rational(r) => {
                if r.denom() == &BigInt::from(1) {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            ExactNumber::Quadratic(q) => {
                let (op, mag) = if q.b().is_negative() {
                    ("-", -q.b().clone())
                } else {
                    ("+", q.b().clone())
                };
                write!(f, "({}{op}{mag}*sqrt({}))/{}", q.a(), q.radicand(), q.c())
            }
        }
    }
}

impl FromStr for ExactNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(parse_err(s, "empty scalar"));
        }
        if let Some(rest) = t.strip_prefix('(') {
            parse_quadratic(s, rest)
        } else if let Some((n, d)) = t.split_once('/') {
            let numer = parse_int(s, n)?;
            let denom = parse_int(s, d)?;
            ExactNumber::ratio(numer, denom)
                .map_err(|_| parse_err(s, "rational denominator must be nonzero"))
        } else {
            Ok(ExactNumber::integer(parse_int(s, &t)?))
        }
    }
}

/// `rest` is the input after the leading `(`: `a+b*sqrt(d))/c` with an
/// optional sign on `a` and `+`/`-` joining the two terms.
fn parse_quadratic(original: &str, rest: &str) -> Result<ExactNumber> {
    let (inner, c_str) = rest
        .split_once(")/")
        .ok_or_else(|| parse_err(original, "expected `)/c` closing a quadratic scalar"))?;
    let (ab, d_part) = inner
        .split_once("*sqrt(")
        .ok_or_else(|| parse_err(original, "expected `b*sqrt(d)` term"))?;
    let d_str = d_part
        .strip_suffix(')')
        .ok_or_else(|| parse_err(original, "expected `)` closing sqrt"))?;

    // Split `a+b` / `a-b` at the sign that joins the terms (not a leading sign).
    let join = ab
        .char_indices()
        .skip(1)
        .filter(|(_, ch)| *ch == '+' || *ch == '-')
        .map(|(i, _)| i)
        .next_back()
        .ok_or_else(|| parse_err(original, "expected `a+b*sqrt(d)` or `a-b*sqrt(d)`"))?;
    let a = parse_int(original, &ab[..join])?;
    let b_mag = parse_int(original, &ab[join + 1..])?;
    if b_mag.is_negative() {
        return Err(parse_err(original, "the sqrt coefficient carries its sign via `+`/`-`"));
    }
    let b = if ab.as_bytes()[join] == b'-' { -b_mag } else { b_mag };

    let d: u64 = d_str
        .parse()
        .map_err(|_| parse_err(original, "radicand must be a small positive integer"))?;
    let c = parse_int(original, c_str)?;
    ExactNumber::quadratic(a, b, c, d).map_err(|e| match e {
        Error::InvalidRadicand(_) => e,
        _ => parse_err(original, "quadratic denominator must be nonzero"),
    })
}

fn parse_int(original: &str, digits: &str) -> Result<BigInt> {
    BigInt::from_str(digits).map_err(|_| parse_err(original, "expected an integer"))
}

fn parse_err(input: &str, msg: &str) -> Error {
    Error::Parse(format!("{msg} in scalar {input:?}"))
}
