//! Canonical representation of real quadratic-field elements `(a + b*sqrt(d))/c`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// A real quadratic irrational `(a + b*sqrt(d))/c` in canonical form:
/// `c > 0`, `gcd(a, b, c) = 1`, `b != 0`, and `d` squarefree with `d >= 2`.
///
/// Rational values are never represented by this type; arithmetic that
/// cancels the `sqrt(d)` part collapses to [`crate::ExactNumber::Rational`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticElement {
    pub(super) a: BigInt,
    pub(super) b: BigInt,
    pub(super) c: BigInt,
    pub(super) d: u64,
}

impl QuadraticElement {
    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// The shared radicand `d`.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    /// Exact sign of `(a + b*sqrt(d))/c`, decided by case analysis on the
    /// signs of `a`, `b` and an integer comparison of `a^2` against `b^2 d`.
    pub fn sign(&self) -> i8 {
        debug_assert!(self.c.is_positive());
        match (int_sign(&self.a), int_sign(&self.b)) {
            (0, s) => s,
            (s, 0) => s,
            (1, 1) => 1,
            (-1, -1) => -1,
            (sa, _) => {
                // Opposite signs: compare a^2 with b^2 d. Equality cannot
                // occur because b^2 d is never a perfect square.
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * BigInt::from(self.d);
                match a2.cmp(&b2d) {
                    std::cmp::Ordering::Greater => sa,
                    std::cmp::Ordering::Less => -sa,
                    std::cmp::Ordering::Equal => unreachable!("b^2 d is not a perfect square"),
                }
            }
        }
    }

    /// Exact floor. `floor(b*sqrt(d))` is pinned by one integer square root
    /// (it is never an integer itself since `b != 0`), which brackets the
    /// value between consecutive integers tightly enough to decide.
    pub fn floor(&self) -> BigInt {
        let s = floor_sqrt_part(&self.b, self.d);
        (&self.a + s).div_floor(&self.c)
    }
}

fn int_sign(x: &BigInt) -> i8 {
    match x.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// `floor(b * sqrt(d))` for `b != 0` and non-square `d`.
fn floor_sqrt_part(b: &BigInt, d: u64) -> BigInt {
    debug_assert!(!b.is_zero());
    let s = (b * b * BigInt::from(d)).sqrt();
    if b.is_positive() {
        s
    } else {
        -s - 1
    }
}

/// Checks that `d` is a valid radicand: at least 2, squarefree, and not a
/// perfect square (squarefree already excludes squares other than 1).
pub fn validate_radicand(d: u64) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidRadicand(d));
    }
    let mut p = 2u64;
    while p * p <= d {
        if d % (p * p) == 0 {
            return Err(Error::InvalidRadicand(d));
        }
        p += 1;
    }
    Ok(())
}

/// Canonicalizes a raw `(a + b*sqrt(d))/c` triple. The caller guarantees
/// `c != 0` and a validated `d`; the result collapses to a rational when the
/// irrational part cancels.
pub(super) fn normalize(
    mut a: BigInt,
    mut b: BigInt,
    mut c: BigInt,
    d: u64,
) -> super::ExactNumber {
    debug_assert!(!c.is_zero());
    if c.is_negative() {
        a = -a;
        b = -b;
        c = -c;
    }
    if b.is_zero() {
        return super::ExactNumber::Rational(num_rational::BigRational::new(a, c));
    }
    let g = a.gcd(&b).gcd(&c);
    super::ExactNumber::Quadratic(QuadraticElement {
        a: a / &g,
        b: b / &g,
        c: c / g,
        d,
    })
}
