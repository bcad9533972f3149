//! Exact scalar arithmetic: arbitrary-precision rationals and real
//! quadratic-field elements behind one tagged union.
//!
//! Every algorithmic path in this crate computes on [`ExactNumber`]; there is
//! no floating point anywhere. All quadratic values inside one computation
//! share a single radicand `d`; mixing radicands is an internal invariant
//! violation and panics, while the public construction points (parsers,
//! [`crate::nsa::Point::new`]) report it as an error instead.

mod parse;
mod quadratic;

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use quadratic::{validate_radicand, QuadraticElement};

/// An exact rational number or real quadratic irrational.
///
/// Values are immutable and canonical: rationals are reduced with a positive
/// denominator, quadratic elements satisfy the [`QuadraticElement`] invariants.
/// Equality, ordering and hashing agree with the represented real value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExactNumber {
    Rational(BigRational),
    Quadratic(QuadraticElement),
}

impl ExactNumber {
    pub fn zero() -> Self {
        ExactNumber::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactNumber::Rational(BigRational::one())
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        ExactNumber::Rational(BigRational::from_integer(n.into()))
    }

    /// Exact fraction `numer / denom`; the denominator must be nonzero.
    pub fn ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let d = denom.into();
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactNumber::Rational(BigRational::new(numer.into(), d)))
    }

    /// Exact quadratic value `(a + b*sqrt(d))/c`; `c` must be nonzero and `d`
    /// a squarefree integer `>= 2`. Collapses to a rational when `b = 0`.
    pub fn quadratic(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: u64,
    ) -> Result<Self> {
        validate_radicand(d)?;
        let c = c.into();
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(quadratic::normalize(a.into(), b.into(), c, d))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactNumber::Rational(r) => r.is_zero(),
            ExactNumber::Quadratic(_) => false,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, ExactNumber::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactNumber::Rational(r) => Some(r),
            ExactNumber::Quadratic(_) => None,
        }
    }

    /// The radicand, if this value is irrational.
    pub fn radicand(&self) -> Option<u64> {
        match self {
            ExactNumber::Rational(_) => None,
            ExactNumber::Quadratic(q) => Some(q.radicand()),
        }
    }

    /// Exact sign in `{-1, 0, +1}`.
    pub fn sign(&self) -> i8 {
        match self {
            ExactNumber::Rational(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            ExactNumber::Quadratic(q) => q.sign(),
        }
    }

    /// The unique integer `f` with `f <= self < f + 1`.
    pub fn floor(&self) -> BigInt {
        match self {
            ExactNumber::Rational(r) => r.floor().to_integer(),
            ExactNumber::Quadratic(q) => q.floor(),
        }
    }

    /// Fractional part `self - floor(self)`, always in `[0, 1)`.
    pub fn fract(&self) -> Self {
        self - &ExactNumber::integer(self.floor())
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact division; division by zero is reported, not panicked.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self, rhs) {
            (ExactNumber::Rational(x), ExactNumber::Rational(y)) => {
                Ok(ExactNumber::Rational(x / y))
            }
            _ => {
                let d = self.common_radicand(rhs);
                let (a2, b2, c2) = rhs.parts(d);
                // 1/((a + b*sqrt(d))/c) = c*(a - b*sqrt(d)) / (a^2 - b^2 d),
                // nonzero since d is irrational and rhs != 0.
                let norm = &a2 * &a2 - &b2 * &b2 * BigInt::from(d);
                let recip = (&c2 * &a2, -(&c2 * &b2), norm);
                let (a1, b1, c1) = self.parts(d);
                let a = &a1 * &recip.0 + &b1 * &recip.1 * BigInt::from(d);
                let b = &a1 * &recip.1 + &b1 * &recip.0;
                Ok(quadratic::normalize(a, b, c1 * recip.2, d))
            }
        }
    }

    /// Correctly rounded decimal expansion with `digits >= 1` fractional
    /// digits (round half away from zero).
    pub fn to_decimal(&self, digits: usize) -> String {
        assert!(digits >= 1, "to_decimal requires at least one digit");
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = self * &ExactNumber::integer(scale.clone());
        let negative = scaled.sign() < 0;
        let half_up = &scaled.abs() + &ExactNumber::Rational(BigRational::new(1.into(), 2.into()));
        let rounded = half_up.floor();
        let (int_part, frac_part) = rounded.div_rem(&scale);
        let sign = if negative && !rounded.is_zero() { "-" } else { "" };
        format!(
            "{sign}{int_part}.{frac:0>width$}",
            frac = frac_part.to_string(),
            width = digits
        )
    }

    /// Radicand shared with `rhs`; panics if both sides are irrational with
    /// different radicands.
    fn common_radicand(&self, rhs: &Self) -> u64 {
        match (self.radicand(), rhs.radicand()) {
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "mixed radicands sqrt({a}) and sqrt({b}) in one computation");
                a
            }
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!("rational-only case handled by the caller"),
        }
    }

    /// Raw `(a, b, c)` parts over the field with radicand `d`.
    fn parts(&self, d: u64) -> (BigInt, BigInt, BigInt) {
        match self {
            ExactNumber::Rational(r) => (r.numer().clone(), BigInt::zero(), r.denom().clone()),
            ExactNumber::Quadratic(q) => {
                assert_eq!(q.radicand(), d, "mixed radicands in one computation");
                (q.a().clone(), q.b().clone(), q.c().clone())
            }
        }
    }
}

impl From<BigRational> for ExactNumber {
    fn from(r: BigRational) -> Self {
        ExactNumber::Rational(r)
    }
}

impl From<BigInt> for ExactNumber {
    fn from(n: BigInt) -> Self {
        ExactNumber::integer(n)
    }
}

impl From<i64> for ExactNumber {
    fn from(n: i64) -> Self {
        ExactNumber::integer(n)
    }
}

impl Add for &ExactNumber {
    type Output = ExactNumber;

    fn add(self, rhs: Self) -> ExactNumber {
        match (self, rhs) {
            (ExactNumber::Rational(x), ExactNumber::Rational(y)) => ExactNumber::Rational(x + y),
            _ => {
                let d = self.common_radicand(rhs);
                let (a1, b1, c1) = self.parts(d);
                let (a2, b2, c2) = rhs.parts(d);
                quadratic::normalize(&a1 * &c2 + &a2 * &c1, &b1 * &c2 + &b2 * &c1, c1 * c2, d)
            }
        }
    }
}

impl Sub for &ExactNumber {
    type Output = ExactNumber;

    fn sub(self, rhs: Self) -> ExactNumber {
        self + &(-rhs)
    }
}

impl Mul for &ExactNumber {
    type Output = ExactNumber;

    fn mul(self, rhs: Self) -> ExactNumber {
        match (self, rhs) {
            (ExactNumber::Rational(x), ExactNumber::Rational(y)) => ExactNumber::Rational(x * y),
            _ => {
                let d = self.common_radicand(rhs);
                let (a1, b1, c1) = self.parts(d);
                let (a2, b2, c2) = rhs.parts(d);
                let a = &a1 * &a2 + &b1 * &b2 * BigInt::from(d);
                let b = &a1 * &b2 + &a2 * &b1;
                quadratic::normalize(a, b, c1 * c2, d)
            }
        }
    }
}

impl Neg for &ExactNumber {
    type Output = ExactNumber;

    fn neg(self) -> ExactNumber {
        match self {
            ExactNumber::Rational(r) => ExactNumber::Rational(-r),
            ExactNumber::Quadratic(q) => quadratic::normalize(
                -q.a().clone(),
                -q.b().clone(),
                q.c().clone(),
                q.radicand(),
            ),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactNumber {
            type Output = ExactNumber;
            fn $method(self, rhs: Self) -> ExactNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for ExactNumber {
    type Output = ExactNumber;
    fn neg(self) -> ExactNumber {
        -&self
    }
}

impl PartialOrd for ExactNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExactNumber::Rational(x), ExactNumber::Rational(y)) => x.cmp(y),
            _ => match (self - other).sign() {
                -1 => Ordering::Less,
                0 => Ordering::Equal,
                _ => Ordering::Greater,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: i64, b: i64, c: i64, d: u64) -> ExactNumber {
        ExactNumber::quadratic(a, b, c, d).unwrap()
    }

    fn r(n: i64, d: i64) -> ExactNumber {
        ExactNumber::ratio(n, d).unwrap()
    }

    #[test]
    fn floor_examples() {
        assert_eq!(r(7, 2).floor(), BigInt::from(3));
        // 1 < sqrt(2) < 2
        assert_eq!(q(0, 1, 1, 2).floor(), BigInt::from(1));
        // 2 < sqrt(5) < 3, so 1/4 < (-3 + 2 sqrt(5))/4 < 3/4.
        assert_eq!(q(-3, 2, 4, 5).floor(), BigInt::from(0));
    }

    #[test]
    fn floor_negative_values() {
        assert_eq!(r(-7, 2).floor(), BigInt::from(-4));
        assert_eq!(q(0, -1, 1, 2).floor(), BigInt::from(-2));
        assert_eq!(q(1, -1, 1, 2).floor(), BigInt::from(-1));
        assert_eq!(r(-4, 2).floor(), BigInt::from(-2));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(ExactNumber::zero().sign(), 0);
        assert_eq!(q(1, -1, 1, 2).sign(), -1);
        // 16 < 9*2, so -4 + 3 sqrt(2) > 0.
        assert_eq!(q(-4, 3, 5, 2).sign(), 1);
    }

    #[test]
    fn to_decimal_examples() {
        assert_eq!(r(1, 3).to_decimal(4), "0.3333");
        // isqrt(2 * 10^10) = 141421
        assert_eq!(q(0, 1, 1, 2).to_decimal(5), "1.41421");
        assert_eq!(r(-1, 2).to_decimal(1), "-0.5");
        assert_eq!(r(2, 3).to_decimal(1), "0.7");
        assert_eq!(r(1, 4).to_decimal(1), "0.3");
        assert_eq!(r(-1, 40000).to_decimal(2), "0.00");
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(
            ExactNumber::one().checked_div(&ExactNumber::zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(ExactNumber::ratio(1, 0), Err(Error::DivisionByZero));
    }

    #[test]
    fn invalid_radicands_rejected() {
        for d in [0, 1, 4, 9, 12, 18] {
            assert_eq!(
                ExactNumber::quadratic(1, 1, 1, d),
                Err(Error::InvalidRadicand(d))
            );
        }
        for d in [2, 3, 5, 6, 7, 10, 2026] {
            assert!(ExactNumber::quadratic(1, 1, 1, d).is_ok());
        }
    }

    #[test]
    fn quadratic_collapses_to_rational() {
        assert_eq!(q(3, 0, 6, 2), r(1, 2));
        let x = q(1, 2, 3, 5);
        let y = q(1, -2, 3, 5);
        assert!((&x + &y).is_rational());
        assert_eq!(&x + &y, r(2, 3));
        // (1 + 2 sqrt5)(1 - 2 sqrt5) = 1 - 20 = -19 over 9
        assert_eq!(&x * &y, r(-19, 9));
    }

    #[test]
    #[should_panic(expected = "mixed radicands")]
    fn mixed_radicands_panic() {
        let _ = &q(0, 1, 1, 2) + &q(0, 1, 1, 3);
    }

    fn arb_rational() -> impl Strategy<Value = ExactNumber> {
        (-200i64..=200, 1i64..=60).prop_map(|(n, d)| r(n, d))
    }

    fn arb_quadratic() -> impl Strategy<Value = ExactNumber> {
        (-30i64..=30, -10i64..=10, 1i64..=20, prop_oneof![Just(2u64), Just(3), Just(5)])
            .prop_map(|(a, b, c, d)| q(a, b, c, d))
    }

    fn arb_exact(d: u64) -> impl Strategy<Value = ExactNumber> {
        (-30i64..=30, -10i64..=10, 1i64..=20)
            .prop_map(move |(a, b, c)| q(a, b, c, d))
            .prop_union(arb_rational().boxed())
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_exact(2), y in arb_exact(2)) {
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                let prod = &x * &y;
                prop_assert_eq!(prod.checked_div(&y).unwrap(), x);
            }
        }

        #[test]
        fn floor_bracket(x in arb_exact(3)) {
            let f = ExactNumber::integer(x.floor());
            prop_assert!(f <= x);
            prop_assert!(x < &f + &ExactNumber::one());
            let fr = x.fract();
            prop_assert!(fr.sign() >= 0);
            prop_assert!(fr < ExactNumber::one());
        }

        #[test]
        fn trichotomy_and_transitivity(
            x in arb_exact(5), y in arb_exact(5), z in arb_exact(5)
        ) {
            let lt = x < y;
            let eq = x == y;
            let gt = x > y;
            prop_assert_eq!(1, lt as u8 + eq as u8 + gt as u8);
            if x <= y && y <= z {
                prop_assert!(x <= z);
            }
        }

        #[test]
        fn quadratic_sign_matches_float(x in arb_quadratic()) {
            if let ExactNumber::Quadratic(ref e) = x {
                let approx = (e.a().to_string().parse::<f64>().unwrap()
                    + e.b().to_string().parse::<f64>().unwrap()
                        * (e.radicand() as f64).sqrt())
                    / e.c().to_string().parse::<f64>().unwrap();
                if approx.abs() > 1e-9 {
                    prop_assert_eq!(x.sign() as f64, approx.signum());
                }
            }
        }
    }
}
