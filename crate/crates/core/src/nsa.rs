//! The negative slope algorithm: the piecewise projective map on the unit
//! square, digit extraction, orbit expansion with exact stopping detection,
//! and stopping-line classification for rational points.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::ExactNumber;

/// A point of the unit square, the domain of the map. Both coordinates are
/// exact and lie in `[0, 1]`; quadratic coordinates share one radicand.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    x: ExactNumber,
    y: ExactNumber,
}

impl Point {
    pub fn new(x: ExactNumber, y: ExactNumber) -> Result<Self> {
        if let (Some(dx), Some(dy)) = (x.radicand(), y.radicand()) {
            if dx != dy {
                return Err(Error::RadicandMismatch(dx, dy));
            }
        }
        let zero = ExactNumber::zero();
        let one = ExactNumber::one();
        if x < zero || x > one || y < zero || y > one {
            return Err(Error::OutOfDomain {
                x: x.to_string(),
                y: y.to_string(),
            });
        }
        Ok(Point { x, y })
    }

    /// Construction for coordinates already known to lie in the domain.
    pub(crate) fn new_unchecked(x: ExactNumber, y: ExactNumber) -> Self {
        debug_assert!(Point::new(x.clone(), y.clone()).is_ok());
        Point { x, y }
    }

    pub fn x(&self) -> &ExactNumber {
        &self.x
    }

    pub fn y(&self) -> &ExactNumber {
        &self.y
    }

    /// True when either coordinate is a quadratic irrational.
    pub fn is_quadratic(&self) -> bool {
        !self.x.is_rational() || !self.y.is_rational()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (xs, ys) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected `x,y` pair, got {s:?}")))?;
        Point::new(xs.parse()?, ys.parse()?)
    }
}

/// Which part of the boundary stopped the orbit. When several conditions
/// hold at once the precedence is `XZero`, then `YZero`, then `AntiDiagonal`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StopReason {
    XZero,
    YZero,
    AntiDiagonal,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StopReason::XZero => "x = 0",
            StopReason::YZero => "y = 0",
            StopReason::AntiDiagonal => "x + y = 1",
        })
    }
}

/// Exact classification of a point: a boundary point stops the orbit, an
/// interior point selects the sign branch of the map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Interior { eps: i8 },
    Boundary(StopReason),
}

/// One step's output `(eps, n, m)` with `eps = ±1` and `n, m >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digit {
    eps: i8,
    n: BigInt,
    m: BigInt,
}

impl Digit {
    pub fn new(eps: i8, n: impl Into<BigInt>, m: impl Into<BigInt>) -> Result<Self> {
        let (n, m) = (n.into(), m.into());
        if (eps != 1 && eps != -1) || n < BigInt::one() || m < BigInt::one() {
            return Err(Error::InvalidDigit);
        }
        Ok(Digit { eps, n, m })
    }

    pub fn eps(&self) -> i8 {
        self.eps
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:+}, {}, {})", self.eps, self.n, self.m)
    }
}

/// How an orbit expansion ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitStatus {
    /// A boundary point was reached after `at` steps.
    Stopped { at: usize, reason: StopReason },
    /// The step budget ran out with the orbit still in the interior.
    Truncated { max_steps: usize },
    /// An exact recurrence: `points[preperiod] = points[preperiod + period]`.
    Periodic { preperiod: usize, period: usize },
}

/// A digit sequence together with the exact orbit that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord {
    pub digits: Vec<Digit>,
    /// `points[k]` is the k-th image of the input; `points[0]` is the input.
    pub points: Vec<Point>,
    pub status: OrbitStatus,
}

impl OrbitRecord {
    pub fn input(&self) -> &Point {
        &self.points[0]
    }
}

/// Exact boundary test and branch selection.
pub fn classify(p: &Point) -> Classification {
    if p.x.is_zero() {
        return Classification::Boundary(StopReason::XZero);
    }
    if p.y.is_zero() {
        return Classification::Boundary(StopReason::YZero);
    }
    let sum = &p.x + &p.y;
    match sum.cmp(&ExactNumber::one()) {
        std::cmp::Ordering::Equal => Classification::Boundary(StopReason::AntiDiagonal),
        std::cmp::Ordering::Greater => Classification::Interior { eps: -1 },
        std::cmp::Ordering::Less => Classification::Interior { eps: 1 },
    }
}

/// One step of the map on an interior point: extracts the digit
/// `(eps, n, m)` and returns the image point (the two fractional parts).
///
/// For `x + y > 1` the quotients are `y/((x+y)-1)` and `x/((x+y)-1)`; for
/// `x + y < 1` they are `(1-y)/(1-(x+y))` and `(1-x)/(1-(x+y))`. Both
/// quotients are at least 1 on the domain, so `n, m >= 1` always.
pub fn step(p: &Point) -> Result<(Digit, Point)> {
    let eps = match classify(p) {
        Classification::Boundary(reason) => return Err(Error::BoundaryPoint(reason)),
        Classification::Interior { eps } => eps,
    };
    let one = ExactNumber::one();
    let sum = &p.x + &p.y;
    let (num_x, num_y, den) = if eps == -1 {
        (p.y.clone(), p.x.clone(), &sum - &one)
    } else {
        (&one - &p.y, &one - &p.x, &one - &sum)
    };
    let qx = num_x.checked_div(&den).expect("denominator nonzero off the antidiagonal");
    let qy = num_y.checked_div(&den).expect("denominator nonzero off the antidiagonal");
    let n = qx.floor();
    let m = qy.floor();
    let image = Point::new_unchecked(qx.fract(), qy.fract());
    Ok((Digit::new(eps, n, m)?, image))
}

/// Iterates the map, recording digits and the exact orbit, until the orbit
/// stops on the boundary, `max_steps` digits have been produced, or — with
/// `detect_period` set and quadratic coordinates — an exact point recurs.
///
/// Period detection is skipped for rational inputs, whose orbits always stop.
pub fn expand(p: &Point, max_steps: usize, detect_period: bool) -> OrbitRecord {
    let track_period = detect_period && p.is_quadratic();
    let mut digits = Vec::new();
    let mut points = vec![p.clone()];
    let mut seen: HashMap<Point, usize> = HashMap::new();
    if track_period {
        seen.insert(p.clone(), 0);
    }
    loop {
        let current = points.last().expect("orbit is nonempty");
        match classify(current) {
            Classification::Boundary(reason) => {
                let at = points.len() - 1;
                return OrbitRecord {
                    digits,
                    points,
                    status: OrbitStatus::Stopped { at, reason },
                };
            }
            Classification::Interior { .. } => {
                if digits.len() == max_steps {
                    return OrbitRecord {
                        digits,
                        points,
                        status: OrbitStatus::Truncated { max_steps },
                    };
                }
                let (digit, next) = step(current).expect("interior point steps");
                digits.push(digit);
                let index = points.len();
                if track_period {
                    if let Some(&first) = seen.get(&next) {
                        points.push(next);
                        return OrbitRecord {
                            digits,
                            points,
                            status: OrbitStatus::Periodic {
                                preperiod: first,
                                period: index - first,
                            },
                        };
                    }
                    seen.insert(next.clone(), index);
                }
                points.push(next);
            }
        }
    }
}

/// A stopping line through a rational point: one of the three families
/// `(p+1)x + py = q`, `px + (p+1)y = q`, `px + py = q` with `0 <= q <= 2p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StopLine {
    PlusX { p: BigInt, q: BigInt },
    PlusY { p: BigInt, q: BigInt },
    Sym { p: BigInt, q: BigInt },
}

impl fmt::Display for StopLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StopLine::PlusX { p, q } => write!(f, "({}+1)x + {}y = {}", p, p, q),
            StopLine::PlusY { p, q } => write!(f, "{}x + ({}+1)y = {}", p, p, q),
            StopLine::Sym { p, q } => write!(f, "{}x + {}y = {}", p, p, q),
        }
    }
}

/// Finds, for each of the three line families, the minimal `p` (searched up
/// to the least common denominator of the coordinates) such that the point
/// satisfies the family's equation with an integer `0 <= q <= 2p`. The
/// all-zero instance `0x + 0y = 0` of the symmetric family is vacuous and
/// excluded, so its search starts at `p = 1`.
pub fn classify_stop(point: &Point) -> Result<Vec<StopLine>> {
    let x = point.x.as_rational().ok_or(Error::NotRational)?;
    let y = point.y.as_rational().ok_or(Error::NotRational)?;
    let l = x.denom().lcm(y.denom());
    // Numerators rescaled to the common denominator: x = u/l, y = v/l.
    let u = x.numer() * (&l / x.denom());
    let v = y.numer() * (&l / y.denom());
    let s = &u + &v;

    let mut lines = Vec::new();
    if let Some((p, q)) = minimal_line(&s, &u, &l, BigInt::zero()) {
        lines.push(StopLine::PlusX { p, q });
    }
    if let Some((p, q)) = minimal_line(&s, &v, &l, BigInt::zero()) {
        lines.push(StopLine::PlusY { p, q });
    }
    if let Some((p, q)) = minimal_line(&s, &BigInt::zero(), &l, BigInt::one()) {
        lines.push(StopLine::Sym { p, q });
    }
    Ok(lines)
}

/// Minimal `p` in `[start, l]` with `s*p + offset ≡ 0 (mod l)` and
/// `q = (s*p + offset)/l <= 2p`, solved as a linear congruence rather than a
/// scan. `s`, `offset`, `l` are non-negative and `l >= 1`.
fn minimal_line(
    s: &BigInt,
    offset: &BigInt,
    l: &BigInt,
    start: BigInt,
) -> Option<(BigInt, BigInt)> {
    let s_mod = s.mod_floor(l);
    let g = s_mod.gcd(l);
    if !(offset % &g).is_zero() {
        return None;
    }
    // Solutions form the class p ≡ p0 (mod l/g).
    let modulus = l / &g;
    let mut p = if modulus.is_one() {
        start.clone()
    } else {
        let inv = (s_mod / &g)
            .extended_gcd(&modulus)
            .x
            .mod_floor(&modulus);
        let base = ((-offset / &g).mod_floor(&modulus) * inv).mod_floor(&modulus);
        if base < start {
            // First representative of the class at or above `start`.
            base + &modulus * (&start - &base + &modulus - BigInt::one()).div_floor(&modulus)
        } else {
            base
        }
    };
    while p <= *l {
        let q = (s * &p + offset) / l;
        if q <= 2 * &p {
            return Some((p, q));
        }
        p += &modulus;
    }
    None
}
