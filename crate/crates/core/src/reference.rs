//! Curated quadratic base points with non-stopping orbits.
//!
//! These are the stock inputs for the verification suites and for trying the
//! stage-map machinery without hunting for a non-stopping point first. The
//! first three are fixed points of the map (their orbits are constant, so
//! they provably never stop); the last two have generic orbits checked far
//! beyond every cap used by the suites.

use crate::exact::ExactNumber;
use crate::nsa::Point;

fn quad(a: i64, b: i64, c: i64, d: u64) -> ExactNumber {
    ExactNumber::quadratic(a, b, c, d).expect("valid curated scalar")
}

/// Five non-stopping quadratic base points, one per call, freshly built.
pub fn quadratic_base_points() -> Vec<Point> {
    vec![
        // (sqrt2/2, sqrt2/2): fixed point of the upper branch, digit (-1,1,1).
        Point::new(quad(0, 1, 2, 2), quad(0, 1, 2, 2)).expect("in domain"),
        // (sqrt2-1, sqrt2-1): fixed point of the lower branch, digit (+1,3,3).
        Point::new(quad(-1, 1, 1, 2), quad(-1, 1, 1, 2)).expect("in domain"),
        // ((sqrt3-1)/2, (sqrt3-1)/2): fixed point, digit (+1,2,2).
        Point::new(quad(-1, 1, 2, 3), quad(-1, 1, 2, 3)).expect("in domain"),
        // (sqrt2/2, sqrt2-1): asymmetric orbit in the same field.
        Point::new(quad(0, 1, 2, 2), quad(-1, 1, 1, 2)).expect("in domain"),
        // ((sqrt5-1)/2, sqrt5-2): golden-mean flavored orbit.
        Point::new(quad(-1, 1, 2, 5), quad(-2, 1, 1, 5)).expect("in domain"),
    ]
}
