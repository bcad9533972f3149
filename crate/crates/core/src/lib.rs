//! Exact-arithmetic toolkit for the negative slope algorithm: the piecewise
//! projective map on the unit square, its digit sequences and unimodular
//! matrix convergents, and the rank-3 ordered group built from a
//! non-stopping orbit, with finite positivity witnesses.
//!
//! Every computation is exact — arbitrary-precision integers, rationals, and
//! real quadratic irrationals — so each structural identity is checked as an
//! equality, never to a tolerance.

pub mod convergents;
pub mod dimension_group;
pub mod error;
pub mod exact;
pub mod formats;
pub mod nsa;
pub mod reference;

pub use convergents::{
    accumulate, check_admissible_tail, cylinder, digit_matrix, digit_matrix_inverse,
    projective_apply, reconstruct, Accumulator, ConvergentMatrix, CylinderApprox, Mat3,
    TailAdmissibility,
};
pub use dimension_group::{ConeDecision, ConeWitness, GeneratorReport, ThetaContext, Vec3};
pub use error::{Error, Result};
pub use exact::{ExactNumber, QuadraticElement};
pub use nsa::{
    classify, classify_stop, expand, step, Classification, Digit, OrbitRecord, OrbitStatus,
    Point, StopLine, StopReason,
};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
