//! The rank-3 ordered group attached to a non-stopping orbit: stage maps
//! `theta_k` and their inverses, exact positive-cone membership with finite
//! stage witnesses, generator positivity, and orbit recovery from cofactors.
//!
//! The inductive limit itself is never materialized; group elements are
//! always handled through the stage matrices, which carry all of the
//! computable structure.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::convergents::{digit_matrix_inverse, Accumulator, ConvergentMatrix, Mat3};
use crate::error::{Error, Result};
use crate::exact::ExactNumber;
use crate::nsa::{classify, step, Classification, Point};

/// An element of the free rank-3 module.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vec3(pub [BigInt; 3]);

impl Vec3 {
    pub fn new(v: [impl Into<BigInt>; 3]) -> Self {
        Vec3(v.map(Into::into))
    }

    pub fn zero() -> Self {
        Vec3::new([0, 0, 0])
    }

    /// Standard basis vector, `i` in `0..3`.
    pub fn basis(i: usize) -> Self {
        let mut v = Self::zero();
        v.0[i] = BigInt::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    pub fn add(&self, rhs: &Vec3) -> Vec3 {
        Vec3([&self.0[0] + &rhs.0[0], &self.0[1] + &rhs.0[1], &self.0[2] + &rhs.0[2]])
    }

    pub fn scale(&self, n: impl Into<BigInt>) -> Vec3 {
        let n = n.into();
        Vec3(self.0.each_ref().map(|c| c * &n))
    }

    pub fn neg(&self) -> Vec3 {
        Vec3(self.0.each_ref().map(|c| -c))
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.0[0], self.0[1], self.0[2])
    }
}

impl FromStr for Vec3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected `v1,v2,v3`, got {s:?}")));
        }
        let mut v = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
        for (slot, part) in v.iter_mut().zip(&parts) {
            *slot = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("expected an integer component in {s:?}")))?;
        }
        Ok(Vec3(v))
    }
}

/// Witness attached to a positive cone decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeWitness {
    /// The zero vector is in the cone by definition.
    ZeroVector,
    /// `image = psi_k^T v` is component-wise non-negative at stage `k` (and
    /// stays so at every later stage).
    Stage { k: usize, image: Vec3 },
}

/// Outcome of an exact positive-cone membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeDecision {
    InCone(ConeWitness),
    OutCone,
    /// The linear form vanishes on a nonzero vector: the strict-positivity
    /// cone excludes it, but the degeneracy is worth surfacing because it
    /// signals a rational dependence of `1, alpha, beta`.
    BoundaryNonzero,
    /// The form is positive but no stage up to the cap certifies it; the cap
    /// was too small.
    Undecided { cap: usize },
}

/// Exact values and verdicts from one generator-positivity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorReport {
    pub k: usize,
    /// Pairings of `(alpha, beta, 1)` with the three generator images.
    pub pairings: [ExactNumber; 3],
    /// All three pairings are strictly positive.
    pub signs_positive: bool,
    /// Closed form of the third pairing: `1/(q2 (alpha_k + beta_k) + q3)`.
    pub closed_form: ExactNumber,
    /// The third pairing equals the closed form exactly.
    pub identity_holds: bool,
}

impl GeneratorReport {
    pub fn passed(&self) -> bool {
        self.signs_positive && self.identity_holds
    }
}

/// A base point with a precomputed non-stopping orbit of `cap` digits, the
/// checkpointed convergent products, and stage-indexed queries against them.
///
/// Immutable after construction; queries are read-only.
#[derive(Debug, Clone)]
pub struct ThetaContext {
    base: Point,
    /// `orbit[k]` is the k-th image of the base point, `k <= cap`.
    orbit: Vec<Point>,
    acc: Accumulator,
    cap: usize,
}

impl ThetaContext {
    /// Expands the base orbit for `cap` digits, failing if it stops first.
    pub fn new(base: Point, cap: usize) -> Result<Self> {
        Self::with_stride(base, cap, 1)
    }

    /// As [`ThetaContext::new`] with an explicit checkpoint stride.
    pub fn with_stride(base: Point, cap: usize, stride: usize) -> Result<Self> {
        let mut orbit = vec![base.clone()];
        let mut acc = Accumulator::with_stride(stride);
        for k in 0..cap {
            let current = orbit.last().expect("orbit nonempty");
            match classify(current) {
                Classification::Boundary(_) => return Err(Error::BasePointStops { at: k }),
                Classification::Interior { .. } => {
                    let (d, next) = step(current).expect("interior point steps");
                    acc.push(d);
                    orbit.push(next);
                }
            }
        }
        Ok(ThetaContext {
            base,
            orbit,
            acc,
            cap,
        })
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// The k-th orbit point, `k <= cap`.
    pub fn orbit_point(&self, k: usize) -> Result<&Point> {
        self.orbit.get(k).ok_or(Error::KOutOfRange { k, cap: self.cap })
    }

    /// The convergent product for the first `k` digits of the orbit.
    pub fn psi(&self, k: usize) -> Result<ConvergentMatrix> {
        if k > self.cap {
            return Err(Error::KOutOfRange { k, cap: self.cap });
        }
        self.acc.psi(k)
    }

    /// The inverse stage map: multiplication by the transposed product,
    /// `v -> psi_k^T v`. Row-wise dot products with the named rows.
    pub fn theta_inverse(&self, k: usize, v: &Vec3) -> Result<Vec3> {
        let psi = self.psi(k)?;
        Ok(Vec3(psi.mat().transpose().mul_vec(&v.0)))
    }

    /// The stage map `v -> (psi_k^{-1})^T v`, computed exactly through
    /// cofactors (the product has determinant one, so the inverse is the
    /// adjugate). Inverse to [`ThetaContext::theta_inverse`] at the same `k`.
    pub fn theta(&self, k: usize, v: &Vec3) -> Result<Vec3> {
        Ok(Vec3(self.theta_matrix(k)?.mul_vec(&v.0)))
    }

    /// Matrix of the stage map: the cofactor matrix of the stage product.
    pub fn theta_matrix(&self, k: usize) -> Result<Mat3> {
        let psi = self.psi(k)?;
        debug_assert!(psi.mat().determinant().is_one());
        Ok(psi.mat().cofactor())
    }

    /// The exact linear form `alpha v1 + beta v2 + v3`.
    pub fn linear_form(&self, v: &Vec3) -> ExactNumber {
        pair_with_columns(self.base.x(), self.base.y(), &v.0)
    }

    /// Exact positive-cone membership of `v`, with a stage witness when the
    /// form is positive: the smallest `k <= cap` at which `psi_k^T v` is
    /// component-wise non-negative. The transposed inverse digit matrices
    /// are non-negative, so once a stage witnesses the vector every later
    /// stage does too, and the search maintains `psi_k^T v` incrementally
    /// with one matrix-vector product per stage.
    pub fn cone_decide(&self, v: &Vec3) -> ConeDecision {
        if v.is_zero() {
            return ConeDecision::InCone(ConeWitness::ZeroVector);
        }
        match self.linear_form(v).sign() {
            -1 => ConeDecision::OutCone,
            0 => ConeDecision::BoundaryNonzero,
            _ => {
                let mut image = v.clone();
                for k in 0..=self.cap {
                    if image.is_nonnegative() {
                        return ConeDecision::InCone(ConeWitness::Stage { k, image });
                    }
                    if k < self.cap {
                        let t = digit_matrix_inverse(&self.acc.digits()[k]).transpose();
                        image = Vec3(t.mul_vec(&image.0));
                    }
                }
                ConeDecision::Undecided { cap: self.cap }
            }
        }
    }

    /// Pairs `(alpha, beta, 1)` with the three generator images at stage `k`
    /// and checks, exactly: strict positivity of all three pairings, and the
    /// closed form `1/(q2 (alpha_k + beta_k) + q3)` for the third.
    pub fn generator_check(&self, k: usize) -> Result<GeneratorReport> {
        let theta = self.theta_matrix(k)?;
        let pairings = [0, 1, 2].map(|i| {
            let col = [
                theta.entry(0, i).clone(),
                theta.entry(1, i).clone(),
                theta.entry(2, i).clone(),
            ];
            pair_with_columns(self.base.x(), self.base.y(), &col)
        });
        let signs_positive = pairings.iter().all(|v| v.sign() > 0);

        let psi = self.psi(k)?;
        let pk = self.orbit_point(k)?;
        let denom = &(&ExactNumber::integer(psi.q(1).clone()) * &(pk.x() + pk.y()))
            + &ExactNumber::integer(psi.q(2).clone());
        let closed_form = ExactNumber::one().checked_div(&denom)?;
        let identity_holds = pairings[2] == closed_form;
        Ok(GeneratorReport {
            k,
            pairings,
            signs_positive,
            closed_form,
            identity_holds,
        })
    }

    /// Recovers the k-th orbit point from the stage matrix alone: the
    /// pairings of `(alpha, beta, 1)` with the three generator images form
    /// the homogeneous coordinates of the k-th image.
    pub fn recover_orbit_point(&self, k: usize) -> Result<Point> {
        let theta = self.theta_matrix(k)?;
        let col = |i: usize| {
            [
                theta.entry(0, i).clone(),
                theta.entry(1, i).clone(),
                theta.entry(2, i).clone(),
            ]
        };
        let num_x = pair_with_columns(self.base.x(), self.base.y(), &col(0));
        let num_y = pair_with_columns(self.base.x(), self.base.y(), &col(1));
        let den = pair_with_columns(self.base.x(), self.base.y(), &col(2));
        if den.is_zero() {
            return Err(Error::DegenerateDenominator { k });
        }
        Point::new(num_x.checked_div(&den)?, num_y.checked_div(&den)?)
    }

    /// Verifies the stage compatibility `theta_k = theta_{k+1} ∘ A_{k+1}`
    /// as an exact matrix identity, with `A_{k+1}` the transposed inverse
    /// digit matrix of the (k+1)-th digit.
    pub fn prop21_check(&self, k: usize) -> Result<bool> {
        if k + 1 > self.cap {
            return Err(Error::KOutOfRange { k: k + 1, cap: self.cap });
        }
        let lhs = self.theta_matrix(k)?;
        let transition = digit_matrix_inverse(&self.acc.digits()[k]).transpose();
        let rhs = self.theta_matrix(k + 1)?.mul(&transition);
        Ok(lhs == rhs)
    }
}

/// `(alpha, beta, 1) . (c1, c2, c3)` in the exact scalar field.
fn pair_with_columns(alpha: &ExactNumber, beta: &ExactNumber, col: &[BigInt; 3]) -> ExactNumber {
    let term = |s: &ExactNumber, c: &BigInt| s * &ExactNumber::integer(c.clone());
    &(&term(alpha, &col[0]) + &term(beta, &col[1])) + &ExactNumber::integer(col[2].clone())
}
