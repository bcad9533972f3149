//! Wire and file formats: the digit-sequence file and the machine-readable
//! documents emitted for orbits, matrices, cylinders, and cone queries.
//!
//! Scalars travel as strings in the exact grammar; matrix and digit entries
//! as decimal strings, so arbitrary-precision values survive serialization.

use serde::{Deserialize, Serialize};

use crate::convergents::{ConvergentMatrix, CylinderApprox};
use crate::dimension_group::{ConeDecision, ConeWitness, Vec3};
use crate::error::{Error, Result};
use crate::nsa::{Digit, OrbitRecord, OrbitStatus, Point, StopReason};

/// Parses the digit-file format: one digit per line as `eps n m` with
/// `eps` written `+1` or `-1`. Blank lines are ignored.
pub fn parse_digits(text: &str) -> Result<Vec<Digit>> {
    let mut digits = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let err = |msg: &str| Error::Parse(format!("digit line {}: {msg}", lineno + 1));
        if fields.len() != 3 {
            return Err(err("expected `eps n m`"));
        }
        let eps = match fields[0] {
            "+1" => 1,
            "-1" => -1,
            other => return Err(err(&format!("eps must be +1 or -1, got {other}"))),
        };
        let n: num_bigint::BigInt = fields[1].parse().map_err(|_| err("n must be an integer"))?;
        let m: num_bigint::BigInt = fields[2].parse().map_err(|_| err("m must be an integer"))?;
        digits.push(Digit::new(eps, n, m).map_err(|_| err("n and m must be at least 1"))?);
    }
    Ok(digits)
}

/// Formats digits in the digit-file format (inverse of [`parse_digits`]).
pub fn format_digits(digits: &[Digit]) -> String {
    let mut out = String::new();
    for d in digits {
        out.push_str(&format!("{:+} {} {}\n", d.eps(), d.n(), d.m()));
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PointDoc {
    pub x: String,
    pub y: String,
}

impl From<&Point> for PointDoc {
    fn from(p: &Point) -> Self {
        PointDoc {
            x: p.x().to_string(),
            y: p.y().to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DigitDoc {
    pub eps: i8,
    pub n: String,
    pub m: String,
}

impl From<&Digit> for DigitDoc {
    fn from(d: &Digit) -> Self {
        DigitDoc {
            eps: d.eps(),
            n: d.n().to_string(),
            m: d.m().to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum StatusDoc {
    Stopped { at: usize, reason: String },
    Truncated { max_steps: usize },
    Periodic { preperiod: usize, period: usize },
}

pub fn stop_reason_tag(reason: StopReason) -> &'static str {
    match reason {
        StopReason::XZero => "x_zero",
        StopReason::YZero => "y_zero",
        StopReason::AntiDiagonal => "anti_diagonal",
    }
}

impl From<&OrbitStatus> for StatusDoc {
    fn from(s: &OrbitStatus) -> Self {
        match s {
            OrbitStatus::Stopped { at, reason } => StatusDoc::Stopped {
                at: *at,
                reason: stop_reason_tag(*reason).to_string(),
            },
            OrbitStatus::Truncated { max_steps } => StatusDoc::Truncated {
                max_steps: *max_steps,
            },
            OrbitStatus::Periodic { preperiod, period } => StatusDoc::Periodic {
                preperiod: *preperiod,
                period: *period,
            },
        }
    }
}

/// Machine-readable orbit document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct OrbitDoc {
    pub input: PointDoc,
    pub digits: Vec<DigitDoc>,
    pub status: StatusDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<PointDoc>>,
}

impl OrbitDoc {
    pub fn new(record: &OrbitRecord, include_points: bool) -> Self {
        OrbitDoc {
            input: record.input().into(),
            digits: record.digits.iter().map(Into::into).collect(),
            status: (&record.status).into(),
            points: include_points
                .then(|| record.points.iter().map(Into::into).collect()),
        }
    }
}

/// Matrix document: row-major integer triples plus length and running sign.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixDoc {
    pub k: usize,
    pub delta: i8,
    pub rows: [[String; 3]; 3],
}

impl From<&ConvergentMatrix> for MatrixDoc {
    fn from(m: &ConvergentMatrix) -> Self {
        MatrixDoc {
            k: m.len(),
            delta: m.delta(),
            rows: m.mat().rows().each_ref().map(|r| r.each_ref().map(|e| e.to_string())),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CylinderDoc {
    pub k: usize,
    pub vertices: [PointDoc; 4],
    pub diameter_bound: String,
}

impl CylinderDoc {
    pub fn new(k: usize, hull: &CylinderApprox) -> Self {
        CylinderDoc {
            k,
            vertices: hull.vertices.each_ref().map(Into::into),
            diameter_bound: hull.diameter_bound.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ReconstructDoc {
    pub k: usize,
    pub approx: PointDoc,
    pub error_bound: String,
}

/// Cone decision document, including the exact sign computation trace.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConeDoc {
    pub alpha: String,
    pub beta: String,
    pub v: [String; 3],
    pub cap: usize,
    pub decision: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_vector: Option<[String; 3]>,
    /// Exact value of `alpha v1 + beta v2 + v3` in the scalar grammar.
    pub form_value: String,
    pub form_sign: i8,
}

impl ConeDoc {
    pub fn new(
        alpha: &crate::exact::ExactNumber,
        beta: &crate::exact::ExactNumber,
        v: &Vec3,
        cap: usize,
        form_value: &crate::exact::ExactNumber,
        decision: &ConeDecision,
    ) -> Self {
        let (tag, witness_k, witness_vector) = match decision {
            ConeDecision::InCone(ConeWitness::ZeroVector) => ("in_cone", Some(0), Some(Vec3::zero())),
            ConeDecision::InCone(ConeWitness::Stage { k, image }) => {
                ("in_cone", Some(*k), Some(image.clone()))
            }
            ConeDecision::OutCone => ("out_cone", None, None),
            ConeDecision::BoundaryNonzero => ("boundary_nonzero", None, None),
            ConeDecision::Undecided { .. } => ("undecided", None, None),
        };
        ConeDoc {
            alpha: alpha.to_string(),
            beta: beta.to_string(),
            v: v.0.each_ref().map(|c| c.to_string()),
            cap,
            decision: tag.to_string(),
            witness_k,
            witness_vector: witness_vector.map(|w| w.0.each_ref().map(|c| c.to_string())),
            form_value: form_value.to_string(),
            form_sign: form_value.sign(),
        }
    }
}
