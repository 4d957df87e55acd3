use affprox::envelope::{EnvelopeValue, GapCertificate};
use affprox::scalar::Scalar;
use affprox::{BestApproximation, Point};
use serde::{Deserialize, Serialize};

use crate::format::{from_scalars, FunctionalSpec, Rational, Vector};

fn point(p: &Point) -> Vector {
    from_scalars(p.coords())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapWitness {
    pub x: Vector,
    pub x_prime: Vector,
    pub y: Vector,
}

impl From<&GapCertificate> for GapWitness {
    fn from(cert: &GapCertificate) -> Self {
        GapWitness {
            x: point(&cert.x),
            x_prime: point(&cert.x_prime),
            y: point(&cert.y),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualEntry {
    pub generator: Vector,
    pub residual: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_us: u64,
}

/// Output of `solve`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub status: String,
    pub d: Rational,
    pub c: Rational,
    pub h0: FunctionalSpec,
    pub gap_witness: GapWitness,
    pub residuals: Vec<ResidualEntry>,
    pub timing: Timing,
}

impl SolutionReport {
    pub fn new(result: &BestApproximation, elapsed: std::time::Duration) -> Self {
        SolutionReport {
            status: "verified".into(),
            d: Rational(result.d.clone()),
            c: Rational(result.c.clone()),
            h0: FunctionalSpec::from(&result.h0),
            gap_witness: GapWitness::from(&result.gap_witness),
            residuals: result
                .residuals
                .iter()
                .map(|r| ResidualEntry {
                    generator: point(&r.generator),
                    residual: Rational(r.value.clone()),
                })
                .collect(),
            timing: Timing {
                elapsed_us: elapsed.as_micros().try_into().unwrap_or(u64::MAX),
            },
        }
    }
}

/// Output of `gap`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub c: Rational,
    pub gap_witness: GapWitness,
}

/// Output of `envelope`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopeReport {
    pub y: Vector,
    pub f_lower: Rational,
    pub f_upper: Rational,
    pub r: Rational,
    pub lower_witness: Vector,
    pub upper_witness: Vector,
}

impl EnvelopeReport {
    pub fn new(y: &Point, lower: &EnvelopeValue, upper: &EnvelopeValue) -> Self {
        EnvelopeReport {
            y: point(y),
            f_lower: Rational(lower.value.clone()),
            f_upper: Rational(upper.value.clone()),
            r: Rational(&upper.value - &lower.value),
            lower_witness: point(&lower.witness),
            upper_witness: point(&upper.witness),
        }
    }
}

/// Output of `check`: the norm of `f − h∘φ` against the lower bound `c/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub h: FunctionalSpec,
    pub norm: Rational,
    pub bound: Rational,
    /// `norm ≥ bound`; must always hold.
    pub holds: bool,
    /// `norm = bound`, i.e. `h` is a best approximation.
    pub optimal: bool,
}

/// Output of `oracle`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub depth: u32,
    /// Exact residual norm of the best grid candidate; an upper bound on `d`.
    pub d_upper: Rational,
    /// `d_upper` rounded for reading.
    pub d_decimal: String,
}

impl OracleReport {
    pub fn new(depth: u32, d_upper: Scalar) -> Self {
        let d_decimal = format!("{:.9}", affprox::scalar::to_f64(&d_upper));
        OracleReport {
            depth,
            d_upper: Rational(d_upper),
            d_decimal,
        }
    }
}
