//! Exact-rational linear programming with checkable certificates.
//!
//! Programs have the general form
//!
//! ```text
//! min / max  c·x
//! s.t.       aᵢ·x  (≤ | = | ≥)  bᵢ
//!            lⱼ ≤ xⱼ ≤ uⱼ        (either bound may be absent)
//! ```
//!
//! Every outcome carries a certificate expressed in terms of the program as
//! written, not the solver's internal standard form:
//!
//! * `Optimal`: the primal point plus one dual multiplier per constraint row,
//!   in shadow-price convention (`∂value/∂bᵢ`). Bound multipliers are implied
//!   by the reduced costs `c − Aᵀy`.
//! * `Infeasible`: row multipliers `y` with `yᵢ ≥ 0` on `≥` rows and `yᵢ ≤ 0`
//!   on `≤` rows such that `max_{box} (Aᵀy)·x < y·b`.
//! * `Unbounded`: a feasible point and an improving recession direction.
//!
//! [`verify_certificate`] checks these with plain exact arithmetic and shares
//! nothing with the simplex code.

mod certificate;
mod simplex;

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use certificate::verify_certificate;
pub use simplex::solve_lp;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Scalar>,
    pub relation: Relation,
    pub rhs: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Scalar>,
    pub constraints: Vec<Constraint>,
    pub lower: Vec<Option<Scalar>>,
    pub upper: Vec<Option<Scalar>>,
}

impl LinearProgram {
    /// A program over `objective.len()` free variables with no constraints.
    pub fn new(sense: Sense, objective: Vec<Scalar>) -> Self {
        let n = objective.len();
        LinearProgram {
            sense,
            objective,
            constraints: Vec::new(),
            lower: vec![None; n],
            upper: vec![None; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn constrain(&mut self, coeffs: Vec<Scalar>, relation: Relation, rhs: Scalar) -> &mut Self {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    pub fn bound(&mut self, var: usize, lower: Option<Scalar>, upper: Option<Scalar>) -> &mut Self {
        self.lower[var] = lower;
        self.upper[var] = upper;
        self
    }

    pub fn nonnegative(&mut self, vars: std::ops::Range<usize>) -> &mut Self {
        for j in vars {
            self.lower[j] = Some(crate::scalar::int(0));
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if n == 0 {
            return Err(Error::MalformedProgram("no variables".into()));
        }
        if self.lower.len() != n || self.upper.len() != n {
            return Err(Error::MalformedProgram(format!(
                "bound vectors have lengths {}/{}, expected {n}",
                self.lower.len(),
                self.upper.len()
            )));
        }
        for (i, row) in self.constraints.iter().enumerate() {
            if row.coeffs.len() != n {
                return Err(Error::MalformedProgram(format!(
                    "constraint {i} has {} coefficients, expected {n}",
                    row.coeffs.len()
                )));
            }
        }
        for (j, (l, u)) in self.lower.iter().zip(&self.upper).enumerate() {
            if let (Some(l), Some(u)) = (l, u) {
                if l > u {
                    return Err(Error::MalformedProgram(format!(
                        "variable {j} has lower bound {l} above upper bound {u}"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        x: Vec<Scalar>,
        value: Scalar,
        dual: Vec<Scalar>,
    },
    Infeasible {
        farkas: Vec<Scalar>,
    },
    Unbounded {
        point: Vec<Scalar>,
        ray: Vec<Scalar>,
    },
}

impl LpOutcome {
    pub fn kind(&self) -> &'static str {
        match self {
            LpOutcome::Optimal { .. } => "optimal",
            LpOutcome::Infeasible { .. } => "infeasible",
            LpOutcome::Unbounded { .. } => "unbounded",
        }
    }
}

static SOLVED: AtomicU64 = AtomicU64::new(0);
static REJECTED: AtomicU64 = AtomicU64::new(0);

/// Process-wide tally of [`solve_verified`] calls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuditCounts {
    pub solved: u64,
    pub rejected: u64,
}

pub fn audit_counts() -> AuditCounts {
    AuditCounts {
        solved: SOLVED.load(Ordering::Relaxed),
        rejected: REJECTED.load(Ordering::Relaxed),
    }
}

/// Solves and then checks the certificate. All programs built by the
/// geometry, envelope and approximation layers go through here.
pub fn solve_verified(lp: &LinearProgram) -> Result<LpOutcome> {
    let outcome = solve_lp(lp)?;
    SOLVED.fetch_add(1, Ordering::Relaxed);
    if !verify_certificate(lp, &outcome) {
        REJECTED.fetch_add(1, Ordering::Relaxed);
        return Err(Error::Internal(format!(
            "{} certificate failed verification",
            outcome.kind()
        )));
    }
    Ok(outcome)
}
