use thiserror::Error;

use crate::hull::SurjectivityFailure;

/// Errors raised by the geometry, LP, envelope and approximation layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("a polytope needs at least one generator")]
    EmptyPolytope,

    #[error("ambient dimension must be positive")]
    ZeroDimension,

    #[error("division by zero")]
    DivisionByZero,

    #[error("malformed linear program: {0}")]
    MalformedProgram(String),

    /// The queried point has no preimage in the domain polytope.
    #[error("empty fiber: {0} is not in the image of the domain polytope")]
    EmptyFiber(String),

    #[error("map is not surjective: {0}")]
    NotSurjective(SurjectivityFailure),

    /// The sandwich program was infeasible for the supplied gap constant.
    /// Only a wrong constant (or a solver bug) can cause this.
    #[error("sandwich program infeasible for c = {0}")]
    SandwichInfeasible(String),

    /// An exact consistency check failed. Never expected on valid input.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn expect_dim(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context,
            expected,
            found,
        })
    }
}
