//! Exact best approximation of an affine functional `f` on a polytope `C` by
//! functionals of the form `h∘φ`, where `φ: C → D` is a surjective affine map.
//!
//! The distance `d = inf_h ‖f − h∘φ‖∞` equals half the largest spread of `f`
//! over a fiber of `φ`, and a minimizing `h₀` is obtained by fitting an affine
//! function between the fiber envelopes shifted by that half-spread. All of
//! this is computed in exact rational arithmetic with a certificate-producing
//! simplex solver.
//!
//! Layout:
//! - [`scalar`], [`geometry`]: rationals, points, polytopes, affine maps.
//! - [`hull`]: membership, hull equality and the surjectivity check.
//! - [`lp`]: two-phase simplex and independent certificate checking.
//! - [`envelope`]: fiber envelopes `f↓`, `f↑`, oscillation and the gap constant.
//! - [`approx`]: Chebyshev distance, the sandwich fit and the full result.

pub mod approx;
pub mod envelope;
pub mod error;
pub mod geometry;
pub mod hull;
pub mod instance;
pub mod lp;
pub mod scalar;

pub use approx::{
    best_approximation, chebyshev_distance, norm_of_difference, sandwich_affine, verify_solution,
    BestApproximation,
};
pub use envelope::{
    fiber_oscillation, gap_constant, lower_envelope, upper_envelope, EnvelopeValue, GapCertificate,
};
pub use error::{Error, Result};
pub use geometry::{
    eval_functional, eval_map, image_polytope, AffineFunctional, AffineMap, Point, Polytope,
};
pub use hull::{check_surjective, membership, polytope_equal, Membership, SurjectivityFailure};
pub use instance::Instance;
pub use scalar::Scalar;
