//! Best approximation of `f` by `h∘φ` in the supremum norm over `C`.
//!
//! # Reduction to generator constraints
//!
//! Every condition over the continuum `C` (or `D`) is imposed only at the
//! generators `v₁..vₖ` of `C`:
//!
//! * For affine `h`, `x ↦ f(x) − h(φ(x))` is affine on `C`, so its maximum
//!   and minimum over `C = conv{vᵢ}` are attained at generators. Hence
//!   `‖f − h∘φ‖ = maxᵢ |f(vᵢ) − h(φ(vᵢ))|`.
//! * `h ≥ f↑ − t` on `D` means `h(φ(x)) ≥ f(x) − t` for all `x ∈ C`, because
//!   `φ` is onto `D` and `f↑(y)` is the max of `f` over `φ⁻¹(y)`. The latter
//!   is an affine inequality in `x`, so it holds on `C` iff it holds at every
//!   `vᵢ`. The same argument applies to `h ≤ f↓ + t`.
//!
//! So both the Chebyshev program and the sandwich program are finite LPs
//! with no approximation.
//!
//! # Two routes to the same answer
//!
//! [`best_approximation`] computes the distance twice: directly as the
//! minimax LP ([`chebyshev_distance`]), and as `c/2` where `c` is the gap
//! constant, with `h₀` fitted between the shifted envelopes
//! ([`sandwich_affine`]). Their exact agreement, plus `‖f − h₀∘φ‖ = c/2`, is
//! checked on every call.
//!
//! The optimal `h₀` is generally not unique. The one returned is whatever the
//! deterministic pivot order produces; no canonical choice is made.

use num_traits::{Signed, Zero};

use crate::envelope::{gap_constant, GapCertificate};
use crate::error::{expect_dim, Error, Result};
use crate::geometry::{AffineFunctional, AffineMap, Point, Polytope};
use crate::instance::Instance;
use crate::lp::{solve_verified, LinearProgram, LpOutcome, Relation, Sense};
use crate::scalar::{half, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub generator: Point,
    /// `f(v) − h₀(φ(v))`.
    pub value: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestApproximation {
    /// Optimal affine functional on the ambient space of `D`.
    pub h0: AffineFunctional,
    pub d: Scalar,
    pub c: Scalar,
    pub gap_witness: GapCertificate,
    pub residuals: Vec<Residual>,
}

/// `(φ(vᵢ), f(vᵢ))` for every generator.
fn sample_generators(
    domain: &Polytope,
    map: &AffineMap,
    f: &AffineFunctional,
) -> Result<Vec<(Point, Scalar)>> {
    expect_dim("map domain", domain.dim(), map.domain_dim())?;
    expect_dim("functional", domain.dim(), f.dim())?;
    domain
        .generators()
        .iter()
        .map(|v| Ok((map.eval(v)?, f.eval(v)?)))
        .collect()
}

/// Coefficients `[a₁..aₘ, b]` of `h(y) = a·y + b` evaluated at `y`.
fn affine_row(y: &Point, extra: &[Scalar]) -> Vec<Scalar> {
    y.coords()
        .iter()
        .cloned()
        .chain(std::iter::once(Scalar::from_integer(1.into())))
        .chain(extra.iter().cloned())
        .collect()
}

fn functional_from(solution: &[Scalar], m: usize) -> AffineFunctional {
    AffineFunctional::new(solution[..m].to_vec(), solution[m].clone())
}

/// `d = min_{a,b,t} t` subject to `|f(v) − (a·φ(v) + b)| ≤ t` at every
/// generator. Returns `d` and the optimizing `h(y) = a·y + b`.
pub fn chebyshev_distance(
    domain: &Polytope,
    map: &AffineMap,
    f: &AffineFunctional,
) -> Result<(Scalar, AffineFunctional)> {
    let samples = sample_generators(domain, map, f)?;
    let m = map.codomain_dim();
    let one = Scalar::from_integer(1.into());

    // Variables: a (m), b, t; all free.
    let mut objective = vec![Scalar::zero(); m + 2];
    objective[m + 1] = one.clone();
    let mut lp = LinearProgram::new(Sense::Minimize, objective);
    for (image, value) in &samples {
        lp.constrain(
            affine_row(image, std::slice::from_ref(&one)),
            Relation::Ge,
            value.clone(),
        );
        lp.constrain(affine_row(image, &[-&one]), Relation::Le, value.clone());
    }
    match solve_verified(&lp)? {
        LpOutcome::Optimal { x, value, .. } => Ok((value, functional_from(&x, m))),
        other => Err(Error::Internal(format!(
            "Chebyshev program is feasible and bounded but was reported {}",
            other.kind()
        ))),
    }
}

/// An affine `h₀` with `f(v) − c/2 ≤ h₀(φ(v)) ≤ f(v) + c/2` at every
/// generator, i.e. `f↑ − c/2 ≤ h₀ ≤ f↓ + c/2` on `D`.
///
/// Feasible whenever `c` is the true gap constant. Infeasibility means the
/// caller passed a wrong `c` and is reported as
/// [`Error::SandwichInfeasible`].
pub fn sandwich_affine(
    domain: &Polytope,
    map: &AffineMap,
    f: &AffineFunctional,
    c: &Scalar,
) -> Result<AffineFunctional> {
    let samples = sample_generators(domain, map, f)?;
    let m = map.codomain_dim();
    let slack = half(c);

    let mut lp = LinearProgram::new(Sense::Minimize, vec![Scalar::zero(); m + 1]);
    for (image, value) in &samples {
        lp.constrain(affine_row(image, &[]), Relation::Ge, value - &slack);
        lp.constrain(affine_row(image, &[]), Relation::Le, value + &slack);
    }
    match solve_verified(&lp)? {
        LpOutcome::Optimal { x, .. } => Ok(functional_from(&x, m)),
        LpOutcome::Infeasible { .. } => Err(Error::SandwichInfeasible(c.to_string())),
        LpOutcome::Unbounded { .. } => Err(Error::Internal(
            "sandwich feasibility program reported unbounded".into(),
        )),
    }
}

/// `‖f − h∘φ‖ = max_v |f(v) − h(φ(v))|` over the generators of `C`.
pub fn norm_of_difference(
    domain: &Polytope,
    map: &AffineMap,
    f: &AffineFunctional,
    h: &AffineFunctional,
) -> Result<Scalar> {
    expect_dim("candidate h", map.codomain_dim(), h.dim())?;
    let samples = sample_generators(domain, map, f)?;
    let mut norm = Scalar::zero();
    for (image, value) in &samples {
        norm = norm.max((value - h.eval(image)?).abs());
    }
    Ok(norm)
}

fn residuals(
    domain: &Polytope,
    map: &AffineMap,
    f: &AffineFunctional,
    h: &AffineFunctional,
) -> Result<Vec<Residual>> {
    domain
        .generators()
        .iter()
        .map(|v| {
            Ok(Residual {
                generator: v.clone(),
                value: f.eval(v)? - h.eval(&map.eval(v)?)?,
            })
        })
        .collect()
}

/// Full solve: gap constant, sandwich fit, Chebyshev distance, and the exact
/// consistency checks tying them together.
pub fn best_approximation(instance: &Instance) -> Result<BestApproximation> {
    let (domain, map, f) = (instance.domain(), instance.map(), instance.functional());

    let gap_witness = gap_constant(domain, map, f)?;
    let c = gap_witness.c.clone();
    let h0 = sandwich_affine(domain, map, f, &c)?;
    let (d, h_minimax) = chebyshev_distance(domain, map, f)?;

    let target = half(&c);
    if d != target {
        return Err(Error::Internal(format!(
            "Chebyshev distance {d} differs from c/2 = {target}"
        )));
    }
    let sandwich_norm = norm_of_difference(domain, map, f, &h0)?;
    if sandwich_norm != d {
        return Err(Error::Internal(format!(
            "sandwich fit has norm {sandwich_norm}, expected {d}"
        )));
    }
    let minimax_norm = norm_of_difference(domain, map, f, &h_minimax)?;
    if minimax_norm != d {
        return Err(Error::Internal(format!(
            "minimax fit has norm {minimax_norm}, expected {d}"
        )));
    }

    let residuals = residuals(domain, map, f, &h0)?;
    Ok(BestApproximation {
        h0,
        d,
        c,
        gap_witness,
        residuals,
    })
}

/// Re-checks a result without solving anything:
/// the largest generator residual of `h₀` equals `d`, the recorded residuals
/// are the true ones, the gap witness is exact (which makes `c/2` a lower
/// bound on every `‖f − h∘φ‖`), and `d = c/2`.
pub fn verify_solution(
    domain: &Polytope,
    map: &AffineMap,
    f: &AffineFunctional,
    result: &BestApproximation,
) -> bool {
    let check = || -> Result<bool> {
        let actual = residuals(domain, map, f, &result.h0)?;
        if actual != result.residuals {
            return Ok(false);
        }
        let max_residual = actual
            .iter()
            .map(|r| r.value.abs())
            .max()
            .unwrap_or_else(Scalar::zero);
        if max_residual != result.d {
            return Ok(false);
        }
        if result.gap_witness.c != result.c || !result.gap_witness.check(domain, map, f)? {
            return Ok(false);
        }
        Ok(result.d == half(&result.c))
    };
    check().unwrap_or(false)
}
