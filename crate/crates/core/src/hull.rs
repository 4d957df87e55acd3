//! Membership in a V-represented polytope, hull equality, and the
//! surjectivity check `φ(C) = D`.
//!
//! Membership of `y` in `conv{v₁..vₖ}` is the feasibility program
//! `Σλᵢvᵢ = y, Σλᵢ = 1, λ ≥ 0`. When it is infeasible, the Farkas multipliers
//! `(w, w₀)` on those rows satisfy `w·vᵢ + w₀ ≤ 0` for every generator and
//! `w·y + w₀ > 0`, i.e. they are a strictly separating affine functional.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{expect_dim, Error, Result};
use crate::geometry::{AffineFunctional, AffineMap, Point, Polytope};
use crate::lp::{solve_verified, LinearProgram, LpOutcome, Relation, Sense};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// Convex multipliers over the generators reproducing the point.
    Inside { multipliers: Vec<Scalar> },
    /// `separator(y) > 0 ≥ separator(v)` for every generator `v`.
    Outside { separator: AffineFunctional },
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside { .. })
    }
}

/// Feasibility program for `y ∈ conv(P)` over convex multipliers.
/// Rows `0..dim` pin the coordinates, row `dim` is `Σλ = 1`.
fn membership_program(p: &Polytope, y: &Point) -> LinearProgram {
    let k = p.len();
    let mut lp = LinearProgram::new(Sense::Minimize, vec![Scalar::zero(); k]);
    lp.nonnegative(0..k);
    for (d, target) in y.coords().iter().enumerate() {
        let row = p
            .generators()
            .iter()
            .map(|v| v.coords()[d].clone())
            .collect();
        lp.constrain(row, Relation::Eq, target.clone());
    }
    lp.constrain(vec![Scalar::one(); k], Relation::Eq, Scalar::one());
    lp
}

pub fn membership(p: &Polytope, y: &Point) -> Result<Membership> {
    expect_dim("membership query", p.dim(), y.dim())?;
    match solve_verified(&membership_program(p, y))? {
        LpOutcome::Optimal { x, .. } => Ok(Membership::Inside { multipliers: x }),
        LpOutcome::Infeasible { farkas } => {
            // With λ ≥ 0 and no upper bounds, a valid certificate has
            // aggregate g ≤ 0 columnwise and y·b > 0, which reads
            // w·vᵢ + w₀ ≤ 0 < w·y + w₀.
            let (coords, last) = farkas.split_at(p.dim());
            Ok(Membership::Outside {
                separator: AffineFunctional::new(coords.to_vec(), last[0].clone()),
            })
        }
        LpOutcome::Unbounded { .. } => Err(Error::Internal(
            "membership feasibility program reported unbounded".into(),
        )),
    }
}

/// Equality of convex hulls: every generator of each side is a member of the
/// other.
pub fn polytope_equal(p: &Polytope, q: &Polytope) -> Result<bool> {
    expect_dim("polytope comparison", p.dim(), q.dim())?;
    Ok(first_outside(p, q)?.is_none() && first_outside(q, p)?.is_none())
}

/// Index of the first generator of `from` lying outside `conv(into)`.
fn first_outside(from: &Polytope, into: &Polytope) -> Result<Option<usize>> {
    for (i, v) in from.generators().iter().enumerate() {
        if !membership(into, v)?.is_inside() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Which inclusion of `φ(C) = D` fails, with the offending generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurjectivityFailure {
    /// `φ(vᵢ) ∉ D` for generator `index` of `C`.
    ImageNotInTarget { index: usize, image: Point },
    /// Generator `index` of `D` is not in `φ(C)`.
    TargetNotInImage { index: usize, generator: Point },
}

impl fmt::Display for SurjectivityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurjectivityFailure::ImageNotInTarget { index, image } => write!(
                f,
                "image {image} of C generator #{index} lies outside D (image not contained in D)"
            ),
            SurjectivityFailure::TargetNotInImage { index, generator } => write!(
                f,
                "D generator #{index} {generator} lies outside the image of C (D not contained in image)"
            ),
        }
    }
}

/// Checks that `φ(C) = D`. Failure is a value, not an error; only
/// dimension mismatches are errors.
pub fn check_surjective(
    map: &AffineMap,
    domain: &Polytope,
    target: &Polytope,
) -> Result<std::result::Result<(), SurjectivityFailure>> {
    expect_dim("surjectivity target", map.codomain_dim(), target.dim())?;
    let image = map.image(domain)?;
    if let Some(index) = first_outside(&image, target)? {
        return Ok(Err(SurjectivityFailure::ImageNotInTarget {
            index,
            image: image.generators()[index].clone(),
        }));
    }
    if let Some(index) = first_outside(target, &image)? {
        return Ok(Err(SurjectivityFailure::TargetNotInImage {
            index,
            generator: target.generators()[index].clone(),
        }));
    }
    Ok(Ok(()))
}

/// Checks a separator against its claim. Used by tests and callers that want
/// to re-validate an `Outside` answer.
pub fn separates(separator: &AffineFunctional, p: &Polytope, y: &Point) -> Result<bool> {
    let at_y = separator.eval(y)?;
    if !at_y.is_positive() {
        return Ok(false);
    }
    for v in p.generators() {
        if separator.eval(v)?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}
