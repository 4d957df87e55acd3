//! Fiber envelopes of `f` along `φ`.
//!
//! For `y ∈ φ(C)`:
//!
//! ```text
//! f↓(y) = min { f(x) : x ∈ C, φ(x) = y }      (convex in y)
//! f↑(y) = max { f(x) : x ∈ C, φ(x) = y }      (concave in y)
//! r(y)  = f↑(y) − f↓(y)
//! c     = max_y r(y) = max { f(x) − f(x') : x, x' ∈ C, φ(x) = φ(x') }
//! ```
//!
//! Each query is one LP over convex multipliers of the generators of `C`;
//! `c` is a single coupled LP over two multiplier blocks. Envelopes are only
//! ever evaluated pointwise.

use num_traits::{One, Signed, Zero};

use crate::error::{expect_dim, Error, Result};
use crate::geometry::{AffineFunctional, AffineMap, Point, Polytope};
use crate::lp::{solve_verified, LinearProgram, LpOutcome, Relation, Sense};
use crate::scalar::Scalar;

/// An envelope value together with a point of the fiber attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvelopeValue {
    pub value: Scalar,
    pub witness: Point,
    pub multipliers: Vec<Scalar>,
}

/// `c` with a pair `x, x'` in one fiber realizing `f(x) − f(x') = c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapCertificate {
    pub c: Scalar,
    pub x: Point,
    pub x_prime: Point,
    /// Common image `φ(x) = φ(x')`.
    pub y: Point,
    pub x_multipliers: Vec<Scalar>,
    pub x_prime_multipliers: Vec<Scalar>,
}

impl GapCertificate {
    /// Re-checks every claim by direct evaluation: both points are convex
    /// combinations of the generators of `C`, they share the image `y`, and
    /// `f(x) − f(x') = c ≥ 0`.
    pub fn check(&self, domain: &Polytope, map: &AffineMap, f: &AffineFunctional) -> Result<bool> {
        let reconstructs = |multipliers: &[Scalar], point: &Point| -> Result<bool> {
            if multipliers.len() != domain.len() || multipliers.iter().any(Signed::is_negative) {
                return Ok(false);
            }
            if multipliers.iter().sum::<Scalar>() != Scalar::one() {
                return Ok(false);
            }
            Ok(domain.point_at(multipliers)? == *point)
        };
        if !reconstructs(&self.x_multipliers, &self.x)?
            || !reconstructs(&self.x_prime_multipliers, &self.x_prime)?
        {
            return Ok(false);
        }
        Ok(map.eval(&self.x)? == self.y
            && map.eval(&self.x_prime)? == self.y
            && f.eval(&self.x)? - f.eval(&self.x_prime)? == self.c
            && !self.c.is_negative())
    }
}

/// Images `φ(vᵢ)` and values `f(vᵢ)` at the generators of `C`.
struct GeneratorData {
    images: Vec<Point>,
    values: Vec<Scalar>,
}

fn generator_data(
    domain: &Polytope,
    map: &AffineMap,
    f: &AffineFunctional,
) -> Result<GeneratorData> {
    expect_dim("map domain", domain.dim(), map.domain_dim())?;
    expect_dim("functional", domain.dim(), f.dim())?;
    let images = domain
        .generators()
        .iter()
        .map(|v| map.eval(v))
        .collect::<Result<Vec<_>>>()?;
    let values = domain
        .generators()
        .iter()
        .map(|v| f.eval(v))
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorData { images, values })
}

fn envelope(
    domain: &Polytope,
    map: &AffineMap,
    f: &AffineFunctional,
    y: &Point,
    sense: Sense,
) -> Result<EnvelopeValue> {
    let data = generator_data(domain, map, f)?;
    expect_dim("envelope query", map.codomain_dim(), y.dim())?;
    let k = domain.len();

    let mut lp = LinearProgram::new(sense, data.values.clone());
    lp.nonnegative(0..k);
    for (d, target) in y.coords().iter().enumerate() {
        let row = data
            .images
            .iter()
            .map(|img| img.coords()[d].clone())
            .collect();
        lp.constrain(row, Relation::Eq, target.clone());
    }
    lp.constrain(vec![Scalar::one(); k], Relation::Eq, Scalar::one());

    match solve_verified(&lp)? {
        LpOutcome::Optimal { x, value, .. } => {
            let witness = domain.point_at(&x)?;
            if f.eval(&witness)? != value || map.eval(&witness)? != *y {
                return Err(Error::Internal(format!(
                    "envelope witness {witness} does not reproduce its value at {y}"
                )));
            }
            Ok(EnvelopeValue {
                value,
                witness,
                multipliers: x,
            })
        }
        LpOutcome::Infeasible { .. } => Err(Error::EmptyFiber(y.to_string())),
        LpOutcome::Unbounded { .. } => Err(Error::Internal(
            "fiber program over a simplex reported unbounded".into(),
        )),
    }
}

/// `f↓(y)`, the minimum of `f` over the fiber `φ⁻¹(y) ∩ C`.
pub fn lower_envelope(
    domain: &Polytope,
    map: &AffineMap,
    f: &AffineFunctional,
    y: &Point,
) -> Result<EnvelopeValue> {
    envelope(domain, map, f, y, Sense::Minimize)
}

/// `f↑(y)`, the maximum of `f` over the fiber `φ⁻¹(y) ∩ C`.
pub fn upper_envelope(
    domain: &Polytope,
    map: &AffineMap,
    f: &AffineFunctional,
    y: &Point,
) -> Result<EnvelopeValue> {
    envelope(domain, map, f, y, Sense::Maximize)
}

/// `r(y) = f↑(y) − f↓(y) ≥ 0`.
pub fn fiber_oscillation(
    domain: &Polytope,
    map: &AffineMap,
    f: &AffineFunctional,
    y: &Point,
) -> Result<Scalar> {
    let up = upper_envelope(domain, map, f, y)?;
    let down = lower_envelope(domain, map, f, y)?;
    let r = up.value - down.value;
    if r.is_negative() {
        return Err(Error::Internal(format!("negative oscillation {r} at {y}")));
    }
    Ok(r)
}

/// The gap constant `c = sup_y r(y)`, solved as
///
/// ```text
/// max Σλᵢf(vᵢ) − Σμⱼf(vⱼ)
/// s.t. Σλᵢφ(vᵢ) − Σμⱼφ(vⱼ) = 0,  Σλ = 1,  Σμ = 1,  λ, μ ≥ 0.
/// ```
///
/// Always feasible (`λ = μ`) and bounded (both blocks range over a simplex).
pub fn gap_constant(
    domain: &Polytope,
    map: &AffineMap,
    f: &AffineFunctional,
) -> Result<GapCertificate> {
    let data = generator_data(domain, map, f)?;
    let k = domain.len();
    let zero = Scalar::zero;

    let objective = data
        .values
        .iter()
        .cloned()
        .chain(data.values.iter().map(|v| -v))
        .collect();
    let mut lp = LinearProgram::new(Sense::Maximize, objective);
    lp.nonnegative(0..2 * k);
    for d in 0..map.codomain_dim() {
        let row = data
            .images
            .iter()
            .map(|img| img.coords()[d].clone())
            .chain(data.images.iter().map(|img| -&img.coords()[d]))
            .collect();
        lp.constrain(row, Relation::Eq, zero());
    }
    let first = (0..2 * k)
        .map(|j| if j < k { Scalar::one() } else { zero() })
        .collect();
    let second = (0..2 * k)
        .map(|j| if j < k { zero() } else { Scalar::one() })
        .collect();
    lp.constrain(first, Relation::Eq, Scalar::one());
    lp.constrain(second, Relation::Eq, Scalar::one());

    let LpOutcome::Optimal { x: sol, value, .. } = solve_verified(&lp)? else {
        return Err(Error::Internal(
            "gap program is feasible and bounded but the solver disagreed".into(),
        ));
    };
    let (lambda, mu) = sol.split_at(k);
    let x = domain.point_at(lambda)?;
    let x_prime = domain.point_at(mu)?;
    let y = map.eval(&x)?;
    let cert = GapCertificate {
        c: value,
        x,
        x_prime,
        y,
        x_multipliers: lambda.to_vec(),
        x_prime_multipliers: mu.to_vec(),
    };
    if !cert.check(domain, map, f)? {
        return Err(Error::Internal("gap witness failed its own check".into()));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn square() -> Polytope {
        Polytope::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap()
    }

    fn projection() -> AffineMap {
        AffineMap::from_ints(&[&[1, 0]], &[0]).unwrap()
    }

    fn triangle() -> Polytope {
        Polytope::from_ints(&[&[0, 0], &[2, 0], &[0, 2]]).unwrap()
    }

    fn coordinate_sum() -> AffineMap {
        AffineMap::from_ints(&[&[1, 1]], &[0]).unwrap()
    }

    #[test]
    fn square_projection_envelopes() {
        let f = AffineFunctional::from_ints(&[0, 1], 0);
        let y = Point::new(vec![ratio(1, 2)]);
        let low = lower_envelope(&square(), &projection(), &f, &y).unwrap();
        assert_eq!(low.value, int(0));
        assert_eq!(low.witness, Point::new(vec![ratio(1, 2), int(0)]));
        let high = upper_envelope(&square(), &projection(), &f, &y).unwrap();
        assert_eq!(high.value, int(1));
        assert_eq!(high.witness, Point::new(vec![ratio(1, 2), int(1)]));
        for t in [ratio(0, 1), ratio(1, 3), ratio(1, 1)] {
            let y = Point::new(vec![t]);
            assert_eq!(
                fiber_oscillation(&square(), &projection(), &f, &y).unwrap(),
                int(1)
            );
        }
    }

    #[test]
    fn identity_map_has_singleton_fibers() {
        let f = AffineFunctional::new(vec![ratio(3, 2), int(-1)], int(4));
        let id = AffineMap::identity(2);
        let y = Point::new(vec![ratio(1, 4), ratio(2, 3)]);
        let expected = f.eval(&y).unwrap();
        let low = lower_envelope(&square(), &id, &f, &y).unwrap();
        let high = upper_envelope(&square(), &id, &f, &y).unwrap();
        assert_eq!(low.value, expected);
        assert_eq!(high.value, expected);
        assert_eq!(low.witness, y);
        assert_eq!(fiber_oscillation(&square(), &id, &f, &y).unwrap(), int(0));
    }

    /// Fiber of y = 1 under x₁+x₂ on the triangle is the segment from (1,0)
    /// to (0,1); f is affine so its extremes are at the two endpoints.
    #[test]
    fn triangle_envelopes_match_segment_endpoints() {
        let f = AffineFunctional::from_ints(&[1, 0], 0);
        let endpoints = [Point::from_ints(&[1, 0]), Point::from_ints(&[0, 1])];
        let values: Vec<Scalar> = endpoints.iter().map(|p| f.eval(p).unwrap()).collect();
        let oracle_min = values.iter().min().unwrap().clone();
        let oracle_max = values.iter().max().unwrap().clone();
        assert_eq!((oracle_min.clone(), oracle_max.clone()), (int(0), int(1)));

        let y = Point::from_ints(&[1]);
        let low = lower_envelope(&triangle(), &coordinate_sum(), &f, &y).unwrap();
        let high = upper_envelope(&triangle(), &coordinate_sum(), &f, &y).unwrap();
        assert_eq!(low.value, oracle_min);
        assert_eq!(low.witness, endpoints[1]);
        assert_eq!(high.value, oracle_max);
        assert_eq!(high.witness, endpoints[0]);
        assert_eq!(
            fiber_oscillation(&triangle(), &coordinate_sum(), &f, &y).unwrap(),
            oracle_max - oracle_min
        );
    }

    #[test]
    fn empty_fiber_is_an_error() {
        let f = AffineFunctional::from_ints(&[0, 1], 0);
        let y = Point::from_ints(&[2]);
        let err = lower_envelope(&square(), &projection(), &f, &y).unwrap_err();
        assert!(matches!(err, Error::EmptyFiber(_)));
        let err =
            upper_envelope(&square(), &projection(), &f, &Point::from_ints(&[1, 1])).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn gap_on_square_projection() {
        let f = AffineFunctional::from_ints(&[0, 1], 0);
        let cert = gap_constant(&square(), &projection(), &f).unwrap();
        assert_eq!(cert.c, int(1));
        assert_eq!(cert.x.coords()[1], int(1));
        assert_eq!(cert.x_prime.coords()[1], int(0));
        assert_eq!(cert.x.coords()[0], cert.x_prime.coords()[0]);
        assert!(cert.check(&square(), &projection(), &f).unwrap());
    }

    #[test]
    fn gap_under_identity_is_zero() {
        let f = AffineFunctional::from_ints(&[2, -7], 3);
        let cert = gap_constant(&square(), &AffineMap::identity(2), &f).unwrap();
        assert_eq!(cert.c, int(0));
        assert_eq!(cert.x, cert.x_prime);
    }

    /// Brute force over pairs of triangle vertices with equal image.
    #[test]
    fn gap_on_triangle_matches_vertex_pairs() {
        let f = AffineFunctional::from_ints(&[1, 0], 0);
        let tri = triangle();
        let map = coordinate_sum();
        let mut best = int(0);
        for a in tri.generators() {
            for b in tri.generators() {
                if map.eval(a).unwrap() == map.eval(b).unwrap() {
                    best = best.max(f.eval(a).unwrap() - f.eval(b).unwrap());
                }
            }
        }
        assert_eq!(best, int(2));

        let cert = gap_constant(&tri, &map, &f).unwrap();
        assert_eq!(cert.c, best);
        assert_eq!(cert.x, Point::from_ints(&[2, 0]));
        assert_eq!(cert.x_prime, Point::from_ints(&[0, 2]));
        assert_eq!(cert.y, Point::from_ints(&[2]));
    }

    #[test]
    fn forged_gap_certificate_is_rejected() {
        let f = AffineFunctional::from_ints(&[0, 1], 0);
        let mut cert = gap_constant(&square(), &projection(), &f).unwrap();
        cert.c = int(2);
        assert!(!cert.check(&square(), &projection(), &f).unwrap());

        let mut cert = gap_constant(&square(), &projection(), &f).unwrap();
        cert.y = Point::from_ints(&[5]);
        assert!(!cert.check(&square(), &projection(), &f).unwrap());

        // Outside C: multipliers that do not sum to one.
        let mut cert = gap_constant(&square(), &projection(), &f).unwrap();
        cert.x_multipliers = cert.x_multipliers.iter().map(|l| l * int(2)).collect();
        cert.x = square().point_at(&cert.x_multipliers).unwrap();
        assert!(!cert.check(&square(), &projection(), &f).unwrap());
    }

    #[test]
    fn single_point_domain() {
        let point = Polytope::from_ints(&[&[2, 5]]).unwrap();
        let f = AffineFunctional::from_ints(&[1, 1], 0);
        let cert = gap_constant(&point, &projection(), &f).unwrap();
        assert_eq!(cert.c, int(0));
        let low = lower_envelope(&point, &projection(), &f, &Point::from_ints(&[2])).unwrap();
        assert_eq!(low.value, int(7));
    }
}
