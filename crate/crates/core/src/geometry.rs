//! Points, V-represented polytopes, affine maps and affine functionals over
//! exact rationals.

use std::fmt;

use num_traits::Zero;

use crate::error::{expect_dim, Error, Result};
use crate::scalar::Scalar;

/// A point of `Q^dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point(Vec<Scalar>);

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Point(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Point(vec![Scalar::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| crate::scalar::int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    /// Exact convex (or any affine) combination `Σ wᵢ pᵢ`.
    ///
    /// The caller is responsible for the weights; nothing is normalized.
    pub fn combination<'a>(
        dim: usize,
        terms: impl IntoIterator<Item = (&'a Scalar, &'a Point)>,
    ) -> Result<Point> {
        let mut acc = vec![Scalar::zero(); dim];
        for (w, p) in terms {
            expect_dim("point combination", dim, p.dim())?;
            if w.is_zero() {
                continue;
            }
            for (a, x) in acc.iter_mut().zip(&p.0) {
                *a += w * x;
            }
        }
        Ok(Point(acc))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// The convex hull of a nonempty generator list. Generators may be redundant
/// and are kept exactly as given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    generators: Vec<Point>,
}

impl Polytope {
    pub fn new(dim: usize, generators: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if generators.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        for g in &generators {
            expect_dim("polytope generator", dim, g.dim())?;
        }
        Ok(Polytope { dim, generators })
    }

    /// Builds a polytope from integer generators; the dimension is taken
    /// from the first one.
    pub fn from_ints(generators: &[&[i64]]) -> Result<Self> {
        let dim = generators.first().map_or(0, |g| g.len());
        Polytope::new(
            dim,
            generators.iter().map(|g| Point::from_ints(g)).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Point with the given convex multipliers. Multipliers are not checked.
    pub fn point_at(&self, multipliers: &[Scalar]) -> Result<Point> {
        expect_dim("multipliers", self.generators.len(), multipliers.len())?;
        Point::combination(self.dim, multipliers.iter().zip(&self.generators))
    }
}

/// `x ↦ matrix·x + offset`, with `matrix` of shape `codomain_dim × domain_dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    matrix: Vec<Vec<Scalar>>,
    offset: Point,
    domain_dim: usize,
}

impl AffineMap {
    pub fn new(matrix: Vec<Vec<Scalar>>, offset: Point) -> Result<Self> {
        let rows = matrix.len();
        expect_dim("map offset", rows, offset.dim())?;
        if rows == 0 {
            return Err(Error::ZeroDimension);
        }
        let domain_dim = matrix[0].len();
        if domain_dim == 0 {
            return Err(Error::ZeroDimension);
        }
        for row in &matrix {
            expect_dim("map matrix row", domain_dim, row.len())?;
        }
        Ok(AffineMap {
            matrix,
            offset,
            domain_dim,
        })
    }

    pub fn from_ints(matrix: &[&[i64]], offset: &[i64]) -> Result<Self> {
        let matrix = matrix
            .iter()
            .map(|row| Point::from_ints(row).into_coords())
            .collect();
        AffineMap::new(matrix, Point::from_ints(offset))
    }

    pub fn identity(dim: usize) -> Self {
        let matrix = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        if i == j {
                            crate::scalar::int(1)
                        } else {
                            Scalar::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        AffineMap {
            matrix,
            offset: Point::zeros(dim),
            domain_dim: dim,
        }
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn codomain_dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    pub fn offset(&self) -> &Point {
        &self.offset
    }

    pub fn eval(&self, x: &Point) -> Result<Point> {
        expect_dim("map argument", self.domain_dim, x.dim())?;
        let coords = self
            .matrix
            .iter()
            .zip(self.offset.coords())
            .map(|(row, b)| dot(row, x.coords()) + b)
            .collect();
        Ok(Point(coords))
    }

    /// The affine image `φ(C)`, generated by the images of the generators
    /// of `C` in their original order.
    pub fn image(&self, domain: &Polytope) -> Result<Polytope> {
        expect_dim("image domain", self.domain_dim, domain.dim())?;
        let generators = domain
            .generators()
            .iter()
            .map(|v| self.eval(v))
            .collect::<Result<Vec<_>>>()?;
        Polytope::new(self.codomain_dim(), generators)
    }
}

pub fn eval_map(map: &AffineMap, x: &Point) -> Result<Point> {
    map.eval(x)
}

pub fn image_polytope(map: &AffineMap, domain: &Polytope) -> Result<Polytope> {
    map.image(domain)
}

/// `x ↦ coeffs·x + constant`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineFunctional {
    pub coeffs: Vec<Scalar>,
    pub constant: Scalar,
}

impl AffineFunctional {
    pub fn new(coeffs: Vec<Scalar>, constant: Scalar) -> Self {
        AffineFunctional { coeffs, constant }
    }

    pub fn from_ints(coeffs: &[i64], constant: i64) -> Self {
        AffineFunctional {
            coeffs: Point::from_ints(coeffs).into_coords(),
            constant: crate::scalar::int(constant),
        }
    }

    pub fn constant_fn(dim: usize, value: Scalar) -> Self {
        AffineFunctional {
            coeffs: vec![Scalar::zero(); dim],
            constant: value,
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: &Point) -> Result<Scalar> {
        expect_dim("functional argument", self.coeffs.len(), x.dim())?;
        Ok(dot(&self.coeffs, x.coords()) + &self.constant)
    }

    /// `self ∘ map`, an affine functional on the domain of `map`.
    pub fn compose(&self, map: &AffineMap) -> Result<AffineFunctional> {
        expect_dim("composition", self.dim(), map.codomain_dim())?;
        let coeffs = (0..map.domain_dim())
            .map(|j| {
                map.matrix()
                    .iter()
                    .zip(&self.coeffs)
                    .map(|(row, a)| a * &row[j])
                    .sum()
            })
            .collect();
        let constant = dot(&self.coeffs, map.offset().coords()) + &self.constant;
        Ok(AffineFunctional { coeffs, constant })
    }

    pub fn add(&self, other: &AffineFunctional) -> Result<AffineFunctional> {
        expect_dim("functional sum", self.dim(), other.dim())?;
        Ok(AffineFunctional {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            constant: &self.constant + &other.constant,
        })
    }

    pub fn scale(&self, alpha: &Scalar) -> AffineFunctional {
        AffineFunctional {
            coeffs: self.coeffs.iter().map(|a| a * alpha).collect(),
            constant: &self.constant * alpha,
        }
    }

    pub fn negate(&self) -> AffineFunctional {
        AffineFunctional {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
            constant: -&self.constant,
        }
    }
}

impl fmt::Display for AffineFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.coeffs.iter().enumerate() {
            write!(f, "({a})·y{} + ", i + 1)?;
        }
        write!(f, "{}", self.constant)
    }
}

pub fn eval_functional(f: &AffineFunctional, x: &Point) -> Result<Scalar> {
    f.eval(x)
}

pub(crate) fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}
