//! JSON instance files.
//!
//! Every number is an exact rational written as a string `"p/q"` or `"p"`.
//! Bare JSON integers are accepted on input; floats never are. Output always
//! uses canonical reduced strings, so one parse/serialize pass normalizes a
//! file and further passes are byte-stable.

use std::fmt;

use affprox::scalar::{self, Scalar};
use affprox::{AffineFunctional, AffineMap, Instance, Point, Polytope};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;

/// An exact rational in the interchange format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rational(pub Scalar);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&scalar::format(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RationalVisitor;

        impl Visitor<'_> for RationalVisitor {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string \"p/q\" or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
                scalar::parse(v).map(Rational).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
                Ok(Rational(scalar::int(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
                Ok(Rational(Scalar::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Rational, E> {
                Err(E::custom(format!(
                    "floating-point number {v} not allowed; write it as \"p/q\""
                )))
            }
        }

        deserializer.deserialize_any(RationalVisitor)
    }
}

pub type Vector = Vec<Rational>;

pub fn to_scalars(v: &[Rational]) -> Vec<Scalar> {
    v.iter().map(|r| r.0.clone()).collect()
}

pub fn from_scalars(v: &[Scalar]) -> Vector {
    v.iter().cloned().map(Rational).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub matrix: Vec<Vector>,
    pub offset: Vector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionalSpec {
    pub coeffs: Vector,
    pub constant: Rational,
}

impl From<&AffineFunctional> for FunctionalSpec {
    fn from(f: &AffineFunctional) -> Self {
        FunctionalSpec {
            coeffs: from_scalars(&f.coeffs),
            constant: Rational(f.constant.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(rename = "dim_C")]
    pub dim_c: usize,
    #[serde(rename = "dim_D")]
    pub dim_d: usize,
    #[serde(rename = "C_vertices")]
    pub c_vertices: Vec<Vector>,
    pub map: MapSpec,
    #[serde(
        rename = "D_vertices",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub d_vertices: Option<Vec<Vector>>,
    pub f: FunctionalSpec,
}

impl InstanceFile {
    /// Parses JSON text. Errors name the JSON path of the offending value.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|err| {
            let path = err.path().to_string();
            let inner = err.into_inner();
            if path == "." {
                CliError::Parse(inner.to_string())
            } else {
                CliError::Parse(format!("{path}: {inner}"))
            }
        })
    }

    /// Canonical pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("instance serializes");
        text.push('\n');
        text
    }

    /// Structural validation followed by the surjectivity check when `D` is
    /// explicit. Errors name the first violated field.
    pub fn validate(&self) -> Result<Instance, CliError> {
        let invalid = |msg: String| CliError::Invalid(msg);
        if self.dim_c == 0 {
            return Err(invalid("dim_C: must be positive".into()));
        }
        if self.dim_d == 0 {
            return Err(invalid("dim_D: must be positive".into()));
        }
        let points =
            |field: &str, vectors: &[Vector], dim: usize| -> Result<Vec<Point>, CliError> {
                if vectors.is_empty() {
                    return Err(invalid(format!("{field}: needs at least one vertex")));
                }
                vectors
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        if v.len() == dim {
                            Ok(Point::new(to_scalars(v)))
                        } else {
                            Err(invalid(format!(
                                "{field}[{i}]: expected {dim} coordinates, found {}",
                                v.len()
                            )))
                        }
                    })
                    .collect()
            };
        let c_points = points("C_vertices", &self.c_vertices, self.dim_c)?;

        if self.map.matrix.len() != self.dim_d {
            return Err(invalid(format!(
                "map.matrix: expected dim_D = {} rows, found {}",
                self.dim_d,
                self.map.matrix.len()
            )));
        }
        for (i, row) in self.map.matrix.iter().enumerate() {
            if row.len() != self.dim_c {
                return Err(invalid(format!(
                    "map.matrix[{i}]: expected dim_C = {} entries, found {}",
                    self.dim_c,
                    row.len()
                )));
            }
        }
        if self.map.offset.len() != self.dim_d {
            return Err(invalid(format!(
                "map.offset: expected dim_D = {} entries, found {}",
                self.dim_d,
                self.map.offset.len()
            )));
        }
        let d_points = self
            .d_vertices
            .as_ref()
            .map(|d| points("D_vertices", d, self.dim_d))
            .transpose()?;
        if self.f.coeffs.len() != self.dim_c {
            return Err(invalid(format!(
                "f.coeffs: expected dim_C = {} entries, found {}",
                self.dim_c,
                self.f.coeffs.len()
            )));
        }

        let domain = Polytope::new(self.dim_c, c_points)?;
        let matrix = self.map.matrix.iter().map(|r| to_scalars(r)).collect();
        let map = AffineMap::new(matrix, Point::new(to_scalars(&self.map.offset)))?;
        let target = d_points.map(|p| Polytope::new(self.dim_d, p)).transpose()?;
        let f = AffineFunctional::new(to_scalars(&self.f.coeffs), self.f.constant.0.clone());
        Instance::new(domain, map, target, f).map_err(|err| match err {
            affprox::Error::NotSurjective(failure) => invalid(format!("D_vertices: {failure}")),
            other => other.into(),
        })
    }

    pub fn from_instance(instance: &Instance) -> Self {
        let vectors = |p: &Polytope| -> Vec<Vector> {
            p.generators()
                .iter()
                .map(|g| from_scalars(g.coords()))
                .collect()
        };
        InstanceFile {
            dim_c: instance.domain().dim(),
            dim_d: instance.map().codomain_dim(),
            c_vertices: vectors(instance.domain()),
            map: MapSpec {
                matrix: instance
                    .map()
                    .matrix()
                    .iter()
                    .map(|r| from_scalars(r))
                    .collect(),
                offset: from_scalars(instance.map().offset().coords()),
            },
            d_vertices: instance
                .has_explicit_target()
                .then(|| vectors(instance.target())),
            f: FunctionalSpec::from(instance.functional()),
        }
    }
}

/// Reads and validates an instance file.
pub fn load_instance(path: &std::path::Path) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path)?;
    InstanceFile::parse(&text)?.validate()
}

/// Parses a comma-separated list of rationals, e.g. `"1/2,3"`.
pub fn parse_vector(text: &str) -> Result<Vec<Scalar>, CliError> {
    text.split(',')
        .map(|tok| scalar::parse(tok.trim()).map_err(|e| CliError::Parse(e.to_string())))
        .collect()
}
