//! Seeded random instances with small integer data.
//!
//! `D` is left implicit (the image of `C`), so every generated instance is
//! surjective by construction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;
use crate::format::{FunctionalSpec, InstanceFile, MapSpec, Rational, Vector};

const RANGE: std::ops::RangeInclusive<i64> = -5..=5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    pub seed: u64,
    pub dim_c: usize,
    pub dim_d: usize,
    pub vertices: usize,
}

impl GenParams {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.dim_c == 0 || self.dim_d == 0 {
            return Err(CliError::Invalid("dimensions must be positive".into()));
        }
        if self.dim_d > self.dim_c {
            return Err(CliError::Invalid(format!(
                "dim-d ({}) must not exceed dim-c ({})",
                self.dim_d, self.dim_c
            )));
        }
        if self.vertices < self.dim_c + 1 {
            return Err(CliError::Invalid(format!(
                "need at least dim-c + 1 = {} vertices, got {}",
                self.dim_c + 1,
                self.vertices
            )));
        }
        Ok(())
    }
}

fn vector(rng: &mut ChaCha8Rng, len: usize) -> Vector {
    (0..len)
        .map(|_| Rational(affprox::scalar::int(rng.random_range(RANGE))))
        .collect()
}

pub fn generate(params: GenParams) -> Result<InstanceFile, CliError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let c_vertices = (0..params.vertices)
        .map(|_| vector(&mut rng, params.dim_c))
        .collect();
    let matrix = (0..params.dim_d)
        .map(|_| vector(&mut rng, params.dim_c))
        .collect();
    let offset = vector(&mut rng, params.dim_d);
    let coeffs = vector(&mut rng, params.dim_c);
    let constant = Rational(affprox::scalar::int(rng.random_range(RANGE)));
    Ok(InstanceFile {
        dim_c: params.dim_c,
        dim_d: params.dim_d,
        c_vertices,
        map: MapSpec { matrix, offset },
        d_vertices: None,
        f: FunctionalSpec { coeffs, constant },
    })
}
