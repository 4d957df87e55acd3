//! Brute-force grid oracle for the best-approximation distance.
//!
//! Deliberately independent of the LP formulation: `h` is parameterized by
//! its values at affinely independent anchor points of `D` (not by
//! coefficients), and the min-max residual is searched on a nested grid.
//! Each value starts on a grid over `[min f(v) − 1, max f(v) + 1]`; that box
//! contains an optimal `h₀`, since `|h₀(φ(v)) − f(v)| ≤ c/2 ≤ max f − min f`.
//! Each refinement re-centres the grid on the incumbent at a fifth of the
//! previous spacing.
//!
//! The search runs in `f64`. The final incumbent is converted to exact
//! rationals and its residual norm recomputed exactly, so the returned value
//! is the true norm of an actual affine `h` and hence an upper bound on `d`.

use affprox::scalar::{self, Scalar};
use affprox::{Instance, Point};
use num_traits::{One, Signed, Zero};

use crate::error::CliError;

/// Grid intervals per axis; the grid has `GRID + 1` points per axis.
const GRID: usize = 20;

pub const MAX_TARGET_DIM: usize = 2;

/// Solves `M β = rhs` exactly for `M` with linearly independent columns.
/// Returns `None` if the system is inconsistent.
fn solve_exact(columns: &[Vec<Scalar>], rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    let rows = rhs.len();
    let k = columns.len();
    let mut aug: Vec<Vec<Scalar>> = (0..rows)
        .map(|i| {
            columns
                .iter()
                .map(|c| c[i].clone())
                .chain(std::iter::once(rhs[i].clone()))
                .collect()
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..k {
        let Some(p) = (pivot_row..rows).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(pivot_row, p);
        let pv = aug[pivot_row][col].clone();
        for v in aug[pivot_row].iter_mut() {
            *v /= &pv;
        }
        for r in 0..rows {
            if r != pivot_row && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                let pivot = aug[pivot_row].clone();
                for (entry, p) in aug[r].iter_mut().zip(&pivot) {
                    *entry -= &factor * p;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if aug[pivot_row..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut beta = vec![Scalar::zero(); k];
    for (r, &col) in pivots.iter().enumerate() {
        beta[col] = aug[r][k].clone();
    }
    Some(beta)
}

fn difference(a: &Point, b: &Point) -> Vec<Scalar> {
    a.coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| x - y)
        .collect()
}

/// Greedy maximal affinely independent subset of the generators of `D`.
fn anchors(instance: &Instance) -> Vec<Point> {
    let gens = instance.target().generators();
    let mut chosen = vec![gens[0].clone()];
    let mut directions: Vec<Vec<Scalar>> = Vec::new();
    for g in &gens[1..] {
        let dir = difference(g, &chosen[0]);
        if dir.iter().all(Zero::is_zero) {
            continue;
        }
        // Independent iff dir is not in the span of the current directions.
        if directions.is_empty() || solve_exact(&directions, &dir).is_none() {
            directions.push(dir);
            chosen.push(g.clone());
        }
    }
    chosen
}

struct Grid {
    /// Per generator of `C`: barycentric weights of `φ(v)` w.r.t. the anchors.
    weights: Vec<Vec<Scalar>>,
    values: Vec<Scalar>,
}

impl Grid {
    fn build(instance: &Instance) -> Result<Grid, CliError> {
        let anchors = anchors(instance);
        let directions: Vec<Vec<Scalar>> = anchors[1..]
            .iter()
            .map(|a| difference(a, &anchors[0]))
            .collect();
        let mut weights = Vec::new();
        let mut values = Vec::new();
        for v in instance.domain().generators() {
            let y = instance.map().eval(v)?;
            let beta = if directions.is_empty() {
                Some(Vec::new())
            } else {
                solve_exact(&directions, &difference(&y, &anchors[0]))
            };
            let beta = beta.ok_or_else(|| {
                CliError::Verification(format!("image {y} is outside the affine hull of D"))
            })?;
            let first = Scalar::one() - beta.iter().sum::<Scalar>();
            weights.push(std::iter::once(first).chain(beta).collect());
            values.push(instance.functional().eval(v)?);
        }
        Ok(Grid { weights, values })
    }

    fn residual_exact(&self, h: &[Scalar]) -> Scalar {
        self.weights
            .iter()
            .zip(&self.values)
            .map(|(w, fv)| (fv - w.iter().zip(h).map(|(a, b)| a * b).sum::<Scalar>()).abs())
            .max()
            .unwrap_or_else(Scalar::zero)
    }
}

fn residual_f64(weights: &[Vec<f64>], values: &[f64], h: &[f64]) -> f64 {
    weights
        .iter()
        .zip(values)
        .map(|(w, fv)| (fv - w.iter().zip(h).map(|(a, b)| a * b).sum::<f64>()).abs())
        .fold(0.0, f64::max)
}

/// Calls `visit` for every point of the tensor grid `centre ± half_width`.
fn for_each_grid_point(centre: &[f64], half_width: f64, mut visit: impl FnMut(&[f64])) {
    let n = centre.len();
    let step = 2.0 * half_width / GRID as f64;
    let mut index = vec![0usize; n];
    let mut point = vec![0.0; n];
    loop {
        for i in 0..n {
            point[i] = centre[i] - half_width + index[i] as f64 * step;
        }
        visit(&point);
        let mut axis = 0;
        loop {
            if axis == n {
                return;
            }
            index[axis] += 1;
            if index[axis] <= GRID {
                break;
            }
            index[axis] = 0;
            axis += 1;
        }
    }
}

/// Upper bound on `d` from a grid search refined `depth` times.
pub fn oracle_distance(instance: &Instance, depth: u32) -> Result<Scalar, CliError> {
    let dim_d = instance.map().codomain_dim();
    if dim_d > MAX_TARGET_DIM {
        return Err(CliError::Invalid(format!(
            "oracle supports dim_D ≤ {MAX_TARGET_DIM}, instance has dim_D = {dim_d}"
        )));
    }
    if depth == 0 {
        return Err(CliError::Invalid("oracle depth must be at least 1".into()));
    }
    let grid = Grid::build(instance)?;
    let weights: Vec<Vec<f64>> = grid
        .weights
        .iter()
        .map(|w| w.iter().map(scalar::to_f64).collect())
        .collect();
    let values: Vec<f64> = grid.values.iter().map(scalar::to_f64).collect();
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min) - 1.0;
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max) + 1.0;

    let n = weights[0].len();
    let mut centre = vec![(lo + hi) / 2.0; n];
    let mut half_width = (hi - lo) / 2.0;
    for _ in 0..=depth {
        let mut best = (f64::INFINITY, centre.clone());
        for_each_grid_point(&centre, half_width, |h| {
            let r = residual_f64(&weights, &values, h);
            if r < best.0 {
                best = (r, h.to_vec());
            }
        });
        centre = best.1;
        half_width = 4.0 * half_width / GRID as f64;
    }

    let exact: Vec<Scalar> = centre
        .iter()
        .map(|&v| Scalar::from_float(v).expect("finite grid value"))
        .collect();
    Ok(grid.residual_exact(&exact))
}
