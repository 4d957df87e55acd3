//! Certificate checking by direct evaluation. Nothing here touches the
//! tableau; a certificate is accepted only if it proves its outcome for the
//! program exactly as written.

use num_traits::{Signed, Zero};

use super::{LinearProgram, LpOutcome, Relation, Sense};
use crate::scalar::Scalar;

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primal_feasible(lp: &LinearProgram, x: &[Scalar]) -> bool {
    if x.len() != lp.num_vars() {
        return false;
    }
    let rows_ok = lp.constraints.iter().all(|con| {
        let lhs = dot(&con.coeffs, x);
        match con.relation {
            Relation::Le => lhs <= con.rhs,
            Relation::Eq => lhs == con.rhs,
            Relation::Ge => lhs >= con.rhs,
        }
    });
    let bounds_ok = x.iter().enumerate().all(|(j, v)| {
        lp.lower[j].as_ref().is_none_or(|l| v >= l) && lp.upper[j].as_ref().is_none_or(|u| v <= u)
    });
    rows_ok && bounds_ok
}

/// `Aᵀy`.
fn aggregate(lp: &LinearProgram, y: &[Scalar]) -> Vec<Scalar> {
    let mut g = vec![Scalar::zero(); lp.num_vars()];
    for (con, yi) in lp.constraints.iter().zip(y) {
        if yi.is_zero() {
            continue;
        }
        for (gj, a) in g.iter_mut().zip(&con.coeffs) {
            *gj += yi * a;
        }
    }
    g
}

/// Row multipliers whose aggregate `Σ yᵢ(aᵢ·x − bᵢ)` is nonnegative on the
/// feasible set: `yᵢ ≥ 0` on `≥` rows, `yᵢ ≤ 0` on `≤` rows.
fn aggregation_signs_ok(lp: &LinearProgram, y: &[Scalar]) -> bool {
    lp.constraints
        .iter()
        .zip(y)
        .all(|(con, yi)| match con.relation {
            Relation::Le => !yi.is_positive(),
            Relation::Ge => !yi.is_negative(),
            Relation::Eq => true,
        })
}

/// `min_{l ≤ x ≤ u} g·x`, or `None` when it is `−∞`.
fn box_minimum(lp: &LinearProgram, g: &[Scalar]) -> Option<Scalar> {
    let mut total = Scalar::zero();
    for (j, gj) in g.iter().enumerate() {
        if gj.is_positive() {
            total += gj * lp.lower[j].as_ref()?;
        } else if gj.is_negative() {
            total += gj * lp.upper[j].as_ref()?;
        }
    }
    Some(total)
}

fn verify_optimal(lp: &LinearProgram, x: &[Scalar], value: &Scalar, dual: &[Scalar]) -> bool {
    if !primal_feasible(lp, x) || dot(&lp.objective, x) != *value {
        return false;
    }
    if dual.len() != lp.constraints.len() {
        return false;
    }
    // Reduce to minimization: max c·x = −min (−c)·x, with multipliers negated.
    let (cost, y, target): (Vec<Scalar>, Vec<Scalar>, Scalar) = match lp.sense {
        Sense::Minimize => (lp.objective.clone(), dual.to_vec(), value.clone()),
        Sense::Maximize => (
            lp.objective.iter().map(|c| -c).collect(),
            dual.iter().map(|y| -y).collect(),
            -value,
        ),
    };
    if !aggregation_signs_ok(lp, &y) {
        return false;
    }
    // For any feasible x': c·x' = y·(Ax') + z·x' ≥ y·b + min_box z·x'.
    let ay = aggregate(lp, &y);
    let reduced: Vec<Scalar> = cost.iter().zip(&ay).map(|(c, a)| c - a).collect();
    let Some(box_part) = box_minimum(lp, &reduced) else {
        return false;
    };
    let rhs: Vec<Scalar> = lp.constraints.iter().map(|c| c.rhs.clone()).collect();
    let dual_value = dot(&y, &rhs) + box_part;
    dual_value == target
}

fn verify_infeasible(lp: &LinearProgram, farkas: &[Scalar]) -> bool {
    if farkas.len() != lp.constraints.len() || !aggregation_signs_ok(lp, farkas) {
        return false;
    }
    // Feasible x would satisfy g·x ≥ y·b, yet g·x ≤ max_box g·x < y·b.
    let g = aggregate(lp, farkas);
    let negated: Vec<Scalar> = g.iter().map(|v| -v).collect();
    let Some(neg_max) = box_minimum(lp, &negated) else {
        return false;
    };
    let rhs: Vec<Scalar> = lp.constraints.iter().map(|c| c.rhs.clone()).collect();
    -neg_max < dot(farkas, &rhs)
}

fn verify_unbounded(lp: &LinearProgram, point: &[Scalar], ray: &[Scalar]) -> bool {
    if !primal_feasible(lp, point) || ray.len() != lp.num_vars() {
        return false;
    }
    let recession = lp.constraints.iter().all(|con| {
        let slope = dot(&con.coeffs, ray);
        match con.relation {
            Relation::Le => !slope.is_positive(),
            Relation::Eq => slope.is_zero(),
            Relation::Ge => !slope.is_negative(),
        }
    });
    let within_bounds = ray.iter().enumerate().all(|(j, d)| {
        (lp.lower[j].is_none() || !d.is_negative()) && (lp.upper[j].is_none() || !d.is_positive())
    });
    let gain = dot(&lp.objective, ray);
    let improving = match lp.sense {
        Sense::Minimize => gain.is_negative(),
        Sense::Maximize => gain.is_positive(),
    };
    recession && within_bounds && improving
}

/// True iff `outcome` carries a certificate that proves itself for `lp`.
/// Returns false for malformed programs or mis-shaped certificates.
pub fn verify_certificate(lp: &LinearProgram, outcome: &LpOutcome) -> bool {
    if lp.validate().is_err() {
        return false;
    }
    match outcome {
        LpOutcome::Optimal { x, value, dual } => verify_optimal(lp, x, value, dual),
        LpOutcome::Infeasible { farkas } => verify_infeasible(lp, farkas),
        LpOutcome::Unbounded { point, ray } => verify_unbounded(lp, point, ray),
    }
}
