//! Dense two-phase tableau simplex with Bland's least-index rule.
//!
//! The program is rewritten as `min c'·z, A'z = b', z ≥ 0, b' ≥ 0`:
//! variables with a finite lower bound are shifted (`x = l + z`), those with
//! only an upper bound are reflected (`x = u − z`), free variables are split
//! (`x = z⁺ − z⁻`). A finite upper bound on a shifted variable becomes the
//! row `z + s = u − l`. Every row gets an artificial column; since those
//! columns start as the identity, they hold `B⁻¹` throughout, which is how
//! the dual and Farkas multipliers are recovered.

use num_traits::{One, Signed, Zero};

use super::{LinearProgram, LpOutcome, Relation, Sense};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

enum Column {
    Shift {
        col: usize,
        offset: Scalar,
        reflected: bool,
    },
    Split {
        pos: usize,
        neg: usize,
    },
}

impl Column {
    fn recover(&self, z: &[Scalar]) -> Scalar {
        match self {
            Column::Shift {
                col,
                offset,
                reflected: false,
            } => offset + &z[*col],
            Column::Shift {
                col,
                offset,
                reflected: true,
            } => offset - &z[*col],
            Column::Split { pos, neg } => &z[*pos] - &z[*neg],
        }
    }

    fn recover_direction(&self, dz: &[Scalar]) -> Scalar {
        match self {
            Column::Shift {
                col,
                reflected: false,
                ..
            } => dz[*col].clone(),
            Column::Shift {
                col,
                reflected: true,
                ..
            } => -&dz[*col],
            Column::Split { pos, neg } => &dz[*pos] - &dz[*neg],
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Scalar>>,
    objective: Vec<Scalar>,
    basis: Vec<usize>,
    /// Structural plus slack columns; artificials follow.
    n_real: usize,
    rhs: usize,
}

impl Tableau {
    fn rhs_col(&self) -> usize {
        self.rhs
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let p = self.rows[r][q].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let eliminate = |row: &mut Vec<Scalar>| {
            let factor = row[q].clone();
            if factor.is_zero() {
                return;
            }
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.objective);
        self.rows[r] = pivot_row;
        self.basis[r] = q;
    }

    /// Installs reduced costs for `cost` (indexed by column, artificials
    /// included) against the current basis.
    fn price(&mut self, cost: &[Scalar]) {
        let rhs = self.rhs_col();
        let mut obj: Vec<Scalar> = cost.to_vec();
        obj.push(Scalar::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (o, v) in obj.iter_mut().zip(row) {
                if !v.is_zero() {
                    *o -= cb * v;
                }
            }
        }
        debug_assert_eq!(obj.len(), rhs + 1);
        self.objective = obj;
    }

    /// Runs Bland's rule over columns `< limit`. Returns the entering column
    /// that proves unboundedness, or `None` at optimality.
    fn run(&mut self, limit: usize) -> Option<usize> {
        let rhs = self.rhs_col();
        loop {
            let entering = (0..limit).find(|&j| self.objective[j].is_negative())?;
            let mut leaving: Option<(usize, Scalar)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[entering].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[entering];
                let better = match &leaving {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            match leaving {
                Some((r, _)) => self.pivot(r, entering),
                None => return Some(entering),
            }
        }
    }

    fn values(&self) -> Vec<Scalar> {
        let rhs = self.rhs_col();
        let mut z = vec![Scalar::zero(); rhs];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            z[b] = row[rhs].clone();
        }
        z
    }

    /// `c_B B⁻¹`, read from the artificial columns.
    fn multipliers(&self, cost: &[Scalar]) -> Vec<Scalar> {
        (0..self.rows.len())
            .map(|k| {
                let col = self.n_real + k;
                self.rows
                    .iter()
                    .zip(&self.basis)
                    .filter(|(row, &b)| !row[col].is_zero() && !cost[b].is_zero())
                    .map(|(row, &b)| &cost[b] * &row[col])
                    .sum()
            })
            .collect()
    }
}

/// Solves `lp` exactly. Deterministic: the same program always yields the
/// same outcome.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;
    let n = lp.num_vars();

    // Orient as minimization.
    let cost_orig: Vec<Scalar> = match lp.sense {
        Sense::Minimize => lp.objective.clone(),
        Sense::Maximize => lp.objective.iter().map(|c| -c).collect(),
    };

    let mut columns = Vec::with_capacity(n);
    let mut n_struct = 0;
    let mut bound_rows: Vec<(usize, Scalar)> = Vec::new();
    for j in 0..n {
        match (&lp.lower[j], &lp.upper[j]) {
            (Some(l), upper) => {
                if let Some(u) = upper {
                    bound_rows.push((n_struct, u - l));
                }
                columns.push(Column::Shift {
                    col: n_struct,
                    offset: l.clone(),
                    reflected: false,
                });
                n_struct += 1;
            }
            (None, Some(u)) => {
                columns.push(Column::Shift {
                    col: n_struct,
                    offset: u.clone(),
                    reflected: true,
                });
                n_struct += 1;
            }
            (None, None) => {
                columns.push(Column::Split {
                    pos: n_struct,
                    neg: n_struct + 1,
                });
                n_struct += 2;
            }
        }
    }

    let n_orig_rows = lp.constraints.len();
    let n_slack = lp
        .constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count()
        + bound_rows.len();
    let m = n_orig_rows + bound_rows.len();
    let n_real = n_struct + n_slack;
    let width = n_real + m + 1;
    let rhs_col = width - 1;

    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(m);
    let mut slack = n_struct;
    for con in &lp.constraints {
        let mut row = vec![Scalar::zero(); width];
        let mut rhs = con.rhs.clone();
        for (a, column) in con.coeffs.iter().zip(&columns) {
            if a.is_zero() {
                continue;
            }
            match column {
                Column::Shift {
                    col,
                    offset,
                    reflected,
                } => {
                    rhs -= a * offset;
                    if *reflected {
                        row[*col] -= a;
                    } else {
                        row[*col] += a;
                    }
                }
                Column::Split { pos, neg } => {
                    row[*pos] += a;
                    row[*neg] -= a;
                }
            }
        }
        match con.relation {
            Relation::Le => {
                row[slack] = Scalar::one();
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = -Scalar::one();
                slack += 1;
            }
            Relation::Eq => {}
        }
        row[rhs_col] = rhs;
        rows.push(row);
    }
    for (col, width_bound) in &bound_rows {
        let mut row = vec![Scalar::zero(); width];
        row[*col] = Scalar::one();
        row[slack] = Scalar::one();
        slack += 1;
        row[rhs_col] = width_bound.clone();
        rows.push(row);
    }
    debug_assert_eq!(slack, n_real);

    let mut flipped = vec![false; m];
    for (i, row) in rows.iter_mut().enumerate() {
        if row[rhs_col].is_negative() {
            for v in row.iter_mut() {
                *v = -&*v;
            }
            flipped[i] = true;
        }
        row[n_real + i] = Scalar::one();
    }

    let mut tableau = Tableau {
        rows,
        objective: Vec::new(),
        basis: (n_real..n_real + m).collect(),
        n_real,
        rhs: rhs_col,
    };

    // Phase 1: minimize the sum of artificials.
    let mut phase1_cost = vec![Scalar::zero(); width - 1];
    for c in &mut phase1_cost[n_real..] {
        *c = Scalar::one();
    }
    tableau.price(&phase1_cost);
    if tableau.run(width - 1).is_some() {
        return Err(Error::Internal("phase 1 reported unbounded".into()));
    }
    let to_original_rows = |pi: Vec<Scalar>| -> Vec<Scalar> {
        pi.into_iter()
            .take(n_orig_rows)
            .zip(&flipped)
            .map(|(p, &f)| if f { -p } else { p })
            .collect()
    };
    if tableau.objective[rhs_col].is_negative() {
        let pi = tableau.multipliers(&phase1_cost);
        return Ok(LpOutcome::Infeasible {
            farkas: to_original_rows(pi),
        });
    }

    // Drive zero-level artificials out where a real column can replace them.
    // Rows where none can are redundant; their artificial stays basic at 0.
    for r in 0..m {
        if tableau.basis[r] >= n_real {
            if let Some(q) = (0..n_real).find(|&j| !tableau.rows[r][j].is_zero()) {
                tableau.pivot(r, q);
            }
        }
    }

    // Phase 2.
    let mut cost = vec![Scalar::zero(); width - 1];
    for (c, column) in cost_orig.iter().zip(&columns) {
        match column {
            Column::Shift { col, reflected, .. } => {
                cost[*col] = if *reflected { -c } else { c.clone() }
            }
            Column::Split { pos, neg } => {
                cost[*pos] = c.clone();
                cost[*neg] = -c;
            }
        }
    }
    tableau.price(&cost);
    let unbounded_col = tableau.run(n_real);

    let z = tableau.values();
    let x: Vec<Scalar> = columns.iter().map(|c| c.recover(&z)).collect();

    if let Some(q) = unbounded_col {
        let mut dz = vec![Scalar::zero(); width - 1];
        dz[q] = Scalar::one();
        for (row, &b) in tableau.rows.iter().zip(&tableau.basis) {
            dz[b] = -&row[q];
        }
        let ray = columns.iter().map(|c| c.recover_direction(&dz)).collect();
        return Ok(LpOutcome::Unbounded { point: x, ray });
    }

    let value = crate::geometry::dot(&lp.objective, &x);
    let mut dual = to_original_rows(tableau.multipliers(&cost));
    if lp.sense == Sense::Maximize {
        for y in &mut dual {
            *y = -&*y;
        }
    }
    Ok(LpOutcome::Optimal { x, value, dual })
}
