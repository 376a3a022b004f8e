//! Bundled dense-tableau primal simplex with Bland's anti-cycling rule.
//!
//! Two phases: artificial variables are minimized first, then the actual
//! objective. Free variables are split into nonnegative pairs and finite
//! bounds are shifted/rowified here, so the public model keeps its stated
//! bounds. Everything is plain `f64` arithmetic in a fixed order, which makes
//! repeated solves of the same program bit-identical.

use super::{
    Direction, LinearProgram, LpBackend, ModelError, Sense, SolveOutcome, Tolerances,
};

/// Pivot-level tolerance: entries smaller than this are treated as zero when
/// choosing pivots. Distinct from the user-facing feasibility tolerance.
const PIVOT_TOL: f64 = 1e-9;

/// Dense simplex backend. Adequate for desk-scale programs (up to a few
/// thousand nonzeros); not a sparse revised implementation.
#[derive(Debug, Clone, Copy)]
pub struct DenseSimplex {
    pub tolerances: Tolerances,
    pub max_pivots: usize,
}

impl Default for DenseSimplex {
    fn default() -> Self {
        Self { tolerances: Tolerances::default(), max_pivots: 200_000 }
    }
}

impl DenseSimplex {
    pub fn new(tolerances: Tolerances) -> Self {
        Self { tolerances, ..Self::default() }
    }
}

impl LpBackend for DenseSimplex {
    fn solve(
        &self,
        lp: &LinearProgram,
        objective: usize,
        direction: Direction,
    ) -> Result<SolveOutcome, ModelError> {
        lp.validate()?;
        if objective >= lp.objectives.len() {
            return Err(ModelError::BadObjectiveIndex(objective, lp.objectives.len()));
        }
        let std = Standardized::build(lp, objective, direction);
        let outcome = std.solve(self)?;
        if let Some(point) = &outcome.point {
            // Cheap certificate: a returned optimum must actually satisfy
            // the program it claims to solve.
            let scale = 1.0 + std.rhs_scale;
            if lp.max_violation(point) > 1e3 * self.tolerances.feas * scale {
                return Err(ModelError::Internal(format!(
                    "optimal point violates constraints by {:.3e}",
                    lp.max_violation(point)
                )));
            }
        }
        Ok(outcome)
    }

    fn tolerances(&self) -> Tolerances {
        self.tolerances
    }
}

/// How one model variable maps onto standard-form columns.
#[derive(Debug, Clone, Copy)]
enum ColumnMap {
    /// `x = shift + col` with `col >= 0`.
    Shifted { col: usize, shift: f64 },
    /// Free variable split `x = plus - minus`.
    Split { plus: usize, minus: usize },
}

/// Row in `A x {<=,>=,=} b` form with the rhs normalized nonnegative.
struct StdRow {
    coeffs: Vec<f64>, // dense over structural columns
    sense: Sense,
    rhs: f64,
}

struct Standardized {
    columns: Vec<ColumnMap>,
    n_structural: usize,
    rows: Vec<StdRow>,
    /// Structural-column objective (already sign-adjusted for direction).
    cost: Vec<f64>,
    objective: usize,
    original: LinearProgram,
    rhs_scale: f64,
}

impl Standardized {
    fn build(lp: &LinearProgram, objective: usize, direction: Direction) -> Self {
        let mut columns = Vec::with_capacity(lp.num_variables());
        let mut n_structural = 0usize;
        // Extra rows produced by finite upper bounds.
        let mut bound_rows: Vec<(usize, f64)> = Vec::new(); // (variable, span or bound)

        for (i, var) in lp.variables.iter().enumerate() {
            if var.lower.is_finite() {
                columns.push(ColumnMap::Shifted { col: n_structural, shift: var.lower });
                n_structural += 1;
                if var.upper.is_finite() {
                    bound_rows.push((i, var.upper - var.lower));
                }
            } else {
                columns.push(ColumnMap::Split { plus: n_structural, minus: n_structural + 1 });
                n_structural += 2;
                if var.upper.is_finite() {
                    bound_rows.push((i, var.upper));
                }
            }
        }

        let dense_row = |terms: &[(usize, f64)]| -> (Vec<f64>, f64) {
            // Returns structural coefficients plus the rhs correction caused
            // by lower-bound shifts.
            let mut coeffs = vec![0.0; n_structural];
            let mut shift_sum = 0.0;
            for &(var, coef) in terms {
                match columns[var] {
                    ColumnMap::Shifted { col, shift } => {
                        coeffs[col] += coef;
                        shift_sum += coef * shift;
                    }
                    ColumnMap::Split { plus, minus } => {
                        coeffs[plus] += coef;
                        coeffs[minus] -= coef;
                    }
                }
            }
            (coeffs, shift_sum)
        };

        let mut rows = Vec::new();
        let mut rhs_scale = 0.0f64;
        for row in &lp.constraints {
            // Vacuous rows never constrain anything; drop them here.
            let vacuous = matches!(
                (row.sense, row.rhs),
                (Sense::Le, f64::INFINITY) | (Sense::Ge, f64::NEG_INFINITY)
            );
            if vacuous {
                continue;
            }
            let (mut coeffs, shift_sum) = dense_row(&row.terms);
            let mut rhs = row.rhs - shift_sum;
            let mut sense = row.sense;
            if rhs < 0.0 {
                for c in coeffs.iter_mut() {
                    *c = -*c;
                }
                rhs = -rhs;
                sense = match sense {
                    Sense::Le => Sense::Ge,
                    Sense::Ge => Sense::Le,
                    Sense::Eq => Sense::Eq,
                };
            }
            rhs_scale = rhs_scale.max(rhs.abs());
            rows.push(StdRow { coeffs, sense, rhs });
        }
        for (var, limit) in bound_rows {
            let (mut coeffs, _) = dense_row(&[(var, 1.0)]);
            let mut rhs = limit;
            let mut sense = Sense::Le;
            if rhs < 0.0 {
                for c in coeffs.iter_mut() {
                    *c = -*c;
                }
                rhs = -rhs;
                sense = Sense::Ge;
            }
            rhs_scale = rhs_scale.max(rhs.abs());
            rows.push(StdRow { coeffs, sense, rhs });
        }

        let sign = match direction {
            Direction::Min => 1.0,
            Direction::Max => -1.0,
        };
        let (mut cost, _) = dense_row(
            &lp.objectives[objective]
                .coefficients
                .iter()
                .enumerate()
                .map(|(i, &c)| (i, c))
                .collect::<Vec<_>>(),
        );
        for c in cost.iter_mut() {
            *c *= sign;
        }

        Self { columns, n_structural, rows, cost, objective, original: lp.clone(), rhs_scale }
    }

    fn solve(&self, opts: &DenseSimplex) -> Result<SolveOutcome, ModelError> {
        let m = self.rows.len();
        let n_struct = self.n_structural;

        // Column layout: structural | slack/surplus | artificial.
        let mut n_cols = n_struct;
        let mut slack_col = vec![None; m];
        let mut art_col = vec![None; m];
        for (i, row) in self.rows.iter().enumerate() {
            match row.sense {
                Sense::Le | Sense::Ge => {
                    slack_col[i] = Some(n_cols);
                    n_cols += 1;
                }
                Sense::Eq => {}
            }
        }
        let artificial_start = n_cols;
        for (i, row) in self.rows.iter().enumerate() {
            match row.sense {
                Sense::Ge | Sense::Eq => {
                    art_col[i] = Some(n_cols);
                    n_cols += 1;
                }
                Sense::Le => {}
            }
        }

        let width = n_cols + 1; // + rhs
        let mut a = vec![0.0f64; m * width];
        let mut basis = vec![0usize; m];
        let mut active = vec![true; m];

        for (i, row) in self.rows.iter().enumerate() {
            let base = i * width;
            a[base..base + n_struct].copy_from_slice(&row.coeffs);
            a[base + n_cols] = row.rhs;
            match row.sense {
                Sense::Le => {
                    let s = slack_col[i].unwrap();
                    a[base + s] = 1.0;
                    basis[i] = s;
                }
                Sense::Ge => {
                    let s = slack_col[i].unwrap();
                    let t = art_col[i].unwrap();
                    a[base + s] = -1.0;
                    a[base + t] = 1.0;
                    basis[i] = t;
                }
                Sense::Eq => {
                    let t = art_col[i].unwrap();
                    a[base + t] = 1.0;
                    basis[i] = t;
                }
            }
        }

        let mut in_basis = vec![false; n_cols];
        for &b in &basis {
            in_basis[b] = true;
        }

        let mut pivots_left = opts.max_pivots;

        // Phase 1: minimize the sum of artificial variables.
        if artificial_start < n_cols {
            let mut cost1 = vec![0.0f64; width];
            for j in artificial_start..n_cols {
                cost1[j] = 1.0;
            }
            // Make reduced costs consistent with the artificial basis.
            for i in 0..m {
                if basis[i] >= artificial_start {
                    let base = i * width;
                    for j in 0..width {
                        cost1[j] -= a[base + j];
                    }
                }
            }
            run_simplex(
                &mut a, &mut cost1, &mut basis, &mut in_basis, &active, m, width, n_cols,
                n_cols, // artificials may pivot during phase 1
                &mut pivots_left,
            )?
            .ok_or(ModelError::Internal("phase 1 reported unbounded".into()))?;

            let phase1_value = -cost1[n_cols];
            let feas_threshold = opts.tolerances.feas * (1.0 + self.rhs_scale);
            if phase1_value > feas_threshold {
                return Ok(SolveOutcome::infeasible());
            }

            // Drive leftover artificials out of the basis; rows that cannot
            // pivot them out are redundant and get dropped.
            for i in 0..m {
                if basis[i] < artificial_start {
                    continue;
                }
                let base = i * width;
                let mut replacement = None;
                for j in 0..artificial_start {
                    if !in_basis[j] && a[base + j].abs() > PIVOT_TOL {
                        replacement = Some(j);
                        break;
                    }
                }
                match replacement {
                    Some(j) => {
                        pivot(&mut a, &mut [cost1.as_mut_slice()], m, width, i, j);
                        in_basis[basis[i]] = false;
                        in_basis[j] = true;
                        basis[i] = j;
                    }
                    None => {
                        active[i] = false;
                    }
                }
            }
        }

        // Phase 2: minimize the real (sign-adjusted) objective.
        let mut cost2 = vec![0.0f64; width];
        cost2[..n_struct].copy_from_slice(&self.cost);
        for i in 0..m {
            if !active[i] {
                continue;
            }
            let c_b = cost2[basis[i]];
            if c_b != 0.0 {
                let base = i * width;
                for j in 0..width {
                    cost2[j] -= c_b * a[base + j];
                }
            }
        }
        let result = run_simplex(
            &mut a, &mut cost2, &mut basis, &mut in_basis, &active, m, width, n_cols,
            artificial_start, // artificials must not re-enter
            &mut pivots_left,
        )?;
        if result.is_none() {
            return Ok(SolveOutcome::unbounded());
        }

        // Read structural values off the basis and undo shifts/splits.
        let mut structural = vec![0.0f64; n_struct];
        for i in 0..m {
            if active[i] && basis[i] < n_struct {
                structural[basis[i]] = a[i * width + n_cols];
            }
        }
        let mut point = vec![0.0f64; self.columns.len()];
        for (v, map) in self.columns.iter().enumerate() {
            point[v] = match *map {
                ColumnMap::Shifted { col, shift } => shift + structural[col],
                ColumnMap::Split { plus, minus } => structural[plus] - structural[minus],
            };
        }
        let value = super::evaluate(&self.original.objectives[self.objective], &point)?;
        Ok(SolveOutcome::optimal(point, value))
    }
}

/// Run Bland-rule iterations until optimality (`Some`) or unboundedness
/// (`None`). The cost row is pivoted along with the tableau.
#[allow(clippy::too_many_arguments)]
fn run_simplex(
    a: &mut [f64],
    cost: &mut [f64],
    basis: &mut [usize],
    in_basis: &mut [bool],
    active: &[bool],
    m: usize,
    width: usize,
    n_cols: usize,
    enterable: usize,
    pivots_left: &mut usize,
) -> Result<Option<()>, ModelError> {
    loop {
        // Bland: entering column is the lowest-index improving one.
        let mut entering = None;
        for j in 0..enterable {
            if !in_basis[j] && cost[j] < -PIVOT_TOL {
                entering = Some(j);
                break;
            }
        }
        let Some(j) = entering else {
            return Ok(Some(()));
        };

        // Ratio test; ties broken by the smallest basic-variable index.
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            if !active[i] {
                continue;
            }
            let aij = a[i * width + j];
            if aij > PIVOT_TOL {
                let ratio = a[i * width + n_cols] / aij;
                match leave {
                    None => leave = Some((i, ratio)),
                    Some((best_i, best_ratio)) => {
                        if ratio < best_ratio - PIVOT_TOL
                            || ((ratio - best_ratio).abs() <= PIVOT_TOL
                                && basis[i] < basis[best_i])
                        {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((r, _)) = leave else {
            return Ok(None);
        };

        if *pivots_left == 0 {
            return Err(ModelError::PivotLimit(0));
        }
        *pivots_left -= 1;

        pivot(a, &mut [&mut *cost], m, width, r, j);
        in_basis[basis[r]] = false;
        in_basis[j] = true;
        basis[r] = j;
    }
}

/// Gauss-Jordan pivot on (row, col), applied to the tableau and cost rows.
fn pivot(a: &mut [f64], cost_rows: &mut [&mut [f64]], m: usize, width: usize, r: usize, j: usize) {
    let p = a[r * width + j];
    let rbase = r * width;
    for k in 0..width {
        a[rbase + k] /= p;
    }
    a[rbase + j] = 1.0;
    for i in 0..m {
        if i == r {
            continue;
        }
        let factor = a[i * width + j];
        if factor != 0.0 {
            let ibase = i * width;
            for k in 0..width {
                a[ibase + k] -= factor * a[rbase + k];
            }
            a[ibase + j] = 0.0;
        }
    }
    for cost in cost_rows.iter_mut() {
        let factor = cost[j];
        if factor != 0.0 {
            for k in 0..width {
                cost[k] -= factor * a[rbase + k];
            }
            cost[j] = 0.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{LinearConstraint, LinearObjective, LinearProgram, SolveStatus, Variable};

    fn solve_min(lp: &LinearProgram, obj: usize) -> SolveOutcome {
        DenseSimplex::default().solve(lp, obj, Direction::Min).unwrap()
    }

    #[test]
    fn bound_active_identity_case() {
        // min x1 s.t. x1 >= 0
        let mut lp = LinearProgram::new();
        lp.add_variable(Variable::nonneg("x1"));
        lp.add_objective(LinearObjective::new("x1", vec![1.0], 0.0));
        let out = solve_min(&lp, 0);
        assert_eq!(out.status, SolveStatus::Optimal);
        assert_eq!(out.expect_value(), 0.0);
        assert_eq!(out.expect_point(), &[0.0]);
    }

    #[test]
    fn two_variable_vertex() {
        // min x1 + x2 s.t. x1 + 2 x2 >= 2, x >= 0 -> value 1 at (0, 1)
        let mut lp = LinearProgram::new();
        lp.add_variable(Variable::nonneg("x1"));
        lp.add_variable(Variable::nonneg("x2"));
        lp.add_row(LinearConstraint::new(vec![(0, 1.0), (1, 2.0)], Sense::Ge, 2.0));
        lp.add_objective(LinearObjective::new("sum", vec![1.0, 1.0], 0.0));
        let out = solve_min(&lp, 0);
        assert_eq!(out.status, SolveStatus::Optimal);
        assert!((out.expect_value() - 1.0).abs() < 1e-9);
        let p = out.expect_point();
        assert!((p[0] - 0.0).abs() < 1e-9 && (p[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn contradictory_bounds_infeasible() {
        // min x1 s.t. x1 <= -1, x1 >= 0
        let mut lp = LinearProgram::new();
        lp.add_variable(Variable::nonneg("x1"));
        lp.add_row(LinearConstraint::new(vec![(0, 1.0)], Sense::Le, -1.0));
        lp.add_objective(LinearObjective::new("x1", vec![1.0], 0.0));
        assert_eq!(solve_min(&lp, 0).status, SolveStatus::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        // min -x1 over x1 >= 0 with no cap
        let mut lp = LinearProgram::new();
        lp.add_variable(Variable::nonneg("x1"));
        lp.add_objective(LinearObjective::new("neg", vec![-1.0], 0.0));
        assert_eq!(solve_min(&lp, 0).status, SolveStatus::Unbounded);
    }

    #[test]
    fn honors_direction_max() {
        let mut lp = LinearProgram::new();
        lp.add_variable(Variable::bounded("x1", 0.0, 4.0));
        lp.add_objective(LinearObjective::new("x1", vec![1.0], 0.0));
        let out = DenseSimplex::default().solve(&lp, 0, Direction::Max).unwrap();
        assert_eq!(out.expect_value(), 4.0);
    }

    #[test]
    fn free_variable_split() {
        // min x over free x with x >= -3 as a row
        let mut lp = LinearProgram::new();
        lp.add_variable(Variable::free("x"));
        lp.add_row(LinearConstraint::new(vec![(0, 1.0)], Sense::Ge, -3.0));
        lp.add_objective(LinearObjective::new("x", vec![1.0], 0.0));
        let out = solve_min(&lp, 0);
        assert_eq!(out.status, SolveStatus::Optimal);
        assert!((out.expect_value() + 3.0).abs() < 1e-9);
    }

    #[test]
    fn equality_rows_via_two_phase() {
        // min x1 + x2 s.t. x1 + x2 = 3, x1 - x2 = 1 -> unique point (2, 1)
        let mut lp = LinearProgram::new();
        lp.add_variable(Variable::nonneg("x1"));
        lp.add_variable(Variable::nonneg("x2"));
        lp.add_row(LinearConstraint::new(vec![(0, 1.0), (1, 1.0)], Sense::Eq, 3.0));
        lp.add_row(LinearConstraint::new(vec![(0, 1.0), (1, -1.0)], Sense::Eq, 1.0));
        lp.add_objective(LinearObjective::new("sum", vec![1.0, 1.0], 0.0));
        let out = solve_min(&lp, 0);
        let p = out.expect_point();
        assert!((p[0] - 2.0).abs() < 1e-9 && (p[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn redundant_equality_rows() {
        // Duplicated equality must not confuse phase 1.
        let mut lp = LinearProgram::new();
        lp.add_variable(Variable::nonneg("x1"));
        lp.add_variable(Variable::nonneg("x2"));
        lp.add_row(LinearConstraint::new(vec![(0, 1.0), (1, 1.0)], Sense::Eq, 2.0));
        lp.add_row(LinearConstraint::new(vec![(0, 2.0), (1, 2.0)], Sense::Eq, 4.0));
        lp.add_objective(LinearObjective::new("x1", vec![1.0, 0.0], 0.0));
        let out = solve_min(&lp, 0);
        assert_eq!(out.status, SolveStatus::Optimal);
        assert!(out.expect_value().abs() < 1e-9);
    }

    #[test]
    fn duplicate_constraint_changes_nothing() {
        let mut lp = LinearProgram::new();
        lp.add_variable(Variable::nonneg("x1"));
        lp.add_variable(Variable::nonneg("x2"));
        lp.add_row(LinearConstraint::new(vec![(0, 1.0), (1, 2.0)], Sense::Ge, 2.0));
        lp.add_objective(LinearObjective::new("sum", vec![1.0, 1.0], 0.0));
        let before = solve_min(&lp, 0).expect_value();
        let doubled =
            crate::lp::add_constraint(&lp, LinearConstraint::new(vec![(0, 1.0), (1, 2.0)], Sense::Ge, 2.0))
                .unwrap();
        let after = solve_min(&doubled, 0).expect_value();
        assert!((before - after).abs() <= 1e-6 * before.abs().max(1.0));
    }

    #[test]
    fn deterministic_repeat_solves() {
        let mut lp = LinearProgram::new();
        for i in 0..4 {
            lp.add_variable(Variable::bounded(format!("x{i}"), 0.0, 10.0));
        }
        lp.add_row(LinearConstraint::new(
            vec![(0, 1.0), (1, 1.0), (2, 1.0), (3, 1.0)],
            Sense::Ge,
            7.0,
        ));
        lp.add_row(LinearConstraint::new(vec![(0, 3.0), (2, -1.0)], Sense::Le, 5.0));
        lp.add_objective(LinearObjective::new("mix", vec![1.0, 2.0, 0.5, 1.5], 0.25));
        let a = solve_min(&lp, 0);
        let b = solve_min(&lp, 0);
        assert_eq!(a.status, b.status);
        assert_eq!(a.objective_value.unwrap().to_bits(), b.objective_value.unwrap().to_bits());
        assert_eq!(a.point, b.point);
    }

    #[test]
    fn vacuous_cap_row_is_ignored() {
        let mut lp = LinearProgram::new();
        lp.add_variable(Variable::nonneg("x1"));
        lp.add_row(LinearConstraint::new(vec![(0, 1.0)], Sense::Le, f64::INFINITY));
        lp.add_row(LinearConstraint::new(vec![(0, 1.0)], Sense::Ge, 2.0));
        lp.add_objective(LinearObjective::new("x1", vec![1.0], 0.0));
        let out = solve_min(&lp, 0);
        assert!((out.expect_value() - 2.0).abs() < 1e-9);
    }
}
