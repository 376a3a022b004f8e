//! Linear programs in a canonical form, plus a backend-neutral solver
//! interface with a bundled dense-simplex implementation.
//!
//! A [`LinearProgram`] owns a set of bounded variables, sparse linear
//! constraints and one or more dense linear objectives. Programs are
//! immutable values: transformations such as [`add_constraint`] return a new
//! program and leave the original untouched, so programs can be shared
//! freely across threads and solved concurrently.

mod simplex;

pub use simplex::DenseSimplex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Validation errors raised while building or checking a program.
#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("variable `{0}` is declared more than once")]
    DuplicateVariable(String),
    #[error("variable `{name}` has lower bound {lower} above upper bound {upper}")]
    BoundsCrossed { name: String, lower: f64, upper: f64 },
    #[error("constraint {index} references variable {var} but the program has {count} variables")]
    BadVariableIndex { index: usize, var: usize, count: usize },
    #[error("constraint {0} repeats variable index {1}")]
    DuplicateTerm(usize, usize),
    #[error("constraint {0} has no nonzero coefficient")]
    EmptyConstraint(usize),
    #[error("constraint {0} has a non-finite or contradictory right-hand side")]
    BadRhs(usize),
    #[error("objective `{label}` has {got} coefficients for {want} variables")]
    ObjectiveArity { label: String, got: usize, want: usize },
    #[error("program has no objective")]
    NoObjective,
    #[error("objective index {0} out of range ({1} objectives)")]
    BadObjectiveIndex(usize, usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("solver exceeded the pivot limit ({0} pivots)")]
    PivotLimit(usize),
    #[error("internal solver inconsistency: {0}")]
    Internal(String),
}

/// One decision variable with box bounds. Lower bounds default to zero;
/// a truly free variable must be requested explicitly via [`Variable::free`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub lower: f64,
    pub upper: f64,
}

impl Variable {
    /// Nonnegative variable with no upper bound.
    pub fn nonneg(name: impl Into<String>) -> Self {
        Self { name: name.into(), lower: 0.0, upper: f64::INFINITY }
    }

    /// Variable with explicit box bounds.
    pub fn bounded(name: impl Into<String>, lower: f64, upper: f64) -> Self {
        Self { name: name.into(), lower, upper }
    }

    /// Unbounded in both directions.
    pub fn free(name: impl Into<String>) -> Self {
        Self { name: name.into(), lower: f64::NEG_INFINITY, upper: f64::INFINITY }
    }
}

/// Row sense of a linear constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

/// Sparse linear row: `sum(coef * x[var]) sense rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearConstraint {
    /// `(variable index, coefficient)` pairs; indices must be unique.
    pub terms: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

impl LinearConstraint {
    pub fn new(terms: Vec<(usize, f64)>, sense: Sense, rhs: f64) -> Self {
        Self { terms, sense, rhs }
    }

    /// Signed residual `lhs - rhs` at a point.
    pub fn residual(&self, point: &[f64]) -> f64 {
        let lhs: f64 = self.terms.iter().map(|&(i, c)| c * point[i]).sum();
        lhs - self.rhs
    }

    /// Whether the row holds at `point` within an absolute tolerance.
    pub fn satisfied(&self, point: &[f64], tol: f64) -> bool {
        let r = self.residual(point);
        match self.sense {
            Sense::Ge => r >= -tol,
            Sense::Le => r <= tol,
            Sense::Eq => r.abs() <= tol,
        }
    }
}

/// Dense linear objective `coefficients . x + offset`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearObjective {
    pub label: String,
    pub coefficients: Vec<f64>,
    pub offset: f64,
}

impl LinearObjective {
    pub fn new(label: impl Into<String>, coefficients: Vec<f64>, offset: f64) -> Self {
        Self { label: label.into(), coefficients, offset }
    }
}

/// Evaluate an objective at a point, exactly (no tolerance).
pub fn evaluate(objective: &LinearObjective, point: &[f64]) -> Result<f64, ModelError> {
    if objective.coefficients.len() != point.len() {
        return Err(ModelError::DimensionMismatch {
            expected: objective.coefficients.len(),
            got: point.len(),
        });
    }
    Ok(objective.coefficients.iter().zip(point).map(|(c, x)| c * x).sum::<f64>()
        + objective.offset)
}

/// A multi-objective linear program over box-bounded variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearProgram {
    pub variables: Vec<Variable>,
    pub constraints: Vec<LinearConstraint>,
    pub objectives: Vec<LinearObjective>,
}

impl Default for LinearProgram {
    fn default() -> Self {
        Self::new()
    }
}

impl LinearProgram {
    pub fn new() -> Self {
        Self { variables: Vec::new(), constraints: Vec::new(), objectives: Vec::new() }
    }

    /// Add a variable and return its index.
    pub fn add_variable(&mut self, var: Variable) -> usize {
        self.variables.push(var);
        self.variables.len() - 1
    }

    pub fn add_row(&mut self, row: LinearConstraint) {
        self.constraints.push(row);
    }

    pub fn add_objective(&mut self, objective: LinearObjective) {
        self.objectives.push(objective);
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    /// Check every structural invariant. Solvers call this before touching
    /// the tableau so malformed programs never reach pivoting code.
    pub fn validate(&self) -> Result<(), ModelError> {
        let n = self.variables.len();
        for (i, v) in self.variables.iter().enumerate() {
            if self.variables[..i].iter().any(|w| w.name == v.name) {
                return Err(ModelError::DuplicateVariable(v.name.clone()));
            }
            if v.lower > v.upper {
                return Err(ModelError::BoundsCrossed {
                    name: v.name.clone(),
                    lower: v.lower,
                    upper: v.upper,
                });
            }
        }
        for (ri, row) in self.constraints.iter().enumerate() {
            let mut seen = vec![false; n];
            let mut any_nonzero = false;
            for &(var, coef) in &row.terms {
                if var >= n {
                    return Err(ModelError::BadVariableIndex { index: ri, var, count: n });
                }
                if seen[var] {
                    return Err(ModelError::DuplicateTerm(ri, var));
                }
                seen[var] = true;
                if coef != 0.0 {
                    any_nonzero = true;
                }
            }
            if !any_nonzero {
                return Err(ModelError::EmptyConstraint(ri));
            }
            // Infinite right-hand sides are allowed only where the row is
            // vacuous (<= +inf, >= -inf); the solver drops those rows.
            let vacuous_ok = match row.sense {
                Sense::Le => row.rhs == f64::INFINITY,
                Sense::Ge => row.rhs == f64::NEG_INFINITY,
                Sense::Eq => false,
            };
            if row.rhs.is_nan() || (!row.rhs.is_finite() && !vacuous_ok) {
                return Err(ModelError::BadRhs(ri));
            }
        }
        if self.objectives.is_empty() {
            return Err(ModelError::NoObjective);
        }
        for obj in &self.objectives {
            if obj.coefficients.len() != n {
                return Err(ModelError::ObjectiveArity {
                    label: obj.label.clone(),
                    got: obj.coefficients.len(),
                    want: n,
                });
            }
        }
        Ok(())
    }

    /// Largest violation of any constraint or bound at `point`.
    pub fn max_violation(&self, point: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for row in &self.constraints {
            let r = row.residual(point);
            let v = match row.sense {
                Sense::Ge => (-r).max(0.0),
                Sense::Le => r.max(0.0),
                Sense::Eq => r.abs(),
            };
            worst = worst.max(v);
        }
        for (i, var) in self.variables.iter().enumerate() {
            worst = worst.max(var.lower - point[i]).max(point[i] - var.upper);
        }
        worst
    }
}

/// Return a program whose feasible set is the intersection of `lp` with the
/// new row. The input program is unmodified.
pub fn add_constraint(lp: &LinearProgram, row: LinearConstraint) -> Result<LinearProgram, ModelError> {
    let n = lp.num_variables();
    for &(var, _) in &row.terms {
        if var >= n {
            return Err(ModelError::BadVariableIndex { index: lp.constraints.len(), var, count: n });
        }
    }
    let mut out = lp.clone();
    out.add_row(row);
    Ok(out)
}

/// Optimization direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Min,
    Max,
}

/// Terminal status of a solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of one solve. `point` and `objective_value` are present exactly
/// when the status is `Optimal`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub point: Option<Vec<f64>>,
    pub objective_value: Option<f64>,
}

impl SolveOutcome {
    pub fn infeasible() -> Self {
        Self { status: SolveStatus::Infeasible, point: None, objective_value: None }
    }

    pub fn unbounded() -> Self {
        Self { status: SolveStatus::Unbounded, point: None, objective_value: None }
    }

    pub fn optimal(point: Vec<f64>, objective_value: f64) -> Self {
        Self { status: SolveStatus::Optimal, point: Some(point), objective_value: Some(objective_value) }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }

    /// Decision vector of an optimal outcome; panics on non-optimal status.
    pub fn expect_point(&self) -> &[f64] {
        self.point.as_deref().expect("outcome is not Optimal")
    }

    /// Objective value of an optimal outcome; panics on non-optimal status.
    pub fn expect_value(&self) -> f64 {
        self.objective_value.expect("outcome is not Optimal")
    }
}

/// Feasibility and optimality tolerances shared across the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Absolute feasibility tolerance on constraint residuals.
    pub feas: f64,
    /// Relative optimality tolerance on objective values.
    pub opt: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { feas: 1e-7, opt: 1e-6 }
    }
}

impl Tolerances {
    /// Whether two objective values agree within the relative tolerance.
    pub fn values_agree(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.opt * a.abs().max(b.abs()).max(1.0)
    }
}

/// Backend-neutral solver interface: program in, outcome out. The bundled
/// [`DenseSimplex`] implements it; an external engine can be swapped in
/// without touching any caller.
pub trait LpBackend: Sync {
    fn solve(
        &self,
        lp: &LinearProgram,
        objective: usize,
        direction: Direction,
    ) -> Result<SolveOutcome, ModelError>;

    fn tolerances(&self) -> Tolerances;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_var_program() -> LinearProgram {
        // min x1 + x2  s.t.  x1 + 2 x2 >= 2,  x >= 0
        let mut lp = LinearProgram::new();
        let x1 = lp.add_variable(Variable::nonneg("x1"));
        let x2 = lp.add_variable(Variable::nonneg("x2"));
        lp.add_row(LinearConstraint::new(vec![(x1, 1.0), (x2, 2.0)], Sense::Ge, 2.0));
        lp.add_objective(LinearObjective::new("sum", vec![1.0, 1.0], 0.0));
        lp
    }

    #[test]
    fn evaluate_constant_only() {
        let obj = LinearObjective::new("c", vec![0.0, 0.0], 2.0);
        assert_eq!(evaluate(&obj, &[5.0, -3.0]).unwrap(), 2.0);
    }

    #[test]
    fn evaluate_dot_product() {
        let obj = LinearObjective::new("c", vec![1.0, 1.0], 0.0);
        assert_eq!(evaluate(&obj, &[0.0, 1.0]).unwrap(), 1.0);
    }

    #[test]
    fn evaluate_rejects_dimension_mismatch() {
        let obj = LinearObjective::new("c", vec![1.0], 0.0);
        assert!(matches!(
            evaluate(&obj, &[1.0, 2.0]),
            Err(ModelError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn add_constraint_keeps_original() {
        let lp = two_var_program();
        let rows_before = lp.constraints.len();
        let bigger = add_constraint(&lp, LinearConstraint::new(vec![(0, 1.0)], Sense::Le, 5.0)).unwrap();
        assert_eq!(lp.constraints.len(), rows_before);
        assert_eq!(bigger.constraints.len(), rows_before + 1);
    }

    #[test]
    fn add_constraint_rejects_bad_index() {
        let lp = two_var_program();
        let err = add_constraint(&lp, LinearConstraint::new(vec![(7, 1.0)], Sense::Le, 5.0));
        assert!(matches!(err, Err(ModelError::BadVariableIndex { var: 7, .. })));
    }

    #[test]
    fn validate_catches_duplicate_names() {
        let mut lp = LinearProgram::new();
        lp.add_variable(Variable::nonneg("x"));
        lp.add_variable(Variable::nonneg("x"));
        lp.add_objective(LinearObjective::new("o", vec![1.0, 1.0], 0.0));
        assert_eq!(lp.validate(), Err(ModelError::DuplicateVariable("x".into())));
    }

    #[test]
    fn validate_catches_crossed_bounds() {
        let mut lp = LinearProgram::new();
        lp.add_variable(Variable::bounded("x", 2.0, 1.0));
        lp.add_objective(LinearObjective::new("o", vec![1.0], 0.0));
        assert!(matches!(lp.validate(), Err(ModelError::BoundsCrossed { .. })));
    }

    #[test]
    fn validate_catches_duplicate_terms_and_empty_rows() {
        let mut lp = two_var_program();
        lp.add_row(LinearConstraint::new(vec![(0, 1.0), (0, 2.0)], Sense::Ge, 0.0));
        assert!(matches!(lp.validate(), Err(ModelError::DuplicateTerm(1, 0))));

        let mut lp = two_var_program();
        lp.add_row(LinearConstraint::new(vec![(0, 0.0)], Sense::Ge, 0.0));
        assert!(matches!(lp.validate(), Err(ModelError::EmptyConstraint(1))));
    }

    #[test]
    fn vacuous_infinite_rhs_is_legal() {
        let mut lp = two_var_program();
        lp.add_row(LinearConstraint::new(vec![(0, 1.0)], Sense::Le, f64::INFINITY));
        assert!(lp.validate().is_ok());

        let mut lp = two_var_program();
        lp.add_row(LinearConstraint::new(vec![(0, 1.0)], Sense::Ge, f64::INFINITY));
        assert!(matches!(lp.validate(), Err(ModelError::BadRhs(1))));
    }
}
