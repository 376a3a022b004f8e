//! Epsilon-optimal spaces by constraint injection, and the
//! necessary-condition thresholds computed over them.
//!
//! Single-objective route: cap the objective at `(1 + eps)` times its
//! optimum and minimize the selector sum over the capped program; the
//! result is the exact family threshold. Multi-objective route: around
//! each front anchor, cap every objective at `(1 + eps_k)` times the
//! anchor's value, minimize the selector sum per anchor, and take the
//! minimum across anchors. Because the anchored union only approximates
//! the true near-optimal space, that minimum is an upper bound on the
//! exact threshold, and the report says so via [`BoundKind`].
//!
//! Anchor solves and sweep cells are independent; they run on the current
//! rayon pool and are aggregated in index order, so results do not depend
//! on scheduling.

use crate::conditions::{ConditionError, Selector};
use crate::lp::{
    LinearObjective, LinearProgram, LpBackend, ModelError, Sense, SolveOutcome,
    SolveStatus,
};
use crate::pareto::{ParetoFront, ParetoPoint};
use crate::scalarize::{objective_cap_row, ScalarizeError};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpaceError {
    #[error("suboptimality coefficient {index} is {value}; coefficients must be nonnegative")]
    NegativeEpsilon { index: usize, value: f64 },
    #[error("expected {expected} entries, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("base solve of objective {objective} ended {status:?}; the capped space needs an optimum")]
    BaseNotOptimal { objective: usize, status: SolveStatus },
    #[error("capped program around anchor {anchor} ended {status:?}; anchors are self-feasible, so this indicates an internal inconsistency")]
    CappedSolveFailed { anchor: usize, status: SolveStatus },
    #[error("anchor {anchor} violates its own box rows by {violation:.3e}; its objective tuple does not match its decision vector")]
    AnchorNotSelfFeasible { anchor: usize, violation: f64 },
    #[error("the front is empty")]
    EmptyFront,
    #[error("the sweep grid is empty")]
    EmptyGrid,
    #[error("sweep needs a two-objective program, got {0} objectives")]
    SweepArity(usize),
    #[error("sweep cell ({row}, {col}) failed: {source}")]
    SweepCellFailed { row: usize, col: usize, source: Box<SpaceError> },
    #[error(transparent)]
    Condition(#[from] ConditionError),
    #[error(transparent)]
    Scalarize(#[from] ScalarizeError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Per-objective relative suboptimality coefficients (0.05 reads as 5%).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsilonVector(pub Vec<f64>);

impl EpsilonVector {
    pub fn new(coefficients: Vec<f64>) -> Result<Self, SpaceError> {
        for (index, &value) in coefficients.iter().enumerate() {
            if !(value >= 0.0) {
                return Err(SpaceError::NegativeEpsilon { index, value });
            }
        }
        Ok(Self(coefficients))
    }

    pub fn uniform(value: f64, arity: usize) -> Result<Self, SpaceError> {
        Self::new(vec![value; arity])
    }

    fn check_arity(&self, expected: usize) -> Result<(), SpaceError> {
        if self.0.len() != expected {
            return Err(SpaceError::Arity { expected, got: self.0.len() });
        }
        Ok(())
    }
}

/// A single-objective near-optimal space: the base program plus one cap
/// row. `degenerate` flags a zero base optimum, where the space collapses
/// to the optimal set no matter the coefficient.
#[derive(Debug, Clone)]
pub struct SingleSpace {
    pub program: LinearProgram,
    pub base: SolveOutcome,
    pub cap: f64,
    pub degenerate: bool,
}

/// Cap one objective at `(1 + epsilon)` times its own optimum.
pub fn epsilon_space_single(
    lp: &LinearProgram,
    objective: usize,
    epsilon: f64,
    backend: &dyn LpBackend,
) -> Result<SingleSpace, SpaceError> {
    if !(epsilon >= 0.0) {
        return Err(SpaceError::NegativeEpsilon { index: objective, value: epsilon });
    }
    let base = backend.solve(lp, objective, crate::lp::Direction::Min)?;
    if !base.is_optimal() {
        return Err(SpaceError::BaseNotOptimal { objective, status: base.status });
    }
    let optimum = base.expect_value();
    let degenerate = optimum.abs() <= backend.tolerances().feas;
    let cap = (1.0 + epsilon) * optimum;
    let mut program = lp.clone();
    program.add_row(objective_cap_row(&lp.objectives[objective], cap, objective)?);
    Ok(SingleSpace { program, base, cap, degenerate })
}

/// Whether the threshold is exact or only an upper bound obtained from an
/// m-point front approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundKind {
    /// Single-objective route: minimum over the exact capped space.
    ExactOptimum,
    /// Multi-objective route: minimum over the anchored union, which under-
    /// covers the true space, so the threshold may overestimate it.
    FrontUpperBound,
}

/// Minimum of the selector sum over one anchored box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnchorMinimum {
    pub anchor_index: usize,
    pub minimum: f64,
    pub witness: Vec<f64>,
}

/// Computed necessary-condition threshold with its certificates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NecessaryConditionReport {
    pub selector: Selector,
    pub threshold: f64,
    pub bound_kind: BoundKind,
    pub epsilon: EpsilonVector,
    pub front_size: usize,
    pub per_anchor: Vec<AnchorMinimum>,
    /// Argmin of the winning anchor (lowest anchor index on exact ties).
    pub witness: Vec<f64>,
    pub witness_anchor: usize,
}

fn selector_objective(selector: &Selector) -> LinearObjective {
    LinearObjective::new("selector-sum", selector.coefficients(), 0.0)
}

fn minimize_selector(
    program: &LinearProgram,
    selector: &Selector,
    backend: &dyn LpBackend,
    anchor: usize,
) -> Result<AnchorMinimum, SpaceError> {
    let mut capped = program.clone();
    capped.objectives = vec![selector_objective(selector)];
    let out = backend.solve(&capped, 0, crate::lp::Direction::Min)?;
    if !out.is_optimal() {
        return Err(SpaceError::CappedSolveFailed { anchor, status: out.status });
    }
    Ok(AnchorMinimum {
        anchor_index: anchor,
        minimum: out.expect_value(),
        witness: out.expect_point().to_vec(),
    })
}

/// Exact single-objective threshold: cap the objective, then minimize the
/// selector sum over the capped program.
pub fn necessary_condition_single(
    lp: &LinearProgram,
    objective: usize,
    epsilon: f64,
    selector: &Selector,
    backend: &dyn LpBackend,
) -> Result<NecessaryConditionReport, SpaceError> {
    if selector.len() != lp.num_variables() {
        return Err(SpaceError::Arity { expected: lp.num_variables(), got: selector.len() });
    }
    let space = epsilon_space_single(lp, objective, epsilon, backend)?;
    let minimum = minimize_selector(&space.program, selector, backend, 0)?;
    let mut eps = vec![0.0; lp.objectives.len()];
    eps[objective] = epsilon;
    Ok(NecessaryConditionReport {
        selector: selector.clone(),
        threshold: minimum.minimum,
        bound_kind: BoundKind::ExactOptimum,
        epsilon: EpsilonVector(eps),
        front_size: 1,
        witness: minimum.witness.clone(),
        witness_anchor: 0,
        per_anchor: vec![minimum],
    })
}

/// A program restricted to one anchor's box: every objective capped at
/// `(1 + eps_k)` times the anchor's value.
#[derive(Debug, Clone)]
pub struct BoxProgram {
    pub program: LinearProgram,
    pub caps: Vec<f64>,
    /// Objectives whose anchor value is zero: the relative cap degenerates
    /// and is emitted as an equality-to-zero row instead.
    pub degenerate_rows: Vec<usize>,
}

/// Add the anchor's cap rows to the program. The anchor's own decision
/// vector must satisfy the added rows; a violation means the anchor's
/// stored objective tuple does not belong to its decision vector.
pub fn epsilon_box(
    lp: &LinearProgram,
    anchor: &ParetoPoint,
    epsilon: &EpsilonVector,
) -> Result<BoxProgram, SpaceError> {
    let n_obj = lp.objectives.len();
    epsilon.check_arity(n_obj)?;
    if anchor.objectives.len() != n_obj {
        return Err(SpaceError::Arity { expected: n_obj, got: anchor.objectives.len() });
    }

    let mut program = lp.clone();
    let mut caps = Vec::with_capacity(n_obj);
    let mut degenerate_rows = Vec::new();
    for (k, objective) in lp.objectives.iter().enumerate() {
        let value = anchor.objectives[k];
        if value == 0.0 {
            let mut row = objective_cap_row(objective, 0.0, k)?;
            row.sense = Sense::Eq;
            program.add_row(row);
            caps.push(0.0);
            degenerate_rows.push(k);
        } else {
            let cap = (1.0 + epsilon.0[k]) * value;
            program.add_row(objective_cap_row(objective, cap, k)?);
            caps.push(cap);
        }
    }

    let added = &program.constraints[lp.constraints.len()..];
    let violation = added
        .iter()
        .map(|row| match row.sense {
            Sense::Le => row.residual(&anchor.decision).max(0.0),
            Sense::Ge => (-row.residual(&anchor.decision)).max(0.0),
            Sense::Eq => row.residual(&anchor.decision).abs(),
        })
        .fold(0.0f64, f64::max);
    let scale = 1.0 + anchor.objectives.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if violation > 1e-9 * scale {
        return Err(SpaceError::AnchorNotSelfFeasible { anchor: 0, violation });
    }

    Ok(BoxProgram { program, caps, degenerate_rows })
}

/// Upper-bound threshold over an m-anchor front: one capped solve per
/// anchor, then the minimum across anchors. Anchor solves run in parallel;
/// aggregation is by anchor index, so the result is order-independent.
pub fn necessary_condition_multi(
    lp: &LinearProgram,
    front: &ParetoFront,
    epsilon: &EpsilonVector,
    selector: &Selector,
    backend: &dyn LpBackend,
) -> Result<NecessaryConditionReport, SpaceError> {
    if front.is_empty() {
        return Err(SpaceError::EmptyFront);
    }
    if selector.len() != lp.num_variables() {
        return Err(SpaceError::Arity { expected: lp.num_variables(), got: selector.len() });
    }
    epsilon.check_arity(lp.objectives.len())?;

    let per_anchor: Vec<AnchorMinimum> = front
        .points
        .par_iter()
        .enumerate()
        .map(|(i, anchor)| {
            let boxed = epsilon_box(lp, anchor, epsilon).map_err(|e| match e {
                SpaceError::AnchorNotSelfFeasible { violation, .. } => {
                    SpaceError::AnchorNotSelfFeasible { anchor: i, violation }
                }
                other => other,
            })?;
            minimize_selector(&boxed.program, selector, backend, i)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut best = &per_anchor[0];
    for candidate in &per_anchor[1..] {
        if candidate.minimum < best.minimum {
            best = candidate;
        }
    }
    Ok(NecessaryConditionReport {
        selector: selector.clone(),
        threshold: best.minimum,
        bound_kind: BoundKind::FrontUpperBound,
        epsilon: epsilon.clone(),
        front_size: front.len(),
        witness: best.witness.clone(),
        witness_anchor: best.anchor_index,
        per_anchor: per_anchor.clone(),
    })
}

/// Rectangular sweep grid: one coefficient list per objective of a
/// two-objective program.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    /// Deviations for objective 0; one output row per entry.
    pub rows: Vec<f64>,
    /// Deviations for objective 1; one output column per entry.
    pub cols: Vec<f64>,
}

impl SweepGrid {
    /// The six deviation percentages used as the documented default:
    /// 1%, 2%, 5%, 10%, 20% and 50% on both axes.
    pub fn default_percentages() -> Self {
        let axis = vec![0.01, 0.02, 0.05, 0.10, 0.20, 0.50];
        Self { rows: axis.clone(), cols: axis }
    }
}

/// A monotonicity breach in a sweep: the threshold increased although both
/// deviations grew.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityViolation {
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub increase: f64,
}

/// Thresholds over a full epsilon grid, with the monotonicity check
/// already evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub grid: SweepGrid,
    pub selector: Selector,
    pub front_size: usize,
    /// `thresholds[i][j]` belongs to `(rows[i], cols[j])`.
    pub thresholds: Vec<Vec<f64>>,
    pub violations: Vec<MonotonicityViolation>,
}

impl SweepResult {
    pub fn is_monotone(&self) -> bool {
        self.violations.is_empty()
    }
}

/// One multi-objective threshold per grid cell. Cells run in parallel and
/// are keyed by (row, column), so the table is schedule-independent.
pub fn sweep(
    lp: &LinearProgram,
    front: &ParetoFront,
    grid: &SweepGrid,
    selector: &Selector,
    backend: &dyn LpBackend,
) -> Result<SweepResult, SpaceError> {
    if lp.objectives.len() != 2 {
        return Err(SpaceError::SweepArity(lp.objectives.len()));
    }
    if grid.rows.is_empty() || grid.cols.is_empty() {
        return Err(SpaceError::EmptyGrid);
    }

    let cells: Vec<(usize, usize)> = (0..grid.rows.len())
        .flat_map(|i| (0..grid.cols.len()).map(move |j| (i, j)))
        .collect();
    let computed: Vec<f64> = cells
        .par_iter()
        .map(|&(i, j)| {
            let cell = |e: SpaceError| SpaceError::SweepCellFailed {
                row: i,
                col: j,
                source: Box::new(e),
            };
            let eps = EpsilonVector::new(vec![grid.rows[i], grid.cols[j]]).map_err(cell)?;
            Ok(necessary_condition_multi(lp, front, &eps, selector, backend)
                .map_err(cell)?
                .threshold)
        })
        .collect::<Result<Vec<_>, SpaceError>>()?;

    let mut thresholds = vec![vec![0.0; grid.cols.len()]; grid.rows.len()];
    for (&(i, j), &value) in cells.iter().zip(&computed) {
        thresholds[i][j] = value;
    }

    let tol = backend.tolerances().opt;
    let mut violations = Vec::new();
    for i in 0..grid.rows.len() {
        for j in 0..grid.cols.len() {
            let here = thresholds[i][j];
            let slack = tol * here.abs().max(1.0);
            if j + 1 < grid.cols.len() && thresholds[i][j + 1] > here + slack {
                violations.push(MonotonicityViolation {
                    from: (i, j),
                    to: (i, j + 1),
                    increase: thresholds[i][j + 1] - here,
                });
            }
            if i + 1 < grid.rows.len() && thresholds[i + 1][j] > here + slack {
                violations.push(MonotonicityViolation {
                    from: (i, j),
                    to: (i + 1, j),
                    increase: thresholds[i + 1][j] - here,
                });
            }
        }
    }

    Ok(SweepResult {
        grid: grid.clone(),
        selector: selector.clone(),
        front_size: front.len(),
        thresholds,
        violations,
    })
}
