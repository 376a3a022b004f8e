//! Approximate Pareto fronts over two or more objectives: individual
//! optima, relative epsilon-constraint front generation, dominance
//! filtering, and front-quality reporting.

use crate::lp::{
    evaluate, LinearProgram, LpBackend, ModelError, SolveOutcome, SolveStatus,
};
use crate::scalarize::{epsilon_constraint, CapMode, EpsilonConstraintSpec, ScalarizeError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tie tolerance on objective values for dominance decisions.
pub const DOMINANCE_TIE_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum FrontError {
    #[error("front generation needs at least two objectives, got {0}")]
    NotEnoughObjectives(usize),
    #[error("objective {index} (`{label}`) did not solve to optimality: {status:?}")]
    ObjectiveFailed { index: usize, label: String, status: SolveStatus },
    #[error(
        "schedule value {value} outside the open interval (0, {bound}) allowed by the two optima"
    )]
    ScheduleOutOfRange { value: f64, bound: f64 },
    #[error(transparent)]
    Scalarize(#[from] ScalarizeError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// How a front point was obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Provenance {
    /// Solve of one objective on its own.
    IndividualOptimum { objective: usize },
    /// Relative epsilon-constraint solve at the given deviation.
    EpsilonConstraint { free_objective: usize, epsilon: f64 },
    /// Weighted-sum solve.
    WeightedSum { weights: Vec<f64> },
}

/// One efficient point: decision vector plus its exact objective tuple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParetoPoint {
    pub decision: Vec<f64>,
    pub objectives: Vec<f64>,
    pub provenance: Provenance,
}

impl ParetoPoint {
    /// Build a point from a solved decision vector, evaluating every
    /// objective exactly at it.
    pub fn from_decision(
        lp: &LinearProgram,
        decision: Vec<f64>,
        provenance: Provenance,
    ) -> Result<Self, ModelError> {
        let objectives = lp
            .objectives
            .iter()
            .map(|o| evaluate(o, &decision))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { decision, objectives, provenance })
    }
}

/// An approximate front: non-dominated points sorted by the first
/// objective, plus the per-objective anchor points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParetoFront {
    pub points: Vec<ParetoPoint>,
    pub anchors: Vec<ParetoPoint>,
}

impl ParetoFront {
    /// Filter, sort and assemble a front from raw candidate points.
    pub fn assemble(candidates: Vec<ParetoPoint>, anchors: Vec<ParetoPoint>) -> Self {
        let mut points = dominance_filter(candidates);
        points.sort_by(|a, b| {
            a.objectives[0].partial_cmp(&b.objectives[0]).expect("objective values are not NaN")
        });
        points.dedup_by(|a, b| a.objectives == b.objectives);
        Self { points, anchors }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Per-objective optima plus the cross-evaluation table:
/// `cross[i][k]` is objective `k` evaluated at objective `i`'s optimum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndividualOptima {
    pub outcomes: Vec<SolveOutcome>,
    pub cross: Vec<Vec<f64>>,
}

impl IndividualOptima {
    /// Anchor of objective `k` as a front point.
    pub fn anchor(&self, lp: &LinearProgram, k: usize) -> Result<ParetoPoint, ModelError> {
        ParetoPoint::from_decision(
            lp,
            self.outcomes[k].expect_point().to_vec(),
            Provenance::IndividualOptimum { objective: k },
        )
    }
}

/// Solve each objective on its own. Any non-optimal status aborts with a
/// diagnostic naming the objective.
pub fn individual_optima(
    lp: &LinearProgram,
    backend: &dyn LpBackend,
) -> Result<IndividualOptima, FrontError> {
    let mut outcomes = Vec::with_capacity(lp.objectives.len());
    let mut cross = Vec::with_capacity(lp.objectives.len());
    for (index, objective) in lp.objectives.iter().enumerate() {
        let out = backend.solve(lp, index, crate::lp::Direction::Min)?;
        if !out.is_optimal() {
            return Err(FrontError::ObjectiveFailed {
                index,
                label: objective.label.clone(),
                status: out.status,
            });
        }
        let row = lp
            .objectives
            .iter()
            .map(|o| evaluate(o, out.expect_point()))
            .collect::<Result<Vec<_>, _>>()?;
        cross.push(row);
        outcomes.push(out);
    }
    Ok(IndividualOptima { outcomes, cross })
}

/// A schedule member that failed to solve and was dropped from the front.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DroppedSolve {
    pub epsilon: f64,
    pub status: SolveStatus,
}

/// Front generation output: the assembled front plus any dropped members.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontBuild {
    pub front: ParetoFront,
    pub optima: IndividualOptima,
    pub dropped: Vec<DroppedSolve>,
}

/// Generate an approximate front: the two (or n) individual optima as
/// anchors plus one relative epsilon-constraint solve per schedule entry.
/// Schedule values are relative deviations on the constrained objectives
/// and must lie strictly inside `(0, bound)`, where the bound is the
/// constrained objective's relative spread between the two optima.
pub fn generate_front(
    lp: &LinearProgram,
    schedule: &[f64],
    free_objective: usize,
    backend: &dyn LpBackend,
) -> Result<FrontBuild, FrontError> {
    let n_obj = lp.objectives.len();
    if n_obj < 2 {
        return Err(FrontError::NotEnoughObjectives(n_obj));
    }
    if free_objective >= n_obj {
        return Err(FrontError::Scalarize(ScalarizeError::BadFreeObjective(free_objective, n_obj)));
    }
    let optima = individual_optima(lp, backend)?;

    // Upper bound for admissible deviations: the tightest relative spread
    // of a constrained objective between its own optimum and the free
    // objective's optimum.
    let references: Vec<f64> = (0..n_obj).map(|k| optima.cross[k][k]).collect();
    let mut bound = f64::INFINITY;
    for k in 0..n_obj {
        if k == free_objective || references[k] <= 0.0 {
            continue;
        }
        bound = bound.min(optima.cross[free_objective][k] / references[k] - 1.0);
    }
    for &eps in schedule {
        if !(eps > 0.0 && eps < bound) {
            return Err(FrontError::ScheduleOutOfRange { value: eps, bound });
        }
    }

    let mut candidates = Vec::new();
    let mut anchors = Vec::new();
    for k in 0..n_obj {
        let anchor = optima.anchor(lp, k)?;
        anchors.push(anchor.clone());
        candidates.push(anchor);
    }

    let mut dropped = Vec::new();
    for &eps in schedule {
        let spec = EpsilonConstraintSpec {
            free_objective,
            mode: CapMode::Relative {
                epsilons: vec![eps; n_obj],
                references: references.clone(),
            },
        };
        let capped = epsilon_constraint(lp, &spec)?;
        let out = backend.solve(&capped, 0, crate::lp::Direction::Min)?;
        if out.is_optimal() {
            candidates.push(ParetoPoint::from_decision(
                lp,
                out.expect_point().to_vec(),
                Provenance::EpsilonConstraint { free_objective, epsilon: eps },
            )?);
        } else {
            dropped.push(DroppedSolve { epsilon: eps, status: out.status });
        }
    }

    Ok(FrontBuild { front: ParetoFront::assemble(candidates, anchors), optima, dropped })
}

/// Whether `a` dominates `b`: no worse everywhere and strictly better
/// somewhere, with ties resolved inside an absolute tolerance band.
pub fn dominates(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| *x <= *y + tol)
        && a.iter().zip(b).any(|(x, y)| *x < *y - tol)
}

/// Keep exactly the points dominated by no other point in the input.
pub fn dominance_filter(points: Vec<ParetoPoint>) -> Vec<ParetoPoint> {
    let kept: Vec<bool> = points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            !points.iter().enumerate().any(|(j, q)| {
                j != i && dominates(&q.objectives, &p.objectives, DOMINANCE_TIE_TOL)
            })
        })
        .collect();
    points
        .into_iter()
        .zip(kept)
        .filter_map(|(p, keep)| keep.then_some(p))
        .collect()
}

/// Front quality record: point count, the largest gap between consecutive
/// normalized points (anchor corners included), and a rectangle-union
/// coverage proxy against the anchor-spanned box. Both are artifact
/// metrics, not standardized indicators; coverage is defined for
/// two-objective fronts and reported as zero otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpreadReport {
    pub point_count: usize,
    /// `None` when fewer than two positions exist to measure.
    pub largest_gap: Option<f64>,
    pub coverage: f64,
}

/// Measure spread and coverage of a front against its anchor box.
pub fn spread_report(front: &ParetoFront) -> SpreadReport {
    let m = front.points.len();
    let n_obj = front.points.first().map_or(0, |p| p.objectives.len());
    if m == 0 || n_obj == 0 {
        return SpreadReport { point_count: m, largest_gap: None, coverage: 0.0 };
    }

    // Anchor-spanned box per objective; fall back to the points' own
    // extent when anchors are absent.
    let extent = |k: usize| -> (f64, f64) {
        let source: &[ParetoPoint] =
            if front.anchors.is_empty() { &front.points } else { &front.anchors };
        let lo = source.iter().map(|p| p.objectives[k]).fold(f64::INFINITY, f64::min);
        let hi = source.iter().map(|p| p.objectives[k]).fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    };
    let ranges: Vec<(f64, f64)> = (0..n_obj).map(extent).collect();
    let degenerate = ranges.iter().any(|(lo, hi)| hi - lo <= DOMINANCE_TIE_TOL);
    if m == 1 || degenerate {
        return SpreadReport { point_count: m, largest_gap: None, coverage: 0.0 };
    }

    let normalize = |p: &ParetoPoint| -> Vec<f64> {
        p.objectives
            .iter()
            .zip(&ranges)
            .map(|(v, (lo, hi))| ((v - lo) / (hi - lo)).clamp(0.0, 1.0))
            .collect()
    };
    let mut normalized: Vec<Vec<f64>> = front.points.iter().map(normalize).collect();
    if n_obj == 2 {
        // Ideal anchor corners bracket the sequence so a front that covers
        // only part of the box still reports the missing stretch as a gap.
        normalized.insert(0, vec![0.0, 1.0]);
        normalized.push(vec![1.0, 0.0]);
    }
    let largest_gap = normalized
        .windows(2)
        .map(|w| {
            w[0].iter()
                .zip(&w[1])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        })
        .fold(None, |acc: Option<f64>, g| Some(acc.map_or(g, |a| a.max(g))));

    // 2-D coverage: area of the union of rectangles spanned by each point
    // toward the worst corner (1, 1), inside the unit box.
    let coverage = if n_obj == 2 {
        let inner = &normalized[1..normalized.len() - 1];
        let mut area = 0.0;
        for (i, p) in inner.iter().enumerate() {
            let next_x = if i + 1 < inner.len() { inner[i + 1][0] } else { 1.0 };
            area += (next_x - p[0]).max(0.0) * (1.0 - p[1]);
        }
        area
    } else {
        0.0
    };

    SpreadReport { point_count: m, largest_gap, coverage }
}
