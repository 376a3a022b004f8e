//! Scalarizations that turn a multi-objective program into single-objective
//! ones: the weighted-sum method and the epsilon-constraint method in both
//! absolute and relative form.
//!
//! The relative form caps each constrained objective at `(1 + eps_k)` times
//! a previously solved reference optimum, so the same epsilon values read
//! directly as percentage deviations. It is the default for front
//! generation; the absolute form is kept for generality.

use crate::lp::{LinearConstraint, LinearObjective, LinearProgram, Sense};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ScalarizeError {
    #[error("weight {index} is {value}; all weights must be strictly positive")]
    NonpositiveWeight { index: usize, value: f64 },
    #[error("expected {expected} entries, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("free objective index {0} out of range ({1} objectives)")]
    BadFreeObjective(usize, usize),
    #[error("objective {0} has no variable dependence and cannot be capped")]
    ConstantObjective(usize),
    #[error(
        "objective {0} has reference optimum {1}; a relative cap needs a strictly positive reference (a zero optimum collapses the space to the optimal set)"
    )]
    DegenerateReference(usize, f64),
}

/// Strictly positive weights, one per objective.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightVector(pub Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self, ScalarizeError> {
        for (index, &value) in weights.iter().enumerate() {
            if !(value > 0.0) {
                return Err(ScalarizeError::NonpositiveWeight { index, value });
            }
        }
        Ok(Self(weights))
    }
}

/// How the constrained objectives of an epsilon-constraint program are
/// capped. Entries at the free objective's index are ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CapMode {
    /// Fixed bounds `f_k(x) <= cap_k`. A `+inf` cap is legal and vacuous.
    Absolute { caps: Vec<f64> },
    /// Bounds `f_k(x) <= (1 + eps_k) * reference_k`, with the reference
    /// values coming from prior solves of each objective.
    Relative { epsilons: Vec<f64>, references: Vec<f64> },
}

/// Epsilon-constraint specification: minimize objective `free_objective`
/// subject to caps on every other objective.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsilonConstraintSpec {
    pub free_objective: usize,
    pub mode: CapMode,
}

/// Replace the objective list with the single combination
/// `sum_k w_k * f_k`. The feasible set is unchanged, so any optimum of the
/// result is an efficient point of the original program.
pub fn weighted_sum(
    lp: &LinearProgram,
    weights: &WeightVector,
) -> Result<LinearProgram, ScalarizeError> {
    let n_obj = lp.objectives.len();
    if weights.0.len() != n_obj {
        return Err(ScalarizeError::Arity { expected: n_obj, got: weights.0.len() });
    }
    // Re-check positivity: WeightVector is constructible from serde too.
    for (index, &value) in weights.0.iter().enumerate() {
        if !(value > 0.0) {
            return Err(ScalarizeError::NonpositiveWeight { index, value });
        }
    }
    let n = lp.num_variables();
    let mut coefficients = vec![0.0; n];
    let mut offset = 0.0;
    for (w, obj) in weights.0.iter().zip(&lp.objectives) {
        for (acc, c) in coefficients.iter_mut().zip(&obj.coefficients) {
            *acc += w * c;
        }
        offset += w * obj.offset;
    }
    let label = lp
        .objectives
        .iter()
        .map(|o| o.label.as_str())
        .collect::<Vec<_>>()
        .join("+");
    let mut out = lp.clone();
    out.objectives = vec![LinearObjective::new(format!("weighted({label})"), coefficients, offset)];
    Ok(out)
}

/// Build the epsilon-constraint program: minimize the free objective with
/// one added cap row per constrained objective (objective offsets are
/// folded into the row's right-hand side).
pub fn epsilon_constraint(
    lp: &LinearProgram,
    spec: &EpsilonConstraintSpec,
) -> Result<LinearProgram, ScalarizeError> {
    let n_obj = lp.objectives.len();
    if spec.free_objective >= n_obj {
        return Err(ScalarizeError::BadFreeObjective(spec.free_objective, n_obj));
    }
    let caps: Vec<f64> = match &spec.mode {
        CapMode::Absolute { caps } => {
            if caps.len() != n_obj {
                return Err(ScalarizeError::Arity { expected: n_obj, got: caps.len() });
            }
            caps.clone()
        }
        CapMode::Relative { epsilons, references } => {
            if epsilons.len() != n_obj {
                return Err(ScalarizeError::Arity { expected: n_obj, got: epsilons.len() });
            }
            if references.len() != n_obj {
                return Err(ScalarizeError::Arity { expected: n_obj, got: references.len() });
            }
            let mut caps = vec![f64::INFINITY; n_obj];
            for k in 0..n_obj {
                if k == spec.free_objective {
                    continue;
                }
                if !(references[k] > 0.0) {
                    return Err(ScalarizeError::DegenerateReference(k, references[k]));
                }
                caps[k] = (1.0 + epsilons[k]) * references[k];
            }
            caps
        }
    };

    let mut out = lp.clone();
    for k in 0..n_obj {
        if k == spec.free_objective {
            continue;
        }
        out.add_row(objective_cap_row(&lp.objectives[k], caps[k], k)?);
    }
    out.objectives = vec![lp.objectives[spec.free_objective].clone()];
    Ok(out)
}

/// Row `f_k(x) <= cap` in sparse form with the offset folded into the rhs.
pub(crate) fn objective_cap_row(
    objective: &LinearObjective,
    cap: f64,
    index: usize,
) -> Result<LinearConstraint, ScalarizeError> {
    let terms: Vec<(usize, f64)> = objective
        .coefficients
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c != 0.0)
        .map(|(i, &c)| (i, c))
        .collect();
    if terms.is_empty() {
        return Err(ScalarizeError::ConstantObjective(index));
    }
    Ok(LinearConstraint::new(terms, Sense::Le, cap - objective.offset))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{
        evaluate, DenseSimplex, Direction, LpBackend, SolveStatus, Variable,
    };
    use crate::oracle::{grid_model, grid_weighted_minimum, CurvePair};

    fn backend() -> DenseSimplex {
        DenseSimplex::default()
    }

    fn two_var_program() -> LinearProgram {
        let mut lp = LinearProgram::new();
        lp.add_variable(Variable::nonneg("x1"));
        lp.add_variable(Variable::nonneg("x2"));
        lp.add_row(LinearConstraint::new(vec![(0, 1.0), (1, 2.0)], Sense::Ge, 2.0));
        lp.add_objective(LinearObjective::new("sum", vec![1.0, 1.0], 0.0));
        lp
    }

    #[test]
    fn rejects_nonpositive_weights() {
        assert!(matches!(
            WeightVector::new(vec![1.0, 0.0]),
            Err(ScalarizeError::NonpositiveWeight { index: 1, .. })
        ));
        assert!(WeightVector::new(vec![0.5, 2.0]).is_ok());
    }

    #[test]
    fn identity_scalarization_matches_plain_solve() {
        let lp = two_var_program();
        let scalar = weighted_sum(&lp, &WeightVector::new(vec![1.0]).unwrap()).unwrap();
        let a = backend().solve(&lp, 0, Direction::Min).unwrap();
        let b = backend().solve(&scalar, 0, Direction::Min).unwrap();
        assert_eq!(a.expect_value(), b.expect_value());
    }

    #[test]
    fn weighted_sum_matches_grid_search() {
        let pair = CurvePair::reference();
        let lp = grid_model(&pair, 1e-3).unwrap();
        let scalar = weighted_sum(&lp, &WeightVector::new(vec![1.0, 1.0]).unwrap()).unwrap();
        let out = backend().solve(&scalar, 0, Direction::Min).unwrap();
        let x = out.expect_point()[0];

        let oracle = grid_weighted_minimum(&pair, [1.0, 1.0], 1e-4);
        assert!((oracle.x - 0.45).abs() < 1e-9, "grid oracle should sit at 0.45");
        assert!((x - oracle.x).abs() <= 2e-3, "x = {x}");
        let f1 = evaluate(&lp.objectives[0], out.expect_point()).unwrap();
        let f2 = evaluate(&lp.objectives[1], out.expect_point()).unwrap();
        assert!((f1 - oracle.objectives[0]).abs() <= 1e-2);
        assert!((f2 - oracle.objectives[1]).abs() <= 1e-2);
        assert!((oracle.objectives[0] - 2.225).abs() < 1e-9);
        assert!((oracle.objectives[1] - 2.4).abs() < 1e-9);
    }

    #[test]
    fn positive_scaling_keeps_the_argmin() {
        let pair = CurvePair::reference();
        let lp = grid_model(&pair, 2e-3).unwrap();
        let a = weighted_sum(&lp, &WeightVector::new(vec![1.0, 1.0]).unwrap()).unwrap();
        let b = weighted_sum(&lp, &WeightVector::new(vec![2.0, 2.0]).unwrap()).unwrap();
        let xa = backend().solve(&a, 0, Direction::Min).unwrap().expect_point()[0];
        let xb = backend().solve(&b, 0, Direction::Min).unwrap().expect_point()[0];
        assert!((xa - xb).abs() < 1e-9);
    }

    #[test]
    fn vacuous_absolute_caps_reduce_to_plain_solve() {
        let mut lp = two_var_program();
        lp.add_objective(LinearObjective::new("x2", vec![0.0, 1.0], 0.0));
        let spec = EpsilonConstraintSpec {
            free_objective: 1,
            mode: CapMode::Absolute { caps: vec![f64::INFINITY, f64::INFINITY] },
        };
        let capped = epsilon_constraint(&lp, &spec).unwrap();
        assert_eq!(capped.constraints.len(), lp.constraints.len() + 1);
        let direct = backend().solve(&lp, 1, Direction::Min).unwrap();
        let constrained = backend().solve(&capped, 0, Direction::Min).unwrap();
        assert_eq!(direct.expect_value(), constrained.expect_value());
    }

    #[test]
    fn unattainable_cap_is_infeasible() {
        let mut lp = two_var_program();
        lp.add_objective(LinearObjective::new("x2", vec![0.0, 1.0], 0.0));
        // min over the feasible set of x1 + x2 is 1; cap it at 0.5.
        let spec = EpsilonConstraintSpec {
            free_objective: 1,
            mode: CapMode::Absolute { caps: vec![0.5, 0.0] },
        };
        let capped = epsilon_constraint(&lp, &spec).unwrap();
        let out = backend().solve(&capped, 0, Direction::Min).unwrap();
        assert_eq!(out.status, SolveStatus::Infeasible);
    }

    #[test]
    fn relative_cap_monotone_in_epsilon() {
        let pair = CurvePair::reference();
        let lp = grid_model(&pair, 2e-3).unwrap();
        let f1_opt = backend().solve(&lp, 0, Direction::Min).unwrap().expect_value();
        let mut last = f64::INFINITY;
        for eps in [0.05, 0.2, 0.5, 1.0] {
            let spec = EpsilonConstraintSpec {
                free_objective: 1,
                mode: CapMode::Relative {
                    epsilons: vec![eps, 0.0],
                    references: vec![f1_opt, 0.0],
                },
            };
            let capped = epsilon_constraint(&lp, &spec).unwrap();
            let value = backend().solve(&capped, 0, Direction::Min).unwrap().expect_value();
            assert!(value <= last + 1e-9, "f2 under eps={eps} regressed: {value} > {last}");
            last = value;
        }
    }

    #[test]
    fn relative_cap_rejects_zero_reference() {
        let mut lp = two_var_program();
        lp.add_objective(LinearObjective::new("x2", vec![0.0, 1.0], 0.0));
        let spec = EpsilonConstraintSpec {
            free_objective: 1,
            mode: CapMode::Relative { epsilons: vec![0.1, 0.0], references: vec![0.0, 0.0] },
        };
        assert_eq!(
            epsilon_constraint(&lp, &spec).unwrap_err(),
            ScalarizeError::DegenerateReference(0, 0.0)
        );
    }

    #[test]
    fn cap_row_count_bookkeeping() {
        let mut lp = two_var_program();
        lp.add_objective(LinearObjective::new("x1", vec![1.0, 0.0], 0.0));
        lp.add_objective(LinearObjective::new("x2", vec![0.0, 1.0], 0.0));
        let spec = EpsilonConstraintSpec {
            free_objective: 0,
            mode: CapMode::Absolute { caps: vec![0.0, 10.0, 10.0] },
        };
        let capped = epsilon_constraint(&lp, &spec).unwrap();
        assert_eq!(capped.constraints.len() - lp.constraints.len(), 2);
        assert_eq!(capped.objectives.len(), 1);
    }

    #[test]
    fn constant_objective_cannot_be_capped() {
        let mut lp = two_var_program();
        lp.add_objective(LinearObjective::new("const", vec![0.0, 0.0], 3.0));
        let spec = EpsilonConstraintSpec {
            free_objective: 0,
            mode: CapMode::Absolute { caps: vec![0.0, 5.0] },
        };
        assert_eq!(
            epsilon_constraint(&lp, &spec).unwrap_err(),
            ScalarizeError::ConstantObjective(1)
        );
    }
}
