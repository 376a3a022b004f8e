//! Threshold-sum condition families.
//!
//! A condition here is the predicate `d . x >= c` for a fixed binary
//! selector `d` over the variables and a real threshold `c`. Within one
//! fixed-`d` family, truth spaces are nested half-spaces, so implication is
//! just threshold comparison and the family's non-implied representative is
//! the condition with the largest certified threshold.
//!
//! Implication across different selectors is deliberately not decided: it
//! would need a containment subroutine over polyhedra, and nothing in the
//! pipeline compares conditions across families.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConditionError {
    #[error("selector has {got} entries, expected {expected}")]
    Arity { expected: usize, got: usize },
    #[error("selector must pick at least one variable")]
    EmptySelector,
    #[error("conditions live in different selector families; implication is only decided for identical selectors")]
    SelectorMismatch,
    #[error("no thresholds supplied")]
    EmptyThresholds,
}

/// Binary selector over variables: which components are summed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Selector {
    pub mask: Vec<bool>,
}

impl Selector {
    pub fn new(mask: Vec<bool>) -> Result<Self, ConditionError> {
        if !mask.iter().any(|&b| b) {
            return Err(ConditionError::EmptySelector);
        }
        Ok(Self { mask })
    }

    /// Selector from the indices of the chosen variables.
    pub fn from_indices(len: usize, indices: &[usize]) -> Result<Self, ConditionError> {
        let mut mask = vec![false; len];
        for &i in indices {
            if i >= len {
                return Err(ConditionError::Arity { expected: len, got: i + 1 });
            }
            mask[i] = true;
        }
        Self::new(mask)
    }

    pub fn len(&self) -> usize {
        self.mask.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mask.is_empty()
    }

    /// 0/1 coefficient vector.
    pub fn coefficients(&self) -> Vec<f64> {
        self.mask.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect()
    }

    /// `d . x`.
    pub fn sum(&self, x: &[f64]) -> Result<f64, ConditionError> {
        if x.len() != self.mask.len() {
            return Err(ConditionError::Arity { expected: self.mask.len(), got: x.len() });
        }
        Ok(self.mask.iter().zip(x).filter(|(&b, _)| b).map(|(_, v)| v).sum())
    }
}

/// One member of a fixed-selector family: `selector . x >= threshold`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionSpec {
    pub selector: Selector,
    pub threshold: f64,
}

impl ConditionSpec {
    pub fn new(selector: Selector, threshold: f64) -> Self {
        Self { selector, threshold }
    }
}

/// Evaluate the condition at a point, with a feasibility band below the
/// threshold so boundary points of a solver count as satisfying.
pub fn holds(cond: &ConditionSpec, x: &[f64], feas_tol: f64) -> Result<bool, ConditionError> {
    Ok(cond.selector.sum(x)? >= cond.threshold - feas_tol)
}

/// Whether `b` implies `a`. Both conditions must share the selector; then
/// the truth space of `b` is contained in `a`'s exactly when
/// `a.threshold <= b.threshold`.
pub fn implies(a: &ConditionSpec, b: &ConditionSpec) -> Result<bool, ConditionError> {
    if a.selector != b.selector {
        return Err(ConditionError::SelectorMismatch);
    }
    Ok(a.threshold <= b.threshold)
}

/// The unique non-implied member of a fixed-selector family given the
/// thresholds already certified necessary: the maximal one.
pub fn non_implied(
    thresholds: &[f64],
    selector: &Selector,
) -> Result<ConditionSpec, ConditionError> {
    let best = thresholds
        .iter()
        .copied()
        .fold(None::<f64>, |acc, t| Some(acc.map_or(t, |a| a.max(t))))
        .ok_or(ConditionError::EmptyThresholds)?;
    Ok(ConditionSpec::new(selector.clone(), best))
}
