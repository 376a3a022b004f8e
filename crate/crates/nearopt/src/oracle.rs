//! Independent brute-force references used to keep the solver and the
//! pipeline honest.
//!
//! Three kinds of oracle live here:
//!
//! - dense 1-D grid scans over a fixed pair of convex parabolas (the
//!   reference curve pair), answering near-optimality questions by direct
//!   evaluation instead of pivoting;
//! - exhaustive vertex enumeration for tiny linear programs, which solves
//!   every square subsystem of active rows/bounds and filters by
//!   feasibility;
//! - a seeded generator of tiny box-bounded random programs for
//!   solver-vs-oracle equivalence runs.
//!
//! The grid scans never touch the simplex; the vertex enumerator never
//! shares code with it. A `grid_model` helper additionally compiles the
//! curve pair into an ordinary [`LinearProgram`] (convex-combination
//! weights over the grid), so the whole pipeline can be exercised on a
//! workload whose ground truth the grid scans know exactly.

use crate::lp::{
    Direction, LinearConstraint, LinearObjective, LinearProgram, LpBackend, ModelError, Sense,
    SolveOutcome, Variable,
};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("vertex enumeration supports at most {limit} variables, got {got}")]
    TooManyVariables { got: usize, limit: usize },
    #[error("vertex enumeration supports at most {limit} rows, got {got}")]
    TooManyRows { got: usize, limit: usize },
    #[error("empty anchor set for a multi-curve query")]
    EmptyAnchors,
    #[error("grid step must be positive, got {0}")]
    BadStep(f64),
    #[error(transparent)]
    Model(#[from] ModelError),
}

// ---------------------------------------------------------------------------
// Reference curve pair and grid scans
// ---------------------------------------------------------------------------

/// Convex parabola `amp * (xscale * x - xshift)^2 + offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Parabola {
    pub amp: f64,
    pub xscale: f64,
    pub xshift: f64,
    pub offset: f64,
}

impl Parabola {
    pub fn eval(&self, x: f64) -> f64 {
        let t = self.xscale * x - self.xshift;
        self.amp * t * t + self.offset
    }

    /// Location of the minimum.
    pub fn argmin(&self) -> f64 {
        self.xshift / self.xscale
    }

    /// Inverse on the increasing branch (x >= argmin); `level` must be at
    /// least the offset.
    pub fn invert_right(&self, level: f64) -> f64 {
        (self.xshift + ((level - self.offset) / self.amp).max(0.0).sqrt()) / self.xscale
    }
}

/// Identifies one of the two reference curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curve {
    First,
    Second,
}

/// A pair of convex scalar curves on a closed interval. Only this fixture
/// family is handled; it exists purely as an oracle workload and never
/// enters the simplex in functional form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePair {
    pub f1: Parabola,
    pub f2: Parabola,
    pub domain: (f64, f64),
}

/// Default grid step for scans; endpoints quoted to three decimals are
/// resolved with an order of magnitude to spare.
pub const DEFAULT_GRID_STEP: f64 = 1e-4;

impl CurvePair {
    /// The bundled reference pair: two convex parabolas with minima at
    /// (0.375, 2) and (0.75, 1.5) on the interval [0, 1.2].
    pub fn reference() -> Self {
        Self {
            f1: Parabola { amp: 10.0, xscale: 2.0, xshift: 0.75, offset: 2.0 },
            f2: Parabola { amp: 10.0, xscale: 1.0, xshift: 0.75, offset: 1.5 },
            domain: (0.0, 1.2),
        }
    }

    pub fn curve(&self, which: Curve) -> &Parabola {
        match which {
            Curve::First => &self.f1,
            Curve::Second => &self.f2,
        }
    }

    pub fn objectives_at(&self, x: f64) -> [f64; 2] {
        [self.f1.eval(x), self.f2.eval(x)]
    }

    /// Ends of the efficient interval: each curve's own minimizer.
    pub fn efficient_interval(&self) -> (f64, f64) {
        (self.f1.argmin(), self.f2.argmin())
    }

    fn grid(&self, step: f64) -> Vec<f64> {
        let (lo, hi) = self.domain;
        let n = ((hi - lo) / step).round() as usize;
        (0..=n).map(|i| lo + i as f64 * step).collect()
    }
}

/// What part of the near-optimal space a grid scan should compute.
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceQuery {
    /// Single-curve space around that curve's own minimum:
    /// `{ x | f(x) <= (1 + eps) * f(x*) }`.
    Single { which: Curve, epsilon: f64 },
    /// Union over the given anchors of two-cap member boxes:
    /// `{ x | f_k(x) <= (1 + eps_k) * f_k(anchor) for both k }`.
    AnchorBoxes { epsilon: [f64; 2], anchors: Vec<f64> },
    /// Whole-front estimate derived from the front's two ends, each capped
    /// in its own objective only (the construction behind the reference
    /// interval values). Note this is not the same set as `AnchorBoxes`
    /// over a dense anchor sample: that union keeps both caps per anchor
    /// and is narrower on the side of the second curve's minimizer.
    FullFront { epsilon: [f64; 2] },
}

/// Result of a grid scan: the feasible set as closed intervals with
/// endpoint accuracy bounded by the step, plus both curves' located
/// minima as `(x, value)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridResult {
    pub step: f64,
    pub intervals: Vec<(f64, f64)>,
    pub minima: [(f64, f64); 2],
}

impl GridResult {
    /// Convex hull of the reported intervals, if any.
    pub fn hull(&self) -> Option<(f64, f64)> {
        match (self.intervals.first(), self.intervals.last()) {
            (Some(&(lo, _)), Some(&(_, hi))) => Some((lo, hi)),
            _ => None,
        }
    }
}

/// Scan the sub-level-set union requested by `query` on a dense grid.
pub fn grid_epsilon_space(
    pair: &CurvePair,
    query: &SpaceQuery,
    step: f64,
) -> Result<GridResult, OracleError> {
    if step <= 0.0 {
        return Err(OracleError::BadStep(step));
    }
    let grid = pair.grid(step);
    let grid_min = |f: &Parabola| {
        grid.iter()
            .map(|&x| (x, f.eval(x)))
            .fold((grid[0], f64::INFINITY), |best, cand| if cand.1 < best.1 { cand } else { best })
    };
    let minima = [grid_min(&pair.f1), grid_min(&pair.f2)];
    let mask = match query {
        SpaceQuery::Single { which, epsilon } => {
            let f = pair.curve(*which);
            let fmin = grid.iter().map(|&x| f.eval(x)).fold(f64::INFINITY, f64::min);
            let cap = (1.0 + epsilon) * fmin;
            grid.iter().map(|&x| f.eval(x) <= cap).collect::<Vec<_>>()
        }
        SpaceQuery::AnchorBoxes { epsilon, anchors } => {
            if anchors.is_empty() {
                return Err(OracleError::EmptyAnchors);
            }
            box_union_mask(pair, &grid, *epsilon, anchors)
        }
        SpaceQuery::FullFront { epsilon } => {
            let mut mask = vec![false; grid.len()];
            for (which, eps) in [(Curve::First, epsilon[0]), (Curve::Second, epsilon[1])] {
                let single =
                    grid_epsilon_space(pair, &SpaceQuery::Single { which, epsilon: eps }, step)?;
                or_intervals(&grid, &mut mask, &single.intervals);
            }
            mask
        }
    };
    Ok(GridResult { step, intervals: mask_to_intervals(&grid, &mask), minima })
}

fn box_union_mask(pair: &CurvePair, grid: &[f64], eps: [f64; 2], anchors: &[f64]) -> Vec<bool> {
    let caps: Vec<[f64; 2]> = anchors
        .iter()
        .map(|&a| [(1.0 + eps[0]) * pair.f1.eval(a), (1.0 + eps[1]) * pair.f2.eval(a)])
        .collect();
    grid.iter()
        .map(|&x| {
            let v = pair.objectives_at(x);
            caps.iter().any(|c| v[0] <= c[0] && v[1] <= c[1])
        })
        .collect()
}

fn or_intervals(grid: &[f64], mask: &mut [bool], intervals: &[(f64, f64)]) {
    for (i, &x) in grid.iter().enumerate() {
        if intervals.iter().any(|&(lo, hi)| x >= lo && x <= hi) {
            mask[i] = true;
        }
    }
}

fn mask_to_intervals(grid: &[f64], mask: &[bool]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut start = None;
    for i in 0..grid.len() {
        match (mask[i], start) {
            (true, None) => start = Some(grid[i]),
            (false, Some(s)) => {
                out.push((s, grid[i - 1]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, *grid.last().unwrap()));
    }
    out
}

// ---------------------------------------------------------------------------
// Efficient-point samples of the curve pair
// ---------------------------------------------------------------------------

/// How sample locations are spread over the efficient interval.
#[derive(Debug, Clone, PartialEq)]
pub enum FrontSpacing {
    /// Equally spaced in x between the two minimizers.
    ByX,
    /// Equally spaced in the first curve's value, inverted on its
    /// increasing branch.
    ByFirstObjective,
    /// Explicit x locations.
    Prescribed(Vec<f64>),
}

/// One sampled efficient point of the curve pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontSample {
    pub x: f64,
    pub objectives: [f64; 2],
}

/// Sample `m` efficient points of the pair. All samples lie on the
/// efficient interval between the two minimizers.
pub fn grid_pareto(pair: &CurvePair, m: usize, spacing: &FrontSpacing) -> Vec<FrontSample> {
    let (a, b) = pair.efficient_interval();
    let xs: Vec<f64> = match spacing {
        FrontSpacing::ByX => linspace(a, b, m),
        FrontSpacing::ByFirstObjective => {
            let (fa, fb) = (pair.f1.eval(a), pair.f1.eval(b));
            linspace(fa, fb, m).into_iter().map(|t| pair.f1.invert_right(t)).collect()
        }
        FrontSpacing::Prescribed(xs) => xs.clone(),
    };
    xs.into_iter().map(|x| FrontSample { x, objectives: pair.objectives_at(x) }).collect()
}

/// Dense grid search for the minimizer of `w1 * f1 + w2 * f2`.
pub fn grid_weighted_minimum(pair: &CurvePair, weights: [f64; 2], step: f64) -> FrontSample {
    let grid = pair.grid(step);
    let mut best = FrontSample { x: grid[0], objectives: pair.objectives_at(grid[0]) };
    let mut best_value = weights[0] * best.objectives[0] + weights[1] * best.objectives[1];
    for &x in &grid[1..] {
        let obj = pair.objectives_at(x);
        let value = weights[0] * obj[0] + weights[1] * obj[1];
        if value < best_value {
            best = FrontSample { x, objectives: obj };
            best_value = value;
        }
    }
    best
}

fn linspace(a: f64, b: f64, m: usize) -> Vec<f64> {
    match m {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..m).map(|i| a + (b - a) * i as f64 / (m - 1) as f64).collect(),
    }
}

// ---------------------------------------------------------------------------
// Curve pair as a linear program
// ---------------------------------------------------------------------------

/// Compile the curve pair into a linear program over convex-combination
/// weights on a grid: variable 0 is the position `x`, followed by one
/// weight per grid point. Both curves become linear objectives over the
/// weights. Because both curves are convex, minima of the program match
/// grid minima of the curves to within one step.
pub fn grid_model(pair: &CurvePair, step: f64) -> Result<LinearProgram, OracleError> {
    if step <= 0.0 {
        return Err(OracleError::BadStep(step));
    }
    let grid = pair.grid(step);
    let mut lp = LinearProgram::new();
    let x = lp.add_variable(Variable::bounded("x", pair.domain.0, pair.domain.1));
    let weights: Vec<usize> = grid
        .iter()
        .enumerate()
        .map(|(i, _)| lp.add_variable(Variable::nonneg(format!("w{i}"))))
        .collect();

    // Weights form a convex combination and x is their barycentre.
    let one_row: Vec<(usize, f64)> = weights.iter().map(|&w| (w, 1.0)).collect();
    lp.add_row(LinearConstraint::new(one_row, Sense::Eq, 1.0));
    let mut link: Vec<(usize, f64)> = vec![(x, 1.0)];
    link.extend(weights.iter().zip(&grid).map(|(&w, &g)| (w, -g)));
    lp.add_row(LinearConstraint::new(link, Sense::Eq, 0.0));

    let n = lp.num_variables();
    for (label, curve) in [("f1", &pair.f1), ("f2", &pair.f2)] {
        let mut coeffs = vec![0.0; n];
        for (&w, &g) in weights.iter().zip(&grid) {
            coeffs[w] = curve.eval(g);
        }
        lp.add_objective(LinearObjective::new(label, coeffs, 0.0));
    }
    Ok(lp)
}

/// Smallest and largest feasible `x` (variable 0) of a grid-model program,
/// found by two auxiliary solves.
pub fn position_range(
    lp: &LinearProgram,
    backend: &dyn LpBackend,
) -> Result<(f64, f64), ModelError> {
    let mut probe = lp.clone();
    let mut coeffs = vec![0.0; probe.num_variables()];
    coeffs[0] = 1.0;
    probe.add_objective(LinearObjective::new("position", coeffs, 0.0));
    let idx = probe.objectives.len() - 1;
    let lo = backend.solve(&probe, idx, Direction::Min)?;
    let hi = backend.solve(&probe, idx, Direction::Max)?;
    match (lo.objective_value, hi.objective_value) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(ModelError::Internal("position probe was not optimal".into())),
    }
}

// ---------------------------------------------------------------------------
// Exhaustive vertex enumeration for tiny programs
// ---------------------------------------------------------------------------

const MAX_ENUM_VARS: usize = 8;
const MAX_ENUM_ROWS: usize = 10;
const FEAS_TOL: f64 = 1e-7;

/// A linear condition `coeffs . x (sense) rhs` in dense form, used for both
/// constraint rows and variable bounds during enumeration.
struct Facet {
    coeffs: Vec<f64>,
    sense: Sense,
    rhs: f64,
}

/// Enumerate all basic feasible points of a tiny program and optimize every
/// objective over them by direct evaluation. Unbounded regions are detected
/// by a recession-ray check. Completely independent of the simplex path.
pub fn vertex_enumerate(lp: &LinearProgram) -> Result<Vec<SolveOutcome>, OracleError> {
    lp.validate()?;
    let n = lp.num_variables();
    if n > MAX_ENUM_VARS {
        return Err(OracleError::TooManyVariables { got: n, limit: MAX_ENUM_VARS });
    }
    if lp.constraints.len() > MAX_ENUM_ROWS {
        return Err(OracleError::TooManyRows { got: lp.constraints.len(), limit: MAX_ENUM_ROWS });
    }

    let facets = collect_facets(lp);
    let vertices = enumerate_feasible_vertices(&facets, n);
    let rays = recession_rays(lp, n);

    let mut outcomes = Vec::with_capacity(lp.objectives.len());
    for objective in &lp.objectives {
        if vertices.is_empty() {
            outcomes.push(SolveOutcome::infeasible());
            continue;
        }
        let improving_ray = rays.iter().any(|d| {
            objective.coefficients.iter().zip(d).map(|(c, di)| c * di).sum::<f64>() < -1e-9
        });
        if improving_ray {
            outcomes.push(SolveOutcome::unbounded());
            continue;
        }
        let mut best: Option<(f64, &Vec<f64>)> = None;
        for v in &vertices {
            let value = crate::lp::evaluate(objective, v)?;
            if best.is_none_or(|(bv, _)| value < bv) {
                best = Some((value, v));
            }
        }
        let (value, point) = best.unwrap();
        outcomes.push(SolveOutcome::optimal(point.clone(), value));
    }
    Ok(outcomes)
}

fn collect_facets(lp: &LinearProgram) -> Vec<Facet> {
    let n = lp.num_variables();
    let mut facets = Vec::new();
    for row in &lp.constraints {
        let vacuous = matches!(
            (row.sense, row.rhs),
            (Sense::Le, f64::INFINITY) | (Sense::Ge, f64::NEG_INFINITY)
        );
        if vacuous {
            continue;
        }
        let mut coeffs = vec![0.0; n];
        for &(var, coef) in &row.terms {
            coeffs[var] += coef;
        }
        facets.push(Facet { coeffs, sense: row.sense, rhs: row.rhs });
    }
    for (i, var) in lp.variables.iter().enumerate() {
        if var.lower.is_finite() {
            let mut coeffs = vec![0.0; n];
            coeffs[i] = 1.0;
            facets.push(Facet { coeffs, sense: Sense::Ge, rhs: var.lower });
        }
        if var.upper.is_finite() {
            let mut coeffs = vec![0.0; n];
            coeffs[i] = 1.0;
            facets.push(Facet { coeffs, sense: Sense::Le, rhs: var.upper });
        }
    }
    facets
}

fn enumerate_feasible_vertices(facets: &[Facet], n: usize) -> Vec<Vec<f64>> {
    let mut vertices: Vec<Vec<f64>> = Vec::new();
    let mut subset: Vec<usize> = Vec::with_capacity(n);
    enumerate_subsets(facets.len(), n, 0, &mut subset, &mut |chosen| {
        let mut a = vec![0.0; n * n];
        let mut b = vec![0.0; n];
        for (r, &fi) in chosen.iter().enumerate() {
            a[r * n..(r + 1) * n].copy_from_slice(&facets[fi].coeffs);
            b[r] = facets[fi].rhs;
        }
        if let Some(x) = solve_square(&mut a, &mut b, n) {
            let scale = x.iter().fold(1.0f64, |s, v| s.max(v.abs()));
            let feasible = facets.iter().all(|f| {
                let lhs: f64 = f.coeffs.iter().zip(&x).map(|(c, v)| c * v).sum();
                match f.sense {
                    Sense::Ge => lhs >= f.rhs - FEAS_TOL * scale,
                    Sense::Le => lhs <= f.rhs + FEAS_TOL * scale,
                    Sense::Eq => (lhs - f.rhs).abs() <= FEAS_TOL * scale,
                }
            });
            if feasible {
                vertices.push(x);
            }
        }
    });
    vertices
}

/// Extreme directions of the recession cone, found by enumerating vertices
/// of the cone intersected with the unit box. Nonzero vertices are rays.
fn recession_rays(lp: &LinearProgram, n: usize) -> Vec<Vec<f64>> {
    let mut facets = Vec::new();
    for row in &lp.constraints {
        let vacuous = matches!(
            (row.sense, row.rhs),
            (Sense::Le, f64::INFINITY) | (Sense::Ge, f64::NEG_INFINITY)
        );
        if vacuous {
            continue;
        }
        let mut coeffs = vec![0.0; n];
        for &(var, coef) in &row.terms {
            coeffs[var] += coef;
        }
        facets.push(Facet { coeffs, sense: row.sense, rhs: 0.0 });
    }
    for (i, var) in lp.variables.iter().enumerate() {
        let mut unit = vec![0.0; n];
        unit[i] = 1.0;
        if var.lower.is_finite() {
            facets.push(Facet { coeffs: unit.clone(), sense: Sense::Ge, rhs: 0.0 });
        }
        if var.upper.is_finite() {
            facets.push(Facet { coeffs: unit.clone(), sense: Sense::Le, rhs: 0.0 });
        }
        // Unit box keeps the cone enumeration bounded.
        facets.push(Facet { coeffs: unit.clone(), sense: Sense::Ge, rhs: -1.0 });
        facets.push(Facet { coeffs: unit, sense: Sense::Le, rhs: 1.0 });
    }
    enumerate_feasible_vertices(&facets, n)
        .into_iter()
        .filter(|d| d.iter().any(|v| v.abs() > 1e-7))
        .collect()
}

fn enumerate_subsets(
    total: usize,
    want: usize,
    from: usize,
    subset: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if subset.len() == want {
        visit(subset);
        return;
    }
    let remaining = want - subset.len();
    for i in from..total {
        if total - i < remaining {
            break;
        }
        subset.push(i);
        enumerate_subsets(total, want, i + 1, subset, visit);
        subset.pop();
    }
}

/// Gaussian elimination with partial pivoting; `None` when singular.
fn solve_square(a: &mut [f64], b: &mut [f64], n: usize) -> Option<Vec<f64>> {
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_val = a[col * n + col].abs();
        for r in (col + 1)..n {
            let v = a[r * n + col].abs();
            if v > pivot_val {
                pivot_row = r;
                pivot_val = v;
            }
        }
        if pivot_val < 1e-10 {
            return None;
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            b.swap(col, pivot_row);
        }
        for r in (col + 1)..n {
            let factor = a[r * n + col] / a[col * n + col];
            if factor != 0.0 {
                for k in col..n {
                    a[r * n + k] -= factor * a[col * n + k];
                }
                b[r] -= factor * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in (col + 1)..n {
            acc -= a[col * n + k] * x[k];
        }
        x[col] = acc / a[col * n + col];
    }
    Some(x)
}

// ---------------------------------------------------------------------------
// Random tiny-program corpus
// ---------------------------------------------------------------------------

/// Draw a random box-bounded program with at most `max_vars` variables and
/// `max_rows` rows. Integer data keeps vertices rational and comparisons
/// between solver and oracle robust.
pub fn random_program(rng: &mut impl Rng, max_vars: usize, max_rows: usize) -> LinearProgram {
    let n = rng.gen_range(1..=max_vars);
    let m = rng.gen_range(0..=max_rows);
    let mut lp = LinearProgram::new();
    for i in 0..n {
        let lower = rng.gen_range(-5..=0) as f64;
        let upper = lower + rng.gen_range(1..=10) as f64;
        lp.add_variable(Variable::bounded(format!("x{i}"), lower, upper));
    }
    for _ in 0..m {
        let k = rng.gen_range(1..=n);
        let mut vars: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = rng.gen_range(i..n);
            vars.swap(i, j);
        }
        let mut terms: Vec<(usize, f64)> = vars[..k]
            .iter()
            .map(|&v| {
                let mut c = 0;
                while c == 0 {
                    c = rng.gen_range(-4..=4);
                }
                (v, c as f64)
            })
            .collect();
        terms.sort_by_key(|&(v, _)| v);
        let sense = match rng.gen_range(0..5) {
            0 | 1 => Sense::Ge,
            2 | 3 => Sense::Le,
            _ => Sense::Eq,
        };
        lp.add_row(LinearConstraint::new(terms, sense, rng.gen_range(-10..=10) as f64));
    }
    let coeffs: Vec<f64> = (0..n).map(|_| rng.gen_range(-5..=5) as f64).collect();
    lp.add_objective(LinearObjective::new("obj", coeffs, rng.gen_range(-3..=3) as f64));
    lp
}

// ---------------------------------------------------------------------------
// Exact-union minimum on a grid (small decision spaces)
// ---------------------------------------------------------------------------

/// Minimum of `selector . x` over the near-optimal union
/// `{ x feasible | exists anchor: f_k(x) <= (1 + eps_k) * f_k(anchor) }`,
/// scanned on a regular grid over the variable boxes. Requires every
/// variable to carry finite bounds. Returns `None` when no grid point is in
/// the union.
pub fn grid_union_minimum(
    lp: &LinearProgram,
    anchor_objectives: &[Vec<f64>],
    eps: &[f64],
    selector_coeffs: &[f64],
    divisions: usize,
) -> Option<f64> {
    let n = lp.num_variables();
    let caps: Vec<Vec<f64>> = anchor_objectives
        .iter()
        .map(|obj| obj.iter().zip(eps).map(|(f, e)| (1.0 + e) * f).collect())
        .collect();
    let mut best: Option<f64> = None;
    let mut index = vec![0usize; n];
    let mut point = vec![0.0; n];
    loop {
        for i in 0..n {
            let v = &lp.variables[i];
            point[i] = v.lower + (v.upper - v.lower) * index[i] as f64 / divisions as f64;
        }
        if lp.max_violation(&point) <= 1e-9 {
            let values: Vec<f64> = lp
                .objectives
                .iter()
                .map(|o| crate::lp::evaluate(o, &point).expect("arity checked"))
                .collect();
            let inside =
                caps.iter().any(|cap| values.iter().zip(cap).all(|(v, c)| *v <= *c + 1e-9));
            if inside {
                let s: f64 = selector_coeffs.iter().zip(&point).map(|(c, x)| c * x).sum();
                if best.is_none_or(|b| s < b) {
                    best = Some(s);
                }
            }
        }
        // Odometer increment over the grid.
        let mut carry = 0;
        while carry < n {
            index[carry] += 1;
            if index[carry] <= divisions {
                break;
            }
            index[carry] = 0;
            carry += 1;
        }
        if carry == n {
            break;
        }
    }
    best
}
