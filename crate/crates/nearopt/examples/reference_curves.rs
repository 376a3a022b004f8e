//! Grid-scan the bundled pair of convex curves: single-curve near-optimal
//! intervals, per-anchor boxes, the whole-front estimate, and efficient
//! samples — then cross-check two of the numbers against the simplex on
//! the grid-compiled program.
//!
//! ```bash
//! cargo run --example reference_curves
//! ```

use nearopt::lp::{DenseSimplex, LpBackend};
use nearopt::oracle::{
    grid_epsilon_space, grid_model, grid_pareto, position_range, CurvePair, FrontSpacing,
    SpaceQuery, DEFAULT_GRID_STEP,
};
use nearopt::scalarize::{epsilon_constraint, CapMode, EpsilonConstraintSpec};

fn main() {
    let pair = CurvePair::reference();
    println!(
        "curve minima: ({}, {}) and ({}, {})",
        pair.f1.argmin(),
        pair.f1.eval(pair.f1.argmin()),
        pair.f2.argmin(),
        pair.f2.eval(pair.f2.argmin()),
    );

    let show = |name: &str, query: &SpaceQuery| {
        let result = grid_epsilon_space(&pair, query, DEFAULT_GRID_STEP).unwrap();
        let (lo, hi) = result.hull().unwrap();
        println!("{name}: [{lo:.4}, {hi:.4}]");
        (lo, hi)
    };
    show(
        "first curve, 25% slack          ",
        &SpaceQuery::Single { which: nearopt::oracle::Curve::First, epsilon: 0.25 },
    );
    show(
        "box around the anchor x = 0.6   ",
        &SpaceQuery::AnchorBoxes { epsilon: [0.25, 0.6], anchors: vec![0.6] },
    );
    show(
        "whole-front estimate            ",
        &SpaceQuery::FullFront { epsilon: [0.25, 0.6] },
    );

    println!("\nefficient samples, equally spaced in x:");
    for s in grid_pareto(&pair, 11, &FrontSpacing::ByX) {
        println!("  x = {:.4}  f = ({:.3}, {:.3})", s.x, s.objectives[0], s.objectives[1]);
    }

    // Same questions through the solver: compile the curves to a linear
    // program over grid weights and reproduce the 25% interval.
    let lp = grid_model(&pair, 2.5e-4).unwrap();
    let backend = DenseSimplex::default();
    let space =
        nearopt::spaces::epsilon_space_single(&lp, 0, 0.25, &backend).expect("curve program solves");
    let (lo, hi) = position_range(&space.program, &backend).unwrap();
    println!("\nsimplex agrees on the 25% interval: [{lo:.4}, {hi:.4}]");

    let spec = EpsilonConstraintSpec {
        free_objective: 1,
        mode: CapMode::Relative { epsilons: vec![0.25, 0.0], references: vec![2.0, 0.0] },
    };
    let capped = epsilon_constraint(&lp, &spec).unwrap();
    let best = backend
        .solve(&capped, 0, nearopt::lp::Direction::Min)
        .unwrap();
    println!(
        "best second-curve value with the first capped 25% above optimal: {:.4}",
        best.expect_value()
    );
}
