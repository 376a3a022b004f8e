//! Build a small linear program in code, solve it, and load the same
//! program from a raw-lp JSON document.
//!
//! ```bash
//! cargo run --example solve_basics
//! ```

use nearopt::lp::{
    DenseSimplex, Direction, LinearConstraint, LinearObjective, LinearProgram, LpBackend, Sense,
    Variable,
};
use std::path::Path;

fn main() {
    // min x1 + x2  s.t.  x1 + 2 x2 >= 2,  x >= 0
    let mut lp = LinearProgram::new();
    let x1 = lp.add_variable(Variable::nonneg("x1"));
    let x2 = lp.add_variable(Variable::nonneg("x2"));
    lp.add_row(LinearConstraint::new(vec![(x1, 1.0), (x2, 2.0)], Sense::Ge, 2.0));
    lp.add_objective(LinearObjective::new("sum", vec![1.0, 1.0], 0.0));

    let backend = DenseSimplex::default();
    let out = backend.solve(&lp, 0, Direction::Min).expect("well-formed program");
    println!("hand-built: {:?} value {:?} at {:?}", out.status, out.objective_value, out.point);

    // Adding an implied row changes nothing; adding a cap moves the optimum.
    let doubled = nearopt::lp::add_constraint(
        &lp,
        LinearConstraint::new(vec![(x1, 1.0), (x2, 2.0)], Sense::Ge, 2.0),
    )
    .unwrap();
    let same = backend.solve(&doubled, 0, Direction::Min).unwrap();
    println!("with duplicated row: value {:?}", same.objective_value);

    let capped = nearopt::lp::add_constraint(
        &lp,
        LinearConstraint::new(vec![(x1, 1.0), (x2, 1.0)], Sense::Le, 1.1),
    )
    .unwrap();
    let mut probe = capped.clone();
    probe.add_objective(LinearObjective::new("x2", vec![0.0, 1.0], 0.0));
    let min_x2 = backend.solve(&probe, 1, Direction::Min).unwrap();
    println!("min x2 under the 1.1 budget row: {:?}", min_x2.objective_value);

    // The same worked program ships as a raw-lp document.
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/worked_two_var.json");
    let loaded = nearopt::io::load_model(&path).expect("fixture parses");
    let again = backend.solve(loaded.lp(), 0, Direction::Min).unwrap();
    println!(
        "from {}: value {:?}, selectors {:?}",
        path.file_name().unwrap().to_string_lossy(),
        again.objective_value,
        loaded.selectors().keys().collect::<Vec<_>>()
    );
}
