//! Necessary-condition thresholds, both routes.
//!
//! Single-objective: on a two-variable program the threshold is exact —
//! every solution within 10% of the optimal cost satisfies `x2 >= 0.9`.
//! Multi-objective: on the bundled energy model the threshold is an upper
//! bound computed over the approximate front, one capped solve per anchor.
//!
//! ```bash
//! cargo run --example necessary_conditions
//! ```

use nearopt::conditions::{holds, implies, non_implied, ConditionSpec, Selector};
use nearopt::esom::{compile, fixture, ENERGY_OBJECTIVE};
use nearopt::lp::{
    DenseSimplex, LinearConstraint, LinearObjective, LinearProgram, Sense, Variable,
};
use nearopt::pareto::generate_front;
use nearopt::spaces::{
    necessary_condition_multi, necessary_condition_single, EpsilonVector,
};

fn main() {
    // --- exact single-objective route -----------------------------------
    let mut lp = LinearProgram::new();
    lp.add_variable(Variable::nonneg("x1"));
    lp.add_variable(Variable::nonneg("x2"));
    lp.add_row(LinearConstraint::new(vec![(0, 1.0), (1, 2.0)], Sense::Ge, 2.0));
    lp.add_objective(LinearObjective::new("sum", vec![1.0, 1.0], 0.0));

    let backend = DenseSimplex::default();
    let second = Selector::from_indices(2, &[1]).unwrap();
    let report = necessary_condition_single(&lp, 0, 0.1, &second, &backend).unwrap();
    println!(
        "exact threshold: every solution within 10% of optimal keeps x2 >= {:.3} (witness {:?})",
        report.threshold, report.witness
    );

    // The threshold defines the only non-implied member of its family.
    let certified = [report.threshold, 0.5, 0.0, -1.0];
    let top = non_implied(&certified, &second).unwrap();
    let weaker = ConditionSpec::new(second.clone(), 0.5);
    println!(
        "family view: top threshold {:.3}, implies the 0.5 member: {}",
        top.threshold,
        implies(&weaker, &top).unwrap()
    );
    println!(
        "holds at the witness: {}",
        holds(&top, &report.witness, 1e-7).unwrap()
    );

    // --- upper-bound multi-objective route -------------------------------
    let compiled = compile(&fixture()).expect("bundled model is valid");
    let build = generate_front(
        &compiled.lp,
        &[0.0025, 0.005, 0.01, 0.025, 0.05, 0.075],
        ENERGY_OBJECTIVE,
        &backend,
    )
    .expect("front generation succeeds");
    println!("\nenergy model, {}-anchor front:", build.front.len());
    println!(
        "{:>14} {:>14} {:>14} {:>14}",
        "selector", "eps=(1%,1%)", "eps=(5%,5%)", "eps=(50%,50%)"
    );
    for name in ["endogenous", "exogenous", "gas", "elec_import"] {
        let selector = compiled.selectors[name].clone();
        let mut row = format!("{name:>14}");
        for eps in [0.01, 0.05, 0.5] {
            let eps = EpsilonVector::uniform(eps, 2).unwrap();
            let multi =
                necessary_condition_multi(&compiled.lp, &build.front, &eps, &selector, &backend)
                    .unwrap();
            row += &format!(" {:>14.1}", multi.threshold);
        }
        println!("{row}");
    }
    println!(
        "\nreading: the exogenous row stays high even at 50% slack (an import floor),\n\
         while single resources fall to zero — none of them is essential on its own."
    );
}
