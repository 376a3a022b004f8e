//! Compile the bundled miniature energy system, optimize cost and
//! invested energy individually, and print the cross table plus the
//! per-resource energy accounting at both optima.
//!
//! ```bash
//! cargo run --example energy_model_report
//! ```

use nearopt::esom::{compile, fixture, COST_OBJECTIVE, ENERGY_OBJECTIVE};
use nearopt::lp::DenseSimplex;
use nearopt::pareto::individual_optima;

fn main() {
    let compiled = compile(&fixture()).expect("bundled model is valid");
    println!(
        "{} variables, {} rows, {} named selectors",
        compiled.lp.num_variables(),
        compiled.lp.constraints.len(),
        compiled.selectors.len()
    );

    let backend = DenseSimplex::default();
    let optima = individual_optima(&compiled.lp, &backend).expect("both objectives solve");

    println!("\nobjective values at each optimum (rows: which optimum):");
    println!("{:>16} {:>16} {:>14}", "", "cost", "energy-in");
    for (i, label) in ["cost optimum", "energy optimum"].iter().enumerate() {
        println!(
            "{:>16} {:>16.1} {:>14.1}",
            label, optima.cross[i][COST_OBJECTIVE], optima.cross[i][ENERGY_OBJECTIVE]
        );
    }
    let cost_spread =
        optima.cross[ENERGY_OBJECTIVE][COST_OBJECTIVE] / optima.cross[COST_OBJECTIVE][COST_OBJECTIVE] - 1.0;
    let energy_spread =
        optima.cross[COST_OBJECTIVE][ENERGY_OBJECTIVE] / optima.cross[ENERGY_OBJECTIVE][ENERGY_OBJECTIVE] - 1.0;
    println!(
        "switching optima costs +{:.1}% money or +{:.1}% invested energy",
        cost_spread * 100.0,
        energy_spread * 100.0
    );

    for (which, outcome) in
        [("cost", &optima.outcomes[COST_OBJECTIVE]), ("invested-energy", &optima.outcomes[ENERGY_OBJECTIVE])]
    {
        let report = compiled.report(outcome).unwrap();
        println!("\nresource use at the {which} optimum [MWh/y]:");
        for usage in &report.per_resource {
            println!("  {:<14} {:>12.1}  ({:?})", usage.name, usage.annual_mwh, usage.class);
        }
        println!(
            "  endogenous {:.1}  exogenous {:.1}  (share {:.0}% domestic)",
            report.endogenous_mwh,
            report.exogenous_mwh,
            100.0 * report.endogenous_mwh / (report.endogenous_mwh + report.exogenous_mwh)
        );
        println!("  emissions {:.1} of {:.1} allowed", report.gwp_used, report.gwp_cap);
    }
}
