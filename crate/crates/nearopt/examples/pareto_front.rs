//! Approximate the cost / invested-energy Pareto front of the bundled
//! energy model with the default relative-deviation schedule, report its
//! spread, and write the plot-ready CSV.
//!
//! ```bash
//! cargo run --example pareto_front
//! ```

use nearopt::esom::{compile, fixture, ENERGY_OBJECTIVE};
use nearopt::io::{emit_front, fmt_sig, RunManifest};
use nearopt::lp::{DenseSimplex, Tolerances};
use nearopt::pareto::{generate_front, spread_report};
use std::path::Path;

fn main() {
    let compiled = compile(&fixture()).expect("bundled model is valid");
    let backend = DenseSimplex::default();

    let schedule = [0.0025, 0.005, 0.01, 0.025, 0.05, 0.075];
    let build = generate_front(&compiled.lp, &schedule, ENERGY_OBJECTIVE, &backend)
        .expect("front generation succeeds");

    println!(
        "{} efficient points ({} member solves dropped):",
        build.front.len(),
        build.dropped.len()
    );
    println!("{:>14} {:>12} {:>10} {:>10}", "cost", "energy-in", "dev-cost", "dev-energy");
    let c_opt = build.optima.cross[0][0];
    let e_opt = build.optima.cross[1][1];
    for p in &build.front.points {
        println!(
            "{:>14.1} {:>12.1} {:>9.2}% {:>9.2}%",
            p.objectives[0],
            p.objectives[1],
            100.0 * (p.objectives[0] / c_opt - 1.0),
            100.0 * (p.objectives[1] / e_opt - 1.0)
        );
    }

    let quality = spread_report(&build.front);
    println!(
        "\nspread: largest normalized gap {}, coverage {}",
        quality.largest_gap.map_or_else(|| "n/a".into(), fmt_sig),
        fmt_sig(quality.coverage)
    );

    let out_dir = std::env::temp_dir().join("nearopt_front_example");
    let model_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/toy_energy.json");
    let bytes = std::fs::read(&model_path).expect("fixture file present");
    let manifest = RunManifest::new(
        "pareto",
        &model_path,
        &bytes,
        Tolerances::default(),
        serde_json::json!({ "epsilons": schedule, "free_objective": ENERGY_OBJECTIVE }),
    );
    let emitted = emit_front(&build, &manifest, &out_dir).expect("output directory writable");
    for f in emitted.files {
        println!("wrote {}", f.display());
    }
}
