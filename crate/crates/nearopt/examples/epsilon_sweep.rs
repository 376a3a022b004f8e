//! Threshold table over a grid of deviation pairs: the minimum energy
//! that must come from domestic resources for every combination of cost
//! and invested-energy slack, on the bundled energy model.
//!
//! ```bash
//! cargo run --example epsilon_sweep
//! ```

use nearopt::esom::{compile, fixture, ENERGY_OBJECTIVE};
use nearopt::io::{emit_sweep, sweep_csv, RunManifest};
use nearopt::lp::{DenseSimplex, Tolerances};
use nearopt::pareto::generate_front;
use nearopt::spaces::{sweep, SweepGrid};
use std::path::Path;
use std::time::Instant;

fn main() {
    let compiled = compile(&fixture()).expect("bundled model is valid");
    let backend = DenseSimplex::default();
    let build = generate_front(
        &compiled.lp,
        &[0.0025, 0.005, 0.01, 0.025, 0.05, 0.075],
        ENERGY_OBJECTIVE,
        &backend,
    )
    .expect("front generation succeeds");

    let grid = SweepGrid::default_percentages();
    let selector = compiled.selectors["endogenous"].clone();
    let start = Instant::now();
    let table =
        sweep(&compiled.lp, &build.front, &grid, &selector, &backend).expect("sweep succeeds");
    println!(
        "36 cells x {} anchors solved in {:?}; monotone: {}",
        build.front.len(),
        start.elapsed(),
        table.is_monotone()
    );
    println!("rows: cost deviation, columns: invested-energy deviation, cells: minimum MWh/y\n");
    print!("{}", sweep_csv(&table));

    let out_dir = std::env::temp_dir().join("nearopt_sweep_example");
    let model_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/toy_energy.json");
    let bytes = std::fs::read(&model_path).expect("fixture file present");
    let manifest = RunManifest::new(
        "sweep",
        &model_path,
        &bytes,
        Tolerances::default(),
        serde_json::json!({
            "selector": "endogenous",
            "grid_rows": grid.rows,
            "grid_cols": grid.cols,
        }),
    );
    let emitted = emit_sweep(&table, &manifest, &out_dir).expect("output directory writable");
    for f in emitted.files {
        println!("wrote {}", f.display());
    }
}
