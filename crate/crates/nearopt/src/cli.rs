//! Command-line surface. Each subcommand maps onto one library entry
//! point; this module only parses arguments, wires files to the pipeline
//! and translates errors into exit codes:
//!
//! - `0` success;
//! - `1` a solve ended infeasible or unbounded;
//! - `2` bad input (files, schema, parameters);
//! - `3` an internal invariant failed (including oracle disagreement).

use crate::conditions::{ConditionError, Selector};
use crate::esom::EsomError;
use crate::io::{
    self, emit_front, emit_report, emit_sweep, load_model, LoadedModel, RunManifest,
};
use crate::lp::{
    DenseSimplex, Direction, LinearProgram, LpBackend, ModelError, SolveStatus, Tolerances,
};
use crate::oracle;
use crate::pareto::{generate_front, FrontError};
use crate::scalarize::ScalarizeError;
use crate::spaces::{
    necessary_condition_multi, necessary_condition_single, sweep, EpsilonVector, SpaceError,
    SweepGrid,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use std::path::PathBuf;

/// Fallback for `--jobs` when the flag is absent.
pub const JOBS_ENV: &str = "NEAROPT_JOBS";

/// Default relative deviations for front generation.
pub const DEFAULT_SCHEDULE: [f64; 6] = [0.0025, 0.005, 0.01, 0.025, 0.05, 0.075];

#[derive(Parser, Debug)]
#[command(
    name = "nearopt",
    version,
    about = "Pareto fronts, near-optimal spaces and necessary-condition thresholds for linear programs"
)]
struct Cli {
    /// Model file (raw-lp or energy-model JSON).
    #[arg(long, global = true)]
    model: Option<PathBuf>,
    /// Output directory for CSV/JSON results and the run manifest.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Absolute feasibility tolerance.
    #[arg(long, global = true, default_value_t = 1e-7)]
    tol_feas: f64,
    /// Relative optimality tolerance.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol_opt: f64,
    /// Seed for the random tiny-program corpus.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Parallelism degree for anchor and sweep solves.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Dir {
    Min,
    Max,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Objective to optimize, by label or index.
    #[arg(long, default_value = "0")]
    objective: String,
    #[arg(long, value_enum, default_value_t = Dir::Min)]
    direction: Dir,
}

#[derive(Args, Debug)]
struct ParetoArgs {
    /// Comma-separated relative deviations for the constrained objective.
    #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = DEFAULT_SCHEDULE)]
    epsilons: Vec<f64>,
    /// Objective left free (minimized), by label or index.
    #[arg(long, default_value = "1")]
    free_objective: String,
}

#[derive(Args, Debug)]
struct NeccondArgs {
    /// Selector name from the model's registry.
    #[arg(long)]
    selector: String,
    /// Deviations as `objective=value` pairs, comma separated.
    /// Single mode takes exactly one pair; multi mode one per objective.
    #[arg(long)]
    eps: String,
    /// Exact single-objective route.
    #[arg(long, conflicts_with = "multi")]
    single: bool,
    /// Front-based multi-objective route (the default).
    #[arg(long)]
    multi: bool,
    /// Front schedule for the multi route.
    #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = DEFAULT_SCHEDULE)]
    epsilons: Vec<f64>,
    /// Free objective for the front's scalarized solves.
    #[arg(long, default_value = "1")]
    free_objective: String,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Selector name from the model's registry.
    #[arg(long)]
    selector: String,
    /// Grid as `rows x cols` lists, e.g. `0.01,0.02x0.05,0.1`.
    /// Defaults to 1,2,5,10,20,50 percent on both axes.
    #[arg(long)]
    grid: Option<String>,
    /// Front schedule used before sweeping.
    #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = DEFAULT_SCHEDULE)]
    epsilons: Vec<f64>,
    /// Free objective for the front's scalarized solves.
    #[arg(long, default_value = "1")]
    free_objective: String,
}

#[derive(Args, Debug)]
struct OracleArgs {
    /// Number of random tiny programs to cross-check.
    #[arg(long, default_value_t = 200)]
    cases: usize,
    /// Grid step for the curve scans.
    #[arg(long, default_value_t = oracle::DEFAULT_GRID_STEP)]
    step: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one objective of the model.
    Solve(SolveArgs),
    /// Generate an approximate Pareto front.
    Pareto(ParetoArgs),
    /// Compute a necessary-condition threshold for a selector.
    Neccond(NeccondArgs),
    /// Threshold table over a grid of deviation pairs.
    Sweep(SweepArgs),
    /// Run the bundled reference checks and the solver-vs-enumeration corpus.
    Oracle(OracleArgs),
}

/// Errors annotated with the exit code they map to.
#[derive(Debug)]
enum CliError {
    Input(String),
    Terminal(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Terminal(_) => 1,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Terminal(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<io::FileError> for CliError {
    fn from(e: io::FileError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::PivotLimit(_) | ModelError::Internal(_) => {
                CliError::Internal(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ScalarizeError> for CliError {
    fn from(e: ScalarizeError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ConditionError> for CliError {
    fn from(e: ConditionError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<EsomError> for CliError {
    fn from(e: EsomError) -> Self {
        match e {
            EsomError::Model(inner) => inner.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<FrontError> for CliError {
    fn from(e: FrontError) -> Self {
        match e {
            FrontError::ObjectiveFailed { .. } => CliError::Terminal(e.to_string()),
            FrontError::Model(inner) => inner.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<SpaceError> for CliError {
    fn from(e: SpaceError) -> Self {
        match e {
            SpaceError::BaseNotOptimal { .. } => CliError::Terminal(e.to_string()),
            SpaceError::CappedSolveFailed { .. } | SpaceError::AnchorNotSelfFeasible { .. } => {
                CliError::Internal(e.to_string())
            }
            SpaceError::Model(inner) => inner.into(),
            SpaceError::Scalarize(inner) => inner.into(),
            SpaceError::Condition(inner) => inner.into(),
            SpaceError::SweepCellFailed { row, col, source } => {
                let inner: CliError = (*source).into();
                let tag = |m: &str| format!("sweep cell ({row}, {col}): {m}");
                match inner {
                    CliError::Input(m) => CliError::Input(tag(&m)),
                    CliError::Terminal(m) => CliError::Terminal(tag(&m)),
                    CliError::Internal(m) => CliError::Internal(tag(&m)),
                }
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

/// Parse `std::env::args`, run, and return the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints its own message; usage problems are input errors.
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let jobs = cli.jobs.or_else(|| {
        std::env::var(JOBS_ENV).ok().and_then(|v| v.parse().ok())
    });
    let body = || match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    };
    match jobs {
        Some(n) if n > 0 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(body),
            Err(e) => {
                eprintln!("error: cannot build a {n}-thread pool: {e}");
                2
            }
        },
        _ => body(),
    }
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let backend = DenseSimplex::new(Tolerances { feas: cli.tol_feas, opt: cli.tol_opt });
    match &cli.command {
        Command::Solve(args) => cmd_solve(cli, args, &backend),
        Command::Pareto(args) => cmd_pareto(cli, args, &backend),
        Command::Neccond(args) => cmd_neccond(cli, args, &backend),
        Command::Sweep(args) => cmd_sweep(cli, args, &backend),
        Command::Oracle(args) => cmd_oracle(cli, args, &backend),
    }
}

struct ModelContext {
    model: LoadedModel,
    path: PathBuf,
    bytes: Vec<u8>,
}

fn require_model(cli: &Cli) -> Result<ModelContext, CliError> {
    let path = cli
        .model
        .clone()
        .ok_or_else(|| CliError::Input("this command needs --model <FILE>".into()))?;
    let bytes = std::fs::read(&path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let model = load_model(&path)?;
    Ok(ModelContext { model, path, bytes })
}

fn resolve_objective(lp: &LinearProgram, key: &str) -> Result<usize, CliError> {
    if let Some(idx) = lp.objectives.iter().position(|o| o.label == key) {
        return Ok(idx);
    }
    match key.parse::<usize>() {
        Ok(idx) if idx < lp.objectives.len() => Ok(idx),
        _ => Err(CliError::Input(format!(
            "unknown objective `{key}`; available: {}",
            lp.objectives
                .iter()
                .enumerate()
                .map(|(i, o)| format!("{i}={}", o.label))
                .collect::<Vec<_>>()
                .join(", ")
        ))),
    }
}

fn resolve_selector<'a>(
    model: &'a LoadedModel,
    name: &str,
) -> Result<&'a Selector, CliError> {
    model.selectors().get(name).ok_or_else(|| {
        CliError::Input(format!(
            "unknown selector `{name}`; available: {}",
            model.selectors().keys().cloned().collect::<Vec<_>>().join(", ")
        ))
    })
}

fn manifest(
    ctx: &ModelContext,
    command: &str,
    backend: &DenseSimplex,
    parameters: serde_json::Value,
) -> RunManifest {
    RunManifest::new(command, &ctx.path, &ctx.bytes, backend.tolerances, parameters)
}

fn cmd_solve(cli: &Cli, args: &SolveArgs, backend: &DenseSimplex) -> Result<(), CliError> {
    let ctx = require_model(cli)?;
    let lp = ctx.model.lp();
    let objective = resolve_objective(lp, &args.objective)?;
    let direction = match args.direction {
        Dir::Min => Direction::Min,
        Dir::Max => Direction::Max,
    };
    let outcome = backend.solve(lp, objective, direction)?;
    match outcome.status {
        SolveStatus::Optimal => {
            println!(
                "Optimal {} = {}",
                lp.objectives[objective].label,
                io::fmt_sig(outcome.expect_value())
            );
            if let Some(compiled) = ctx.model.energy() {
                let report = compiled.report(&outcome)?;
                print!("{}", energy_report_text(&report));
            }
            if let Some(out_dir) = &cli.out {
                let m = manifest(
                    &ctx,
                    "solve",
                    backend,
                    serde_json::json!({
                        "objective": objective,
                        "direction": format!("{:?}", direction),
                    }),
                );
                std::fs::create_dir_all(out_dir)
                    .map_err(|e| CliError::Input(format!("{}: {e}", out_dir.display())))?;
                io::write_atomic(
                    &out_dir.join("solution.json"),
                    &serde_json::to_string_pretty(&outcome).expect("outcome serializes"),
                )?;
                io::write_atomic(
                    &out_dir.join("manifest.json"),
                    &serde_json::to_string_pretty(&m).expect("manifest serializes"),
                )?;
            }
            Ok(())
        }
        status => Err(CliError::Terminal(format!(
            "{} of `{}` ended {:?}",
            match direction {
                Direction::Min => "minimization",
                Direction::Max => "maximization",
            },
            lp.objectives[objective].label,
            status
        ))),
    }
}

fn energy_report_text(report: &crate::esom::EnergyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "  cost            {}", io::fmt_sig(report.total_cost));
    let _ = writeln!(out, "  invested energy {}", io::fmt_sig(report.invested_energy));
    let _ = writeln!(
        out,
        "  emissions       {} / {}",
        io::fmt_sig(report.gwp_used),
        io::fmt_sig(report.gwp_cap)
    );
    for usage in &report.per_resource {
        let _ = writeln!(
            out,
            "  {:<16} {:>16} MWh ({:?})",
            usage.name,
            io::fmt_sig(usage.annual_mwh),
            usage.class
        );
    }
    let _ = writeln!(
        out,
        "  endogenous {} MWh, exogenous {} MWh",
        io::fmt_sig(report.endogenous_mwh),
        io::fmt_sig(report.exogenous_mwh)
    );
    out
}

fn cmd_pareto(cli: &Cli, args: &ParetoArgs, backend: &DenseSimplex) -> Result<(), CliError> {
    let ctx = require_model(cli)?;
    let lp = ctx.model.lp();
    let free = resolve_objective(lp, &args.free_objective)?;
    let build = generate_front(lp, &args.epsilons, free, backend)?;
    println!(
        "front: {} points ({} member solves dropped)",
        build.front.len(),
        build.dropped.len()
    );
    for p in &build.front.points {
        let cells: Vec<String> = p.objectives.iter().map(|v| io::fmt_sig(*v)).collect();
        println!("  {}", cells.join("  "));
    }
    let report = crate::pareto::spread_report(&build.front);
    println!(
        "spread: largest gap {}, coverage {}",
        report.largest_gap.map_or("n/a".into(), io::fmt_sig),
        io::fmt_sig(report.coverage)
    );
    if let Some(out_dir) = &cli.out {
        let m = manifest(
            &ctx,
            "pareto",
            backend,
            serde_json::json!({ "epsilons": args.epsilons, "free_objective": free }),
        );
        let emitted = emit_front(&build, &m, out_dir)?;
        for f in emitted.files {
            println!("wrote {}", f.display());
        }
    }
    Ok(())
}

/// Parse `objective=value` pairs keyed by label or index.
fn parse_eps_pairs(spec: &str, lp: &LinearProgram) -> Result<Vec<(usize, f64)>, CliError> {
    let mut pairs = Vec::new();
    for part in spec.split(',') {
        let (key, value) = part.split_once('=').ok_or_else(|| {
            CliError::Input(format!("`{part}` is not an `objective=value` pair"))
        })?;
        let objective = resolve_objective(lp, key.trim())?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("`{value}` is not a number")))?;
        pairs.push((objective, value));
    }
    Ok(pairs)
}

fn cmd_neccond(cli: &Cli, args: &NeccondArgs, backend: &DenseSimplex) -> Result<(), CliError> {
    let ctx = require_model(cli)?;
    let lp = ctx.model.lp();
    let selector = resolve_selector(&ctx.model, &args.selector)?.clone();
    let pairs = parse_eps_pairs(&args.eps, lp)?;

    let report = if args.single {
        if pairs.len() != 1 {
            return Err(CliError::Input(
                "--single takes exactly one objective=value pair".into(),
            ));
        }
        let (objective, eps) = pairs[0];
        necessary_condition_single(lp, objective, eps, &selector, backend)?
    } else {
        let mut eps = vec![None; lp.objectives.len()];
        for (objective, value) in pairs {
            eps[objective] = Some(value);
        }
        let eps: Vec<f64> = eps
            .into_iter()
            .enumerate()
            .map(|(k, v)| {
                v.ok_or_else(|| {
                    CliError::Input(format!(
                        "--multi needs a deviation for every objective; objective {k} is missing"
                    ))
                })
            })
            .collect::<Result<_, _>>()?;
        let free = resolve_objective(lp, &args.free_objective)?;
        let build = generate_front(lp, &args.epsilons, free, backend)?;
        necessary_condition_multi(
            lp,
            &build.front,
            &EpsilonVector::new(eps)?,
            &selector,
            backend,
        )?
    };

    println!(
        "{} threshold for `{}`: {}  (sum of {} selected variables; {} anchor(s))",
        match report.bound_kind {
            crate::spaces::BoundKind::ExactOptimum => "exact",
            crate::spaces::BoundKind::FrontUpperBound => "upper-bound",
        },
        args.selector,
        io::fmt_sig(report.threshold),
        report.selector.coefficients().iter().filter(|&&c| c > 0.0).count(),
        report.front_size,
    );
    for a in &report.per_anchor {
        println!("  anchor {:>2}: {}", a.anchor_index, io::fmt_sig(a.minimum));
    }
    if let Some(out_dir) = &cli.out {
        let m = manifest(
            &ctx,
            "neccond",
            backend,
            serde_json::json!({
                "selector": args.selector,
                "eps": args.eps,
                "mode": if args.single { "single" } else { "multi" },
                "epsilons": args.epsilons,
            }),
        );
        let emitted = emit_report(&report, &m, out_dir)?;
        for f in emitted.files {
            println!("wrote {}", f.display());
        }
    }
    Ok(())
}

fn parse_grid(spec: &str) -> Result<SweepGrid, CliError> {
    let parse_axis = |axis: &str| -> Result<Vec<f64>, CliError> {
        axis.split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::Input(format!("`{v}` is not a number")))
            })
            .collect()
    };
    match spec.split_once('x') {
        Some((rows, cols)) => {
            Ok(SweepGrid { rows: parse_axis(rows)?, cols: parse_axis(cols)? })
        }
        None => {
            let axis = parse_axis(spec)?;
            Ok(SweepGrid { rows: axis.clone(), cols: axis })
        }
    }
}

fn cmd_sweep(cli: &Cli, args: &SweepArgs, backend: &DenseSimplex) -> Result<(), CliError> {
    let ctx = require_model(cli)?;
    let lp = ctx.model.lp();
    let selector = resolve_selector(&ctx.model, &args.selector)?.clone();
    let grid = match &args.grid {
        Some(spec) => parse_grid(spec)?,
        None => SweepGrid::default_percentages(),
    };
    let free = resolve_objective(lp, &args.free_objective)?;
    let build = generate_front(lp, &args.epsilons, free, backend)?;
    let result = sweep(lp, &build.front, &grid, &selector, backend)?;
    print!("{}", io::sweep_csv(&result));
    if !result.is_monotone() {
        eprintln!(
            "warning: {} monotonicity violation(s) beyond tolerance",
            result.violations.len()
        );
    }
    if let Some(out_dir) = &cli.out {
        let m = manifest(
            &ctx,
            "sweep",
            backend,
            serde_json::json!({
                "selector": args.selector,
                "grid_rows": result.grid.rows,
                "grid_cols": result.grid.cols,
                "epsilons": args.epsilons,
                "free_objective": free,
            }),
        );
        let emitted = emit_sweep(&result, &m, out_dir)?;
        for f in emitted.files {
            println!("wrote {}", f.display());
        }
    }
    Ok(())
}

fn cmd_oracle(cli: &Cli, args: &OracleArgs, backend: &DenseSimplex) -> Result<(), CliError> {
    let mut failures = 0usize;
    let mut check = |name: &str, ok: bool, detail: String| {
        if ok {
            println!("ok   - {name}{detail}");
        } else {
            failures += 1;
            println!("FAIL - {name}{detail}");
        }
    };

    let pair = oracle::CurvePair::reference();
    let step = args.step;
    let interval_check = |query: &oracle::SpaceQuery,
                          expected: (f64, f64)|
     -> Result<(bool, String), CliError> {
        let result = oracle::grid_epsilon_space(&pair, query, step)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        let (lo, hi) = result
            .hull()
            .ok_or_else(|| CliError::Internal("empty scan result".into()))?;
        let ok = (lo - expected.0).abs() <= 1e-3 && (hi - expected.1).abs() <= 1e-3;
        Ok((ok, format!(": [{}, {}]", io::fmt_sig(lo), io::fmt_sig(hi))))
    };

    let (ok, detail) = interval_check(
        &oracle::SpaceQuery::Single { which: oracle::Curve::First, epsilon: 0.25 },
        (0.263, 0.487),
    )?;
    check("single-curve interval", ok, detail);
    let (ok, detail) = interval_check(
        &oracle::SpaceQuery::AnchorBoxes { epsilon: [0.25, 0.6], anchors: vec![0.6] },
        (0.395, 0.65),
    )?;
    check("anchor-box interval", ok, detail);
    let (ok, detail) =
        interval_check(&oracle::SpaceQuery::FullFront { epsilon: [0.25, 0.6] }, (0.263, 1.05))?;
    check("full-front interval", ok, detail);

    let lists: [(&str, usize, &[(f64, f64)]); 2] = [
        ("three-point sample", 3, &[(2.0, 2.91), (3.41, 1.85), (7.62, 1.5)]),
        (
            "eleven-point sample",
            11,
            &[
                (2.0, 2.91),
                (2.06, 2.64),
                (2.23, 2.40),
                (2.51, 2.19),
                (2.9, 2.01),
                (3.41, 1.85),
                (4.03, 1.72),
                (4.76, 1.63),
                (5.61, 1.56),
                (6.57, 1.51),
                (7.62, 1.5),
            ],
        ),
    ];
    for (name, m, expected) in lists {
        let samples = oracle::grid_pareto(&pair, m, &oracle::FrontSpacing::ByX);
        let ok = samples.len() == expected.len()
            && samples.iter().zip(expected).all(|(s, e)| {
                (round_sig3(s.objectives[0]) - e.0).abs() <= 0.01 + 1e-9
                    && (round_sig3(s.objectives[1]) - e.1).abs() <= 0.01 + 1e-9
            });
        check(name, ok, String::new());
    }

    // Solver vs exhaustive enumeration on the seeded corpus.
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut mismatches = Vec::new();
    for case in 0..args.cases {
        let lp = oracle::random_program(&mut rng, 6, 6);
        let enumerated = oracle::vertex_enumerate(&lp)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        let solved = backend.solve(&lp, 0, Direction::Min)?;
        let reference = &enumerated[0];
        let agree = match (solved.status, reference.status) {
            (SolveStatus::Optimal, SolveStatus::Optimal) => {
                (solved.expect_value() - reference.expect_value()).abs() <= 1e-6
            }
            (a, b) => a == b,
        };
        if !agree {
            mismatches.push(case);
        }
    }
    check(
        "solver-vs-enumeration corpus",
        mismatches.is_empty(),
        format!(
            ": {} cases, seed {}{}",
            args.cases,
            cli.seed,
            if mismatches.is_empty() {
                String::new()
            } else {
                format!(", mismatches at {mismatches:?}")
            }
        ),
    );

    if let Some(out_dir) = &cli.out {
        std::fs::create_dir_all(out_dir)
            .map_err(|e| CliError::Input(format!("{}: {e}", out_dir.display())))?;
        let mut curve = String::from("x,f1,f2\n");
        let mut x = pair.domain.0;
        while x <= pair.domain.1 + 1e-12 {
            let v = pair.objectives_at(x);
            let _ = writeln!(curve, "{},{},{}", io::fmt_sig(x), io::fmt_sig(v[0]), io::fmt_sig(v[1]));
            x += 1e-3;
        }
        io::write_atomic(&out_dir.join("curves.csv"), &curve)?;
        let mut front = String::from("x,f1,f2\n");
        for s in oracle::grid_pareto(&pair, 11, &oracle::FrontSpacing::ByX) {
            let _ = writeln!(
                front,
                "{},{},{}",
                io::fmt_sig(s.x),
                io::fmt_sig(s.objectives[0]),
                io::fmt_sig(s.objectives[1])
            );
        }
        io::write_atomic(&out_dir.join("efficient_samples.csv"), &front)?;
        println!("wrote {}", out_dir.join("curves.csv").display());
        println!("wrote {}", out_dir.join("efficient_samples.csv").display());
    }

    if failures > 0 {
        Err(CliError::Internal(format!("{failures} reference check(s) failed")))
    } else {
        Ok(())
    }
}

/// Round to three significant figures, half away from zero.
fn round_sig3(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(2 - magnitude);
    (x * scale).round() / scale
}

/// Entry point used by the thin binary; kept here so the dispatch logic is
/// part of the library.
pub fn main_entry() -> i32 {
    run()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spec_parsing() {
        let g = parse_grid("0.01,0.02x0.05,0.1").unwrap();
        assert_eq!(g.rows, vec![0.01, 0.02]);
        assert_eq!(g.cols, vec![0.05, 0.1]);
        let square = parse_grid("0.1,0.2").unwrap();
        assert_eq!(square.rows, square.cols);
        assert!(parse_grid("abc").is_err());
    }

    #[test]
    fn sig3_rounding() {
        assert_eq!(round_sig3(2.90625), 2.91);
        assert_eq!(round_sig3(1.8515625), 1.85);
        assert_eq!(round_sig3(7.625), 7.63);
        assert_eq!(round_sig3(4.025), 4.03);
        assert_eq!(round_sig3(0.0), 0.0);
    }

    #[test]
    fn eps_pair_parsing() {
        let pair = crate::oracle::CurvePair::reference();
        let lp = crate::oracle::grid_model(&pair, 0.1).unwrap();
        let pairs = parse_eps_pairs("f1=0.05,1=0.1", &lp).unwrap();
        assert_eq!(pairs, vec![(0, 0.05), (1, 0.1)]);
        assert!(parse_eps_pairs("nope=1", &lp).is_err());
        assert!(parse_eps_pairs("f1:0.05", &lp).is_err());
    }
}
