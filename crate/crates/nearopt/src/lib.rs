//! Near-optimal space exploration for multi-objective linear programs.
//!
//! The pipeline, bottom to top:
//!
//! - [`lp`] — linear programs, a backend-neutral solver interface, and the
//!   bundled dense simplex.
//! - [`scalarize`] — weighted-sum and (absolute or relative)
//!   epsilon-constraint scalarizations.
//! - [`pareto`] — approximate Pareto fronts: individual optima, front
//!   generation, dominance filtering and spread reporting.
//! - [`conditions`] — threshold-sum condition families `d.x >= c`,
//!   implication between them, and the non-implied representative.
//! - [`spaces`] — epsilon-optimal spaces by constraint injection and the
//!   necessary-condition thresholds they certify, single- and
//!   multi-objective, plus epsilon-grid sweeps.
//! - [`oracle`] — independent brute-force references: dense grid scans of a
//!   fixed pair of convex curves and exhaustive vertex enumeration for tiny
//!   programs.
//! - [`esom`] — a miniature multi-sector energy system model that compiles
//!   to a two-objective program with named resource-group selectors.
//! - [`io`] — JSON model files, CSV/JSON result emission and run manifests.
//!
//! Each major capability has a runnable example under `examples/`; the thin
//! `nearopt` binary exposes the same pipeline as subcommands.

// Negated float comparisons are NaN guards; indexed loops walk parallel
// tableau arrays.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]
#![allow(clippy::type_complexity)]

pub mod conditions;
pub mod esom;
pub mod io;
pub mod lp;
pub mod oracle;
pub mod pareto;
pub mod scalarize;
pub mod spaces;

pub mod cli;
