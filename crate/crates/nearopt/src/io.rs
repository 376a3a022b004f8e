//! Model ingestion, result persistence and run manifests.
//!
//! One JSON model format with two flavors, discriminated by `kind`:
//!
//! - `raw-lp`: variables (name, optional bounds), sparse constraints whose
//!   terms reference variables by name, objectives, and named selector
//!   lists;
//! - `energy-model`: the declarative miniature energy system, compiled on
//!   load.
//!
//! Results go out as plot-ready CSV (front table, sweep heatmap) plus a
//! JSON report with witnesses and a [`RunManifest`] recording everything
//! needed to reproduce the emitted numbers byte for byte with the bundled
//! solver. All CSV numbers carry 12 significant digits; files are written
//! to a temporary name and renamed into place.

use crate::conditions::Selector;
use crate::esom::{compile, CompiledModel, EnergyModelSpec};
use crate::lp::{
    LinearConstraint, LinearObjective, LinearProgram, Sense, Tolerances, Variable,
};
use crate::pareto::{FrontBuild, Provenance};
use crate::spaces::{NecessaryConditionReport, SweepResult};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: PathBuf, line: usize, column: usize, message: String },
    #[error("{path}: unsupported format version {got} (this build reads version {want})")]
    Version { path: PathBuf, got: u32, want: u32 },
    #[error("{path}: {detail}")]
    Schema { path: PathBuf, detail: String },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
}

/// The one format version this build reads and writes.
pub const FORMAT_VERSION: u32 = 1;

// ---------------------------------------------------------------------------
// Model documents
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct VariableDoc {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lower: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    upper: Option<f64>,
    /// Free variables (no lower bound) must say so explicitly.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    free: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct TermDoc {
    var: String,
    coef: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct ConstraintDoc {
    terms: Vec<TermDoc>,
    sense: Sense,
    rhs: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct ObjectiveDoc {
    label: String,
    terms: Vec<TermDoc>,
    #[serde(default)]
    offset: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawLpDoc {
    variables: Vec<VariableDoc>,
    #[serde(default)]
    constraints: Vec<ConstraintDoc>,
    objectives: Vec<ObjectiveDoc>,
    #[serde(default)]
    selectors: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
enum ModelDoc {
    #[serde(rename = "raw-lp")]
    RawLp { version: u32, #[serde(flatten)] body: RawLpDoc },
    #[serde(rename = "energy-model")]
    Energy { version: u32, #[serde(flatten)] body: EnergyModelSpec },
}

/// A loaded and validated model, ready for the pipeline.
#[derive(Debug, Clone)]
pub enum LoadedModel {
    Raw { lp: LinearProgram, selectors: BTreeMap<String, Selector> },
    Energy { compiled: CompiledModel },
}

impl LoadedModel {
    pub fn lp(&self) -> &LinearProgram {
        match self {
            LoadedModel::Raw { lp, .. } => lp,
            LoadedModel::Energy { compiled } => &compiled.lp,
        }
    }

    pub fn selectors(&self) -> &BTreeMap<String, Selector> {
        match self {
            LoadedModel::Raw { selectors, .. } => selectors,
            LoadedModel::Energy { compiled } => &compiled.selectors,
        }
    }

    pub fn energy(&self) -> Option<&CompiledModel> {
        match self {
            LoadedModel::Energy { compiled } => Some(compiled),
            LoadedModel::Raw { .. } => None,
        }
    }
}

/// Read, parse and validate a model file of either flavor.
pub fn load_model(path: &Path) -> Result<LoadedModel, FileError> {
    let text = fs::read_to_string(path)
        .map_err(|source| FileError::Read { path: path.to_path_buf(), source })?;
    load_model_str(&text, path)
}

/// Parse a model document from a string; `path` is used in diagnostics.
pub fn load_model_str(text: &str, path: &Path) -> Result<LoadedModel, FileError> {
    let doc: ModelDoc = serde_json::from_str(text).map_err(|e| FileError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let schema = |detail: String| FileError::Schema { path: path.to_path_buf(), detail };
    match doc {
        ModelDoc::RawLp { version, body } => {
            if version != FORMAT_VERSION {
                return Err(FileError::Version {
                    path: path.to_path_buf(),
                    got: version,
                    want: FORMAT_VERSION,
                });
            }
            let (lp, selectors) = raw_doc_to_lp(body).map_err(schema)?;
            lp.validate().map_err(|e| {
                FileError::Schema { path: path.to_path_buf(), detail: e.to_string() }
            })?;
            Ok(LoadedModel::Raw { lp, selectors })
        }
        ModelDoc::Energy { version, body } => {
            if version != FORMAT_VERSION {
                return Err(FileError::Version {
                    path: path.to_path_buf(),
                    got: version,
                    want: FORMAT_VERSION,
                });
            }
            let compiled = compile(&body).map_err(|e| schema(e.to_string()))?;
            Ok(LoadedModel::Energy { compiled })
        }
    }
}

fn raw_doc_to_lp(
    doc: RawLpDoc,
) -> Result<(LinearProgram, BTreeMap<String, Selector>), String> {
    let mut lp = LinearProgram::new();
    for v in &doc.variables {
        let lower = if v.free { f64::NEG_INFINITY } else { v.lower.unwrap_or(0.0) };
        let upper = v.upper.unwrap_or(f64::INFINITY);
        lp.add_variable(Variable::bounded(v.name.clone(), lower, upper));
    }
    let resolve = |name: &str| {
        lp.variable_index(name).ok_or_else(|| format!("unknown variable `{name}`"))
    };
    let mut rows = Vec::new();
    for c in &doc.constraints {
        let mut terms = Vec::with_capacity(c.terms.len());
        for t in &c.terms {
            terms.push((resolve(&t.var)?, t.coef));
        }
        rows.push(LinearConstraint::new(terms, c.sense, c.rhs));
    }
    let mut objectives = Vec::new();
    for o in &doc.objectives {
        let mut coefficients = vec![0.0; doc.variables.len()];
        for t in &o.terms {
            coefficients[resolve(&t.var)?] += t.coef;
        }
        objectives.push(LinearObjective::new(o.label.clone(), coefficients, o.offset));
    }
    let mut selectors = BTreeMap::new();
    for (name, vars) in &doc.selectors {
        let mut indices = Vec::with_capacity(vars.len());
        for v in vars {
            indices.push(resolve(v)?);
        }
        let selector = Selector::from_indices(doc.variables.len(), &indices)
            .map_err(|e| format!("selector `{name}`: {e}"))?;
        selectors.insert(name.clone(), selector);
    }
    for row in rows {
        lp.add_row(row);
    }
    for o in objectives {
        lp.add_objective(o);
    }
    Ok((lp, selectors))
}

/// Serialize a model back into its document form.
pub fn model_to_json(model: &LoadedModel) -> String {
    let doc = match model {
        LoadedModel::Raw { lp, selectors } => ModelDoc::RawLp {
            version: FORMAT_VERSION,
            body: RawLpDoc {
                variables: lp
                    .variables
                    .iter()
                    .map(|v| VariableDoc {
                        name: v.name.clone(),
                        lower: (v.lower != 0.0 && v.lower.is_finite()).then_some(v.lower),
                        upper: v.upper.is_finite().then_some(v.upper),
                        free: v.lower == f64::NEG_INFINITY,
                    })
                    .collect(),
                constraints: lp
                    .constraints
                    .iter()
                    .map(|c| ConstraintDoc {
                        terms: c
                            .terms
                            .iter()
                            .map(|&(i, coef)| TermDoc {
                                var: lp.variables[i].name.clone(),
                                coef,
                            })
                            .collect(),
                        sense: c.sense,
                        rhs: c.rhs,
                    })
                    .collect(),
                objectives: lp
                    .objectives
                    .iter()
                    .map(|o| ObjectiveDoc {
                        label: o.label.clone(),
                        terms: o
                            .coefficients
                            .iter()
                            .enumerate()
                            .filter(|&(_, &c)| c != 0.0)
                            .map(|(i, &coef)| TermDoc {
                                var: lp.variables[i].name.clone(),
                                coef,
                            })
                            .collect(),
                        offset: o.offset,
                    })
                    .collect(),
                selectors: selectors
                    .iter()
                    .map(|(name, s)| {
                        let vars = s
                            .mask
                            .iter()
                            .enumerate()
                            .filter(|&(_, &b)| b)
                            .map(|(i, _)| lp.variables[i].name.clone())
                            .collect();
                        (name.clone(), vars)
                    })
                    .collect(),
            },
        },
        LoadedModel::Energy { compiled } => ModelDoc::Energy {
            version: FORMAT_VERSION,
            body: compiled.spec.clone(),
        },
    };
    serde_json::to_string_pretty(&doc).expect("model documents serialize")
}

// ---------------------------------------------------------------------------
// Number formatting
// ---------------------------------------------------------------------------

/// Format with 12 significant digits (`%.12g` style): enough to make CSV
/// bytes a faithful fingerprint of the computed values.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let formatted = format!("{x:.11e}");
    // Break "d.dddddddddddEsnn" apart and re-render like %g.
    let (mantissa, exponent) = formatted.split_once('e').expect("exponent present");
    let exp: i32 = exponent.parse().expect("valid exponent");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let negative = x < 0.0;
    let body = if (-4..12).contains(&exp) {
        if exp >= 0 {
            let int_len = (exp as usize + 1).min(digits.len());
            let int_part: String = digits
                .chars()
                .take(exp as usize + 1)
                .chain(std::iter::repeat_n('0', (exp as usize + 1).saturating_sub(digits.len())))
                .collect();
            let frac_part: String = digits.chars().skip(int_len).collect();
            if frac_part.is_empty() {
                int_part
            } else {
                format!("{int_part}.{frac_part}")
            }
        } else {
            let zeros = "0".repeat((-exp - 1) as usize);
            format!("0.{zeros}{digits}")
        }
    } else {
        let (first, rest) = digits.split_at(1);
        if rest.is_empty() {
            format!("{first}e{exp}")
        } else {
            format!("{first}.{rest}e{exp}")
        }
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

// ---------------------------------------------------------------------------
// Result emission
// ---------------------------------------------------------------------------

/// Write `content` atomically: temp file in the target directory, then
/// rename over the final name.
pub fn write_atomic(path: &Path, content: &str) -> Result<(), FileError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, content).map_err(|source| FileError::Write { path: tmp.clone(), source })?;
    fs::rename(&tmp, path).map_err(|source| FileError::Write { path: path.to_path_buf(), source })
}

/// Front table CSV: one row per point with the nominal deviation it was
/// requested at and the realized relative deviations in both objectives.
pub fn front_csv(build: &FrontBuild) -> String {
    let front = &build.front;
    let n_obj = front.points.first().map_or(0, |p| p.objectives.len());
    let optima: Vec<f64> = (0..n_obj).map(|k| build.optima.cross[k][k]).collect();

    let mut out = String::from("epsilon");
    for k in 0..n_obj {
        out.push_str(&format!(",objective_{k}"));
    }
    for k in 0..n_obj {
        out.push_str(&format!(",relative_deviation_{k}"));
    }
    out.push('\n');
    for p in &front.points {
        let nominal = match &p.provenance {
            Provenance::EpsilonConstraint { epsilon, .. } => *epsilon,
            Provenance::IndividualOptimum { objective } => {
                // Anchors report their realized deviation in the other
                // objective (zero for the first, the spread for the last).
                if n_obj == 2 && optima[0] > 0.0 && *objective == 1 {
                    p.objectives[0] / optima[0] - 1.0
                } else {
                    0.0
                }
            }
            Provenance::WeightedSum { .. } => f64::NAN,
        };
        out.push_str(&fmt_sig(nominal));
        for v in &p.objectives {
            out.push(',');
            out.push_str(&fmt_sig(*v));
        }
        for (k, v) in p.objectives.iter().enumerate() {
            out.push(',');
            let dev = if optima[k] != 0.0 { v / optima[k] - 1.0 } else { f64::NAN };
            out.push_str(&fmt_sig(dev));
        }
        out.push('\n');
    }
    out
}

/// Sweep heatmap CSV: header row carries the second objective's
/// deviations, the first column the first objective's, cells the
/// thresholds.
pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = String::from("epsilon");
    for c in &result.grid.cols {
        out.push(',');
        out.push_str(&fmt_sig(*c));
    }
    out.push('\n');
    for (i, r) in result.grid.rows.iter().enumerate() {
        out.push_str(&fmt_sig(*r));
        for j in 0..result.grid.cols.len() {
            out.push(',');
            out.push_str(&fmt_sig(result.thresholds[i][j]));
        }
        out.push('\n');
    }
    out
}

/// Identity of the bundled solver, recorded in manifests.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverIdentity {
    pub name: String,
    pub version: String,
}

impl Default for SolverIdentity {
    fn default() -> Self {
        Self {
            name: "dense-simplex-bland".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// Everything needed to reproduce a run's emitted numbers bit for bit:
/// input digest, solver identity, tolerances and the full parameter set.
/// The timestamp is informational and not part of reproduction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub format_version: u32,
    pub command: String,
    pub input_path: String,
    pub input_sha256: String,
    pub solver: SolverIdentity,
    pub tolerances: Tolerances,
    pub parameters: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub front_size: Option<usize>,
    pub timestamp_unix: u64,
}

impl RunManifest {
    pub fn new(
        command: &str,
        input_path: &Path,
        input_bytes: &[u8],
        tolerances: Tolerances,
        parameters: serde_json::Value,
    ) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(input_bytes);
        Self {
            format_version: FORMAT_VERSION,
            command: command.to_string(),
            input_path: input_path.display().to_string(),
            input_sha256: format!("{:x}", hasher.finalize()),
            solver: SolverIdentity::default(),
            tolerances,
            parameters,
            front_size: None,
            timestamp_unix: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }
}

/// Bundle of emitted files for one run.
#[derive(Debug, Clone)]
pub struct EmittedFiles {
    pub files: Vec<PathBuf>,
}

/// Write a front run: front CSV, JSON report with full points, manifest.
pub fn emit_front(
    build: &FrontBuild,
    manifest: &RunManifest,
    out_dir: &Path,
) -> Result<EmittedFiles, FileError> {
    ensure_dir(out_dir)?;
    let csv_path = out_dir.join("front.csv");
    write_atomic(&csv_path, &front_csv(build))?;
    let report_path = out_dir.join("front.json");
    let report = serde_json::json!({
        "points": build.front.points,
        "anchors": build.front.anchors,
        "dropped": build.dropped,
        "cross_optima": build.optima.cross,
    });
    write_atomic(&report_path, &to_pretty(&report))?;
    let manifest_path = out_dir.join("manifest.json");
    let mut manifest = manifest.clone();
    manifest.front_size = Some(build.front.len());
    write_atomic(&manifest_path, &to_pretty(&manifest))?;
    Ok(EmittedFiles { files: vec![csv_path, report_path, manifest_path] })
}

/// Write a sweep run: heatmap CSV, JSON result, manifest.
pub fn emit_sweep(
    result: &SweepResult,
    manifest: &RunManifest,
    out_dir: &Path,
) -> Result<EmittedFiles, FileError> {
    ensure_dir(out_dir)?;
    let csv_path = out_dir.join("sweep.csv");
    write_atomic(&csv_path, &sweep_csv(result))?;
    let json_path = out_dir.join("sweep.json");
    write_atomic(&json_path, &to_pretty(result))?;
    let manifest_path = out_dir.join("manifest.json");
    let mut manifest = manifest.clone();
    manifest.front_size = Some(result.front_size);
    write_atomic(&manifest_path, &to_pretty(&manifest))?;
    Ok(EmittedFiles { files: vec![csv_path, json_path, manifest_path] })
}

/// Write a necessary-condition run: JSON report with witnesses, manifest.
pub fn emit_report(
    report: &NecessaryConditionReport,
    manifest: &RunManifest,
    out_dir: &Path,
) -> Result<EmittedFiles, FileError> {
    ensure_dir(out_dir)?;
    let json_path = out_dir.join("necessary_condition.json");
    write_atomic(&json_path, &to_pretty(report))?;
    let manifest_path = out_dir.join("manifest.json");
    let mut manifest = manifest.clone();
    manifest.front_size = Some(report.front_size);
    write_atomic(&manifest_path, &to_pretty(&manifest))?;
    Ok(EmittedFiles { files: vec![json_path, manifest_path] })
}

fn ensure_dir(dir: &Path) -> Result<(), FileError> {
    fs::create_dir_all(dir).map_err(|source| FileError::Write { path: dir.to_path_buf(), source })
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("results serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{DenseSimplex, Direction, LpBackend};
    use crate::pareto::generate_front;
    use std::path::Path;

    const WORKED: &str = r#"{
        "kind": "raw-lp",
        "version": 1,
        "variables": [{"name": "x1"}, {"name": "x2"}],
        "constraints": [
            {"terms": [{"var": "x1", "coef": 1.0}, {"var": "x2", "coef": 2.0}],
             "sense": ">=", "rhs": 2.0}
        ],
        "objectives": [
            {"label": "sum", "terms": [{"var": "x1", "coef": 1.0}, {"var": "x2", "coef": 1.0}]},
            {"label": "x2", "terms": [{"var": "x2", "coef": 1.0}]}
        ],
        "selectors": {"first": ["x1"], "second": ["x2"], "both": ["x1", "x2"]}
    }"#;

    #[test]
    fn raw_lp_document_round_trips() {
        let loaded = load_model_str(WORKED, Path::new("worked.json")).unwrap();
        let again =
            load_model_str(&model_to_json(&loaded), Path::new("worked2.json")).unwrap();
        assert_eq!(loaded.lp(), again.lp());
        assert_eq!(loaded.selectors(), again.selectors());

        let out = DenseSimplex::default().solve(loaded.lp(), 0, Direction::Min).unwrap();
        assert!((out.expect_value() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn energy_document_round_trips_and_compiles() {
        let model = LoadedModel::Energy { compiled: compile(&crate::esom::fixture()).unwrap() };
        let text = model_to_json(&model);
        let loaded = load_model_str(&text, Path::new("energy.json")).unwrap();
        assert_eq!(loaded.energy().unwrap().spec, crate::esom::fixture());
        assert_eq!(loaded.lp(), model.lp());
    }

    #[test]
    fn truncated_document_names_the_missing_field() {
        let bad = r#"{
            "kind": "raw-lp", "version": 1,
            "variables": [{"name": "x"}],
            "constraints": [{"terms": [{"var": "x", "coef": 1.0}], "sense": ">="}],
            "objectives": []
        }"#;
        let err = load_model_str(bad, Path::new("bad.json")).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("rhs"), "diagnostic should name the missing field: {msg}");
    }

    #[test]
    fn unknown_version_rejected() {
        let bad = r#"{"kind": "raw-lp", "version": 99, "variables": [{"name":"x"}],
                      "objectives": [{"label":"x","terms":[{"var":"x","coef":1.0}]}]}"#;
        assert!(matches!(
            load_model_str(bad, Path::new("v99.json")).unwrap_err(),
            FileError::Version { got: 99, .. }
        ));
    }

    #[test]
    fn unknown_variable_reference_is_a_schema_error() {
        let bad = r#"{"kind": "raw-lp", "version": 1, "variables": [{"name":"x"}],
                      "objectives": [{"label":"y","terms":[{"var":"y","coef":1.0}]}]}"#;
        let err = load_model_str(bad, Path::new("ref.json")).unwrap_err();
        assert!(err.to_string().contains("unknown variable `y`"));
    }

    #[test]
    fn sig_digit_formatting() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(-2.5), "-2.5");
        assert_eq!(fmt_sig(0.05), "0.05");
        assert_eq!(fmt_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig(123456789012345.0), "1.23456789012e14");
        assert_eq!(fmt_sig(1e-7), "1e-7");
        assert_eq!(fmt_sig(15611578.9375), "15611578.9375");
    }

    #[test]
    fn front_csv_layout_for_anchors_only() {
        let pair = crate::oracle::CurvePair::reference();
        let lp = crate::oracle::grid_model(&pair, 2e-3).unwrap();
        let build = generate_front(&lp, &[], 1, &DenseSimplex::default()).unwrap();
        let csv = front_csv(&build);
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        assert_eq!(lines.len(), 3, "header plus two anchor rows: {csv}");
        assert!(lines[0].starts_with("epsilon,objective_0,objective_1"));
        // First anchor deviates by zero in its own objective; the second
        // carries the front's full relative spread.
        let first: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(first[0], "0");
        let last: Vec<&str> = lines[2].split(',').collect();
        let spread: f64 = last[0].parse().unwrap();
        assert!((spread - (7.625 / 2.0 - 1.0)).abs() < 1e-2, "spread {spread}");
    }

    #[test]
    fn sweep_csv_is_rectangular_with_headers() {
        use crate::conditions::Selector;
        use crate::spaces::{SweepGrid, SweepResult};
        let result = SweepResult {
            grid: SweepGrid { rows: vec![0.01, 0.02], cols: vec![0.05, 0.1] },
            selector: Selector::from_indices(2, &[0]).unwrap(),
            front_size: 2,
            thresholds: vec![vec![4.0, 3.0], vec![2.0, 1.0]],
            violations: vec![],
        };
        let csv = sweep_csv(&result);
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "epsilon,0.05,0.1");
        assert_eq!(lines[1], "0.01,4,3");
        assert_eq!(lines[2], "0.02,2,1");
    }

    #[test]
    fn atomic_write_and_manifest_digest() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, "a,b\n1,2\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "a,b\n1,2\n");

        let m1 = RunManifest::new(
            "sweep",
            Path::new("model.json"),
            b"input-bytes",
            Tolerances::default(),
            serde_json::json!({"grid": [0.01]}),
        );
        let m2 = RunManifest::new(
            "sweep",
            Path::new("model.json"),
            b"input-bytes",
            Tolerances::default(),
            serde_json::json!({"grid": [0.01]}),
        );
        assert_eq!(m1.input_sha256, m2.input_sha256);
        assert_eq!(m1.input_sha256.len(), 64);
    }
}
