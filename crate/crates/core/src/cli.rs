//! Command-line interface.
//!
//! Every command writes deterministic output: JSON with floats rounded to 12
//! significant digits and a fixed key order, SVG with fixed-precision
//! coordinates, or a graph file.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 isolated vertex,
//! 4 structural precondition (disconnected graph, bad dimension or K),
//! 5 size guard.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use serde::Serialize;

use crate::drawing::{self, DrawingJson};
use crate::error::Error;
use crate::generators;
use crate::graph::{Partition, WeightedGraph};
use crate::io::{parse_graph, serialize_graph};
use crate::jsonfmt::{self, Num};
use crate::laplacian::{generalized_eigen_of, laplacian, normalized_laplacians};
use crate::linalg::normalize_sign;
use crate::ncut_k::{cluster, ClusterOptions, RepairMode, TraceEntry};
use crate::oracle::brute_ncut;
use crate::spectra::eigh;

#[derive(Debug, Parser)]
#[command(name = "specgraph", version, about = "Spectral graph drawing and normalized-cut clustering")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Smallest eigenvalues and eigenvectors of the graph Laplacians.
    Spectrum(SpectrumArgs),
    /// Minimum-energy spectral drawing as SVG or JSON.
    Draw(DrawArgs),
    /// Spectral K-way normalized-cut clustering.
    Cluster(ClusterArgs),
    /// Exhaustive minimum normalized cut (at most 14 nodes).
    Oracle(OracleArgs),
    /// Print a generated graph in the edge-list format.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Number of eigenpairs (default: all).
    #[arg(long)]
    pub k: Option<usize>,
    /// Also report the symmetric and random-walk normalized Laplacians.
    #[arg(long)]
    pub normalized: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DrawFormat {
    Svg,
    Json,
}

#[derive(Debug, Args)]
pub struct DrawArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub dims: usize,
    #[arg(long, value_enum, default_value_t = DrawFormat::Svg)]
    pub format: DrawFormat,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RepairArg {
    Reassign,
    Shrink,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Use the column-rescaled relaxed solution.
    #[arg(long)]
    pub rescale: bool,
    #[arg(long, value_enum, default_value_t = RepairArg::Reassign)]
    pub repair: RepairArg,
    #[arg(long, default_value_t = 100)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Recorded in the output; the pipeline itself is deterministic.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Ring,
    Path,
    Complete,
    Bucky,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub kind: GenKind,
    /// Node count (ignored for bucky).
    pub n: Option<usize>,
}

/// Failure with the process exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidInput(_) => 2,
            Error::IsolatedVertex { .. } => 3,
            Error::Disconnected { .. }
            | Error::Dimension(_)
            | Error::RankDeficient(_)
            | Error::ZeroVolume { .. }
            | Error::InvalidGraph(_)
            | Error::IndexOutOfRange { .. } => 4,
            Error::SizeGuard(_) => 5,
            Error::NotSymmetric { .. } | Error::NotOrthonormal { .. } | Error::NoConvergence { .. } => 1,
        };
        Self { code, message: e.to_string() }
    }
}

fn io_error(e: std::io::Error, path: &std::path::Path) -> CliError {
    CliError::usage(format!("{}: {e}", path.display()))
}

/// Parses `args` (including the program name) and runs the command,
/// writing its output to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                write!(out, "{e}").map_err(|e| CliError::usage(e.to_string()))?;
                return Ok(());
            }
            return Err(CliError::usage(e.to_string()));
        }
    };
    let text = match cli.command {
        Command::Spectrum(a) => spectrum(&a)?,
        Command::Draw(a) => draw(&a)?,
        Command::Cluster(a) => cluster_cmd(&a)?,
        Command::Oracle(a) => oracle(&a)?,
        Command::Gen(a) => gen(&a)?,
    };
    out.write_all(text.as_bytes()).map_err(|e| CliError { code: 1, message: e.to_string() })
}

fn load(path: &std::path::Path) -> Result<WeightedGraph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(e, path))?;
    parse_graph(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn partition_json(p: &Partition) -> Vec<Vec<usize>> {
    p.canonical().blocks().to_vec()
}

#[derive(Serialize)]
struct EigenJson {
    values: Vec<Num>,
    /// One entry per eigenvalue.
    vectors: Vec<Vec<Num>>,
}

impl EigenJson {
    fn new(values: &[f64], vectors: &DMatrix<f64>) -> Self {
        Self { values: jsonfmt::nums(values.iter().copied()), vectors: jsonfmt::columns(vectors) }
    }
}

#[derive(Serialize)]
struct SpectrumJson {
    nodes: usize,
    k: usize,
    laplacian: EigenJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    symmetric_normalized: Option<EigenJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    random_walk: Option<EigenJson>,
}

fn spectrum(a: &SpectrumArgs) -> Result<String, CliError> {
    let g = load(&a.graph)?;
    let n = g.node_count();
    let k = a.k.unwrap_or(n);
    if k == 0 || k > n {
        return Err(CliError::usage(format!("--k must be between 1 and {n}")));
    }
    let eig = eigh(&laplacian(&g))?;
    let values: Vec<f64> = eig.values.iter().take(k).copied().collect();
    let laplacian = EigenJson::new(&values, &eig.vectors_range(0, k));
    let (symmetric_normalized, random_walk) = if a.normalized {
        let bundle = normalized_laplacians(&g)?;
        let ge = generalized_eigen_of(&bundle)?;
        let sym_values: Vec<f64> = ge.values.iter().take(k).copied().collect();
        let mut rw = ge.vectors.columns(0, k).into_owned();
        for mut col in rw.column_iter_mut() {
            let norm = col.norm();
            col /= norm;
            let mut v: Vec<f64> = col.iter().copied().collect();
            normalize_sign(&mut v);
            col.copy_from_slice(&v);
        }
        (
            Some(EigenJson::new(&sym_values, &ge.sym.vectors_range(0, k))),
            Some(EigenJson::new(&sym_values, &rw)),
        )
    } else {
        (None, None)
    };
    Ok(to_json(&SpectrumJson { nodes: n, k, laplacian, symmetric_normalized, random_walk }))
}

#[derive(Serialize)]
struct DrawOutput {
    dims: usize,
    energy: Num,
    eigenvalue_sum: Num,
    eigenvalues: Vec<Num>,
    coincident: Vec<(usize, usize)>,
    #[serde(flatten)]
    drawing: DrawingJson,
}

fn draw(a: &DrawArgs) -> Result<String, CliError> {
    let g = load(&a.graph)?;
    if a.format == DrawFormat::Svg && a.dims != 2 {
        return Err(CliError::usage("SVG output needs --dims 2"));
    }
    let d = drawing::spectral_drawing(&g, a.dims)?;
    let text = match a.format {
        DrawFormat::Svg => drawing::to_svg(&g, &d.drawing)?,
        DrawFormat::Json => to_json(&DrawOutput {
            dims: a.dims,
            energy: Num(d.energy),
            eigenvalue_sum: Num(d.eigenvalues.iter().sum()),
            eigenvalues: jsonfmt::nums(d.eigenvalues.iter().copied()),
            coincident: d.coincident.clone(),
            drawing: drawing::to_json(&g, &d.drawing)?,
        }),
    };
    match &a.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| io_error(e, path))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

#[derive(Serialize)]
struct TraceJson {
    step: crate::ncut_k::Step,
    objective: Num,
    ncut: Num,
}

impl From<&TraceEntry> for TraceJson {
    fn from(e: &TraceEntry) -> Self {
        Self { step: e.step, objective: Num(e.objective), ncut: Num(e.ncut) }
    }
}

#[derive(Serialize)]
struct ClusterJson {
    partition: Vec<Vec<usize>>,
    ncut: Num,
    relaxed_bound: Num,
    iterations: usize,
    seed: u64,
    k: usize,
    k_effective: usize,
    converged: bool,
    rescale: bool,
    repair: &'static str,
    trace: Vec<TraceJson>,
}

fn cluster_cmd(a: &ClusterArgs) -> Result<String, CliError> {
    if a.k < 2 {
        return Err(CliError::usage("--k must be at least 2"));
    }
    if a.max_iter == 0 {
        return Err(CliError::usage("--max-iter must be at least 1"));
    }
    if !(a.tol.is_finite() && a.tol >= 0.0) {
        return Err(CliError::usage("--tol must be a finite nonnegative number"));
    }
    let g = load(&a.graph)?;
    if a.k >= g.node_count() {
        return Err(CliError { code: 4, message: format!("--k must be below the node count {}", g.node_count()) });
    }
    let (repair, repair_name) = match a.repair {
        RepairArg::Reassign => (RepairMode::Reassign, "reassign"),
        RepairArg::Shrink => (RepairMode::Shrink, "shrink"),
    };
    let opts = ClusterOptions { rescale: a.rescale, repair, max_iter: a.max_iter, tol: a.tol, ..Default::default() };
    let r = cluster(&g, a.k, &opts)?;
    Ok(to_json(&ClusterJson {
        partition: partition_json(&r.partition),
        ncut: Num(r.ncut),
        relaxed_bound: Num(r.relaxed_bound),
        iterations: r.iterations,
        seed: a.seed,
        k: a.k,
        k_effective: r.k_effective,
        converged: r.converged,
        rescale: a.rescale,
        repair: repair_name,
        trace: r.trace.entries.iter().map(TraceJson::from).collect(),
    }))
}

#[derive(Serialize)]
struct OracleJson {
    best_partition: Vec<Vec<usize>>,
    value: Num,
    count: u64,
}

fn oracle(a: &OracleArgs) -> Result<String, CliError> {
    let g = load(&a.graph)?;
    let r = brute_ncut(&g, a.k)?;
    Ok(to_json(&OracleJson { best_partition: partition_json(&r.best_partition), value: Num(r.best_value), count: r.evaluated_count }))
}

fn gen(a: &GenArgs) -> Result<String, CliError> {
    let need_n = || a.n.ok_or_else(|| CliError::usage("this kind needs a node count"));
    let g = match a.kind {
        GenKind::Ring => generators::ring(need_n()?)?,
        GenKind::Path => generators::path(need_n()?)?,
        GenKind::Complete => generators::complete(need_n()?)?,
        GenKind::Bucky => generators::bucky(),
    };
    Ok(serialize_graph(&g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> Result<String, CliError> {
        let mut out = Vec::new();
        run(std::iter::once("specgraph").chain(args.iter().copied()), &mut out)?;
        Ok(String::from_utf8(out).unwrap())
    }

    #[test]
    fn gen_kinds() {
        let ring = run_str(&["gen", "ring", "12"]).unwrap();
        assert_eq!(ring.lines().filter(|l| !l.starts_with("nodes")).count(), 12);
        let bucky = run_str(&["gen", "bucky"]).unwrap();
        assert_eq!(bucky.lines().filter(|l| !l.starts_with("nodes")).count(), 90);
        assert_eq!(parse_graph(&bucky).unwrap(), generators::bucky());
        assert_eq!(run_str(&["gen", "star", "4"]).unwrap_err().code, 2);
        assert_eq!(run_str(&["gen", "ring"]).unwrap_err().code, 2);
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::from(Error::IsolatedVertex { node: 1 }).code, 3);
        assert_eq!(CliError::from(Error::Disconnected { components: 2 }).code, 4);
        assert_eq!(CliError::from(Error::SizeGuard("x".into())).code, 5);
        assert_eq!(CliError::from(Error::Parse { line: 1, message: "x".into() }).code, 2);
        assert_eq!(run_str(&["bogus"]).unwrap_err().code, 2);
        assert!(run_str(&["--help"]).unwrap().contains("cluster"));
    }
}
