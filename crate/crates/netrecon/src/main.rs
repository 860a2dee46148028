//! Command-line front end for the `netrecon` library.
//!
//! Every subcommand is deterministic for a fixed `--seed` and fixed inputs;
//! `--threads` only changes how fast answers arrive, never their bytes.
//! Failures print a machine-readable JSON object on stderr and exit with
//! status 2 for usage problems and 1 for runtime problems.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::exit;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use netrecon::bench::{
    lognormal_fitness, pareto_fitness, run_real_benchmark, run_synthetic_benchmark, BenchError,
    BenchEstimator, BenchMode, BenchmarkConfig, SubsetSpec,
};
use netrecon::bootstrap::{reconstruct, BootstrapError, EstimationMode, PartialObservation};
use netrecon::ensemble::{
    calibrate_z, fit_configuration_model, EnsembleError, FitnessEnsemble, DEFAULT_CM_MAX_ITERATIONS,
    DEFAULT_CM_TOLERANCE,
};
use netrecon::graph::{Graph, GraphError};
use netrecon::io::{
    ingest_degrees, ingest_edge_list, ingest_fitness, resolve_degree_labels, write_edge_list,
    IoError,
};
use netrecon::manifest::RunManifest;
use netrecon::metrics::{metrics_report, MetricsError, Property};
use netrecon::report::{
    bench_csv, calibration_csv, cm_fit_csv, estimates_csv, metrics_csv, scatter_csv,
};

#[derive(Parser)]
#[command(
    name = "netrecon",
    version,
    about = "Reconstruct global network properties from node fitness and partial degree data"
)]
struct Cli {
    /// Worker threads (0 = one per core). Results never depend on this.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute exact structural metrics of an edge-list graph
    Metrics(MetricsArgs),
    /// Fit configuration-model multipliers to a graph's degree sequence
    CmFit(CmFitArgs),
    /// Calibrate the ensemble coupling from observed degrees
    Calibrate(CalibrateArgs),
    /// Estimate global properties from fitness plus observed degrees
    Reconstruct(ReconstructArgs),
    /// Draw graphs from a calibrated fitness ensemble
    Sample(SampleArgs),
    /// Error-versus-information benchmark grids
    #[command(subcommand)]
    Bench(BenchCommand),
}

#[derive(Subcommand)]
enum BenchCommand {
    /// Benchmark against a synthetic ground truth drawn from the ensemble
    Synthetic(BenchSyntheticArgs),
    /// Benchmark against a supplied real network
    Real(BenchRealArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Master seed; every random choice derives from it
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path (stdout when omitted). File CSV output gains a
    /// `<out>.manifest.json` sidecar; JSON embeds the manifest instead.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args)]
struct MetricsArgs {
    /// Edge-list CSV (`src,dst,weight`)
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CmFitArgs {
    /// Edge-list CSV (`src,dst,weight`)
    #[arg(long)]
    graph: PathBuf,
    /// Convergence tolerance on the degree residual
    #[arg(long, default_value_t = DEFAULT_CM_TOLERANCE)]
    tol: f64,
    /// Iteration cap for the fixed-point solver
    #[arg(long, default_value_t = DEFAULT_CM_MAX_ITERATIONS)]
    max_iterations: usize,
    /// Fitness CSV (`node,fitness`); adds a `<out stem>.scatter.csv` of
    /// (fitness, multiplier) pairs and therefore requires `--out`
    #[arg(long)]
    fitness: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CalibrateArgs {
    /// Fitness CSV (`node,fitness`)
    #[arg(long)]
    fitness: PathBuf,
    /// Observed degrees CSV (`node,degree`), any subset of the nodes
    #[arg(long)]
    observed: PathBuf,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Analytic,
    Mc,
}

#[derive(Args)]
struct ReconstructArgs {
    /// Fitness CSV (`node,fitness`)
    #[arg(long)]
    fitness: PathBuf,
    /// Observed degrees CSV (`node,degree`)
    #[arg(long)]
    observed: PathBuf,
    /// Estimation mode; default picks analytic where exact formulas exist
    /// and sampling elsewhere
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Monte Carlo sample count
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Comma-separated list drawn from density,knn,clustering,rich_club
    #[arg(long)]
    properties: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SampleArgs {
    /// Fitness CSV (`node,fitness`)
    #[arg(long)]
    fitness: PathBuf,
    /// Ensemble coupling
    #[arg(long)]
    z: f64,
    /// Number of graphs to draw; more than one requires `--out` and writes
    /// numbered files `<stem>-000<ext>`, `<stem>-001<ext>`, ...
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct BenchSyntheticArgs {
    /// Fitness CSV (`node,fitness`); mutually exclusive with --fitness-gen
    #[arg(long)]
    fitness: Option<PathBuf>,
    /// Synthetic fitness recipe: `lognormal:MU,SIGMA,N` or `powerlaw:ALPHA,XMIN,N`
    #[arg(long)]
    fitness_gen: Option<String>,
    /// Target density of the ground-truth generator, in (0, 1)
    #[arg(long)]
    density: f64,
    /// Comma-separated subset sizes: integer counts or fractions in (0, 1]
    #[arg(long)]
    n_grid: String,
    /// Subset draws per grid point
    #[arg(long, default_value_t = 100)]
    subsets: usize,
    /// Monte Carlo sample count (mc estimator only)
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Per-subset estimator
    #[arg(long, value_enum, default_value_t = EstimatorArg::Plugin)]
    estimator: EstimatorArg,
    /// Comma-separated list drawn from density,knn,clustering,rich_club
    #[arg(long)]
    properties: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct BenchRealArgs {
    /// Edge-list CSV of the observed network
    #[arg(long)]
    graph: PathBuf,
    /// Fitness CSV covering exactly the graph's nodes
    #[arg(long)]
    fitness: PathBuf,
    /// Comma-separated subset sizes: integer counts or fractions in (0, 1]
    #[arg(long)]
    n_grid: String,
    /// Subset draws per grid point
    #[arg(long, default_value_t = 100)]
    subsets: usize,
    /// Monte Carlo sample count (mc estimator only)
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Per-subset estimator
    #[arg(long, value_enum, default_value_t = EstimatorArg::Plugin)]
    estimator: EstimatorArg,
    /// Comma-separated list drawn from density,knn,clustering,rich_club
    #[arg(long)]
    properties: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EstimatorArg {
    Plugin,
    Mc,
}

enum CliError {
    Usage { message: String, violations: Vec<String> },
    Runtime { message: String },
}

impl CliError {
    fn usage(violations: Vec<String>) -> Self {
        CliError::Usage {
            message: "invalid arguments".into(),
            violations,
        }
    }

    fn runtime(message: impl Into<String>) -> Self {
        CliError::Runtime {
            message: message.into(),
        }
    }

    fn report_and_exit(self) -> ! {
        let (kind, code, message, violations) = match self {
            CliError::Usage {
                message,
                violations,
            } => ("usage", 2, message, violations),
            CliError::Runtime { message } => ("runtime", 1, message, Vec::new()),
        };
        let doc = json!({
            "error": {
                "kind": kind,
                "message": message,
                "violations": violations,
            }
        });
        eprintln!("{doc}");
        exit(code)
    }
}

macro_rules! runtime_from {
    ($($ty:ty),* $(,)?) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::runtime(e.to_string())
            }
        })*
    };
}

runtime_from!(IoError, GraphError, MetricsError, EnsembleError, BootstrapError, std::io::Error);

impl From<BenchError> for CliError {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::InvalidConfig { violations } => CliError::usage(violations),
            other => CliError::runtime(other.to_string()),
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            CliError::Usage {
                message: e.to_string(),
                violations: Vec::new(),
            }
            .report_and_exit()
        }
    };

    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            CliError::runtime(format!("thread pool setup failed: {e}")).report_and_exit();
        }
    }

    let started = Instant::now();
    let outcome = match cli.command {
        Command::Metrics(args) => cmd_metrics(args, started),
        Command::CmFit(args) => cmd_cm_fit(args, started),
        Command::Calibrate(args) => cmd_calibrate(args, started),
        Command::Reconstruct(args) => cmd_reconstruct(args, started),
        Command::Sample(args) => cmd_sample(args, started),
        Command::Bench(BenchCommand::Synthetic(args)) => cmd_bench_synthetic(args, started),
        Command::Bench(BenchCommand::Real(args)) => cmd_bench_real(args, started),
    };
    if let Err(e) = outcome {
        e.report_and_exit();
    }
}

// ---------------------------------------------------------------------------
// shared plumbing

fn parse_properties(spec: Option<&str>, violations: &mut Vec<String>) -> Vec<Property> {
    let Some(spec) = spec else {
        return Property::ALL.to_vec();
    };
    let mut properties = Vec::new();
    for token in spec.split(',') {
        match token.parse::<Property>() {
            Ok(p) => {
                if !properties.contains(&p) {
                    properties.push(p);
                }
            }
            Err(e) => violations.push(e.to_string()),
        }
    }
    if properties.is_empty() && violations.is_empty() {
        violations.push("property list is empty".into());
    }
    properties
}

fn parse_n_grid(spec: &str, violations: &mut Vec<String>) -> Vec<SubsetSpec> {
    let mut grid = Vec::new();
    for token in spec.split(',') {
        if let Ok(count) = token.parse::<usize>() {
            if count == 0 {
                violations.push(format!("n-grid count {token:?} must be at least 1"));
            } else {
                grid.push(SubsetSpec::Count(count));
            }
        } else if let Ok(fraction) = token.parse::<f64>() {
            if fraction.is_finite() && fraction > 0.0 && fraction <= 1.0 {
                grid.push(SubsetSpec::Fraction(fraction));
            } else {
                violations.push(format!("n-grid fraction {token:?} must lie in (0, 1]"));
            }
        } else {
            violations.push(format!(
                "n-grid entry {token:?} is neither an integer count nor a fraction"
            ));
        }
    }
    if grid.is_empty() && violations.is_empty() {
        violations.push("n-grid is empty".into());
    }
    grid
}

enum FitnessGen {
    LogNormal { mu: f64, sigma: f64, n: usize },
    PowerLaw { alpha: f64, xmin: f64, n: usize },
}

fn parse_fitness_gen(spec: &str) -> Result<FitnessGen, String> {
    let Some((name, rest)) = spec.split_once(':') else {
        return Err(format!(
            "fitness-gen {spec:?} must look like lognormal:MU,SIGMA,N or powerlaw:ALPHA,XMIN,N"
        ));
    };
    let parts: Vec<&str> = rest.split(',').collect();
    if parts.len() != 3 {
        return Err(format!(
            "fitness-gen {spec:?} needs exactly three comma-separated parameters"
        ));
    }
    let scalar = |s: &str, what: &str| -> Result<f64, String> {
        s.parse::<f64>()
            .map_err(|_| format!("fitness-gen {what} {s:?} is not a number"))
    };
    let size = |s: &str| -> Result<usize, String> {
        match s.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(format!("fitness-gen size {s:?} must be a positive integer")),
        }
    };
    match name {
        "lognormal" => Ok(FitnessGen::LogNormal {
            mu: scalar(parts[0], "mu")?,
            sigma: scalar(parts[1], "sigma")?,
            n: size(parts[2])?,
        }),
        "powerlaw" => Ok(FitnessGen::PowerLaw {
            alpha: scalar(parts[0], "alpha")?,
            xmin: scalar(parts[1], "xmin")?,
            n: size(parts[2])?,
        }),
        other => Err(format!(
            "unknown fitness generator {other:?}; valid generators: lognormal, powerlaw"
        )),
    }
}

fn check_violations(violations: Vec<String>) -> Result<(), CliError> {
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CliError::usage(violations))
    }
}

/// Writes to stdout, treating a closed pipe (`... | head`) as a normal,
/// silent end of the run.
fn emit_stdout(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => exit(0),
        Err(e) => Err(CliError::runtime(format!("cannot write to stdout: {e}"))),
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(parent)
        .map_err(|e| CliError::runtime(format!("cannot stage output near {path:?}: {e}")))?;
    tmp.write_all(bytes)
        .map_err(|e| CliError::runtime(format!("cannot write {path:?}: {e}")))?;
    tmp.persist(path)
        .map_err(|e| CliError::runtime(format!("cannot persist {path:?}: {e}")))?;
    Ok(())
}

fn manifest_path(out: &Path) -> PathBuf {
    PathBuf::from(format!("{}.manifest.json", out.display()))
}

struct Emitter {
    common: CommonArgs,
    started: Instant,
    command: &'static str,
    config: Value,
    inputs: Vec<PathBuf>,
}

impl Emitter {
    fn new(common: &CommonArgs, started: Instant, command: &'static str, config: Value) -> Self {
        Emitter {
            common: common.clone(),
            started,
            command,
            config,
            inputs: Vec::new(),
        }
    }

    fn track_input(&mut self, path: &Path) {
        self.inputs.push(path.to_path_buf());
    }

    fn manifest(&self) -> Result<RunManifest, CliError> {
        let mut manifest = RunManifest::new(self.command, self.config.clone(), self.common.seed);
        for path in &self.inputs {
            manifest.add_input(path)?;
        }
        manifest.duration_ms = self.started.elapsed().as_millis() as u64;
        Ok(manifest)
    }

    /// Emit a command's primary result: CSV text on the csv path, or the
    /// JSON payload with `command` and `manifest` keys added.
    fn finish(self, csv: String, payload: Value) -> Result<(), CliError> {
        let manifest = self.manifest()?;
        match self.common.format {
            FormatArg::Csv => match &self.common.out {
                Some(path) => {
                    write_atomic(path, csv.as_bytes())?;
                    let sidecar = serde_json::to_string_pretty(&manifest)
                        .map_err(|e| CliError::runtime(e.to_string()))?;
                    write_atomic(&manifest_path(path), format!("{sidecar}\n").as_bytes())
                }
                None => emit_stdout(&csv),
            },
            FormatArg::Json => {
                let mut doc = payload;
                if let Value::Object(map) = &mut doc {
                    map.insert("command".into(), Value::String(self.command.into()));
                    map.insert(
                        "manifest".into(),
                        serde_json::to_value(&manifest)
                            .map_err(|e| CliError::runtime(e.to_string()))?,
                    );
                }
                let text = serde_json::to_string_pretty(&doc)
                    .map_err(|e| CliError::runtime(e.to_string()))?;
                match &self.common.out {
                    Some(path) => write_atomic(path, format!("{text}\n").as_bytes()),
                    None => emit_stdout(&format!("{text}\n")),
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// subcommands

fn cmd_metrics(args: MetricsArgs, started: Instant) -> Result<(), CliError> {
    let config = json!({ "graph": args.graph, "seed": args.common.seed });
    let mut emitter = Emitter::new(&args.common, started, "metrics", config);

    let weighted = ingest_edge_list(&args.graph)?;
    emitter.track_input(&args.graph);
    let graph = weighted.binarize();
    let report = metrics_report(&graph)?;

    let csv = metrics_csv(&report);
    let payload = json!({
        "nodes": weighted.labels(),
        "report": report,
    });
    emitter.finish(csv, payload)
}

fn cmd_cm_fit(args: CmFitArgs, started: Instant) -> Result<(), CliError> {
    let mut violations = Vec::new();
    if !(args.tol.is_finite() && args.tol > 0.0) {
        violations.push(format!("tol {} must be a positive finite number", args.tol));
    }
    if args.max_iterations == 0 {
        violations.push("max-iterations must be at least 1".into());
    }
    if args.fitness.is_some() && args.common.out.is_none() {
        violations.push("writing the fitness scatter requires --out".into());
    }
    check_violations(violations)?;

    let config = json!({
        "graph": args.graph,
        "tol": args.tol,
        "max_iterations": args.max_iterations,
        "fitness": args.fitness,
        "seed": args.common.seed,
    });
    let mut emitter = Emitter::new(&args.common, started, "cm-fit", config);

    let weighted = ingest_edge_list(&args.graph)?;
    emitter.track_input(&args.graph);
    let graph = weighted.binarize();
    let labels: Vec<String> = weighted
        .labels()
        .expect("edge-list ingestion always labels nodes")
        .to_vec();
    let degrees: Vec<f64> = graph.degrees().iter().map(|&k| k as f64).collect();

    let fit = fit_configuration_model(&degrees, args.tol, args.max_iterations)?;

    let scatter = match &args.fitness {
        Some(path) => {
            let (fitness, _) = ingest_fitness(path, Some(&labels))?;
            emitter.track_input(path);
            Some(fitness)
        }
        None => None,
    };

    let csv = cm_fit_csv(&fit, &degrees, &labels);
    let payload = json!({
        "nodes": labels,
        "degrees": degrees,
        "x": fit.x,
        "residual": fit.residual,
        "iterations": fit.iterations,
        "scatter": scatter.as_ref().map(|y| json!({
            "fitness": y.values(),
            "x": fit.x,
        })),
    });

    if let Some(fitness) = &scatter {
        let out = emitter
            .common
            .out
            .as_ref()
            .expect("checked above: scatter requires --out");
        let scatter_out = out.with_extension("scatter.csv");
        write_atomic(&scatter_out, scatter_csv(fitness.values(), &fit.x).as_bytes())?;
    }
    emitter.finish(csv, payload)
}

fn cmd_calibrate(args: CalibrateArgs, started: Instant) -> Result<(), CliError> {
    let config = json!({
        "fitness": args.fitness,
        "observed": args.observed,
        "seed": args.common.seed,
    });
    let mut emitter = Emitter::new(&args.common, started, "calibrate", config);

    let (fitness, labels) = ingest_fitness(&args.fitness, None)?;
    emitter.track_input(&args.fitness);
    let observed = ingest_degrees(&args.observed)?;
    emitter.track_input(&args.observed);
    let (subset, degrees) = resolve_degree_labels(&observed, &labels)?;
    let observation = PartialObservation::new(labels.len(), subset, degrees)?;

    let calibration = calibrate_z(&fitness, observation.subset(), observation.degrees())?;

    let csv = calibration_csv(&calibration, observation.len(), labels.len());
    let payload = json!({
        "z": calibration.z,
        "residual": calibration.residual,
        "target_sum": calibration.target_sum,
        "evaluations": calibration.evaluations,
        "subset_size": observation.len(),
        "n_nodes": labels.len(),
    });
    emitter.finish(csv, payload)
}

fn cmd_reconstruct(args: ReconstructArgs, started: Instant) -> Result<(), CliError> {
    let mut violations = Vec::new();
    let properties = parse_properties(args.properties.as_deref(), &mut violations);
    let mode = match args.mode {
        None => EstimationMode::Auto,
        Some(ModeArg::Analytic) => EstimationMode::Analytic,
        Some(ModeArg::Mc) => EstimationMode::MonteCarlo,
    };
    let needs_sampling = match mode {
        EstimationMode::MonteCarlo => true,
        EstimationMode::Analytic => false,
        EstimationMode::Auto => properties.iter().any(|p| *p != Property::Density),
    };
    if needs_sampling && args.samples < 2 {
        violations.push(format!(
            "samples {} is too small: sampling modes need at least 2",
            args.samples
        ));
    }
    check_violations(violations)?;

    let config = json!({
        "fitness": args.fitness,
        "observed": args.observed,
        "mode": match args.mode {
            None => "auto",
            Some(ModeArg::Analytic) => "analytic",
            Some(ModeArg::Mc) => "mc",
        },
        "samples": args.samples,
        "properties": properties,
        "seed": args.common.seed,
    });
    let mut emitter = Emitter::new(&args.common, started, "reconstruct", config);

    let (fitness, labels) = ingest_fitness(&args.fitness, None)?;
    emitter.track_input(&args.fitness);
    let observed = ingest_degrees(&args.observed)?;
    emitter.track_input(&args.observed);
    let (subset, degrees) = resolve_degree_labels(&observed, &labels)?;
    let observation = PartialObservation::new(labels.len(), subset, degrees)?;

    let estimates = reconstruct(
        &fitness,
        &observation,
        &properties,
        mode,
        args.samples,
        args.common.seed,
    )?;

    let csv = estimates_csv(&estimates);
    let payload = json!({ "estimates": estimates });
    emitter.finish(csv, payload)
}

fn cmd_sample(args: SampleArgs, started: Instant) -> Result<(), CliError> {
    let mut violations = Vec::new();
    if !(args.z.is_finite() && args.z > 0.0) {
        violations.push(format!("z {} must be a positive finite number", args.z));
    }
    if args.count == 0 {
        violations.push("count must be at least 1".into());
    }
    if args.count > 1 && args.common.out.is_none() {
        violations.push("count above 1 requires --out so each draw gets its own file".into());
    }
    check_violations(violations)?;

    let config = json!({
        "fitness": args.fitness,
        "z": args.z,
        "count": args.count,
        "seed": args.common.seed,
    });
    let mut emitter = Emitter::new(&args.common, started, "sample", config);

    let (fitness, labels) = ingest_fitness(&args.fitness, None)?;
    emitter.track_input(&args.fitness);
    let ensemble = FitnessEnsemble::new(fitness, args.z)?;

    let draws: Vec<(u64, Graph)> = (0..args.count)
        .map(|i| {
            let seed = args.common.seed ^ i as u64;
            (seed, ensemble.sample(seed))
        })
        .collect();

    match args.common.format {
        FormatArg::Csv => {
            let manifest = emitter.manifest()?;
            match &args.common.out {
                None => {
                    let (_, graph) = &draws[0];
                    let mut text = Vec::new();
                    write_edge_list(&mut text, graph, Some(&labels))?;
                    emit_stdout(&String::from_utf8_lossy(&text))
                }
                Some(out) => {
                    let paths: Vec<PathBuf> = if args.count == 1 {
                        vec![out.clone()]
                    } else {
                        (0..args.count).map(|i| numbered_path(out, i)).collect()
                    };
                    for (path, (_, graph)) in paths.iter().zip(&draws) {
                        let mut text = Vec::new();
                        write_edge_list(&mut text, graph, Some(&labels))?;
                        write_atomic(path, &text)?;
                    }
                    let sidecar = serde_json::to_string_pretty(&manifest)
                        .map_err(|e| CliError::runtime(e.to_string()))?;
                    write_atomic(&manifest_path(out), format!("{sidecar}\n").as_bytes())
                }
            }
        }
        FormatArg::Json => {
            let samples: Vec<Value> = draws
                .iter()
                .enumerate()
                .map(|(i, (seed, graph))| {
                    let edges: Vec<Value> = graph
                        .edges()
                        .map(|(u, v)| json!([labels[u], labels[v]]))
                        .collect();
                    json!({ "index": i, "seed": seed, "edges": edges })
                })
                .collect();
            let payload = json!({ "nodes": labels, "samples": samples });
            emitter.finish(String::new(), payload)
        }
    }
}

fn numbered_path(base: &Path, index: usize) -> PathBuf {
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "sample".into());
    let ext = base
        .extension()
        .map(|e| format!(".{}", e.to_string_lossy()))
        .unwrap_or_default();
    base.with_file_name(format!("{stem}-{index:03}{ext}"))
}

fn estimator_of(arg: EstimatorArg) -> BenchEstimator {
    match arg {
        EstimatorArg::Plugin => BenchEstimator::PlugIn,
        EstimatorArg::Mc => BenchEstimator::MonteCarlo,
    }
}

fn cmd_bench_synthetic(args: BenchSyntheticArgs, started: Instant) -> Result<(), CliError> {
    let mut violations = Vec::new();
    let n_values = parse_n_grid(&args.n_grid, &mut violations);
    let properties = parse_properties(args.properties.as_deref(), &mut violations);
    let generator = match (&args.fitness, &args.fitness_gen) {
        (None, None) => {
            violations.push("provide a fitness source: --fitness or --fitness-gen".into());
            None
        }
        (Some(_), Some(_)) => {
            violations.push("--fitness and --fitness-gen are mutually exclusive".into());
            None
        }
        (None, Some(spec)) => match parse_fitness_gen(spec) {
            Ok(gen) => Some(gen),
            Err(e) => {
                violations.push(e);
                None
            }
        },
        (Some(_), None) => None,
    };
    if !(args.density.is_finite() && args.density > 0.0 && args.density < 1.0) {
        violations.push(format!(
            "density {} must lie strictly between 0 and 1",
            args.density
        ));
    }
    if args.subsets == 0 {
        violations.push("subsets must be at least 1".into());
    }
    if args.estimator == EstimatorArg::Mc && args.samples < 2 {
        violations.push(format!(
            "samples {} is too small: the mc estimator needs at least 2",
            args.samples
        ));
    }
    check_violations(violations)?;

    let config = json!({
        "fitness": args.fitness,
        "fitness_gen": args.fitness_gen,
        "density": args.density,
        "n_grid": n_values,
        "subsets": args.subsets,
        "samples": args.samples,
        "estimator": estimator_of(args.estimator),
        "properties": properties,
        "seed": args.common.seed,
    });
    let mut emitter = Emitter::new(&args.common, started, "bench synthetic", config);

    let fitness = match (&args.fitness, generator) {
        (Some(path), _) => {
            let (fitness, _) = ingest_fitness(path, None)?;
            emitter.track_input(path);
            fitness
        }
        (None, Some(FitnessGen::LogNormal { mu, sigma, n })) => {
            lognormal_fitness(n, mu, sigma, args.common.seed)?
        }
        (None, Some(FitnessGen::PowerLaw { alpha, xmin, n })) => {
            pareto_fitness(n, alpha, xmin, args.common.seed)?
        }
        (None, None) => unreachable!("checked above"),
    };

    let cfg = BenchmarkConfig {
        mode: BenchMode::Synthetic,
        n_values,
        subsets_per_n: args.subsets,
        samples: args.samples,
        seed: args.common.seed,
        estimator: estimator_of(args.estimator),
        properties,
        target_density: Some(args.density),
    };
    let result = run_synthetic_benchmark(&fitness, &cfg)?;

    let csv = bench_csv(&result);
    let payload = json!({ "result": result });
    emitter.finish(csv, payload)
}

fn cmd_bench_real(args: BenchRealArgs, started: Instant) -> Result<(), CliError> {
    let mut violations = Vec::new();
    let n_values = parse_n_grid(&args.n_grid, &mut violations);
    let properties = parse_properties(args.properties.as_deref(), &mut violations);
    if args.subsets == 0 {
        violations.push("subsets must be at least 1".into());
    }
    if args.estimator == EstimatorArg::Mc && args.samples < 2 {
        violations.push(format!(
            "samples {} is too small: the mc estimator needs at least 2",
            args.samples
        ));
    }
    check_violations(violations)?;

    let config = json!({
        "graph": args.graph,
        "fitness": args.fitness,
        "n_grid": n_values,
        "subsets": args.subsets,
        "samples": args.samples,
        "estimator": estimator_of(args.estimator),
        "properties": properties,
        "seed": args.common.seed,
    });
    let mut emitter = Emitter::new(&args.common, started, "bench real", config);

    let weighted = ingest_edge_list(&args.graph)?;
    emitter.track_input(&args.graph);
    let graph = weighted.binarize();
    let labels: Vec<String> = weighted
        .labels()
        .expect("edge-list ingestion always labels nodes")
        .to_vec();
    let (fitness, _) = ingest_fitness(&args.fitness, Some(&labels))?;
    emitter.track_input(&args.fitness);

    let cfg = BenchmarkConfig {
        mode: BenchMode::Real,
        n_values,
        subsets_per_n: args.subsets,
        samples: args.samples,
        seed: args.common.seed,
        estimator: estimator_of(args.estimator),
        properties,
        target_density: None,
    };
    let result = run_real_benchmark(&graph, &fitness, &cfg)?;

    let csv = bench_csv(&result);
    let payload = json!({ "result": result });
    emitter.finish(csv, payload)
}
