//! The `motionsimp` command line.
//!
//! Exit codes: 0 ok, 1 usage, 2 I/O, 3 invalid data. When several files fail
//! the code of the first failure (in input order) wins.

pub mod config;

use std::fmt;
use std::fs;
use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use motionsimp::api::profile_json;
use motionsimp::complexity::Scores;
use motionsimp::eval::{dtw_cost, evaluate, EvalReport};
use motionsimp::fixtures::{self, FixtureKind};
use motionsimp::io::{load_motion, save_motion, MotionFormat};
use motionsimp::simplify::{simplify, SimplifyConfig};
use motionsimp::{compute_profile, MetricWeights, MotionError, MotionSequence};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io(_) => 2,
            CliError::Data(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Data(m) => f.write_str(m),
        }
    }
}

impl From<MotionError> for CliError {
    fn from(e: MotionError) -> Self {
        match e {
            MotionError::Io(_) => CliError::Io(e.to_string()),
            MotionError::InvalidParameter(_) => CliError::Usage(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

fn io_err(path: &Path, e: impl fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

/// Attach the path to a library error without changing its class.
fn at(path: &Path, e: MotionError) -> CliError {
    match CliError::from(e) {
        CliError::Usage(m) => CliError::Usage(format!("{}: {m}", path.display())),
        CliError::Io(m) => CliError::Io(format!("{}: {m}", path.display())),
        CliError::Data(m) => CliError::Data(format!("{}: {m}", path.display())),
    }
}

#[derive(Debug, Parser)]
#[command(name = "motionsimp", version, about = "Dance motion complexity analysis and simplification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score each input on C1..C5 and write one profile JSON per input.
    Analyze(AnalyzeArgs),
    /// Run the simplification pipeline on each input.
    Simplify(SimplifyArgs),
    /// Physical plausibility, FID, diversity and DTW for a set of clips.
    Eval(EvalArgs),
    /// Write synthetic test clips.
    GenFixtures(GenArgs),
    /// Start the HTTP service.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FileFormat {
    Json,
    Bin,
}

impl From<FileFormat> for MotionFormat {
    fn from(f: FileFormat) -> Self {
        match f {
            FileFormat::Json => MotionFormat::Json,
            FileFormat::Bin => MotionFormat::Bin,
        }
    }
}

fn default_jobs() -> NonZeroUsize {
    std::thread::available_parallelism().unwrap_or(NonZeroUsize::MIN)
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Worker threads.
    #[arg(long, env = "MOTIONSIMP_JOBS", default_value_t = default_jobs())]
    pub jobs: NonZeroUsize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub inputs: Vec<PathBuf>,
    /// Directory for `<stem>.profile.json`; defaults to each input's directory.
    #[arg(short, long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long)]
    pub sg_window: Option<usize>,
    #[arg(long)]
    pub sg_order: Option<usize>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct PipelineArgs {
    /// `key = value` file; flags given on the command line win.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// `all`, `none` or a list such as `c1,c3`.
    #[arg(long)]
    pub criteria: Option<String>,
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub lambda: Option<usize>,
    #[arg(long = "tau-c1", allow_hyphen_values = true)]
    pub tau_c1: Option<f64>,
    #[arg(long = "tau-c2", allow_hyphen_values = true)]
    pub tau_c2: Option<f64>,
    #[arg(long = "tau-c3", allow_hyphen_values = true)]
    pub tau_c3: Option<f64>,
    #[arg(long = "tau-c4", allow_hyphen_values = true)]
    pub tau_c4: Option<f64>,
    #[arg(long = "tau-c5", allow_hyphen_values = true)]
    pub tau_c5: Option<f64>,
    #[arg(long = "min-len-c1")]
    pub min_len_c1: Option<usize>,
    #[arg(long = "min-len-c2")]
    pub min_len_c2: Option<usize>,
    #[arg(long = "min-len-c3")]
    pub min_len_c3: Option<usize>,
    #[arg(long = "min-len-c4")]
    pub min_len_c4: Option<usize>,
    #[arg(long = "min-len-c5")]
    pub min_len_c5: Option<usize>,
    /// `first-frame` or a yaw in radians.
    #[arg(long, allow_hyphen_values = true)]
    pub psi_target: Option<String>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub sg_window: Option<usize>,
    #[arg(long)]
    pub sg_order: Option<usize>,
    /// Fallback asymmetry flip, e.g. `-1,1,1`.
    #[arg(long, allow_hyphen_values = true)]
    pub flip: Option<String>,
}

impl PipelineArgs {
    fn overrides(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        let mut push = |k: &'static str, v: Option<String>| {
            if let Some(v) = v {
                out.push((k, v));
            }
        };
        let s = |v: Option<f64>| v.map(|x| x.to_string());
        let n = |v: Option<usize>| v.map(|x| x.to_string());
        push("criteria", self.criteria.clone());
        push("k", s(self.k));
        push("lambda", n(self.lambda));
        push("tau-c1", s(self.tau_c1));
        push("tau-c2", s(self.tau_c2));
        push("tau-c3", s(self.tau_c3));
        push("tau-c4", s(self.tau_c4));
        push("tau-c5", s(self.tau_c5));
        push("min-len-c1", n(self.min_len_c1));
        push("min-len-c2", n(self.min_len_c2));
        push("min-len-c3", n(self.min_len_c3));
        push("min-len-c4", n(self.min_len_c4));
        push("min-len-c5", n(self.min_len_c5));
        push("psi-target", self.psi_target.clone());
        push("eps", s(self.eps));
        push("alpha", s(self.alpha));
        push("sg-window", n(self.sg_window));
        push("sg-order", n(self.sg_order));
        push("flip", self.flip.clone());
        out
    }

    /// Defaults, then the config file, then flags.
    pub fn resolve(&self) -> Result<SimplifyConfig, CliError> {
        let mut cfg = SimplifyConfig::default();
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
            for (k, v) in config::parse_file(&text)? {
                config::set(&mut cfg, &k, &v)?;
            }
        }
        for (k, v) in self.overrides() {
            config::set(&mut cfg, k, &v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct SimplifyArgs {
    pub inputs: Vec<PathBuf>,
    /// Directory for `<stem>.simplified.*` and `<stem>.result.json`;
    /// defaults to each input's directory.
    #[arg(short, long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FileFormat::Json)]
    pub output_format: FileFormat,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Clips to evaluate.
    pub samples: Vec<PathBuf>,
    /// `ORIGINAL,SIMPLIFIED`. The simplified clip joins the samples and is
    /// aligned against its original for the DTW cost. Repeatable.
    #[arg(long = "pair", value_parser = parse_pair)]
    pub pairs: Vec<(PathBuf, PathBuf)>,
    /// Text file listing reference motion paths, one per line, relative to
    /// the manifest. `#` starts a comment.
    #[arg(long)]
    pub reference: Option<PathBuf>,
    /// Fail unless FID can be computed.
    #[arg(long)]
    pub fid: bool,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub pbc_calibration: f64,
    /// Also write the report here.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub run: RunArgs,
}

fn parse_pair(s: &str) -> Result<(PathBuf, PathBuf), String> {
    s.split_once(',')
        .map(|(a, b)| (PathBuf::from(a), PathBuf::from(b)))
        .ok_or_else(|| format!("expected ORIGINAL,SIMPLIFIED, got {s:?}"))
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Fixture kinds, comma separated, or `all`.
    #[arg(long, default_value = "all")]
    pub kind: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 240)]
    pub frames: usize,
    #[arg(long, default_value_t = 60.0)]
    pub fps: f64,
    #[arg(short, long)]
    pub out_dir: PathBuf,
    #[arg(long, value_enum, default_value_t = FileFormat::Json)]
    pub output_format: FileFormat,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = motionsimp_service::DEFAULT_PORT)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: IpAddr,
    /// Directory served at `/`.
    #[arg(long)]
    pub static_dir: Option<PathBuf>,
    /// Accept cross-origin requests from any origin, not only localhost.
    #[arg(long)]
    pub cors_any: bool,
    /// Maximum number of stored sequences.
    #[arg(long, default_value_t = 64)]
    pub capacity: usize,
}

/// Parse arguments and run; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Analyze(a) => analyze(a),
        Command::Simplify(a) => simplify_cmd(a),
        Command::Eval(a) => eval_cmd(a),
        Command::GenFixtures(a) => gen_fixtures(a),
        Command::Serve(a) => serve(a),
    }
}

fn pool(jobs: NonZeroUsize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.get())
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

/// Map `f` over inputs on the pool, reporting progress on stderr and
/// returning results in input order.
fn par_map<T: Send>(
    jobs: NonZeroUsize,
    inputs: &[PathBuf],
    f: impl Fn(&Path) -> Result<T, CliError> + Sync,
) -> Result<Vec<Result<T, CliError>>, CliError> {
    let done = std::sync::atomic::AtomicUsize::new(0);
    let total = inputs.len();
    Ok(pool(jobs)?.install(|| {
        inputs
            .par_iter()
            .map(|p| {
                let r = f(p);
                let n = done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
                eprintln!("[{n}/{total}] {}", p.display());
                r
            })
            .collect()
    }))
}

fn output_path(input: &Path, out_dir: Option<&Path>, suffix: &str) -> PathBuf {
    let stem = input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "motion".into());
    let dir = out_dir.map(Path::to_path_buf).unwrap_or_else(|| input.parent().unwrap_or(Path::new(".")).to_path_buf());
    dir.join(format!("{stem}{suffix}"))
}

fn load(path: &Path) -> Result<MotionSequence, CliError> {
    load_motion(path).map_err(|e| at(path, e))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| io_err(path, e))
}

fn ensure_dir(dir: Option<&Path>) -> Result<(), CliError> {
    if let Some(d) = dir {
        fs::create_dir_all(d).map_err(|e| io_err(d, e))?;
    }
    Ok(())
}

/// Print successes in input order, errors on stderr; fail with the first
/// error's class.
fn finish<T>(results: Vec<Result<T, CliError>>, mut emit: impl FnMut(&T)) -> Result<(), CliError> {
    let mut first: Option<CliError> = None;
    let mut failed = 0;
    for r in results {
        match r {
            Ok(v) => emit(&v),
            Err(e) => {
                eprintln!("error: {e}");
                failed += 1;
                first.get_or_insert(e);
            }
        }
    }
    match first {
        None => Ok(()),
        Some(e) => {
            let msg = format!("{failed} input(s) failed");
            Err(match e {
                CliError::Usage(_) => CliError::Usage(msg),
                CliError::Io(_) => CliError::Io(msg),
                CliError::Data(_) => CliError::Data(msg),
            })
        }
    }
}

fn json_line(v: &impl Serialize) {
    let mut out = std::io::stdout().lock();
    let _ = serde_json::to_writer(&mut out, v);
    let _ = out.write_all(b"\n");
}

fn score_table_header() {
    println!("{:<40} {:>6} {:>12} {:>12} {:>12} {:>12} {:>12}", "input", "frames", "c1", "c2", "c3", "c4", "c5");
}

fn score_row(label: &str, frames: usize, s: &Scores) {
    println!(
        "{:<40} {:>6} {:>12.6} {:>12.6} {:>12.6} {:>12.6} {:>12.6}",
        label, frames, s.c1, s.c2, s.c3, s.c4, s.c5
    );
}

#[derive(Serialize)]
struct AnalyzeLine {
    input: PathBuf,
    output: PathBuf,
    frames: usize,
    scores: Scores,
}

fn analyze(a: AnalyzeArgs) -> Result<(), CliError> {
    let mut weights = MetricWeights::default();
    if let Some(w) = a.sg_window {
        weights.savgol.window = w;
    }
    if let Some(o) = a.sg_order {
        weights.savgol.order = o;
    }
    weights.validate()?;
    ensure_dir(a.out_dir.as_deref())?;
    let results = par_map(a.run.jobs, &a.inputs, |p| {
        let seq = load(p)?;
        let profile = compute_profile(&seq, &weights).map_err(|e| at(p, e))?;
        let output = output_path(p, a.out_dir.as_deref(), ".profile.json");
        write_file(&output, profile_json(&profile, seq.frames(), seq.fps()).as_bytes())?;
        Ok(AnalyzeLine { input: p.to_path_buf(), output, frames: seq.frames(), scores: profile.scores })
    })?;
    if a.run.format == ReportFormat::Table && !a.inputs.is_empty() {
        score_table_header();
    }
    finish(results, |l| match a.run.format {
        ReportFormat::Json => json_line(l),
        ReportFormat::Table => score_row(&l.input.display().to_string(), l.frames, &l.scores),
    })
}

#[derive(Serialize)]
struct SimplifyLine {
    input: PathBuf,
    output: PathBuf,
    result: PathBuf,
    frames_before: usize,
    frames_after: usize,
    before: Scores,
    after: Scores,
    /// Criteria whose stage was kept.
    accepted: Vec<u8>,
}

fn simplify_cmd(a: SimplifyArgs) -> Result<(), CliError> {
    let cfg = a.pipeline.resolve()?;
    ensure_dir(a.out_dir.as_deref())?;
    let ext = match a.output_format {
        FileFormat::Json => ".simplified.json",
        FileFormat::Bin => ".simplified.bin",
    };
    let results = par_map(a.run.jobs, &a.inputs, |p| {
        let seq = load(p)?;
        let r = simplify(&seq, &cfg).map_err(|e| at(p, e))?;
        let output = output_path(p, a.out_dir.as_deref(), ext);
        save_motion(&r.motion, &output, a.output_format.into()).map_err(|e| at(&output, e))?;
        let result = output_path(p, a.out_dir.as_deref(), ".result.json");
        let report = serde_json::to_string(&r.report()).expect("report serializes");
        write_file(&result, report.as_bytes())?;
        Ok(SimplifyLine {
            input: p.to_path_buf(),
            output,
            result,
            frames_before: seq.frames(),
            frames_after: r.motion.frames(),
            before: r.before.scores,
            after: r.after.scores,
            accepted: r.applied.iter().filter(|s| s.accepted).map(|s| s.criterion.number()).collect(),
        })
    })?;
    if a.run.format == ReportFormat::Table && !a.inputs.is_empty() {
        score_table_header();
    }
    finish(results, |l| match a.run.format {
        ReportFormat::Json => json_line(l),
        ReportFormat::Table => {
            let name = l.input.display().to_string();
            score_row(&format!("{name} (before)"), l.frames_before, &l.before);
            score_row(&format!("{name} (after)"), l.frames_after, &l.after);
        }
    })
}

/// Paths listed in a reference manifest, resolved against its directory.
pub fn read_manifest(path: &Path) -> Result<Vec<PathBuf>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| base.join(l))
        .collect())
}

fn load_all(jobs: NonZeroUsize, paths: &[PathBuf]) -> Result<Vec<MotionSequence>, CliError> {
    let loaded = pool(jobs)?.install(|| paths.par_iter().map(|p| load(p)).collect::<Vec<_>>());
    loaded.into_iter().collect()
}

fn eval_cmd(a: EvalArgs) -> Result<(), CliError> {
    let refs = match &a.reference {
        Some(m) => read_manifest(m)?,
        None => Vec::new(),
    };
    let n_samples = a.samples.len() + a.pairs.len();
    if a.fid && (refs.len() < 2 || n_samples < 2) {
        return Err(CliError::Usage(format!(
            "--fid needs at least two samples and a reference manifest with at least two entries (got {n_samples} and {})",
            refs.len()
        )));
    }
    let mut sample_paths: Vec<PathBuf> = a.pairs.iter().map(|(_, s)| s.clone()).collect();
    sample_paths.extend(a.samples.iter().cloned());
    let originals: Vec<PathBuf> = a.pairs.iter().map(|(o, _)| o.clone()).collect();

    let samples = load_all(a.run.jobs, &sample_paths)?;
    let originals = load_all(a.run.jobs, &originals)?;
    let reference = load_all(a.run.jobs, &refs)?;
    let report = eval_report(&samples, &originals, &reference, a.pbc_calibration)?;

    let text = serde_json::to_string(&report).expect("report serializes");
    if let Some(out) = &a.output {
        write_file(out, text.as_bytes())?;
    }
    match a.run.format {
        ReportFormat::Json => println!("{text}"),
        ReportFormat::Table => {
            let v = serde_json::to_value(&report).expect("report serializes");
            for (k, v) in v.as_object().expect("report is an object") {
                println!("{k:<16} {v}");
            }
        }
    }
    Ok(())
}

/// Report over `samples`, where the first `originals.len()` samples are the
/// simplified halves of original/simplified pairs. The DTW cost is the mean
/// over those pairs.
pub fn eval_report(
    samples: &[MotionSequence],
    originals: &[MotionSequence],
    reference: &[MotionSequence],
    pbc_calibration: f64,
) -> Result<EvalReport, CliError> {
    let mut report = evaluate(samples, reference, None, pbc_calibration)?;
    if !originals.is_empty() {
        let total: f64 = originals.iter().zip(samples).map(|(o, s)| dtw_cost(s, o)).sum();
        report.dtw_cost = Some(total / originals.len() as f64);
    }
    Ok(report)
}

fn gen_fixtures(a: GenArgs) -> Result<(), CliError> {
    let kinds: Vec<FixtureKind> = if a.kind.trim() == "all" {
        FixtureKind::ALL.to_vec()
    } else {
        a.kind.split(',').map(|k| k.trim().parse::<FixtureKind>()).collect::<Result<_, _>>()?
    };
    if a.frames < 2 || !(a.fps.is_finite() && a.fps > 0.0) {
        return Err(CliError::Usage("need --frames >= 2 and a positive --fps".into()));
    }
    fs::create_dir_all(&a.out_dir).map_err(|e| io_err(&a.out_dir, e))?;
    let ext = match a.output_format {
        FileFormat::Json => "json",
        FileFormat::Bin => "bin",
    };
    for kind in kinds {
        let seq = fixtures::generate(kind, a.seed, a.frames, a.fps);
        let path = a.out_dir.join(format!("{kind}-{}.{ext}", a.seed));
        save_motion(&seq, &path, a.output_format.into()).map_err(|e| at(&path, e))?;
        json_line(&json!({ "kind": kind.name(), "path": path }));
    }
    Ok(())
}

fn serve(a: ServeArgs) -> Result<(), CliError> {
    if a.capacity == 0 {
        return Err(CliError::Usage("--capacity must be positive".into()));
    }
    let options = motionsimp_service::ServiceOptions {
        capacity: a.capacity,
        static_dir: a.static_dir,
        cors_any: a.cors_any,
    };
    let rt = tokio::runtime::Runtime::new().map_err(|e| CliError::Io(e.to_string()))?;
    rt.block_on(motionsimp_service::serve(SocketAddr::new(a.host, a.port), options))
        .map_err(|e| CliError::Io(e.to_string()))
}
