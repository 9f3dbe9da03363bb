//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a run did not converge or a check failed,
//! 2 usage or input error. Machine-readable output goes to stdout (or
//! `--out`), human summaries go to stderr.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::engine::{derive_trial_stream, ConvergenceReport, RunOptions, Simulation};
use crate::harness::{
    fit_scaling, read_summary_csv, sweep_to_path, sweep_to_writer, ExperimentSpec, HarnessError, QualityPattern,
};
use crate::lab::{
    dropout_time, ignorance_retention, initial_gap_expectation, nest_delta_distribution, ratio_growth,
    recruit_success_rate, Cohort, EstimateReport, GapMode, ScenarioSpec,
};
use crate::model::{Algorithm, ColonyConfig, Quality, DEFAULT_C, DEFAULT_D};

/// Relative `--out` paths are resolved against this directory when set.
pub const OUT_DIR_ENV: &str = "HOUSEHUNT_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "househunt", version, about = "Seeded ant house-hunting simulator")]
#[command(args_override_self = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one trial and print its convergence report as JSON.
    Run(RunArgs),
    /// Run many trials over an (n, k) grid and write a CSV summary.
    Sweep(SweepArgs),
    /// Estimate one of the per-round probabilistic bounds.
    #[command(subcommand)]
    Lemma(LemmaCommand),
    /// Fit median rounds from a summary CSV against log n or k log n.
    Fit(FitArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgoArg {
    Optimal,
    Simple,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Optimal => Algorithm::Optimal,
            AlgoArg::Simple => Algorithm::Simple,
        }
    }
}

#[derive(Debug, Args)]
struct Common {
    /// key=value file whose keys mirror the long flags; flags win.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Output file; relative paths resolve against $HOUSEHUNT_OUT_DIR.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value = "optimal")]
    algo: AlgoArg,
    #[arg(long)]
    n: usize,
    /// Number of candidate nests; must match --qualities when both are given.
    #[arg(long)]
    k: Option<usize>,
    /// Comma-separated 0/1 qualities of nests 1..=k, or a pattern
    /// (one-good, all-good, random:P) used with --k. Default one-good.
    #[arg(long)]
    qualities: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    max_rounds: Option<u64>,
    /// Include every ant's location in each trace line.
    #[arg(long)]
    verbose_trace: bool,
    /// Rounds to keep running after convergence to check stability.
    #[arg(long, default_value_t = 0)]
    settle: u64,
    /// Emit only the final report line, no per-round records.
    #[arg(long)]
    no_trace: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value = "optimal")]
    algo: AlgoArg,
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    ns: Vec<usize>,
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    ks: Vec<usize>,
    /// one-good, all-good or random:P
    #[arg(long, default_value = "one-good")]
    pattern: String,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    max_rounds: Option<u64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct FitArgs {
    /// Summary CSV produced by `sweep`.
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// log-n or k-log-n
    #[arg(long, default_value = "log-n")]
    model: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct TrialArgs {
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct HomeArgs {
    /// Cohorts at home as NEST:COUNT[:a|p], comma-separated.
    #[arg(long, value_delimiter = ',')]
    home: Vec<String>,
    /// Shorthand for all-active cohorts at nests 1, 2, ...
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
}

#[derive(Debug, Subcommand)]
enum LemmaCommand {
    /// How often a designated active ant recruits another ant.
    RecruitSuccess {
        #[command(flatten)]
        home: HomeArgs,
        #[command(flatten)]
        trials: TrialArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Per-round retention of ignorance under maximal spreading.
    Retention {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        rounds: u64,
        #[command(flatten)]
        trials: TrialArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Sign distribution of each cohort's net population change.
    NestDelta {
        #[command(flatten)]
        home: HomeArgs,
        #[command(flatten)]
        trials: TrialArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Expected relative gap between nests 1 and 2 after searching.
    EpsInit {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum, default_value = "mc")]
        mode: ModeArg,
        #[command(flatten)]
        trials: TrialArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Growth of the relative gap over one recruitment round.
    RatioGrowth {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Populations of nests 1 and 2 as A,B.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_D)]
        d: f64,
        #[command(flatten)]
        trials: TrialArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Rounds until a small nest empties.
    Dropout {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        small: usize,
        #[arg(long, default_value_t = DEFAULT_C)]
        c: f64,
        #[arg(long, default_value_t = DEFAULT_D)]
        d: f64,
        #[command(flatten)]
        trials: TrialArgs,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Mc,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn io_failure(path: &Path, e: impl std::fmt::Display) -> Failure {
    usage(format!("{}: {e}", path.display()))
}

/// Parses `args` (including the program name) and runs the command.
pub fn dispatch(args: &[String]) -> i32 {
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return f.code;
        }
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

/// Splices `key=value` lines from `--config FILE` in front of the
/// command-line flags so that explicit flags override them.
fn expand_config(args: &[String]) -> Result<Vec<String>, Failure> {
    let mut path = None;
    let mut iter = args.iter().enumerate();
    while let Some((_, a)) = iter.next() {
        if a == "--config" {
            path = iter.next().map(|(_, p)| p.clone());
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else {
        return Ok(args.to_vec());
    };
    let text = fs::read_to_string(&path).map_err(|e| usage(format!("{path}: {e}")))?;
    let mut extra = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("{path}:{}: expected key=value", lineno + 1)))?;
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        if key == "config" {
            return Err(usage(format!("{path}:{}: nested config files are not supported", lineno + 1)));
        }
        match value {
            "true" => extra.push(format!("--{key}")),
            "false" => {}
            _ => extra.push(format!("--{key}={value}")),
        }
    }
    // Insert after the (sub)command names: the first flag position.
    let at = args
        .iter()
        .skip(1)
        .position(|a| a.starts_with('-'))
        .map_or(args.len(), |p| p + 1);
    let mut out = args[..at].to_vec();
    out.extend(extra);
    out.extend_from_slice(&args[at..]);
    Ok(out)
}

fn resolve_out(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| io_failure(parent, e))?;
    }
    File::create(path).map(BufWriter::new).map_err(|e| io_failure(path, e))
}

/// Writes `text` plus a newline to `--out` or stdout.
fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => {
            let p = resolve_out(p);
            let mut w = create(&p)?;
            writeln!(w, "{text}").and_then(|_| w.flush()).map_err(|e| io_failure(&p, e))
        }
        None => {
            let mut stdout = io::stdout().lock();
            writeln!(stdout, "{text}").map_err(|e| usage(format!("stdout: {e}")))
        }
    }
}

fn execute(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Run(a) => cmd_run(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Lemma(l) => cmd_lemma(l),
        Command::Fit(a) => cmd_fit(a),
    }
}

/// Last line of a `run` trace.
#[derive(Serialize)]
struct ReportLine<'a> {
    report: &'a ConvergenceReport,
}

fn cmd_run(a: RunArgs) -> Result<i32, Failure> {
    let mut rng = derive_trial_stream(a.seed, 0);
    let spec = a.qualities.as_deref().unwrap_or("one-good");
    let qualities = if spec.starts_with(|c: char| c.is_ascii_digit()) {
        let q = spec
            .split(',')
            .map(|v| {
                let v: u8 = v.trim().parse().map_err(|_| usage(format!("bad quality `{v}`")))?;
                Quality::try_from(v).map_err(|e| usage(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(k) = a.k.filter(|&k| k != q.len()) {
            return Err(usage(format!("--k {k} but {} qualities given", q.len())));
        }
        q
    } else {
        let pattern: QualityPattern = spec.parse().map_err(|e: HarnessError| usage(e.to_string()))?;
        let k = a.k.ok_or_else(|| usage("a quality pattern needs --k"))?;
        pattern.draw(k, &mut rng)
    };
    let mut config = ColonyConfig::new(a.n, qualities, a.algo.into(), a.seed);
    if let Some(m) = a.max_rounds {
        config = config.with_max_rounds(m);
    }
    let warnings = config.validate().map_err(|e| usage(e.to_string()))?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    let opts = RunOptions {
        verbose: a.verbose_trace,
        settle_rounds: a.settle,
        no_trace: a.no_trace,
    };
    let (trace, report) = Simulation::with_rng(config, rng)
        .map_err(|e| usage(e.to_string()))?
        .run(opts);
    let mut text = trace.to_jsonl();
    text.push_str(&serde_json::to_string(&ReportLine { report: &report }).expect("report serializes"));
    emit(&a.common.out, &text)?;
    match (report.converged, report.winning_nest) {
        (true, Some(nest)) => eprintln!("converged to {nest} in {} rounds", report.rounds_executed),
        _ => eprintln!("not converged after {} rounds ({:?})", report.rounds_executed, report.reason),
    }
    let ok = report.converged && report.stable != Some(false);
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_sweep(a: SweepArgs) -> Result<i32, Failure> {
    let spec = ExperimentSpec {
        algorithm: a.algo.into(),
        ns: a.ns,
        ks: a.ks,
        pattern: a.pattern.parse().map_err(|e: HarnessError| usage(e.to_string()))?,
        trials: a.trials,
        master_seed: a.seed,
        max_rounds: a.max_rounds,
    };
    let out = match &a.common.out {
        Some(p) => {
            let p = resolve_out(p);
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(parent).map_err(|e| io_failure(parent, e))?;
            }
            sweep_to_path(&spec, &p).map_err(|e| usage(e.to_string()))?
        }
        None => sweep_to_writer(&spec, io::stdout().lock()).map_err(|e| usage(e.to_string()))?,
    };
    let rows = &out.rows;
    for r in rows {
        eprintln!(
            "n={} k={} converged {}/{} median {}",
            r.n,
            r.k,
            r.converged,
            r.trials,
            r.median_rounds.map_or("-".to_string(), |m| format!("{m}"))
        );
    }
    for e in &out.errors {
        eprintln!("error: cell n={} k={}: {}", e.n, e.k, e.error);
    }
    Ok(if out.errors.is_empty() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_fit(a: FitArgs) -> Result<i32, Failure> {
    let model = a.model.parse().map_err(|e: HarnessError| usage(e.to_string()))?;
    let file = File::open(&a.input).map_err(|e| io_failure(&a.input, e))?;
    let rows = read_summary_csv(file).map_err(|e| usage(e.to_string()))?;
    let fit = fit_scaling(&rows, model).map_err(|e| usage(e.to_string()))?;
    emit(&a.common.out, &serde_json::to_string(&fit).expect("fit serializes"))?;
    eprintln!(
        "median rounds ~ {:.3} x + {:.3} (R^2 = {:.4}, {} points)",
        fit.coefficient, fit.intercept, fit.r_squared, fit.points
    );
    Ok(EXIT_OK)
}

/// Parses `NEST:COUNT[:a|p]`.
fn parse_cohort(s: &str) -> Result<Cohort, Failure> {
    let bad = || usage(format!("bad cohort `{s}`, expected NEST:COUNT[:a|p]"));
    let mut parts = s.trim().split(':');
    let nest: u32 = parts.next().and_then(|p| p.parse().ok()).ok_or_else(bad)?;
    let count: usize = parts.next().and_then(|p| p.parse().ok()).ok_or_else(bad)?;
    let active = match parts.next() {
        None | Some("a") => true,
        Some("p") => false,
        Some(_) => return Err(bad()),
    };
    if parts.next().is_some() || nest == 0 {
        return Err(bad());
    }
    Ok(Cohort { nest: nest.into(), count, active })
}

fn scenario(home: &HomeArgs, t: &TrialArgs) -> Result<ScenarioSpec, Failure> {
    if !home.sizes.is_empty() {
        return Ok(ScenarioSpec::active_sizes(&home.sizes, t.trials, t.seed));
    }
    let cohorts = home.home.iter().map(|s| parse_cohort(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(ScenarioSpec::new(cohorts, t.trials, t.seed))
}

fn cmd_lemma(l: LemmaCommand) -> Result<i32, Failure> {
    let lab = |e: crate::lab::LabError| usage(e.to_string());
    let (report, out): (EstimateReport, Option<PathBuf>) = match l {
        LemmaCommand::RecruitSuccess { home, trials, common } => {
            (recruit_success_rate(&scenario(&home, &trials)?).map_err(lab)?, common.out)
        }
        LemmaCommand::Retention { n, rounds, trials, common } => {
            (ignorance_retention(n, rounds, trials.trials, trials.seed).map_err(lab)?, common.out)
        }
        LemmaCommand::NestDelta { home, trials, common } => {
            (nest_delta_distribution(&scenario(&home, &trials)?).map_err(lab)?, common.out)
        }
        LemmaCommand::EpsInit { n, k, mode, trials, common } => {
            let mode = match mode {
                ModeArg::Exact => GapMode::Exact,
                ModeArg::Mc => GapMode::MonteCarlo,
            };
            (initial_gap_expectation(n, k, mode, trials.trials, trials.seed).map_err(lab)?, common.out)
        }
        LemmaCommand::RatioGrowth { n, k, sizes, d, trials, common } => {
            let [a, b] = sizes[..] else {
                return Err(usage("--sizes takes exactly two values A,B"));
            };
            (ratio_growth(n, k, (a, b), trials.trials, trials.seed, d).map_err(lab)?, common.out)
        }
        LemmaCommand::Dropout { n, k, small, c, d, trials, common } => {
            (dropout_time(n, k, small, trials.trials, trials.seed, c, d).map_err(lab)?, common.out)
        }
    };
    emit(&out, &report.to_json())?;
    for e in &report.estimates {
        let verdict = match e.pass {
            Some(true) => " ok",
            Some(false) => " FAIL",
            None => "",
        };
        eprintln!("{:<32} {:>12.6} +- {:.6}{verdict}", e.label, e.value, e.std_error);
    }
    Ok(if report.pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}
