//! The `pvi` command-line front end.
//!
//! Exit codes: 0 success, 2 parse or configuration error, 3 precondition
//! violation, 4 verification failure.

pub mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cohomology::{CohomologyError, SpectralReport};
use crate::ergodic::{
    count_consistency, find_fixed_points, iterate_orbit, lyapunov, real_seed, CountStatus,
    ErgodicError, FixedPointOptions,
};
use crate::json;
use crate::params::{ParamError, ParameterSet};
use crate::surface::lines::{catalog_json, lines_catalog};
use crate::surface::SurfacePoint;
use crate::word::{canonical_form, classify, coxeter_to_loop, parse_word, CoxeterWord, ParsedWord};
use crate::KappaParams;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}

impl From<ParamError> for CliError {
    fn from(e: ParamError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<ErgodicError> for CliError {
    fn from(e: ErgodicError) -> Self {
        match e {
            ErgodicError::BadOption(_) => CliError::Config(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "pvi", version, about = "Dynamics of Painlevé VI return maps on the cubic surface")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the main artifact here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

/// Exactly one parameter source; defaults to the generic kappa.
#[derive(Debug, Clone, Args)]
#[group(multiple = false)]
pub struct ParamArgs {
    /// Five kappa values as a JSON array (`[re, im]` or numbers), or `@file`.
    #[arg(long)]
    pub kappa: Option<String>,
    /// Four theta values as a JSON array, or `@file`.
    #[arg(long)]
    pub theta: Option<String>,
    /// Four b values as a JSON array, or `@file`.
    #[arg(long)]
    pub b: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced, cyclically reduced and loop forms of a word, with its class.
    Reduce {
        #[arg(long)]
        word: String,
    },
    /// Dynamical degree and entropy.
    Entropy {
        #[arg(long)]
        word: String,
        /// Also tabulate counts for these periods (`N` or `A..B`).
        #[arg(long = "N")]
        periods: Option<String>,
    },
    /// Exact periodic-point counts.
    Count {
        #[arg(long)]
        word: String,
        /// A period `N` or an inclusive range `A..B`.
        #[arg(long = "N", default_value = "1")]
        periods: String,
    },
    /// Runs the invariant suite.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Corrupts one generator matrix (negative control).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Numerical periodic points compared with the closed-form count.
    FixedPoints {
        #[arg(long)]
        word: String,
        /// A period `N` or an inclusive range `A..B` (range runs the
        /// consistency table with automatic escalation).
        #[arg(long = "N", default_value = "1")]
        periods: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 2000)]
        starts: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol_resid: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol_dedupe: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Iterates a word from a seed point.
    Orbit {
        #[arg(long)]
        word: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Number of word applications.
        #[arg(long = "N", default_value_t = 100)]
        iterations: usize,
        #[arg(long, default_value_t = 1)]
        stride: usize,
        /// Seed point as a JSON array of three numbers or `[re, im]` pairs;
        /// default is a random real point of the surface.
        #[arg(long)]
        x0: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Lyapunov exponents along real orbits.
    Lyapunov {
        #[arg(long)]
        word: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "N", default_value_t = 2000)]
        iterations: usize,
        #[arg(long, default_value_t = 1)]
        stride: usize,
        /// Number of random seed points.
        #[arg(long, default_value_t = 1)]
        seeds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The 27 lines, keyed by label.
    Lines {
        #[command(flatten)]
        params: ParamArgs,
    },
}

/// Resolved options shared by the numerical subcommands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: ParameterSet,
    pub word: CoxeterWord,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

fn read_source(text: &str) -> Result<String, CliError> {
    match text.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {path}: {e}"))),
        None => Ok(text.to_string()),
    }
}

impl ParamArgs {
    pub fn resolve(&self) -> Result<ParameterSet, CliError> {
        let (key, raw) = match (&self.kappa, &self.theta, &self.b) {
            (Some(k), None, None) => ("kappa", k),
            (None, Some(t), None) => ("theta", t),
            (None, None, Some(b)) => ("b", b),
            (None, None, None) => return Ok(ParameterSet::Kappa(KappaParams::generic())),
            _ => return Err(CliError::Config("give exactly one of --kappa, --theta, --b".into())),
        };
        let text = read_source(raw)?;
        let trimmed = text.trim_start();
        let doc = if trimmed.starts_with('{') {
            text
        } else {
            format!("{{\"{key}\": {text}}}")
        };
        Ok(ParameterSet::from_json(&doc)?)
    }
}

fn parse_coxeter(text: &str) -> Result<(ParsedWord, CoxeterWord), CliError> {
    let parsed = parse_word(text).map_err(|e| CliError::Config(format!("word: {e}")))?;
    let w = parsed.to_coxeter();
    Ok((parsed, w))
}

/// `N` or `A..B` (inclusive).
pub fn parse_periods(text: &str) -> Result<Vec<u32>, CliError> {
    let bad = || CliError::Config(format!("--N expects `N` or `A..B`, got `{text}`"));
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let n = num(text)?;
            (n, n)
        }
    };
    if a == 0 || b < a {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

fn parse_point(text: &str) -> Result<SurfacePoint, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Config(format!("--x0: {e}")))?;
    let arr = v
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| CliError::Config("--x0 expects three entries".into()))?;
    let mut out = [num_complex::Complex64::new(0.0, 0.0); 3];
    for (slot, e) in out.iter_mut().zip(arr) {
        *slot = match e {
            Value::Number(n) => num_complex::Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0),
            Value::Array(p) if p.len() == 2 => num_complex::Complex64::new(
                p[0].as_f64().unwrap_or(f64::NAN),
                p[1].as_f64().unwrap_or(f64::NAN),
            ),
            _ => return Err(CliError::Config("--x0 entries are numbers or [re, im]".into())),
        };
    }
    Ok(SurfacePoint(out))
}

/// Where the main artifact goes.
struct Output {
    path: Option<PathBuf>,
}

impl Output {
    fn write(&self, text: &str) -> Result<(), CliError> {
        match &self.path {
            Some(p) => fs::write(p, text)
                .map_err(|e| CliError::Config(format!("cannot write {}: {e}", p.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    /// Summary lines go to standard output when the artifact is a file.
    fn summary(&self, line: &str) {
        if self.path.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
}

pub fn cmd_reduce(text: &str) -> Result<Value, CliError> {
    let (parsed, w) = parse_coxeter(text)?;
    let (rep, conj) = canonical_form(&w);
    let class = classify(&w);
    let loop_form = coxeter_to_loop(&w).ok();
    let minimal_loop = coxeter_to_loop(&rep).ok();
    Ok(json!({
        "input": text.trim(),
        "alphabet": match parsed { ParsedWord::Loop(_) => "loop", ParsedWord::Coxeter(_) => "coxeter" },
        "reduced": w.to_string(),
        "loop": loop_form.as_ref().map(|l| l.to_string()),
        "length_pi1": loop_form.as_ref().map(|l| l.len()),
        "length_g": w.len(),
        "identity": w.is_empty(),
        "representative": rep.to_string(),
        "conjugator": conj.to_string(),
        "minimal_loop": minimal_loop.map(|l| l.to_string()),
        "analytically_stable": rep.is_analytically_stable(),
        "class": class.name(),
    }))
}

pub fn cmd_entropy(text: &str, periods: Option<&str>) -> Result<(Value, Option<String>), CliError> {
    let (_, w) = parse_coxeter(text)?;
    let mut report = SpectralReport::lambda1(&w)?;
    let notice = report.class.is_elementary().then(|| {
        format!(
            "`{}` is elementary: lambda = 1 and the entropy vanishes",
            report.word
        )
    });
    if let Some(p) = periods {
        if notice.is_none() {
            report = report.with_counts(parse_periods(p)?)?;
        }
    }
    Ok((report.to_json(), notice))
}

pub fn cmd_count(text: &str, periods: &str) -> Result<Value, CliError> {
    let (_, w) = parse_coxeter(text)?;
    let report = SpectralReport::lambda1(&w)?;
    if report.class.is_elementary() {
        return Err(CliError::Precondition(format!(
            "`{}` is elementary; the counting formula holds only for non-elementary words",
            report.word
        )));
    }
    Ok(report.with_counts(parse_periods(periods)?)?.to_json())
}

pub fn cmd_fixed_points(
    cfg: &RunConfig,
    periods: &[u32],
    opts: &FixedPointOptions,
) -> Result<(Value, Vec<String>, bool), CliError> {
    let rep = stable_representative(&cfg.word)?;
    if let [period] = periods {
        let set = find_fixed_points(&rep, *period, &cfg.params, opts)?;
        let ok = set.found() as i64 == set.formula_count;
        let mut v = set.to_json();
        v["input_word"] = json!(cfg.word.to_string());
        let line = format!("found {} / formula {}", set.found(), set.formula_count);
        return Ok((v, vec![line], ok));
    }
    let n_max = *periods.last().unwrap_or(&1);
    let rows = count_consistency(&rep, &cfg.params, n_max, opts)?;
    let rows: Vec<_> = rows
        .into_iter()
        .filter(|r| periods.contains(&r.period))
        .collect();
    let ok = rows.iter().all(|r| r.status == CountStatus::Match);
    let lines = rows
        .iter()
        .map(|r| format!("N={} found {} / formula {}", r.period, r.found, r.formula))
        .collect();
    let v = json!({
        "word": rep.to_string(),
        "input_word": cfg.word.to_string(),
        "rows": rows.iter().map(|r| json!({
            "N": r.period,
            "formula_count": r.formula,
            "found_count": r.found,
            "starts": r.starts,
            "escalated": r.escalated,
            "status": r.status,
        })).collect::<Vec<_>>(),
    });
    Ok((v, lines, ok))
}

/// The analytically stable representative used by the numerical commands.
fn stable_representative(w: &CoxeterWord) -> Result<CoxeterWord, CliError> {
    if w.is_empty() {
        return Err(CohomologyError::Trivial.into());
    }
    let (rep, _) = canonical_form(w);
    if classify(&rep).is_elementary() {
        return Err(CohomologyError::Elementary(w.to_string()).into());
    }
    Ok(rep)
}

fn seed_point(cfg: &RunConfig, x0: Option<&str>) -> Result<SurfacePoint, CliError> {
    match x0 {
        Some(t) => parse_point(t),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            real_seed(&cfg.params.theta(), &mut rng).ok_or_else(|| {
                CliError::Precondition(
                    "no real seed point found (parameters not real); pass --x0".into(),
                )
            })
        }
    }
}

pub fn cmd_lyapunov(
    cfg: &RunConfig,
    iterations: usize,
    stride: usize,
    seeds: usize,
) -> Result<(Value, String), CliError> {
    let theta = cfg.params.theta();
    let report = SpectralReport::lambda1(&cfg.word)?;
    let bound = report.entropy / 8.0;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::new();
    let mut above = 0usize;
    let mut last = None;
    for _ in 0..seeds.max(1) {
        let x = real_seed(&theta, &mut rng).ok_or_else(|| {
            CliError::Precondition("no real seed point found (parameters not real)".into())
        })?;
        let est = lyapunov(&cfg.word, &x, &theta, iterations, stride);
        if est.l_plus >= bound {
            above += 1;
        }
        rows.push(json!({
            "seed": json::complex_list(&est.seed.0),
            "l_plus": json::float(est.l_plus),
            "l_minus": json::float(est.l_minus),
            "sum": json::float(est.sum()),
            "iterations": est.iterations,
            "unreliable": est.unreliable,
        }));
        last = Some(est);
    }
    let est = last.expect("at least one seed");
    let fraction = above as f64 / rows.len() as f64;
    let v = json!({
        "word": cfg.word.to_string(),
        "iterations": iterations,
        "stride": stride,
        "entropy": json::float(report.entropy),
        "bound": json::float(bound),
        "fraction_above_bound": json::float(fraction),
        "estimates": rows,
    });
    let line = format!(
        "L+ = {:.6}, L- = {:.6}, sum = {:.2e}",
        est.l_plus,
        est.l_minus,
        est.sum()
    );
    Ok((v, line))
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Config("--threads must be positive".into()));
        }
        // Ignored if a pool already exists, e.g. in tests.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let out = Output { path: cli.out.clone() };
    let config = |word: &str, params: &ParamArgs, seed: u64| -> Result<RunConfig, CliError> {
        Ok(RunConfig {
            params: params.resolve()?,
            word: parse_coxeter(word)?.1,
            seed,
            out: cli.out.clone(),
            threads: cli.threads,
        })
    };
    match &cli.command {
        Command::Reduce { word } => out.write(&json::to_string(&cmd_reduce(word)?)),
        Command::Entropy { word, periods } => {
            let (v, notice) = cmd_entropy(word, periods.as_deref())?;
            if let Some(n) = notice {
                eprintln!("notice: {n}");
            }
            out.write(&json::to_string(&v))
        }
        Command::Count { word, periods } => out.write(&json::to_string(&cmd_count(word, periods)?)),
        Command::Verify {
            params,
            seed,
            inject_fault,
        } => {
            let params = params.resolve()?;
            let report = verify::run_suite(&params, *seed, *inject_fault);
            out.write(&json::to_string(&report.to_json()))?;
            for c in &report.checks {
                out.summary(&c.line());
            }
            match report.failures() {
                f if f.is_empty() => Ok(()),
                f => Err(CliError::Verification(f.join(", "))),
            }
        }
        Command::FixedPoints {
            word,
            periods,
            params,
            starts,
            tol_resid,
            tol_dedupe,
            seed,
        } => {
            if !(*tol_resid > 0.0 && *tol_dedupe > 0.0) {
                return Err(CliError::Config("tolerances must be positive".into()));
            }
            let cfg = config(word, params, *seed)?;
            let opts = FixedPointOptions {
                starts: *starts,
                tol_resid: *tol_resid,
                tol_dedupe: *tol_dedupe,
                seed: *seed,
                ..Default::default()
            };
            let (v, lines, ok) = cmd_fixed_points(&cfg, &parse_periods(periods)?, &opts)?;
            out.write(&json::to_string(&v))?;
            for l in &lines {
                out.summary(l);
            }
            if ok {
                Ok(())
            } else {
                Err(CliError::Verification(lines.join("; ")))
            }
        }
        Command::Orbit {
            word,
            params,
            iterations,
            stride,
            x0,
            seed,
            format,
        } => {
            let cfg = config(word, params, *seed)?;
            let x = seed_point(&cfg, x0.as_deref())?;
            let rec = iterate_orbit(&cfg.word, &x, &cfg.params.theta(), *iterations, *stride);
            let text = match format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    rec.write_csv(&mut buf)
                        .map_err(|e| CliError::Config(e.to_string()))?;
                    String::from_utf8(buf).expect("csv is utf-8")
                }
                Format::Json => json::to_string(&orbit_json(&rec)),
            };
            out.write(&text)?;
            out.summary(&format!(
                "{} iterations, escaped = {}, max f drift = {:.2e}",
                rec.iterations, rec.escaped, rec.max_f_drift
            ));
            Ok(())
        }
        Command::Lyapunov {
            word,
            params,
            iterations,
            stride,
            seeds,
            seed,
        } => {
            let cfg = config(word, params, *seed)?;
            let (v, line) = cmd_lyapunov(&cfg, *iterations, *stride, *seeds)?;
            out.write(&json::to_string(&v))?;
            out.summary(&line);
            Ok(())
        }
        Command::Lines { params } => {
            let params = params.resolve()?;
            let b = params.b().ok_or_else(|| {
                CliError::Precondition("the line catalogue needs --kappa or --b".into())
            })?;
            let lines = lines_catalog(&b).map_err(|e| CliError::Precondition(e.to_string()))?;
            out.write(&json::to_string(&catalog_json(&lines)))
        }
    }
}

fn orbit_json(rec: &crate::ergodic::OrbitRecord) -> Value {
    json!({
        "word": rec.word,
        "seed": json::complex_list(&rec.seed.0),
        "requested": rec.requested,
        "iterations": rec.iterations,
        "escaped": rec.escaped,
        "max_f_drift": json::float(rec.max_f_drift),
        "samples": rec.samples.iter().map(|s| json!({
            "step": s.step,
            "x": json::complex_list(&s.x.0),
            "abs_f": json::float(s.abs_f),
        })).collect::<Vec<_>>(),
    })
}

/// Parses `args` and runs the selected subcommand.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => {
            let _ = std::io::stdout().flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
