//! Command-line entry points: one thin binary over the library.
//!
//! Exit codes: `0` success (Allows / has SIPP / certificate accepted),
//! `2` definite negative (Forbidden / no SIPP / rejected), `3` unknown or
//! not found, `1` usage or internal error. All randomized paths honor
//! `--seed`; identical invocations with the same seed produce identical
//! output.

use crate::canonical::DEFAULT_CANONICAL_GUARD;
use crate::certificate::{
    find_certificate, verify_certificate_with_bits, SearchConfig, DEFAULT_SQRT_BITS,
};
use crate::classify::{minimal_allows, ClassifyConfig};
use crate::combinatorics::{decide_allows, DecideConfig, Status, COVER_EXACT_GUARD};
use crate::constructions::{fixture_names, named_fixture, Fixture};
use crate::error::{Error, Result};
use crate::exact::{scalar_from_str, sgn_of, ExactMatrix};
use crate::pattern::{parse_pattern, SignPattern};
use crate::random_sim::{cover_probability, MuP};
use crate::sipp::sipp_check_exact;
use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
    Csv,
}

impl OutputFormat {
    fn parse(s: &str) -> Result<OutputFormat> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Invalid(format!("unknown output format {other:?}"))),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Text => "text",
            OutputFormat::Csv => "csv",
        }
    }
}

/// Runtime configuration; file form is `key=value` lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub precision_bits: u32,
    pub canonical_guard: usize,
    pub cover_guard_rows: usize,
    pub cover_guard_cols: usize,
    pub search_attempts: usize,
    pub search_sweeps: usize,
    pub search_scale: u64,
    pub search_doublings: u32,
    pub cover_deadline_ms: u64,
    pub seed: u64,
    pub output_format: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        let search = SearchConfig::default();
        Config {
            precision_bits: DEFAULT_SQRT_BITS,
            canonical_guard: DEFAULT_CANONICAL_GUARD,
            cover_guard_rows: COVER_EXACT_GUARD.0,
            cover_guard_cols: COVER_EXACT_GUARD.1,
            search_attempts: search.max_attempts,
            search_sweeps: search.max_sweeps,
            search_scale: search.scale,
            search_doublings: search.scale_doublings,
            cover_deadline_ms: 5_000,
            seed: 1,
            output_format: OutputFormat::Json,
        }
    }
}

impl Config {
    pub fn render(&self) -> String {
        format!(
            "precision_bits={}\ncanonical_guard={}\ncover_guard_rows={}\ncover_guard_cols={}\n\
             search_attempts={}\nsearch_sweeps={}\nsearch_scale={}\nsearch_doublings={}\n\
             cover_deadline_ms={}\nseed={}\noutput_format={}\n",
            self.precision_bits,
            self.canonical_guard,
            self.cover_guard_rows,
            self.cover_guard_cols,
            self.search_attempts,
            self.search_sweeps,
            self.search_scale,
            self.search_doublings,
            self.cover_deadline_ms,
            self.seed,
            self.output_format.name(),
        )
    }

    pub fn parse(text: &str) -> Result<Config> {
        let mut cfg = Config::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: lineno + 1,
                col: 1,
                msg: "expected key=value".into(),
            })?;
            let bad = |msg: &str| Error::Parse { line: lineno + 1, col: 1, msg: msg.into() };
            let uint = |v: &str| v.trim().parse::<u64>().map_err(|_| bad("expected an integer"));
            match key.trim() {
                "precision_bits" => cfg.precision_bits = uint(value)? as u32,
                "canonical_guard" => cfg.canonical_guard = uint(value)? as usize,
                "cover_guard_rows" => cfg.cover_guard_rows = uint(value)? as usize,
                "cover_guard_cols" => cfg.cover_guard_cols = uint(value)? as usize,
                "search_attempts" => cfg.search_attempts = uint(value)? as usize,
                "search_sweeps" => cfg.search_sweeps = uint(value)? as usize,
                "search_scale" => cfg.search_scale = uint(value)?,
                "search_doublings" => cfg.search_doublings = uint(value)? as u32,
                "cover_deadline_ms" => cfg.cover_deadline_ms = uint(value)?,
                "seed" => cfg.seed = uint(value)?,
                "output_format" => cfg.output_format = OutputFormat::parse(value.trim())?,
                other => return Err(bad(&format!("unknown key {other:?}"))),
            }
        }
        if cfg.precision_bits == 0
            || cfg.search_attempts == 0
            || cfg.search_sweeps == 0
            || cfg.search_scale == 0
        {
            return Err(Error::Invalid("budgets must be positive".into()));
        }
        Ok(cfg)
    }

    fn search_config(&self, seed: u64) -> SearchConfig {
        SearchConfig {
            seed,
            max_attempts: self.search_attempts,
            max_sweeps: self.search_sweeps,
            scale: self.search_scale,
            scale_doublings: self.search_doublings,
            bits: self.precision_bits,
            ..SearchConfig::default()
        }
    }

    fn decide_config(&self, seed: u64) -> DecideConfig {
        DecideConfig {
            search: self.search_config(seed),
            cover_guard: (self.cover_guard_rows, self.cover_guard_cols),
            cover_deadline_ms: Some(self.cover_deadline_ms),
            skip_certificate: false,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "orthopat",
    about = "Decide and certify whether sign patterns allow row orthogonality",
    version
)]
struct CliArgs {
    /// Seed for all randomized paths (env: ORTHOPAT_SEED).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory for output artifacts (env: ORTHOPAT_OUT).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Configuration file (key=value lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format: json, text or csv.
    #[arg(long, global = true)]
    format: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a sign pattern allows row orthogonality.
    Check {
        /// Pattern file: lines of +-0, or pattern JSON.
        pattern: PathBuf,
    },
    /// Decide the strong inner product property of a rational matrix.
    Sipp {
        /// Matrix JSON file.
        matrix: PathBuf,
    },
    /// Verify an integer certificate exactly.
    VerifyCert {
        /// Certificate JSON (matrix JSON plus claim/pattern fields).
        certificate: PathBuf,
    },
    /// Search for an integer certificate for a pattern.
    FindCert {
        pattern: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Monte-Carlo estimate of the cover probability for random patterns.
    Simulate {
        #[arg(long)]
        m: usize,
        /// One or more column counts (comma separated gives a sweep).
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Entry probability p as a rational or decimal, 0 < p <= 1/2.
        #[arg(long, default_value = "1/2")]
        p: String,
        /// Slack r in 0..=m.
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Also run the exhaustive cover search on greedy failures.
        #[arg(long)]
        exact_oracle: bool,
    },
    /// Classify nowhere-zero patterns that minimally allow orthogonality.
    Classify {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        max_n: usize,
        /// Full (5, 6) enumeration instead of the reduction set.
        #[arg(long)]
        full: bool,
    },
    /// Emit a named construction as JSON.
    Construct {
        /// Fixture name; pass `list` to print the available names.
        name: String,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Keep zero entries pinned at zero (certifies a superpattern claim).
    #[arg(long)]
    mask_zeros: bool,
    #[arg(long)]
    scale: Option<u64>,
    #[arg(long)]
    attempts: Option<usize>,
}

fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn load_pattern(path: &Path) -> Result<SignPattern> {
    let text = read_to_string(path)?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let v: Value = serde_json::from_str(&text).map_err(|e| Error::Json(format!("{e}")))?;
        SignPattern::from_json(&v)
    } else {
        parse_pattern(&text)
    }
}

fn load_matrix(path: &Path) -> Result<ExactMatrix> {
    let text = read_to_string(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Json(format!("{e}")))?;
    ExactMatrix::from_json(&v)
}

/// Certificate file: the matrix JSON fields plus a claim and its pattern.
pub fn certificate_json(m: &ExactMatrix) -> Value {
    let mut v = m.to_json();
    v["claim"] = json!("allows_row_orthogonality");
    v["pattern"] = sgn_of(m).to_json();
    v
}

fn write_artifact(out: &Option<PathBuf>, name: &str, content: &str) -> Result<()> {
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(name), content)?;
    }
    Ok(())
}

fn emit(v: &Value, format: OutputFormat, text_render: impl Fn() -> String) {
    match format {
        OutputFormat::Json | OutputFormat::Csv => {
            println!("{}", serde_json::to_string_pretty(v).expect("json renders"))
        }
        OutputFormat::Text => println!("{}", text_render()),
    }
}

fn try_run(cli: CliArgs) -> Result<i32> {
    let mut cfg = match &cli.config {
        Some(path) => Config::parse(&read_to_string(path)?)?,
        None => Config::default(),
    };
    // env overrides are limited to seed and output dir
    let env_seed = std::env::var("ORTHOPAT_SEED").ok().and_then(|s| s.parse::<u64>().ok());
    let out_dir =
        cli.out.clone().or_else(|| std::env::var("ORTHOPAT_OUT").ok().map(PathBuf::from));
    let seed = cli.seed.or(env_seed).unwrap_or(cfg.seed);
    cfg.seed = seed;
    let format = match &cli.format {
        Some(f) => OutputFormat::parse(f)?,
        None => cfg.output_format,
    };

    match cli.command {
        Command::Check { pattern } => {
            let s = load_pattern(&pattern)?;
            let verdict = decide_allows(&s, &cfg.decide_config(seed))?;
            let v = verdict.to_json(&s);
            write_artifact(&out_dir, "verdict.json", &serde_json::to_string_pretty(&v).unwrap())?;
            emit(&v, format, || {
                format!(
                    "{}x{} pattern: {} (via {})",
                    s.rows(),
                    s.cols(),
                    match verdict.status {
                        Status::Allows => "allows row orthogonality",
                        Status::Forbidden => "does not allow row orthogonality",
                        Status::Unknown => "undecided",
                    },
                    verdict.provenance
                )
            });
            Ok(match verdict.status {
                Status::Allows => 0,
                Status::Forbidden => 2,
                Status::Unknown => 3,
            })
        }
        Command::Sipp { matrix } => {
            let a = load_matrix(&matrix)?;
            let verdict = sipp_check_exact(&a)?;
            let v = json!({
                "has_sipp": verdict.has_sipp,
                "method": "exact-nullspace",
                "witness": verdict.witness.as_ref().map(|w| w.to_json()),
            });
            write_artifact(&out_dir, "sipp.json", &serde_json::to_string_pretty(&v).unwrap())?;
            emit(&v, format, || {
                if verdict.has_sipp {
                    "matrix has the strong inner product property".into()
                } else {
                    format!(
                        "matrix lacks the strong inner product property; witness:\n{}",
                        verdict.witness.as_ref().expect("witness present")
                    )
                }
            });
            Ok(if verdict.has_sipp { 0 } else { 2 })
        }
        Command::VerifyCert { certificate } => {
            let text = read_to_string(&certificate)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::Json(format!("{e}")))?;
            let a = ExactMatrix::from_json(&v)?;
            if let Some(claimed) = v.get("pattern").filter(|p| !p.is_null()) {
                let claimed = SignPattern::from_json(claimed)?;
                if sgn_of(&a) != claimed {
                    return Err(Error::Invalid(
                        "certificate matrix does not realize its claimed pattern".into(),
                    ));
                }
            }
            let report = verify_certificate_with_bits(&a, cfg.precision_bits)?;
            let out = json!({
                "report": report.to_json(),
                "pattern": sgn_of(&a).to_json(),
            });
            write_artifact(&out_dir, "report.json", &serde_json::to_string_pretty(&out).unwrap())?;
            let accepted = report.accepted();
            emit(&out, format, || {
                format!(
                    "certificate {}; delta = {}, epsilon^2 = {}",
                    if accepted { "ACCEPTED" } else { "rejected" },
                    crate::exact::scalar_to_string(&report.delta),
                    crate::exact::scalar_to_string(&report.bound.epsilon_sq),
                )
            });
            Ok(if accepted { 0 } else { 2 })
        }
        Command::FindCert { pattern, search } => {
            let s = load_pattern(&pattern)?;
            let mut sc = cfg.search_config(seed);
            sc.mask_zeros = search.mask_zeros;
            if let Some(scale) = search.scale {
                sc.scale = scale;
            }
            if let Some(attempts) = search.attempts {
                sc.max_attempts = attempts;
            }
            match find_certificate(&s, &sc)? {
                Some(m) => {
                    let v = certificate_json(&m);
                    write_artifact(
                        &out_dir,
                        "certificate.json",
                        &serde_json::to_string_pretty(&v).unwrap(),
                    )?;
                    emit(&v, format, || format!("certificate found:\n{m}"));
                    Ok(0)
                }
                None => {
                    eprintln!("no certificate found within budget (not a proof of impossibility)");
                    Ok(3)
                }
            }
        }
        Command::Simulate { m, n, p, r, trials, exact_oracle } => {
            let p = parse_probability(&p)?;
            let mu = MuP::new(p)?;
            let mut reports = Vec::new();
            for &cols in &n {
                reports.push(cover_probability(m, cols, &mu, r, trials, seed, exact_oracle)?);
            }
            let json_out = Value::Array(reports.iter().map(|r| r.to_json()).collect());
            write_artifact(
                &out_dir,
                "simulation.json",
                &serde_json::to_string_pretty(&json_out).unwrap(),
            )?;
            match format {
                OutputFormat::Csv => {
                    let mut csv = String::from(crate::random_sim::SimulationReport::csv_header());
                    csv.push('\n');
                    for rep in &reports {
                        csv.push_str(&rep.csv_row());
                        csv.push('\n');
                    }
                    write_artifact(&out_dir, "simulation.csv", &csv)?;
                    print!("{csv}");
                }
                OutputFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&json_out).unwrap())
                }
                OutputFormat::Text => {
                    for rep in &reports {
                        let (lo, hi) = rep.wilson();
                        println!(
                            "m={} n={} p={} r={}: {}/{} covered (95% [{lo:.3}, {hi:.3}]), bound {:.4}{}",
                            rep.m,
                            rep.n,
                            crate::exact::scalar_to_string(&rep.p),
                            rep.r,
                            rep.successes,
                            rep.trials,
                            rep.lower_bound.to_f64().unwrap_or(0.0),
                            if rep.hypothesis_met { "" } else { " (hypothesis NOT met)" },
                        );
                    }
                }
            }
            Ok(0)
        }
        Command::Classify { m, max_n, full } => {
            let ccfg = ClassifyConfig { decide: cfg.decide_config(seed), full_5x6: full };
            let run = minimal_allows(m, max_n, &ccfg)?;
            let v = run.to_json();
            write_artifact(&out_dir, "classify.json", &serde_json::to_string_pretty(&v).unwrap())?;
            emit(&v, format, || run.to_table());
            Ok(if run.incomplete { 3 } else { 0 })
        }
        Command::Construct { name } => {
            if name == "list" {
                for n in fixture_names() {
                    println!("{n}");
                }
                return Ok(0);
            }
            let v = match named_fixture(&name)? {
                Fixture::Exact(m) => m.to_json(),
                Fixture::Quad(q) => q.to_json(),
                Fixture::Pattern(s) => s.to_json(),
            };
            write_artifact(
                &out_dir,
                &format!("{name}.json"),
                &serde_json::to_string_pretty(&v).unwrap(),
            )?;
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
            Ok(0)
        }
    }
}

fn parse_probability(text: &str) -> Result<num_rational::BigRational> {
    let t = text.trim();
    if let Some((whole, frac)) = t.split_once('.') {
        let digits = frac.len() as u32;
        let whole: i64 = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| bad_p(t))? };
        let frac: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad_p(t))? };
        let den = 10i64.checked_pow(digits).ok_or_else(|| bad_p(t))?;
        return Ok(crate::exact::ratio(whole * den + frac, den));
    }
    scalar_from_str(t).map_err(|_| bad_p(t))
}

fn bad_p(t: &str) -> Error {
    Error::Invalid(format!("cannot parse probability {t:?}; use n/d or a decimal"))
}

/// Binary entry point; returns the process exit code.
pub fn run() -> i32 {
    let cli = match CliArgs::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap renders its own help/usage text
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match try_run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
