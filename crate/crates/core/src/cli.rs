//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 when the run stops before any mathematics (usage, configuration, input).

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{Map, Value};

use crate::correlations::{
    independence_suite, joint_spin_zero_distribution, outcome_label, sample_distribution, DensityMatrix,
};
use crate::linop::{hermitian_eigen, Matrix, NullSpace, SpaceShape, Vector, DEFAULT_TOL};
use crate::report::{self, float, number};
use crate::scalar::{finite_complex, parse_exact, ExactScalar, Scalar};
use crate::spin::{dot_ls, j_projectors, singlet, Axis, Direction};
use crate::theorem::{
    anticommutator_residual, axis_pairs, classify_twin_state, joint_kernel, verify_strong_theorem, DirectionSet,
    TwinVerdict,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "twinspin",
    version,
    about = "Verify that twinned spin-1 pairs are forced into the singlet state"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    options: Options,
}

#[derive(Debug, Args)]
struct Options {
    /// Scalar backend; exact arithmetic ignores --tol and --directions.
    #[arg(long, global = true, value_enum, default_value_t = Backend::Exact)]
    backend: Backend,
    /// Float tolerance, must be positive.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL, value_parser = parse_tol)]
    tol: f64,
    /// Random directions drawn for the float backend (0 uses the certifying set).
    #[arg(long, global = true, default_value_t = 50)]
    directions: usize,
    #[arg(long, global = true, env = "TWINSPIN_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// JSON state file: the pair state for twin-test, the third spin for simulate.
    #[arg(long, global = true)]
    state: Option<PathBuf>,
    /// Number of Monte Carlo samples for simulate.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Run every identity, the joint-kernel computation and the independence suite.
    Verify,
    /// Classify the state in --state as twinned or not.
    TwinTest,
    /// Spectrum of L·S with multiplicities.
    Spectrum,
    /// Joint kernel of the twin conditions and its overlap with the singlet.
    Kernel,
    /// Residual table of the operator identities.
    Identities,
    /// Sample spin-zero answers of singlet twins, optionally with a third spin.
    Simulate,
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let tol: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(format!("tolerance must be a positive finite number, got {s}"))
    }
}

/// Fully resolved options of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub backend: Backend,
    pub tol: f64,
    pub n_random_directions: usize,
    pub seed: u64,
    pub format: Format,
    pub input_state_path: Option<PathBuf>,
    pub count: u64,
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: message.into(),
        }
    }
}

/// Errors before any mathematics (exit 2) versus during it (exit 1).
enum Failure {
    Input(String),
    Math(String),
}

type CmdResult = Result<(bool, String, Map<String, Value>), Failure>;

fn math<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Math(e.to_string())
}

/// Per-backend hooks: direction sets and parsing of state-file entries.
trait CliScalar: NullSpace {
    fn direction_set(config: &RunConfig) -> Result<DirectionSet<Self>, Failure>;
    fn measurement_axis(config: &RunConfig) -> Direction<Self>;
    fn parse_number(v: &Value) -> Result<Self, String>;
    fn entry_json(x: &Self) -> Value;
}

impl CliScalar for ExactScalar {
    fn direction_set(_: &RunConfig) -> Result<DirectionSet<Self>, Failure> {
        Ok(DirectionSet::certifying())
    }

    fn measurement_axis(_: &RunConfig) -> Direction<Self> {
        Direction::axis(Axis::Z)
    }

    fn parse_number(v: &Value) -> Result<Self, String> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(ExactScalar::from_i64)
                .ok_or_else(|| format!("exact backend needs integers or strings, got {n}")),
            Value::String(s) => parse_exact(s).map_err(|e| e.to_string()),
            other => Err(format!("expected a number or string, got {other}")),
        }
    }

    fn entry_json(x: &Self) -> Value {
        Value::from(x.to_string())
    }
}

impl CliScalar for Complex64 {
    fn direction_set(config: &RunConfig) -> Result<DirectionSet<Self>, Failure> {
        if config.n_random_directions == 0 {
            Ok(DirectionSet::certifying())
        } else {
            DirectionSet::random(config.n_random_directions, config.seed).map_err(math)
        }
    }

    fn measurement_axis(config: &RunConfig) -> Direction<Self> {
        Direction::random(&mut ChaCha8Rng::seed_from_u64(config.seed))
    }

    fn parse_number(v: &Value) -> Result<Self, String> {
        match v {
            Value::Number(n) => {
                let x = n.as_f64().ok_or_else(|| format!("bad number {n}"))?;
                finite_complex(x, 0.0).map_err(|e| e.to_string())
            }
            Value::String(s) => match s.trim().parse::<f64>() {
                Ok(x) => finite_complex(x, 0.0).map_err(|e| e.to_string()),
                Err(_) => parse_exact(s).map(|e| e.to_complex()).map_err(|e| e.to_string()),
            },
            other => Err(format!("expected a number or string, got {other}")),
        }
    }

    fn entry_json(x: &Self) -> Value {
        Value::from(vec![float(x.re), float(x.im)])
    }
}

/// An entry is `[re, im]` or a single number or string.
fn parse_entry<S: CliScalar>(v: &Value) -> Result<S, String> {
    match v {
        Value::Array(pair) if pair.len() == 2 => {
            Ok(S::parse_number(&pair[0])? + S::imag_unit() * S::parse_number(&pair[1])?)
        }
        Value::Array(other) => Err(format!("complex entries are [re, im] pairs, got {} items", other.len())),
        scalar => S::parse_number(scalar),
    }
}

fn is_entry(v: &Value) -> bool {
    !matches!(v, Value::Array(a) if a.len() != 2)
        && !v.is_object()
        && !matches!(v, Value::Array(a) if a.iter().any(|x| x.is_array()))
}

/// Reads a state vector or density matrix of dimension `dim` from a JSON file.
fn read_state<S: CliScalar>(
    path: &Path,
    shape: SpaceShape,
    tol: f64,
) -> Result<(DensityMatrix<S>, &'static str), Failure> {
    let input = |m: String| Failure::Input(format!("{}: {m}", path.display()));
    let text = std::fs::read_to_string(path).map_err(|e| input(e.to_string()))?;
    let json: Value = serde_json::from_str(&text).map_err(|e| input(format!("malformed JSON: {e}")))?;
    let dim = shape.total();
    let rows = match &json {
        Value::Array(rows) if rows.len() == dim => rows,
        _ => return Err(input(format!("expected an array of {dim} entries or {dim} rows"))),
    };
    if rows.iter().all(is_entry) {
        let entries = rows
            .iter()
            .map(parse_entry::<S>)
            .collect::<Result<Vec<S>, _>>()
            .map_err(input)?;
        let psi = Vector::new(shape, entries).map_err(|e| input(e.to_string()))?;
        let rho = DensityMatrix::from_pure(&psi).map_err(|e| input(e.to_string()))?;
        return Ok((rho, "vector"));
    }
    let mut matrix_rows = Vec::with_capacity(dim);
    for row in rows {
        match row {
            Value::Array(r) if r.len() == dim => matrix_rows.push(
                r.iter()
                    .map(parse_entry::<S>)
                    .collect::<Result<Vec<S>, _>>()
                    .map_err(input)?,
            ),
            _ => return Err(input(format!("every density-matrix row needs {dim} entries"))),
        }
    }
    let m = Matrix::from_rows(shape, matrix_rows).map_err(|e| input(e.to_string()))?;
    let rho = DensityMatrix::new(m, tol).map_err(|e| input(e.to_string()))?;
    Ok((rho, "density_matrix"))
}

fn direction_json<S: Scalar>(n: &Direction<S>) -> Value {
    Value::from(n.to_f64().iter().map(|&x| float(x)).collect::<Vec<_>>())
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn cmd_verify<S: CliScalar>(config: &RunConfig) -> CmdResult {
    let dirs = S::direction_set(config)?;
    let theorem = verify_strong_theorem(&dirs, config.tol);
    let list: Vec<Direction<S>> = dirs.iter().cloned().collect();
    let independence = independence_suite(&list, 3, config.seed, config.tol).map_err(math)?;
    let mut failing = theorem.failing.clone();
    failing.extend(independence.checks.iter().filter(|c| !c.2).map(|c| c.0.to_string()));
    let pass = failing.is_empty();
    let mut body = Map::new();
    body.insert("tol".into(), float(config.tol));
    body.insert("seed".into(), Value::from(config.seed));
    body.insert("theorem".into(), report::theorem_json(&theorem));
    body.insert(
        "independence".into(),
        report::independence_json(&independence, S::EXACT),
    );
    body.insert("failing".into(), Value::from(failing));
    body.insert("verdict".into(), Value::from(verdict(pass)));
    let headline = format!(
        "verify: {} ({} backend, {} directions)",
        verdict(pass).to_uppercase(),
        S::NAME,
        dirs.len()
    );
    Ok((pass, headline, body))
}

fn cmd_twin_test<S: CliScalar>(config: &RunConfig) -> CmdResult {
    let path = config
        .input_state_path
        .as_deref()
        .ok_or_else(|| Failure::Input("twin-test needs --state <file>".into()))?;
    let (rho, kind) = read_state::<S>(path, SpaceShape::uniform(3, 2), config.tol)?;
    let mut dirs: Vec<Direction<S>> = DirectionSet::<S>::certifying().iter().cloned().collect();
    if !S::EXACT && config.n_random_directions > 0 {
        dirs.extend(S::direction_set(config)?.iter().cloned());
    }
    let dirs = DirectionSet::new(dirs).map_err(math)?;
    let c = classify_twin_state(&rho, &dirs, config.tol).map_err(math)?;
    let pass = c.conclusion_holds != Some(false);
    let label = match c.verdict {
        TwinVerdict::Twinned => "TWINNED",
        TwinVerdict::NotTwinned => "NOT_TWINNED",
    };
    let mut body = Map::new();
    body.insert("tol".into(), float(config.tol));
    body.insert("seed".into(), Value::from(config.seed));
    body.insert("state_kind".into(), Value::from(kind));
    body.insert("directions".into(), Value::from(dirs.len()));
    body.insert("classification".into(), Value::from(label));
    body.insert("max_functional".into(), number(c.max_functional, S::EXACT));
    body.insert(
        "witness".into(),
        c.witness.as_ref().map(direction_json).unwrap_or(Value::Null),
    );
    body.insert(
        "singlet_gap".into(),
        c.singlet_gap.map(|g| number(g, S::EXACT)).unwrap_or(Value::Null),
    );
    body.insert(
        "conclusion_holds".into(),
        c.conclusion_holds.map(Value::from).unwrap_or(Value::Null),
    );
    body.insert("verdict".into(), Value::from(verdict(pass)));
    let detail = match (&c.witness, c.singlet_gap) {
        (Some(w), _) => format!("witness {w}, functional {}", c.max_functional),
        (None, Some(0.0)) => "singlet gap 0".to_string(),
        (None, Some(gap)) => format!("singlet gap {gap:.3e}"),
        (None, None) => String::new(),
    };
    Ok((pass, format!("twin-test: {label} ({detail})"), body))
}

fn cmd_spectrum<S: CliScalar>(config: &RunConfig) -> CmdResult {
    let x = dot_ls::<S>();
    let projectors = j_projectors::<S>();
    let mut levels = Vec::new();
    let mut multiplicities = Map::new();
    let mut gap = 0.0f64;
    let mut pass = true;
    let expected = [(-2i64, 1usize), (-1, 3), (1, 5)];
    if S::EXACT {
        for (j, lambda, p) in projectors.iter() {
            let residual = (&x * p).distance(&p.scale(&S::from_i64(lambda))).map_err(math)?;
            gap = gap.max(residual);
            let dim = p.trace().re();
            levels.push(serde_json::json!({ "j": j, "eigenvalue": lambda, "multiplicity": number(dim, true) }));
            multiplicities.insert(lambda.to_string(), number(dim, true));
            pass &= residual == 0.0 && expected.contains(&(lambda, dim as usize)) && dim.fract() == 0.0;
        }
    } else {
        let eig = hermitian_eigen(&x.to_float(), config.tol).map_err(math)?;
        let groups = eig.multiplicities(config.tol);
        pass &= groups.len() == expected.len();
        for (&(value, m), (want, want_m)) in groups.iter().zip(expected) {
            let err = (value - want as f64).abs();
            gap = gap.max(err);
            pass &= m == want_m && err <= config.tol;
            let j = [0, 1, 2][expected.iter().position(|e| e.0 == want).expect("listed")];
            levels.push(serde_json::json!({ "j": j, "eigenvalue": float(value), "multiplicity": m }));
            multiplicities.insert(want.to_string(), Value::from(m));
        }
    }
    let dims: Vec<Value> = projectors
        .iter()
        .map(|(_, _, p)| number(p.trace().re(), S::EXACT))
        .collect();
    let mut body = Map::new();
    body.insert("tol".into(), float(config.tol));
    body.insert("levels".into(), Value::from(levels));
    body.insert("multiplicities".into(), Value::Object(multiplicities.clone()));
    body.insert("subspace_dims".into(), Value::from(dims));
    body.insert("eigenvalue_error".into(), number(gap, S::EXACT));
    body.insert("verdict".into(), Value::from(verdict(pass)));
    let shown: Vec<String> = ["1", "-1", "-2"]
        .iter()
        .map(|k| format!("{k}: {}", multiplicities.get(*k).map_or("-".into(), |v| v.to_string())))
        .collect();
    Ok((pass, format!("spectrum of L·S: {{{}}}", shown.join(", ")), body))
}

fn cmd_kernel<S: CliScalar>(config: &RunConfig) -> CmdResult {
    let dirs = S::direction_set(config)?;
    let kernel = joint_kernel(&dirs, config.tol);
    let phi = singlet::<S>();
    // Phase convention: each basis vector v is rescaled so that ⟨Φ|v⟩ = ⟨Φ|Φ⟩.
    let basis: Vec<Vector<S>> = kernel
        .iter()
        .map(|k| match phi.vector.inner(k).try_inv() {
            Ok(inv) => k.scale(&(phi.norm_sq.clone() * inv)),
            Err(_) => k.clone(),
        })
        .collect();
    let overlap = match kernel.as_slice() {
        [k] => Some(phi.overlap(k)),
        _ => None,
    };
    let pass = match &overlap {
        Some(o) if S::EXACT => *o == S::one(),
        Some(o) => o.re() >= 1.0 - config.tol,
        None => false,
    };
    let mut body = Map::new();
    body.insert("tol".into(), float(config.tol));
    body.insert("directions".into(), Value::from(dirs.len()));
    body.insert("dimension".into(), Value::from(kernel.len()));
    body.insert(
        "basis".into(),
        Value::from(
            basis
                .iter()
                .map(|v| Value::from(v.entries().iter().map(S::entry_json).collect::<Vec<_>>()))
                .collect::<Vec<_>>(),
        ),
    );
    body.insert(
        "singlet_overlap".into(),
        overlap.map(|o| number(o.re(), S::EXACT)).unwrap_or(Value::Null),
    );
    body.insert("verdict".into(), Value::from(verdict(pass)));
    let shown: Vec<String> = basis
        .iter()
        .map(|v| {
            format!(
                "({})",
                v.entries()
                    .iter()
                    .map(|x| format!("{x}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        })
        .collect();
    Ok((
        pass,
        format!("joint kernel: dimension {}, basis {}", kernel.len(), shown.join(" ")),
        body,
    ))
}

fn cmd_identities<S: CliScalar>(config: &RunConfig) -> CmdResult {
    let dirs = S::direction_set(config)?;
    let theorem = verify_strong_theorem(&dirs, config.tol);
    let within = |v: f64| if S::EXACT { v == 0.0 } else { v <= config.tol };
    let phi = singlet::<S>();
    let mut singlet_anti = 0.0f64;
    for (i, j) in axis_pairs() {
        let r = anticommutator_residual(&phi.vector, i, j).map_err(math)?;
        if !r.is_zero() {
            singlet_anti = singlet_anti.max(r.norm());
        }
    }
    let mut rows: Vec<(String, f64, bool)> = theorem
        .checks
        .iter()
        .filter(|c| !matches!(c.name, "kernel_dimension" | "singlet_overlap"))
        .map(|c| (c.name.to_string(), c.value, c.passed))
        .collect();
    rows.push(("singlet_anticommutators".into(), singlet_anti, within(singlet_anti)));
    let pass = rows.iter().all(|r| r.2);
    let mut residuals = Map::new();
    for (name, value, passed) in &rows {
        residuals.insert(
            name.clone(),
            serde_json::json!({ "residual": number(*value, S::EXACT), "passed": passed }),
        );
    }
    let mut body = Map::new();
    body.insert("tol".into(), float(config.tol));
    body.insert("directions".into(), Value::from(dirs.len()));
    body.insert("residuals".into(), Value::Object(residuals));
    body.insert("verdict".into(), Value::from(verdict(pass)));
    let failing = rows.iter().filter(|r| !r.2).count();
    Ok((
        pass,
        format!(
            "identities: {} ({failing} of {} residuals out of tolerance)",
            verdict(pass).to_uppercase(),
            rows.len()
        ),
        body,
    ))
}

fn cmd_simulate<S: CliScalar>(config: &RunConfig) -> CmdResult {
    let n = S::measurement_axis(config);
    let pair = DensityMatrix::<S>::singlet();
    let (state, third) = match config.input_state_path.as_deref() {
        Some(path) => {
            let (rho_c, kind) = read_state::<S>(path, SpaceShape::single(3), config.tol)?;
            let state = pair.tensor(&rho_c).reshaped(SpaceShape::uniform(3, 3)).map_err(math)?;
            (state, Value::from(kind))
        }
        None => (pair, Value::Null),
    };
    let dirs = vec![Some(n.clone()); state.shape().sites()];
    let dist = joint_spin_zero_distribution(&state, &dirs).map_err(math)?;
    let stats = sample_distribution(&dist, config.count, config.seed).map_err(math)?;
    let total = stats.total as f64;
    let mut table = Vec::new();
    let mut text_rows = Vec::new();
    for (outcome, p) in dist.iter() {
        // Rounding can leave forbidden outcomes at -1e-17; show them as 0.
        let p = p.re().max(0.0);
        let observed = stats.count(outcome);
        let freq = observed as f64 / total;
        let sigma = (p * (1.0 - p) / total).sqrt();
        let z = if sigma > 0.0 {
            float((freq - p) / sigma)
        } else {
            Value::Null
        };
        let label = outcome_label(outcome);
        text_rows.push(format!("{label:>4}  expected {p:.6}  observed {freq:.6} ({observed})"));
        table.push(serde_json::json!({
            "outcome": label,
            "expected": float(p),
            "observed": observed,
            "frequency": float(freq),
            "z_score": z,
        }));
    }
    let discord = stats.discord_count();
    let pass = discord == 0;
    let mut body = Map::new();
    body.insert("seed".into(), Value::from(config.seed));
    body.insert("count".into(), Value::from(config.count));
    body.insert("axis".into(), direction_json(&n));
    body.insert("third_spin".into(), third);
    body.insert("table".into(), Value::from(table));
    body.insert("discord_count".into(), Value::from(discord));
    body.insert("verdict".into(), Value::from(verdict(pass)));
    let headline = format!(
        "simulate: {} samples along {n}, discord {discord}\n{}",
        config.count,
        text_rows.join("\n")
    );
    Ok((pass, headline, body))
}

fn dispatch<S: CliScalar>(config: &RunConfig) -> CmdResult {
    match config.command {
        Command::Verify => cmd_verify::<S>(config),
        Command::TwinTest => cmd_twin_test::<S>(config),
        Command::Spectrum => cmd_spectrum::<S>(config),
        Command::Kernel => cmd_kernel::<S>(config),
        Command::Identities => cmd_identities::<S>(config),
        Command::Simulate => cmd_simulate::<S>(config),
    }
}

fn command_name(c: Command) -> &'static str {
    match c {
        Command::Verify => "verify",
        Command::TwinTest => "twin-test",
        Command::Spectrum => "spectrum",
        Command::Kernel => "kernel",
        Command::Identities => "identities",
        Command::Simulate => "simulate",
    }
}

/// Runs one already-parsed configuration.
pub fn execute(config: &RunConfig) -> Outcome {
    let result = match config.backend {
        Backend::Exact => dispatch::<ExactScalar>(config),
        Backend::Float => dispatch::<Complex64>(config),
    };
    let backend = match config.backend {
        Backend::Exact => ExactScalar::NAME,
        Backend::Float => Complex64::NAME,
    };
    match result {
        Ok((pass, headline, body)) => {
            let value = report::envelope(command_name(config.command), backend, body);
            let stdout = match config.format {
                Format::Json => report::canonical_json(&value),
                Format::Text => report::text(&headline, &value),
            };
            Outcome {
                code: if pass { EXIT_PASS } else { EXIT_FAIL },
                stdout,
                stderr: String::new(),
            }
        }
        Err(Failure::Input(msg)) => Outcome::usage(format!("error: {msg}\n")),
        Err(Failure::Math(msg)) => Outcome {
            code: EXIT_FAIL,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

/// Parses arguments (first item is the program name) into a configuration.
pub fn parse_args<I, T>(args: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    let o = cli.options;
    Ok(RunConfig {
        command: cli.command,
        backend: o.backend,
        tol: o.tol,
        n_random_directions: o.directions,
        seed: o.seed,
        format: o.format,
        input_state_path: o.state,
        count: o.count,
    })
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(args) {
        Ok(config) => execute(&config),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Outcome::usage(rendered)
            } else {
                Outcome {
                    code: EXIT_PASS,
                    stdout: rendered,
                    stderr: String::new(),
                }
            }
        }
    }
}

pub fn main() -> i32 {
    let outcome = run(std::env::args_os());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    outcome.code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(line: &str) -> Vec<String> {
        std::iter::once("twinspin")
            .chain(line.split_whitespace())
            .map(String::from)
            .collect()
    }

    #[test]
    fn defaults() {
        let c = parse_args(args("verify")).unwrap();
        assert_eq!(c.backend, Backend::Exact);
        assert_eq!(c.tol, 1e-10);
        assert_eq!(c.n_random_directions, 50);
        assert_eq!(c.format, Format::Text);
    }

    #[test]
    fn rejects_bad_tolerance_and_count() {
        assert_eq!(run(args("verify --tol 0")).code, EXIT_USAGE);
        assert_eq!(run(args("verify --tol nan")).code, EXIT_USAGE);
        assert_eq!(run(args("simulate --count 0")).code, EXIT_USAGE);
        assert_eq!(run(args("bogus")).code, EXIT_USAGE);
    }

    #[test]
    fn twin_test_without_state_is_usage_error() {
        let out = run(args("twin-test"));
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stderr.contains("--state"));
    }

    #[test]
    fn entry_shapes() {
        assert!(is_entry(&serde_json::json!([1, 0])));
        assert!(is_entry(&serde_json::json!("sqrt2/2")));
        assert!(!is_entry(&serde_json::json!([[1, 0], [0, 0]])));
        let e: ExactScalar = parse_entry(&serde_json::json!(["1/3", -2])).unwrap();
        assert_eq!(e.to_string(), parse_exact("1/3 - 2*i").unwrap().to_string());
        assert!(parse_entry::<ExactScalar>(&serde_json::json!(0.5)).is_err());
        let f: Complex64 = parse_entry(&serde_json::json!([0.5, "sqrt2"])).unwrap();
        assert!((f - Complex64::new(0.5, 2f64.sqrt())).norm() < 1e-15);
    }
}
