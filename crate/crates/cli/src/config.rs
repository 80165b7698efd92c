//! Command-line grammar and validation into a [`RunConfig`].

use std::path::PathBuf;

use beatty_core::counting::{Mode, SumSpec};
use beatty_core::irrational::{ExactReal, Irrational};
use beatty_core::sieve::{SieveConfig, DEFAULT_MAX_LIMIT, DEFAULT_SEGMENT_SIZE};
use beatty_core::{BeattyParams, Error, MainTermKind, PsiDelta64, ResidueClass};
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::report::Format;

pub const DEFAULT_PRECISION_BITS: u32 = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid value for --{flag}: {message}")]
pub struct UsageError {
    pub flag: &'static str,
    pub message: String,
}

impl UsageError {
    fn new(flag: &'static str, message: impl ToString) -> Self {
        Self { flag, message: message.to_string() }
    }
}

#[derive(Debug, Parser)]
#[command(name = "beatty", version, about = "Primes in Beatty sequences: exact arithmetic, sieving and verification")]
pub struct Cli {
    /// Bits for `dec:` parameters given without `@<bits>`.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION_BITS)]
    pub precision: u32,
    /// Sieve segment length.
    #[arg(long, global = true, default_value_t = DEFAULT_SEGMENT_SIZE)]
    pub segment: usize,
    /// Output file; a CSV file gets a JSON mirror next to it.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Continued fraction and convergents.
    Cfrac {
        #[arg(long)]
        alpha: String,
        #[arg(long = "K", default_value_t = 10)]
        depth: usize,
    },
    /// Type estimate along convergent denominators.
    TypeEstimate {
        #[arg(long)]
        alpha: String,
        /// Depth; by default large enough that q_K reaches 10^12.
        #[arg(long = "K")]
        depth: Option<usize>,
    },
    #[command(subcommand)]
    Beatty(BeattyCommand),
    #[command(subcommand)]
    Sieve(SieveCommand),
    #[command(subcommand)]
    Count(CountCommand),
    #[command(subcommand)]
    Expsum(ExpsumCommand),
    #[command(subcommand, name = "psi-delta")]
    PsiDelta(PsiDeltaCommand),
    /// Extreme discrepancy of ({γm + δ}), m ≤ M.
    Discrepancy {
        #[arg(long)]
        gamma: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        delta: String,
        #[arg(long = "M", value_delimiter = ',', required = true)]
        m: Vec<String>,
    },
}

#[derive(Debug, Args)]
pub struct SequenceArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub beta: String,
}

#[derive(Debug, Subcommand)]
pub enum BeattyCommand {
    /// Terms ⌊αn + β⌋ for n = 1..=N.
    Generate {
        #[command(flatten)]
        seq: SequenceArgs,
        #[arg(long = "N")]
        n: String,
    },
    /// Index n with ⌊αn + β⌋ = m, if any.
    Member {
        #[command(flatten)]
        seq: SequenceArgs,
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',', required = true)]
        m: Vec<i64>,
    },
}

#[derive(Debug, Args)]
pub struct ClassArgs {
    #[arg(long, default_value_t = 1)]
    pub q: i64,
    #[arg(long, default_value_t = 0)]
    pub a: i64,
}

#[derive(Debug, Subcommand)]
pub enum SieveCommand {
    /// ψ(L; q, a).
    Psi {
        #[arg(long = "L", value_delimiter = ',', required = true)]
        l: Vec<String>,
        #[command(flatten)]
        class: ClassArgs,
    },
    /// π(x; q, a).
    Pi {
        #[arg(long = "L", value_delimiter = ',', required = true)]
        l: Vec<String>,
        #[command(flatten)]
        class: ClassArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    #[value(name = "S", alias = "s")]
    S,
    #[value(name = "T", alias = "t")]
    T,
    #[value(name = "N", alias = "n")]
    N,
    #[value(name = "M", alias = "m")]
    M,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MainArg {
    Exact,
    Asymptotic,
}

#[derive(Debug, Subcommand)]
pub enum CountCommand {
    /// Weighted sums or prime counts against their main terms over a grid.
    Sweep {
        #[command(flatten)]
        seq: SequenceArgs,
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, default_value = "1e4,1e5,1e6")]
        grid: String,
        #[arg(long, value_enum, default_value_t = ModeArg::S)]
        mode: ModeArg,
        #[arg(long, default_value_t = beatty_core::counting::DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = MainArg::Exact)]
        main: MainArg,
    },
}

#[derive(Debug, Args)]
pub struct SumArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: String,
    #[command(flatten)]
    pub class: ClassArgs,
    #[arg(long = "M")]
    pub m: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SumKind {
    /// Σ Λ(qm + a) e(γkm).
    Shifted,
    /// Σ_{m ≡ a (q)} Λ(m) e(γkm).
    Progression,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdentityKind {
    /// Change of variables n = qm + a.
    Substitution,
    /// Smoothed sum against its frequency decomposition.
    Decomposition,
}

#[derive(Debug, Subcommand)]
pub enum ExpsumCommand {
    /// Sums for k = 1..=K with the trivial bound Σ Λ.
    Eval {
        #[command(flatten)]
        sum: SumArgs,
        #[arg(long = "K", default_value_t = 1)]
        k_max: i64,
        #[arg(long, value_enum, default_value_t = SumKind::Shifted)]
        kind: SumKind,
    },
    /// Checks an exact finite identity between two evaluations.
    IdentityCheck {
        #[command(flatten)]
        sum: SumArgs,
        #[arg(long, default_value_t = 1)]
        k: i64,
        #[arg(long, value_enum, default_value_t = IdentityKind::Substitution)]
        kind: IdentityKind,
        /// Smoothing half-width Δ (decomposition only).
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        /// Shift δ of {γm + δ} (decomposition only).
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        shift: String,
        /// Truncation (decomposition only).
        #[arg(long = "K", default_value_t = 100)]
        k_max: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Observed progression sum over the bound at convergent denominators.
    BoundRatio {
        #[command(flatten)]
        sum: SumArgs,
        #[arg(long, default_value_t = 1)]
        k: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum PsiDeltaCommand {
    /// Coefficients and their bounds.
    Inspect {
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        delta: f64,
        #[arg(long = "K", default_value_t = 100)]
        k_max: usize,
    },
}

/// A validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub task: Task,
    pub precision: u32,
    pub sieve: SieveConfig,
    pub out: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug, Clone)]
pub enum Task {
    Cfrac { alpha: Irrational, depth: usize },
    TypeEstimate { alpha: Irrational, depth: Option<usize> },
    Generate { params: BeattyParams, count: u64 },
    Member { params: BeattyParams, values: Vec<i64> },
    SievePsi { limits: Vec<u64>, class: ResidueClass },
    SievePi { limits: Vec<u64>, class: ResidueClass },
    Sweep { spec: SumSpec, grid: Vec<u64>, tol: f64, main: MainTermKind },
    ExpsumEval { gamma: ExactReal, class: ResidueClass, m: u64, k_max: i64, kind: SumKind },
    Substitution { gamma: ExactReal, class: ResidueClass, m: u64, k: i64, tol: f64 },
    Decomposition {
        gamma: ExactReal,
        class: ResidueClass,
        m: u64,
        shift: ExactReal,
        delta: f64,
        k_max: usize,
        tol: f64,
    },
    BoundRatio { gamma: ExactReal, class: ResidueClass, m: u64, k: i64 },
    PsiInspect { gamma: f64, delta: f64, k_max: usize },
    Discrepancy { gamma: ExactReal, delta: ExactReal, sizes: Vec<u64> },
}

impl Task {
    /// Largest integer the sieve must cover.
    pub fn table_limit(&self) -> Result<Option<u64>, UsageError> {
        let shifted = |class: &ResidueClass, m: u64| class.q() * m + class.a();
        Ok(match self {
            Task::SievePsi { limits, .. } | Task::SievePi { limits, .. } => limits.iter().copied().max(),
            Task::Sweep { spec, grid, .. } => {
                let top = *grid.last().expect("nonempty grid");
                let need = spec
                    .with_limit(top)
                    .required_limit()
                    .map_err(|e| UsageError::new("grid", e))?
                    .max(top as i128);
                Some(u64::try_from(need).map_err(|_| UsageError::new("grid", "required sieve limit overflows"))?)
            }
            Task::ExpsumEval { class, m, kind: SumKind::Shifted, .. } => Some(shifted(class, *m)),
            Task::ExpsumEval { m, .. } => Some(*m),
            Task::Substitution { class, m, .. }
            | Task::Decomposition { class, m, .. }
            | Task::BoundRatio { class, m, .. } => Some(shifted(class, *m)),
            _ => None,
        })
    }
}

fn parse_count(flag: &'static str, s: &str) -> Result<u64, UsageError> {
    let t = s.trim();
    if let Ok(v) = t.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = t.parse().map_err(|_| UsageError::new(flag, format!("'{s}' is not a number")))?;
    if !(v.is_finite() && v >= 0.0 && v.fract() == 0.0 && v <= 9.0e15) {
        return Err(UsageError::new(flag, format!("'{s}' is not a nonnegative integer")));
    }
    Ok(v as u64)
}

fn parse_list(flag: &'static str, items: &[String]) -> Result<Vec<u64>, UsageError> {
    let v = items.iter().map(|s| parse_count(flag, s)).collect::<Result<Vec<_>, _>>()?;
    if v.is_empty() {
        return Err(UsageError::new(flag, "expected at least one value"));
    }
    if v.windows(2).any(|w| w[0] >= w[1]) {
        return Err(UsageError::new(flag, "values must be strictly ascending"));
    }
    Ok(v)
}

fn parse_irrational(flag: &'static str, s: &str, bits: u32) -> Result<Irrational, UsageError> {
    if !s.contains(':') {
        return match ExactReal::parse(s) {
            Ok(_) => Err(UsageError::new(flag, format!("'{s}' is rational; use sqrt:, quad: or dec:"))),
            Err(e) => Err(UsageError::new(flag, e)),
        };
    }
    Irrational::parse_with_default_precision(s, Some(bits)).map_err(|e| UsageError::new(flag, e))
}

fn parse_real(flag: &'static str, s: &str, bits: u32) -> Result<ExactReal, UsageError> {
    if s.contains(':') {
        Ok(parse_irrational(flag, s, bits)?.into_inner())
    } else {
        ExactReal::parse(s).map_err(|e| UsageError::new(flag, e))
    }
}

fn parse_class(c: &ClassArgs) -> Result<ResidueClass, UsageError> {
    if c.q < 1 {
        return Err(UsageError::new("q", "modulus must be positive"));
    }
    if c.a < 0 || c.a >= c.q {
        return Err(UsageError::new("a", format!("residue must satisfy 0 <= a < q = {}", c.q)));
    }
    ResidueClass::new(c.a, c.q).map_err(|_| {
        UsageError::new("a", format!("gcd({}, {}) = {} is not 1", c.a, c.q, gcd(c.a, c.q)))
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn parse_params(seq: &SequenceArgs, bits: u32) -> Result<BeattyParams, UsageError> {
    let alpha = parse_irrational("alpha", &seq.alpha, bits)?;
    let beta = parse_real("beta", &seq.beta, bits)?;
    BeattyParams::new(alpha, beta).map_err(|e| UsageError::new("alpha", e))
}

fn check_smoothing(gamma: f64, delta: f64, k_max: usize) -> Result<(), UsageError> {
    match PsiDelta64::new(gamma, delta, k_max) {
        Ok(_) => Ok(()),
        Err(e @ Error::GammaOutOfRange(_)) => Err(UsageError::new("gamma", e)),
        Err(e @ Error::DeltaOutOfRange { .. }) => Err(UsageError::new("delta", e)),
        Err(e) => Err(UsageError::new("K", e)),
    }
}

fn positive_m(sum: &SumArgs) -> Result<u64, UsageError> {
    let m = parse_count("M", &sum.m)?;
    if m == 0 {
        return Err(UsageError::new("M", "must be at least 1"));
    }
    Ok(m)
}

fn nonzero_k(k: i64) -> Result<i64, UsageError> {
    if k == 0 {
        return Err(UsageError::new("k", "frequency must be nonzero"));
    }
    Ok(k)
}

pub fn parse_config<I, T>(argv: I) -> Result<RunConfig, ConfigError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(ConfigError::Clap)?;
    RunConfig::from_cli(cli).map_err(ConfigError::Usage)
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error(transparent)]
    Clap(clap::Error),
    #[error(transparent)]
    Usage(UsageError),
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, UsageError> {
        let bits = cli.precision;
        if !(8..=beatty_core::irrational::MAX_PRECISION_BITS).contains(&bits) {
            return Err(UsageError::new("precision", "must be between 8 and 4096 bits"));
        }
        if cli.segment < 64 {
            return Err(UsageError::new("segment", "segment must hold at least 64 integers"));
        }
        let task = match cli.command {
            Command::Cfrac { alpha, depth } => {
                if depth < 1 {
                    return Err(UsageError::new("K", "depth must be at least 1"));
                }
                Task::Cfrac { alpha: parse_irrational("alpha", &alpha, bits)?, depth }
            }
            Command::TypeEstimate { alpha, depth } => {
                if depth.is_some_and(|d| d < 2) {
                    return Err(UsageError::new("K", "depth must be at least 2"));
                }
                Task::TypeEstimate { alpha: parse_irrational("alpha", &alpha, bits)?, depth }
            }
            Command::Beatty(BeattyCommand::Generate { seq, n }) => {
                Task::Generate { params: parse_params(&seq, bits)?, count: parse_count("N", &n)? }
            }
            Command::Beatty(BeattyCommand::Member { seq, m }) => {
                let params = parse_params(&seq, bits)?;
                if !params.alpha_exceeds_one().map_err(|e| UsageError::new("alpha", e))? {
                    return Err(UsageError::new("alpha", "membership needs alpha > 1"));
                }
                Task::Member { params, values: m }
            }
            Command::Sieve(SieveCommand::Psi { l, class }) => {
                Task::SievePsi { limits: parse_list("L", &l)?, class: parse_class(&class)? }
            }
            Command::Sieve(SieveCommand::Pi { l, class }) => {
                Task::SievePi { limits: parse_list("L", &l)?, class: parse_class(&class)? }
            }
            Command::Count(CountCommand::Sweep { seq, class, grid, mode, tol, main }) => {
                let items: Vec<String> = grid.split(',').map(str::to_string).collect();
                let grid = parse_list("grid", &items)?;
                if grid[0] == 0 {
                    return Err(UsageError::new("grid", "values must be positive"));
                }
                if !(tol.is_finite() && tol > 0.0) {
                    return Err(UsageError::new("tol", "must be positive"));
                }
                let mode = match mode {
                    ModeArg::S => Mode::SWeighted,
                    ModeArg::T => Mode::TWeighted,
                    ModeArg::N => Mode::NCount,
                    ModeArg::M => Mode::MCount,
                };
                let main = match main {
                    MainArg::Exact => MainTermKind::Exact,
                    MainArg::Asymptotic => MainTermKind::Asymptotic,
                };
                let spec = SumSpec::new(parse_params(&seq, bits)?, parse_class(&class)?, 0, mode);
                Task::Sweep { spec, grid, tol, main }
            }
            Command::Expsum(ExpsumCommand::Eval { sum, k_max, kind }) => {
                if k_max < 1 {
                    return Err(UsageError::new("K", "must be at least 1"));
                }
                Task::ExpsumEval {
                    gamma: parse_real("gamma", &sum.gamma, bits)?,
                    class: parse_class(&sum.class)?,
                    m: positive_m(&sum)?,
                    k_max,
                    kind,
                }
            }
            Command::Expsum(ExpsumCommand::IdentityCheck { sum, k, kind, delta, shift, k_max, tol }) => {
                let gamma = parse_real("gamma", &sum.gamma, bits)?;
                let (class, m) = (parse_class(&sum.class)?, positive_m(&sum)?);
                match kind {
                    IdentityKind::Substitution => Task::Substitution { gamma, class, m, k: nonzero_k(k)?, tol },
                    IdentityKind::Decomposition => {
                        check_smoothing(gamma.to_f64(), delta, k_max)?;
                        let shift = parse_real("shift", &shift, bits)?;
                        Task::Decomposition { gamma, class, m, shift, delta, k_max, tol }
                    }
                }
            }
            Command::Expsum(ExpsumCommand::BoundRatio { sum, k }) => {
                let gamma = parse_real("gamma", &sum.gamma, bits)?;
                if gamma.is_rational() {
                    return Err(UsageError::new("gamma", "bound ratios need an irrational gamma"));
                }
                let (class, m) = (parse_class(&sum.class)?, positive_m(&sum)?);
                if class.q() * m + class.a() < 3 {
                    return Err(UsageError::new("M", "qM + a must be at least 3"));
                }
                Task::BoundRatio { gamma, class, m, k: nonzero_k(k)? }
            }
            Command::PsiDelta(PsiDeltaCommand::Inspect { gamma, delta, k_max }) => {
                let g = parse_real("gamma", &gamma, bits)?.to_f64();
                check_smoothing(g, delta, k_max)?;
                Task::PsiInspect { gamma: g, delta, k_max }
            }
            Command::Discrepancy { gamma, delta, m } => {
                let sizes = parse_list("M", &m)?;
                if sizes[0] == 0 {
                    return Err(UsageError::new("M", "must be at least 1"));
                }
                Task::Discrepancy {
                    gamma: parse_real("gamma", &gamma, bits)?,
                    delta: parse_real("delta", &delta, bits)?,
                    sizes,
                }
            }
        };
        let sieve = SieveConfig { segment_size: cli.segment, max_limit: DEFAULT_MAX_LIMIT };
        if let Some(limit) = task.table_limit()? {
            if limit > sieve.max_limit {
                let flag = match &task {
                    Task::Sweep { .. } => "grid",
                    Task::SievePsi { .. } | Task::SievePi { .. } => "L",
                    _ => "M",
                };
                return Err(UsageError::new(
                    flag,
                    format!("needs a sieve up to {limit}, beyond the budget of {}", sieve.max_limit),
                ));
            }
        }
        Ok(Self { task, precision: bits, sieve, out: cli.out, format: cli.format })
    }
}
