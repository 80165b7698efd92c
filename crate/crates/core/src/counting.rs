//! Prime counts and von Mangoldt sums along Beatty sequences, their main
//! terms, and asymptotic verification sweeps.
//!
//! With `B = (⌊αn + β⌋)` and a reduced class `a mod q`:
//!
//! * `S(N) = Σ_{n ≤ N} Λ(q⌊αn+β⌋ + a)`, main term `α⁻¹ Σ_{m ≤ M} Λ(qm + a)`;
//! * `T(N) = Σ_{n ≤ N, ⌊αn+β⌋ ≡ a (q)} Λ(⌊αn+β⌋)`, main term
//!   `α⁻¹ Σ_{m ≤ M, m ≡ a (q)} Λ(m)`;
//! * `N(x) = #{n ≤ x : q⌊αn+β⌋ + a prime}` and
//!   `M(x) = #{n ≤ x : ⌊αn+β⌋ prime, ≡ a (q)}`,
//!
//! where `M = ⌊αN + β⌋`. Inputs with `α < 1` are evaluated through
//! [`BeattyParams::decompose_small_alpha`].

use rayon::prelude::*;
use serde::Serialize;

use crate::beatty::BeattyParams;
use crate::error::{Error, Result};
use crate::num::{fit_line, CompensatedSum, Float, LineFit};
use crate::sieve::{euler_phi, MangoldtTable, ResidueClass};

/// Default PASS tolerance on the relative error at the largest grid point.
pub const DEFAULT_TOLERANCE: f64 = 0.03;

/// Grid points needed before an error exponent is fitted.
pub const MIN_FIT_POINTS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Mode {
    /// `N(x)`: `q⌊αn+β⌋ + a` prime.
    NCount,
    /// `M(x)`: `⌊αn+β⌋` prime and `≡ a (mod q)`.
    MCount,
    /// `S(N)`.
    SWeighted,
    /// `T(N)`.
    TWeighted,
}

impl Mode {
    pub fn label(&self) -> &'static str {
        match self {
            Mode::NCount => "N",
            Mode::MCount => "M",
            Mode::SWeighted => "S",
            Mode::TWeighted => "T",
        }
    }

    fn shifted(&self) -> bool {
        matches!(self, Mode::NCount | Mode::SWeighted)
    }
}

/// Which prediction the sweep compares against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MainTermKind {
    /// `α⁻¹` times the sum (or count) over `m ≤ ⌊αN + β⌋`.
    Exact,
    /// Closed forms `(q/φ(q))N`, `N/φ(q)`, `(q/φ(q))π(N)`, `π(N)/φ(q)`.
    Asymptotic,
}

#[derive(Debug, Clone)]
pub struct SumSpec {
    pub params: BeattyParams,
    pub class: ResidueClass,
    pub limit: u64,
    pub mode: Mode,
}

impl SumSpec {
    pub fn new(params: BeattyParams, class: ResidueClass, limit: u64, mode: Mode) -> Self {
        Self { params, class, limit, mode }
    }

    pub fn with_limit(&self, limit: u64) -> Self {
        Self { limit, ..self.clone() }
    }

    pub fn with_mode(&self, mode: Mode) -> Self {
        Self { mode, ..self.clone() }
    }

    /// Largest integer whose `Λ` or primality the sum inspects.
    pub fn required_limit(&self) -> Result<i128> {
        if self.limit == 0 {
            return Ok(0);
        }
        let top = self.params.last_value(self.limit)? as i128;
        Ok(if self.mode.shifted() {
            top * self.class.q() as i128 + self.class.a() as i128
        } else {
            top
        })
    }

    fn check(&self, table: &MangoldtTable) -> Result<()> {
        table.require(self.required_limit()?)
    }
}

/// `⌊αn + β⌋` for `n = 1..=count`, in evaluation order.
pub fn beatty_terms(params: &BeattyParams, count: u64) -> Result<Vec<i64>> {
    if params.alpha().cmp_exact(&crate::irrational::ExactReal::integer(1))?.is_lt() {
        params.decompose_small_alpha()?.terms(count)
    } else {
        params.generate(count)
    }
}

fn shifted(class: ResidueClass, m: i64) -> i128 {
    class.q() as i128 * m as i128 + class.a() as i128
}

fn checked_terms(table: &MangoldtTable, spec: &SumSpec, expected: &[Mode]) -> Result<Vec<i64>> {
    if !expected.contains(&spec.mode) {
        return Err(Error::InvalidArgument(format!(
            "operation does not apply to mode {}",
            spec.mode.label()
        )));
    }
    spec.check(table)?;
    beatty_terms(&spec.params, spec.limit)
}

/// `S(N) = Σ_{n ≤ N} Λ(q⌊αn+β⌋ + a)`.
pub fn weighted_s<F: Float>(table: &MangoldtTable, spec: &SumSpec) -> Result<F> {
    let terms = checked_terms(table, spec, &[Mode::SWeighted])?;
    let mut sum = CompensatedSum::new();
    for m in terms {
        sum.add(table.lambda::<F>(shifted(spec.class, m)));
    }
    Ok(sum.total())
}

/// `T(N) = Σ_{n ≤ N, ⌊αn+β⌋ ≡ a (q)} Λ(⌊αn+β⌋)`.
pub fn weighted_t<F: Float>(table: &MangoldtTable, spec: &SumSpec) -> Result<F> {
    let terms = checked_terms(table, spec, &[Mode::TWeighted])?;
    let mut sum = CompensatedSum::new();
    for m in terms {
        if spec.class.contains(m as i128) {
            sum.add(table.lambda::<F>(m as i128));
        }
    }
    Ok(sum.total())
}

/// `N(x)` or `M(x)`: unweighted prime counts over `n ≤ x`.
pub fn count_primes(table: &MangoldtTable, spec: &SumSpec) -> Result<u64> {
    let terms = checked_terms(table, spec, &[Mode::NCount, Mode::MCount])?;
    let is_prime = |v: i128| v >= 2 && table.is_prime(v as u64);
    let count = match spec.mode {
        Mode::NCount => terms.iter().filter(|&&m| is_prime(shifted(spec.class, m))).count(),
        _ => terms
            .iter()
            .filter(|&&m| spec.class.contains(m as i128) && is_prime(m as i128))
            .count(),
    };
    Ok(count as u64)
}

/// Number of distinct primes `p ≤ x` of the form `q⌊αn+β⌋ + a`, `n ≥ 1`.
pub fn count_primes_up_to(
    table: &MangoldtTable,
    params: &BeattyParams,
    class: ResidueClass,
    x: u64,
) -> Result<u64> {
    table.require(x as i128)?;
    let mut count = 0;
    let mut last = None;
    for n in 1.. {
        let p = shifted(class, params.term(n)?);
        if p > x as i128 {
            break;
        }
        if last != Some(p) && p >= 2 && table.is_prime(p as u64) {
            count += 1;
        }
        last = Some(p);
    }
    Ok(count)
}

/// The exact main term `α⁻¹ Σ_{1 ≤ m ≤ M} w(m)` with `M = ⌊αN + β⌋`, where
/// `w` is `Λ(qm + a)` (S), `[m ≡ a] Λ(m)` (T), or the matching primality
/// indicator (N, M).
pub fn main_term<F: Float>(table: &MangoldtTable, spec: &SumSpec) -> Result<F> {
    spec.check(table)?;
    let gamma = F::of(spec.params.gamma().to_f64());
    if spec.limit == 0 {
        return Ok(F::zero());
    }
    let top = spec.params.last_value(spec.limit)?;
    let prime = |v: i128| v >= 2 && table.is_prime(v as u64);
    let mut sum = CompensatedSum::new();
    for m in 1..=top.max(0) {
        let w = match spec.mode {
            Mode::SWeighted => table.lambda::<F>(shifted(spec.class, m)),
            Mode::TWeighted if spec.class.contains(m as i128) => table.lambda::<F>(m as i128),
            Mode::NCount if prime(shifted(spec.class, m)) => F::one(),
            Mode::MCount if spec.class.contains(m as i128) && prime(m as i128) => F::one(),
            _ => F::zero(),
        };
        sum.add(w);
    }
    Ok(gamma * sum.total())
}

/// Closed-form asymptotic predictions.
pub fn asymptotic_main_term<F: Float>(table: &MangoldtTable, spec: &SumSpec) -> Result<F> {
    let q = spec.class.q();
    let phi = F::of_u64(euler_phi(q));
    let qf = F::of_u64(q);
    let n = F::of_u64(spec.limit);
    Ok(match spec.mode {
        Mode::SWeighted => qf / phi * n,
        Mode::TWeighted => n / phi,
        Mode::NCount | Mode::MCount => {
            table.require(spec.limit as i128)?;
            let pi = F::of_u64(table.prime_count(spec.limit));
            if spec.mode == Mode::NCount {
                qf / phi * pi
            } else {
                pi / phi
            }
        }
    })
}

/// The left-hand side of `spec` in its mode.
pub fn evaluate<F: Float>(table: &MangoldtTable, spec: &SumSpec) -> Result<F> {
    match spec.mode {
        Mode::SWeighted => weighted_s(table, spec),
        Mode::TWeighted => weighted_t(table, spec),
        Mode::NCount | Mode::MCount => Ok(F::of_u64(count_primes(table, spec)?)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepConfig {
    pub tolerance: f64,
    pub main_term: MainTermKind,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self { tolerance: DEFAULT_TOLERANCE, main_term: MainTermKind::Exact }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReportRow<F> {
    pub n: u64,
    pub lhs: F,
    pub main: F,
    pub abs_err: F,
    /// `abs_err / |main|`.
    pub rel_err: F,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport<F> {
    pub mode: Mode,
    pub main_term: MainTermKind,
    pub class: ResidueClass,
    pub rows: Vec<ReportRow<F>>,
    /// Least-squares fit of `log|error|` against `log N`.
    pub fit: Option<LineFit>,
    /// `1 − slope`: the observed power saving standing in for `κ`.
    pub kappa_hat: Option<f64>,
    /// `−log(rel_err)/√(log N)` at the largest `N`: observed stand-in for the
    /// constant in `exp(−C√log N)`.
    pub c_hat: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

impl<F: Float> VerificationReport<F> {
    pub fn last(&self) -> Option<&ReportRow<F>> {
        self.rows.last()
    }
}

pub fn verify_sweep<F: Float>(
    table: &MangoldtTable,
    template: &SumSpec,
    grid: &[u64],
    config: &SweepConfig,
) -> Result<VerificationReport<F>> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("empty grid".into()));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) || grid[0] == 0 {
        return Err(Error::InvalidArgument("grid must be positive and strictly ascending".into()));
    }
    let rows = grid
        .par_iter()
        .map(|&n| {
            let spec = template.with_limit(n);
            let lhs: F = evaluate(table, &spec)?;
            let main: F = match config.main_term {
                MainTermKind::Exact => main_term(table, &spec)?,
                MainTermKind::Asymptotic => asymptotic_main_term(table, &spec)?,
            };
            let abs_err = (lhs - main).abs();
            let rel_err = if main == F::zero() { F::infinity() } else { abs_err / main.abs() };
            Ok(ReportRow { n, lhs, main, abs_err, rel_err })
        })
        .collect::<Result<Vec<_>>>()?;
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.abs_err > F::zero())
        .map(|r| ((r.n as f64).ln(), r.abs_err.to_f64_lossy().ln()))
        .collect();
    let fit = if pts.len() >= MIN_FIT_POINTS { fit_line(&pts) } else { None };
    let last = rows.last().expect("nonempty grid");
    let last_rel = last.rel_err.to_f64_lossy();
    let c_hat = (last_rel > 0.0 && last_rel.is_finite() && last.n >= 3)
        .then(|| -last_rel.ln() / (last.n as f64).ln().sqrt());
    let pass = last_rel <= config.tolerance && fit.map_or(true, |f| f.slope < 1.0);
    Ok(VerificationReport {
        mode: template.mode,
        main_term: config.main_term,
        class: template.class,
        kappa_hat: fit.map(|f| 1.0 - f.slope),
        fit,
        c_hat,
        tolerance: config.tolerance,
        pass,
        rows,
    })
}
