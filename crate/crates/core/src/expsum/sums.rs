use num_complex::Complex;
use serde::Serialize;

use super::smoothing::PsiDelta;
use crate::error::{Error, Result};
use crate::irrational::{convergents_up_to, AffineSeq, ExactReal, Irrational};
use crate::num::{unit_phase, CompensatedSum, ComplexSum, Float};
use crate::sieve::{MangoldtTable, ResidueClass};

/// The phase sequence `m ↦ {θkm}` with the product formed exactly.
fn phases(theta: &ExactReal, k: i64) -> Result<AffineSeq> {
    AffineSeq::new(&theta.scale(k as i128, 1)?, &ExactReal::integer(0))
}

/// `Σ Λ(n) e(θk·m)` over `(m, n)` pairs; terms with `Λ(n) = 0` cost nothing.
fn phase_sum<F: Float>(
    table: &MangoldtTable,
    seq: &AffineSeq,
    terms: impl Iterator<Item = (i128, i128)>,
) -> Result<Complex<F>> {
    let mut sum = ComplexSum::default();
    for (m, n) in terms {
        let w: F = table.lambda(n);
        if w == F::zero() {
            continue;
        }
        sum.add(unit_phase(F::of(seq.fract_at(m)?)) * w);
    }
    Ok(sum.total())
}

fn shifted_terms(m_max: u64, class: ResidueClass) -> impl Iterator<Item = (i128, i128)> {
    let (q, a) = (class.q() as i128, class.a() as i128);
    (1..=m_max as i128).map(move |m| (m, q * m + a))
}

fn progression_terms(m_max: u64, class: ResidueClass) -> impl Iterator<Item = (i128, i128)> {
    (class.first_positive()..=m_max).step_by(class.q() as usize).map(|m| (m as i128, m as i128))
}

/// `Σ_{m ≤ M} Λ(qm + a) e(γkm)`.
pub fn exp_sum_shifted<F: Float>(
    table: &MangoldtTable,
    m_max: u64,
    class: ResidueClass,
    gamma: &ExactReal,
    k: i64,
) -> Result<Complex<F>> {
    table.require(class.q() as i128 * m_max as i128 + class.a() as i128)?;
    phase_sum(table, &phases(gamma, k)?, shifted_terms(m_max, class))
}

/// `Σ_{m ≤ M, m ≡ a (q)} Λ(m) e(γkm)`.
pub fn exp_sum_ap<F: Float>(
    table: &MangoldtTable,
    m_max: u64,
    class: ResidueClass,
    gamma: &ExactReal,
    k: i64,
) -> Result<Complex<F>> {
    table.require(m_max as i128)?;
    phase_sum(table, &phases(gamma, k)?, progression_terms(m_max, class))
}

/// `Σ_{m ≤ M} Λ(qm + a)`, the trivial bound for [`exp_sum_shifted`].
pub fn lambda_mass_shifted<F: Float>(table: &MangoldtTable, m_max: u64, class: ResidueClass) -> Result<F> {
    table.require(class.q() as i128 * m_max as i128 + class.a() as i128)?;
    let mut sum = CompensatedSum::new();
    for (_, n) in shifted_terms(m_max, class) {
        sum.add(table.lambda(n));
    }
    Ok(sum.total())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityCheck<F> {
    pub lhs: Complex<F>,
    pub rhs: Complex<F>,
    /// `|lhs − rhs|`.
    pub residual: F,
    /// `residual / (1 + |lhs|)`.
    pub relative: F,
}

impl<F: Float> IdentityCheck<F> {
    fn new(lhs: Complex<F>, rhs: Complex<F>) -> Self {
        let residual = (lhs - rhs).norm();
        Self { lhs, rhs, residual, relative: residual / (F::one() + lhs.norm()) }
    }
}

/// Both sides of
///
/// ```text
/// Σ_{m ≤ M} Λ(qm + a) e(γkm) = e(−ϑa) Σ_{a < n ≤ L, n ≡ a (q)} Λ(n) e(ϑn)
/// ```
///
/// with `ϑ = γk/q` and `L = qM + a`. The right side is evaluated on its own
/// phase sequence `n ↦ {ϑn}`.
pub fn substitution_identity_check<F: Float>(
    table: &MangoldtTable,
    m_max: u64,
    class: ResidueClass,
    gamma: &ExactReal,
    k: i64,
) -> Result<IdentityCheck<F>> {
    let lhs = exp_sum_shifted(table, m_max, class, gamma, k)?;
    let (q, a) = (class.q(), class.a());
    let theta = gamma.scale(k as i128, q as i128)?;
    let seq = phases(&theta, 1)?;
    let l = q * m_max + a;
    let terms = ((a + q)..=l).step_by(q as usize).map(|n| (n as i128, n as i128));
    let inner: Complex<F> = phase_sum(table, &seq, terms)?;
    let twist = unit_phase(F::of(seq.fract_at(-(a as i128))?));
    Ok(IdentityCheck::new(lhs, twist * inner))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriplesplitCheck<F> {
    /// `Σ_{m ≤ M} Λ(qm + a) ψ_Δ({γm + δ})`.
    pub direct: F,
    /// `γ Σ_{m ≤ M} Λ(qm + a)`.
    pub mean: F,
    /// `Σ_{k ≤ K} [g_k e(δk) S(k) + h_k e(−δk) S(−k)]`.
    pub frequency: Complex<F>,
    pub check: IdentityCheck<F>,
}

/// Evaluates the smoothed sum directly and through its frequency
/// decomposition, with both sides truncated at the same `K`.
pub fn triplesplit_check<F: Float>(
    table: &MangoldtTable,
    m_max: u64,
    class: ResidueClass,
    gamma: &ExactReal,
    delta: &ExactReal,
    psi: &PsiDelta<F>,
) -> Result<TriplesplitCheck<F>> {
    if (psi.gamma().to_f64_lossy() - gamma.to_f64()).abs() > 1e-6 {
        return Err(Error::InvalidArgument("smoothing built for a different gamma".into()));
    }
    table.require(class.q() as i128 * m_max as i128 + class.a() as i128)?;
    let seq = AffineSeq::new(gamma, delta)?;
    let mut direct = CompensatedSum::new();
    for (m, n) in shifted_terms(m_max, class) {
        let w: F = table.lambda(n);
        if w != F::zero() {
            direct.add(w * psi.eval(F::of(seq.fract_at(m)?)));
        }
    }
    let mean = psi.gamma() * lambda_mass_shifted::<F>(table, m_max, class)?;
    let shifts = phases(delta, 1)?;
    let mut frequency = ComplexSum::default();
    for k in 1..=psi.truncation() {
        let ki = k as i128;
        let plus: Complex<F> = exp_sum_shifted(table, m_max, class, gamma, k as i64)?;
        let minus: Complex<F> = exp_sum_shifted(table, m_max, class, gamma, -(k as i64))?;
        frequency.add(psi.g(k) * unit_phase(F::of(shifts.fract_at(ki)?)) * plus);
        frequency.add(psi.h(k) * unit_phase(F::of(shifts.fract_at(-ki)?)) * minus);
    }
    let frequency = frequency.total();
    let direct = direct.total();
    let rhs = frequency + Complex::new(mean, F::zero());
    Ok(TriplesplitCheck {
        direct,
        mean,
        frequency,
        check: IdentityCheck::new(Complex::new(direct, F::zero()), rhs),
    })
}

/// `(L/√d + √(dL) + L^{4/5}) (log L)³`, without the implied constant.
pub fn progression_sum_bound(l: f64, d: f64) -> Result<f64> {
    if !(l >= 3.0 && d >= 1.0) {
        return Err(Error::InvalidArgument(format!("bound needs L >= 3 and d >= 1, got L={l}, d={d}")));
    }
    let log = l.ln();
    Ok((l / d.sqrt() + d.sqrt() * l.sqrt() + l.powf(0.8)) * log * log * log)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundRatioRow {
    pub numerator: i128,
    pub denominator: i128,
    pub bound: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRatioReport {
    pub l: u64,
    pub theta: f64,
    /// `|Σ_{n ≤ L, n ≡ a (q)} Λ(n) e(ϑn)|`.
    pub observed: f64,
    pub rows: Vec<BoundRatioRow>,
}

impl BoundRatioReport {
    pub fn best(&self) -> Option<&BoundRatioRow> {
        self.rows.iter().min_by(|x, y| x.ratio.total_cmp(&y.ratio))
    }
}

/// Observed progression sum at `ϑ = γk/q`, `L = qM + a`, divided by the
/// bound at every convergent denominator `d ≤ L` of `ϑ`.
pub fn bound_ratio_report(
    table: &MangoldtTable,
    m_max: u64,
    class: ResidueClass,
    gamma: &ExactReal,
    k: i64,
) -> Result<BoundRatioReport> {
    let theta = Irrational::new(gamma.scale(k as i128, class.q() as i128)?)?;
    let l = class.q() * m_max + class.a();
    let observed = exp_sum_ap::<f64>(table, l, class, theta.value(), 1)?.norm();
    let rows = convergents_up_to(&theta, l as i128)?
        .into_iter()
        .map(|(b, d)| {
            let bound = progression_sum_bound(l as f64, d as f64)?;
            Ok(BoundRatioRow { numerator: b, denominator: d, bound, ratio: observed / bound })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundRatioReport { l, theta: theta.to_f64(), observed, rows })
}
