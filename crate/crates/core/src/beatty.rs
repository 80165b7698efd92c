//! Non-homogeneous Beatty sequences `⌊αn + β⌋`, `n = 1, 2, …`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::irrational::{AffineSeq, ExactReal, Irrational};

/// Parameters of `B_{α,β}` with the derived `γ = α⁻¹` and `δ = α⁻¹(1 − β)`.
#[derive(Debug, Clone)]
pub struct BeattyParams {
    alpha: Irrational,
    beta: ExactReal,
    gamma: Irrational,
    delta: ExactReal,
    forward: AffineSeq,
    inverse: AffineSeq,
}

impl BeattyParams {
    pub fn new(alpha: Irrational, beta: ExactReal) -> Result<Self> {
        if !alpha.is_positive()? {
            return Err(Error::NotPositive);
        }
        let gamma = alpha.recip()?;
        let delta = gamma.mul(&ExactReal::integer(1).sub(&beta)?)?;
        let forward = AffineSeq::new(&alpha, &beta)?;
        let inverse = AffineSeq::new(&gamma, &delta)?;
        Ok(Self { alpha, beta, gamma, delta, forward, inverse })
    }

    pub fn alpha(&self) -> &Irrational {
        &self.alpha
    }

    pub fn beta(&self) -> &ExactReal {
        &self.beta
    }

    pub fn gamma(&self) -> &Irrational {
        &self.gamma
    }

    pub fn delta(&self) -> &ExactReal {
        &self.delta
    }

    fn cmp_alpha_one(&self) -> Result<Ordering> {
        self.alpha.cmp_exact(&ExactReal::integer(1))
    }

    pub fn alpha_exceeds_one(&self) -> Result<bool> {
        Ok(self.cmp_alpha_one()? == Ordering::Greater)
    }

    /// `⌊αn + β⌋` for any integer `n`.
    pub fn term(&self, n: i128) -> Result<i64> {
        let v = self.forward.floor_at(n)?;
        i64::try_from(v).map_err(|_| Error::Overflow)
    }

    /// `⌊αN + β⌋`, the largest value the first `N` terms reach.
    pub fn last_value(&self, count: u64) -> Result<i64> {
        self.term(count as i128)
    }

    /// The first `count` terms `⌊αn + β⌋`, `n = 1..=count`.
    pub fn generate(&self, count: u64) -> Result<Vec<i64>> {
        (1..=count as i128).map(|n| self.term(n)).collect()
    }

    /// The unique `n ≥ 1` with `⌊αn + β⌋ = m`, if any (requires `α > 1`).
    ///
    /// Uses the criterion `0 < {γm + δ} ≤ γ`; the index is then `⌊γm + δ⌋`,
    /// the unique integer in `[(m − β)/α, (m − β + 1)/α)`.
    pub fn is_member(&self, m: i64) -> Result<Option<u64>> {
        if !self.alpha_exceeds_one()? {
            return Err(Error::AlphaNotGreaterThanOne);
        }
        let (n, inside) = self.inverse.fract_in_half_open(m as i128, &self.gamma)?;
        if !inside || n < 1 {
            return Ok(None);
        }
        debug_assert_eq!(self.term(n).ok(), Some(m));
        Ok(Some(u64::try_from(n).map_err(|_| Error::Overflow)?))
    }

    /// Split `0 < α < 1` into `t = ⌈α⁻¹⌉` sequences with slope `αt > 1`.
    pub fn decompose_small_alpha(&self) -> Result<Decomposition> {
        if self.cmp_alpha_one()? != Ordering::Less {
            return Err(Error::AlphaNotLessThanOne);
        }
        let t = self.gamma.ceil()?;
        let slope = self.alpha.scale(t, 1)?;
        let parts = (0..t)
            .map(|j| {
                let offset = if j == 0 {
                    self.beta.clone()
                } else {
                    self.alpha.scale(j, 1)?.add(&self.beta)?
                };
                Ok(SubSequence { residue: j as u64, params: BeattyParams::new(slope.clone(), offset)? })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Decomposition { t: t as u64, parts })
    }
}

/// Sub-sequence `n ↦ ⌊αt·n + αj + β⌋` standing for the original index
/// `tn + j`.
#[derive(Debug, Clone)]
pub struct SubSequence {
    pub residue: u64,
    pub params: BeattyParams,
}

impl SubSequence {
    /// Range of `n` covering original indices `1..=count`: `n ≥ 1` for
    /// `j = 0`, `n ≥ 0` otherwise, and `n ≤ (count − j)/t`.
    pub fn index_range(&self, t: u64, count: u64) -> std::ops::RangeInclusive<u64> {
        let first = if self.residue == 0 { 1 } else { 0 };
        if count < self.residue {
            return 1..=0;
        }
        first..=(count - self.residue) / t
    }

    pub fn original_index(&self, t: u64, n: u64) -> u64 {
        t * n + self.residue
    }
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub t: u64,
    pub parts: Vec<SubSequence>,
}

impl Decomposition {
    /// All terms for original indices `1..=count`, grouped by residue `j`.
    pub fn terms(&self, count: u64) -> Result<Vec<i64>> {
        let mut out = Vec::with_capacity(count as usize);
        for part in &self.parts {
            for n in part.index_range(self.t, count) {
                out.push(part.params.term(n as i128)?);
            }
        }
        Ok(out)
    }
}
