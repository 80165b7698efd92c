//! Extreme discrepancy of finite point sets in `[0, 1)`.
//!
//! `D = sup_{(c,d) ⊆ [0,1)} |V((c,d))/M − (d − c)|`, where `V` counts points in
//! the open interval. The supremum is reached in one of two limiting shapes:
//!
//! * excess: `(c, d) ↓ [u, v]` around a block of sample values, `u > 0`
//!   (an open interval never contains `0`), giving `#[u, v]/M − (v − u)`;
//! * deficit: `(u, v)` between two candidates from `{0, values, 1}`, giving
//!   `(v − u) − #(u, v)/M`.
//!
//! The star discrepancy over anchored intervals is at most `D` and at least
//! `D/2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::irrational::{AffineSeq, ExactReal};

#[derive(Debug, Clone, PartialEq)]
pub struct SamplePoints {
    values: Vec<f64>,
}

impl SamplePoints {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("discrepancy needs at least one point".into()));
        }
        if let Some(&bad) = values.iter().find(|v| !(**v >= 0.0 && **v < 1.0)) {
            return Err(Error::PointOutOfRange(bad));
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Distinct values ascending, with `#{x ≤ v}` for each.
    fn distinct_with_counts(&self) -> (Vec<f64>, Vec<usize>) {
        let mut sorted = self.values.clone();
        sorted.sort_by(f64::total_cmp);
        let mut distinct: Vec<f64> = Vec::new();
        let mut at_most = Vec::new();
        for (i, &v) in sorted.iter().enumerate() {
            if distinct.last() == Some(&v) {
                *at_most.last_mut().unwrap() = i + 1;
            } else {
                distinct.push(v);
                at_most.push(i + 1);
            }
        }
        (distinct, at_most)
    }
}

fn excess(count: usize, m: usize, u: f64, v: f64) -> f64 {
    count as f64 / m as f64 - (v - u)
}

fn deficit(count: usize, m: usize, u: f64, v: f64) -> f64 {
    (v - u) - count as f64 / m as f64
}

/// Extreme discrepancy in `O(M log M)`.
pub fn discrepancy(points: &SamplePoints) -> f64 {
    let m = points.len();
    let (vals, at_most) = points.distinct_with_counts();
    let below = |i: usize| if i == 0 { 0 } else { at_most[i - 1] };
    let mf = m as f64;

    // excess: maximize (P(j)/M − v_j) − (P(i−1)/M − v_i) over i ≤ j, v_i > 0.
    let mut best_excess: Option<(usize, usize, f64)> = None;
    let mut lowest: Option<(usize, f64)> = None;
    for j in 0..vals.len() {
        if vals[j] > 0.0 {
            let key = below(j) as f64 / mf - vals[j];
            if lowest.map_or(true, |(_, k)| key < k) {
                lowest = Some((j, key));
            }
        }
        if let Some((i, k)) = lowest {
            let score = (at_most[j] as f64 / mf - vals[j]) - k;
            if best_excess.map_or(true, |(_, _, s)| score > s) {
                best_excess = Some((i, j, score));
            }
        }
    }

    // deficit over candidates w: 0, distinct values, 1 with
    // #(w_s, w_t) = #{x < w_t} − #{x ≤ w_s}.
    let mut cands: Vec<(f64, usize, usize)> = Vec::with_capacity(vals.len() + 2);
    if vals[0] > 0.0 {
        cands.push((0.0, 0, 0));
    }
    for (i, &v) in vals.iter().enumerate() {
        cands.push((v, below(i), at_most[i]));
    }
    cands.push((1.0, m, m));
    let mut best_deficit: Option<(usize, usize, f64)> = None;
    let mut lowest: Option<(usize, f64)> = None;
    for t in 0..cands.len() {
        if let Some((s, k)) = lowest {
            let score = (cands[t].0 - cands[t].1 as f64 / mf) - k;
            if best_deficit.map_or(true, |(_, _, b)| score > b) {
                best_deficit = Some((s, t, score));
            }
        }
        let key = cands[t].0 - cands[t].2 as f64 / mf;
        if lowest.map_or(true, |(_, k)| key < k) {
            lowest = Some((t, key));
        }
    }

    // Re-evaluate the winners in the same form as the quadratic reference.
    let a = best_excess
        .map(|(i, j, _)| excess(at_most[j] - below(i), m, vals[i], vals[j]))
        .unwrap_or(f64::NEG_INFINITY);
    let b = best_deficit
        .map(|(s, t, _)| deficit(cands[t].1 - cands[s].2, m, cands[s].0, cands[t].0))
        .unwrap_or(f64::NEG_INFINITY);
    a.max(b)
}

/// Extreme discrepancy by enumerating every candidate pair, `O(M² log M)`.
pub fn discrepancy_quadratic(points: &SamplePoints) -> f64 {
    let m = points.len();
    let mut sorted = points.values().to_vec();
    sorted.sort_by(f64::total_cmp);
    let at_most = |x: f64| sorted.partition_point(|&y| y <= x);
    let less = |x: f64| sorted.partition_point(|&y| y < x);
    let mut cands: Vec<f64> = std::iter::once(0.0).chain(sorted.iter().copied()).chain([1.0]).collect();
    cands.dedup();
    let mut best = f64::NEG_INFINITY;
    for (s, &u) in cands.iter().enumerate() {
        for &v in &cands[s..] {
            if u > 0.0 && v < 1.0 {
                let inside = at_most(v) - less(u);
                if inside > 0 {
                    best = best.max(excess(inside, m, u, v));
                }
            }
            if v > u {
                best = best.max(deficit(less(v) - at_most(u), m, u, v));
            }
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BeattyDiscrepancy {
    pub m: u64,
    pub discrepancy: f64,
    /// `log D / log M`, undefined for `M = 1`.
    pub exponent: Option<f64>,
}

/// Discrepancy of `({γm + δ})_{m=1}^{M}`.
pub fn discrepancy_beatty(gamma: &ExactReal, delta: &ExactReal, m: u64) -> Result<BeattyDiscrepancy> {
    if m == 0 {
        return Err(Error::InvalidArgument("M must be at least 1".into()));
    }
    let seq = AffineSeq::new(gamma, delta)?;
    let values = (1..=m as i128).map(|i| seq.fract_at(i)).collect::<Result<Vec<_>>>()?;
    let d = discrepancy(&SamplePoints::new(values)?);
    let exponent = (m > 1).then(|| d.ln() / (m as f64).ln());
    Ok(BeattyDiscrepancy { m, discrepancy: d, exponent })
}
