//! Finite-depth estimation of the type of an irrational.
//!
//! The type `τ` satisfies `‖γ q_k‖ ≈ C·q_k^{−τ}` along convergent
//! denominators, which are the record minimizers of `‖γ n‖`. The raw ratio
//! `−log‖γq_k‖ / log q_k` converges to `τ` only like `log C / log q_k`, so the
//! estimate is the least-squares slope of `−log‖γq_k‖` against `log q_k`,
//! which absorbs the constant `C` into the intercept. Any finite computation
//! only witnesses a value; nothing here certifies `τ`.

use super::cfrac::{cf_expand, ContinuedFraction, PartialQuotients};
use super::{AffineSeq, ExactReal, Irrational};
use crate::error::{Error, Result};
use crate::num::fit_line;

/// Denominators below this are too small to carry an exponent.
pub const MIN_SAMPLE_DENOMINATOR: i128 = 10;

/// Denominator the default depth must reach.
pub const MIN_DEFAULT_DENOMINATOR: i128 = 1_000_000;

/// Denominator the default depth aims for. Partial quotients enter the fit as
/// bounded noise of size `log a_k`, so the slope error shrinks like
/// `1/log q_K`; finite-precision inputs stop earlier.
pub const TARGET_DENOMINATOR: i128 = 1_000_000_000_000;

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct TypeSample {
    pub index: usize,
    pub denominator: i128,
    /// `‖γ q_k‖`.
    pub distance: f64,
    /// `−log‖γ q_k‖ / log q_k`.
    pub exponent: f64,
    /// Slope of the fit over all samples up to this one (three or more).
    pub fitted: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct TypeEstimate {
    pub depth: usize,
    pub samples: Vec<TypeSample>,
    pub tau_hat: f64,
}

pub fn estimate_type(gamma: &Irrational, depth: usize) -> Result<TypeEstimate> {
    let cf = cf_expand(gamma, depth.max(2))?;
    estimate_from(gamma, &cf)
}

/// Depth reaching [`TARGET_DENOMINATOR`], or the deepest certified depth
/// when that is still at least [`MIN_DEFAULT_DENOMINATOR`].
pub fn estimate_type_default(gamma: &Irrational) -> Result<TypeEstimate> {
    let (mut q_prev, mut q) = (0i128, 1i128);
    let mut depth = 0;
    for a in PartialQuotients::new(gamma)?.skip(1) {
        let a = match a {
            Ok(a) => a,
            Err(Error::PrecisionExhausted) if q >= MIN_DEFAULT_DENOMINATOR => break,
            Err(e) => return Err(e),
        };
        (q_prev, q) = (q, a.checked_mul(q).and_then(|x| x.checked_add(q_prev)).ok_or(Error::Overflow)?);
        depth += 1;
        if q >= TARGET_DENOMINATOR {
            break;
        }
    }
    estimate_type(gamma, depth)
}

fn estimate_from(gamma: &Irrational, cf: &ContinuedFraction) -> Result<TypeEstimate> {
    let seq = AffineSeq::new(gamma, &ExactReal::integer(0))?;
    let mut samples = Vec::new();
    let mut pts = Vec::new();
    for (index, &(_, q)) in cf.convergents.iter().enumerate() {
        if q < 2 {
            continue;
        }
        let f = seq.fract_at(q)?;
        let distance = f.min(1.0 - f);
        let lq = (q as f64).ln();
        let exponent = -distance.ln() / lq;
        let mut fitted = None;
        if q >= MIN_SAMPLE_DENOMINATOR {
            pts.push((lq, -distance.ln()));
            if pts.len() >= 3 {
                fitted = fit_line(&pts).map(|fit| fit.slope);
            }
        }
        samples.push(TypeSample { index, denominator: q, distance, exponent, fitted });
    }
    let tau_hat = samples
        .iter()
        .rev()
        .find_map(|s| s.fitted)
        .or_else(|| {
            samples
                .iter()
                .filter(|s| s.denominator >= MIN_SAMPLE_DENOMINATOR)
                .map(|s| s.exponent)
                .reduce(f64::max)
        })
        .or_else(|| samples.iter().map(|s| s.exponent).reduce(f64::max))
        .unwrap_or(1.0);
    Ok(TypeEstimate { depth: cf.depth(), samples, tau_hat })
}
