//! Continued fractions of irrationals.
//!
//! Quadratic surds use the exact `(P + √D)/Q` recurrence, which is eventually
//! periodic; interval reals use `x ← 1/(x − ⌊x⌋)` on certified enclosures and
//! stop with [`Error::PrecisionExhausted`] once a partial quotient is no
//! longer determined.

use std::collections::HashMap;

use super::interval::Interval;
use super::quad::{self, add, mul, sub};
use super::{ExactReal, Irrational};
use crate::error::{Error, Result};

/// Steps after which period detection gives up.
const PERIOD_SEARCH_LIMIT: usize = 100_000;

/// Eventually periodic tail `a_start, …, a_{start+len−1}` repeating forever.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Period {
    pub start: usize,
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ContinuedFraction {
    /// `a_0, a_1, …, a_K`.
    pub quotients: Vec<i128>,
    /// `(p_i, q_i)` for `i = 0..=K`.
    pub convergents: Vec<(i128, i128)>,
    /// Detected period (surds only).
    pub period: Option<Period>,
}

impl ContinuedFraction {
    pub fn depth(&self) -> usize {
        self.quotients.len().saturating_sub(1)
    }
}

/// Iterator over the partial quotients `a_0, a_1, …`.
#[derive(Debug, Clone)]
pub enum PartialQuotients {
    Surd { p: i128, q: i128, big_d: i128, sqrt_d: f64 },
    Interval { x: Option<Interval> },
}

impl PartialQuotients {
    pub fn new(x: &Irrational) -> Result<Self> {
        match x.value() {
            ExactReal::Quad(s) => {
                let (a, b, c, d) = s.parts();
                // (a + b√d)/c = (P + √D)/Q with D = b²d
                let big_d = mul(mul(b, b)?, d)?;
                let (mut p, mut q) = if b > 0 { (a, c) } else { (-a, -c) };
                let mut big_d = big_d;
                if sub(big_d, mul(p, p)?)? % q != 0 {
                    let qa = q.abs();
                    p = mul(p, qa)?;
                    big_d = mul(big_d, mul(q, q)?)?;
                    q = mul(q, qa)?;
                }
                Ok(Self::Surd { p, q, big_d, sqrt_d: (big_d as f64).sqrt() })
            }
            ExactReal::Interval(iv) => Ok(Self::Interval { x: Some(iv.clone()) }),
        }
    }

    fn surd_state(&self) -> Option<(i128, i128)> {
        match self {
            Self::Surd { p, q, .. } => Some((*p, *q)),
            Self::Interval { .. } => None,
        }
    }
}

impl Iterator for PartialQuotients {
    type Item = Result<i128>;

    fn next(&mut self) -> Option<Result<i128>> {
        match self {
            Self::Surd { p, q, big_d, sqrt_d } => {
                let step = || -> Result<(i128, i128, i128)> {
                    let a = if *q > 0 {
                        quad::floor_of(*p, 1, *q, *big_d, *sqrt_d)?
                    } else {
                        quad::floor_of(-*p, -1, -*q, *big_d, *sqrt_d)?
                    };
                    let np = sub(mul(a, *q)?, *p)?;
                    let num = sub(*big_d, mul(np, np)?)?;
                    debug_assert_eq!(num % *q, 0);
                    Ok((a, np, num / *q))
                };
                Some(step().map(|(a, np, nq)| {
                    *p = np;
                    *q = nq;
                    a
                }))
            }
            Self::Interval { x } => {
                let cur = x.take()?;
                let a = match cur.floor() {
                    Ok(a) => a,
                    Err(_) => return Some(Err(Error::PrecisionExhausted)),
                };
                match cur.shift(-a).recip() {
                    Ok(next) => *x = Some(next),
                    Err(_) => *x = None,
                }
                Some(Ok(a))
            }
        }
    }
}

/// Streams convergents `(p_i, q_i)` with exact `i128` recurrences.
struct Convergents {
    quotients: PartialQuotients,
    prev: (i128, i128),
    prev2: (i128, i128),
}

impl Convergents {
    fn new(x: &Irrational) -> Result<Self> {
        Ok(Self { quotients: PartialQuotients::new(x)?, prev: (1, 0), prev2: (0, 1) })
    }
}

impl Iterator for Convergents {
    type Item = Result<(i128, (i128, i128))>;

    fn next(&mut self) -> Option<Self::Item> {
        let a = match self.quotients.next()? {
            Ok(a) => a,
            Err(e) => return Some(Err(e)),
        };
        let step = || -> Result<(i128, i128)> {
            let p = add(mul(a, self.prev.0)?, self.prev2.0)?;
            let q = add(mul(a, self.prev.1)?, self.prev2.1)?;
            Ok((p, q))
        };
        Some(step().map(|pq| {
            self.prev2 = self.prev;
            self.prev = pq;
            (a, pq)
        }))
    }
}

fn detect_period(x: &Irrational) -> Result<Option<Period>> {
    let mut it = PartialQuotients::new(x)?;
    if it.surd_state().is_none() {
        return Ok(None);
    }
    let mut seen = HashMap::new();
    for i in 0..PERIOD_SEARCH_LIMIT {
        let state = it.surd_state().expect("surd");
        if let Some(&j) = seen.get(&state) {
            return Ok(Some(Period { start: j, len: i - j }));
        }
        seen.insert(state, i);
        it.next().transpose()?;
    }
    Ok(None)
}

/// Partial quotients `a_0..=a_K` and all convergents of `x`.
pub fn cf_expand(x: &Irrational, depth: usize) -> Result<ContinuedFraction> {
    if depth < 1 {
        return Err(Error::InvalidArgument("continued fraction depth must be at least 1".into()));
    }
    let mut quotients = Vec::with_capacity(depth + 1);
    let mut convergents = Vec::with_capacity(depth + 1);
    for item in Convergents::new(x)?.take(depth + 1) {
        let (a, pq) = item?;
        quotients.push(a);
        convergents.push(pq);
    }
    if quotients.len() < depth + 1 {
        return Err(Error::PrecisionExhausted);
    }
    Ok(ContinuedFraction { quotients, convergents, period: detect_period(x)? })
}

/// Convergent `b/d` of `x` with the largest denominator `d ≤ max_den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BestConvergent {
    pub numerator: i128,
    pub denominator: i128,
    /// Denominator of the following convergent (the first to exceed the
    /// bound), so that `|x − b/d| < 1/(d·next)`.
    pub next_denominator: i128,
}

pub fn best_convergent_below(x: &Irrational, max_den: i128) -> Result<BestConvergent> {
    if max_den < 1 {
        return Err(Error::InvalidArgument("denominator bound must be at least 1".into()));
    }
    let mut best = None;
    for item in Convergents::new(x)? {
        let (_, (p, q)) = item?;
        if q > max_den {
            let (b, d) = best.expect("q_0 = 1 is always admissible");
            return Ok(BestConvergent { numerator: b, denominator: d, next_denominator: q });
        }
        best = Some((p, q));
    }
    Err(Error::PrecisionExhausted)
}

/// All convergents of `x` with denominator at most `max_den`.
pub fn convergents_up_to(x: &Irrational, max_den: i128) -> Result<Vec<(i128, i128)>> {
    let mut out = Vec::new();
    for item in Convergents::new(x)? {
        let (_, (p, q)) = item?;
        if q > max_den {
            return Ok(out);
        }
        out.push((p, q));
    }
    Err(Error::PrecisionExhausted)
}
