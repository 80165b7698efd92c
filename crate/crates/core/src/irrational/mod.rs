//! Irrational parameters: exact quadratic surds and certified finite-precision
//! reals, affine evaluation `m ↦ θm + δ` with certified floors, continued
//! fractions and type estimation.
//!
//! Text grammar accepted by [`Irrational::parse`]:
//!
//! | form                      | value          |
//! |---------------------------|----------------|
//! | `sqrt:<d>`                | `√d`           |
//! | `quad:<p>/<q>+sqrt:<d>`   | `(p + √d)/q`   |
//! | `dec:<digits>@<bits>`     | a real within `2^−bits` of the decimal |
//!
//! [`ExactReal::parse`] additionally accepts plain decimals (`0.3`, `-1.7`)
//! and fractions (`17/10`), which are exact rationals.

mod affine;
mod cfrac;
mod interval;
mod quad;
mod type_est;

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

pub use affine::AffineSeq;
pub use cfrac::{
    best_convergent_below, cf_expand, convergents_up_to, BestConvergent, ContinuedFraction, PartialQuotients,
    Period,
};
pub use interval::{parse_decimal, Interval};
pub use quad::Quad;
pub use type_est::{estimate_type, estimate_type_default, TypeEstimate, TypeSample};

use crate::error::{Error, Result};

/// Largest precision accepted by the `dec:` grammar.
pub const MAX_PRECISION_BITS: u32 = 4096;

/// A real number that is either exactly representable in a quadratic field
/// (including the rationals) or known through a certified interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactReal {
    Quad(Quad),
    Interval(Interval),
}

impl From<Quad> for ExactReal {
    fn from(q: Quad) -> Self {
        ExactReal::Quad(q)
    }
}

impl ExactReal {
    pub fn integer(n: i128) -> Self {
        ExactReal::Quad(Quad::integer(n))
    }

    pub fn rational(num: i128, den: i128) -> Result<Self> {
        Ok(ExactReal::Quad(Quad::rational(num, den)?))
    }

    /// Parse a rational (`0.3`, `-1.7`, `17/10`) or any [`Irrational`] form.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.contains(':') {
            return Ok(Irrational::parse(t)?.0);
        }
        if let Some((n, d)) = t.split_once('/') {
            let err = || Error::Parse { input: s.to_string(), reason: "bad fraction".into() };
            let n: i128 = n.trim().parse().map_err(|_| err())?;
            let d: i128 = d.trim().parse().map_err(|_| err())?;
            return Self::rational(n, d);
        }
        let v = parse_decimal(t)?;
        let (n, d) = interval::big_to_i128_ratio(&v)?;
        Self::rational(n, d)
    }

    pub fn as_quad(&self) -> Option<&Quad> {
        match self {
            ExactReal::Quad(q) => Some(q),
            ExactReal::Interval(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, ExactReal::Quad(q) if q.is_rational())
    }

    /// Precision of an interval operand, `None` when exact.
    pub fn precision(&self) -> Option<u32> {
        match self {
            ExactReal::Quad(_) => None,
            ExactReal::Interval(iv) => Some(iv.bits()),
        }
    }

    pub(crate) fn to_interval(&self, bits: u32) -> Interval {
        match self {
            ExactReal::Quad(q) => Interval::from_quad(q, bits),
            ExactReal::Interval(iv) => iv.clone(),
        }
    }

    fn binary(
        &self,
        o: &Self,
        fq: impl Fn(&Quad, &Quad) -> Result<Quad>,
        fi: impl Fn(&Interval, &Interval) -> Result<Interval>,
    ) -> Result<Self> {
        match (self, o) {
            (ExactReal::Quad(a), ExactReal::Quad(b)) => Ok(ExactReal::Quad(fq(a, b)?)),
            (ExactReal::Interval(a), b) => Ok(ExactReal::Interval(fi(a, &b.to_interval(a.bits()))?)),
            (a, ExactReal::Interval(b)) => Ok(ExactReal::Interval(fi(&a.to_interval(b.bits()), b)?)),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.binary(o, Quad::add, |a, b| Ok(a.add(b)))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.binary(o, Quad::sub, |a, b| Ok(a.sub(b)))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.binary(o, Quad::mul, |a, b| Ok(a.mul(b)))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.binary(o, Quad::div, |a, b| Ok(a.mul(&b.recip()?)))
    }

    pub fn neg(&self) -> Self {
        match self {
            ExactReal::Quad(q) => ExactReal::Quad(q.neg()),
            ExactReal::Interval(iv) => ExactReal::Interval(iv.neg()),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        match self {
            ExactReal::Quad(q) => Ok(ExactReal::Quad(q.recip()?)),
            ExactReal::Interval(iv) => Ok(ExactReal::Interval(iv.recip()?)),
        }
    }

    /// Multiply by the rational `num/den`.
    pub fn scale(&self, num: i128, den: i128) -> Result<Self> {
        self.mul(&Self::rational(num, den)?)
    }

    /// Certified sign; `AmbiguousFloor` when an interval contains zero.
    pub fn signum(&self) -> Result<Ordering> {
        match self {
            ExactReal::Quad(q) => q.signum(),
            ExactReal::Interval(iv) => iv
                .signum()
                .ok_or_else(|| Error::AmbiguousFloor(format!("sign of {self}"))),
        }
    }

    pub fn cmp_exact(&self, o: &Self) -> Result<Ordering> {
        self.sub(o)?.signum()
    }

    pub fn floor(&self) -> Result<i128> {
        match self {
            ExactReal::Quad(q) => q.floor(),
            ExactReal::Interval(iv) => iv.floor(),
        }
    }

    pub fn ceil(&self) -> Result<i128> {
        Ok(-self.neg().floor()?)
    }

    /// `(⌊x⌋, {x})` with the fractional part in `[0, 1)`.
    pub fn floor_fract(&self) -> Result<(i128, f64)> {
        AffineSeq::new(&ExactReal::integer(0), self)?.floor_fract_at(0)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactReal::Quad(q) => q.to_f64(),
            ExactReal::Interval(iv) => iv.midpoint_f64(),
        }
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactReal::Quad(q) => write!(f, "{q}"),
            ExactReal::Interval(iv) => write!(f, "{}@{}", iv.midpoint_f64(), iv.bits()),
        }
    }
}

/// An irrational real: a quadratic surd with nonzero irrational part, or a
/// finite-precision real that is assumed irrational and whose decisions are
/// certified against its error bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Irrational(ExactReal);

impl Deref for Irrational {
    type Target = ExactReal;

    fn deref(&self) -> &ExactReal {
        &self.0
    }
}

impl fmt::Display for Irrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Irrational {
    pub fn new(x: ExactReal) -> Result<Self> {
        if x.is_rational() {
            return Err(Error::NotIrrational(x.to_string()));
        }
        Ok(Self(x))
    }

    pub fn sqrt(d: i128) -> Result<Self> {
        if d <= 0 {
            return Err(Error::NotPositive);
        }
        Self::new(ExactReal::Quad(Quad::sqrt(d)?))
    }

    /// `(p + √d)/q`.
    pub fn quadratic(p: i128, q: i128, d: i128) -> Result<Self> {
        if d <= 0 {
            return Err(Error::NotPositive);
        }
        Self::new(ExactReal::Quad(Quad::new(p, 1, q, d)?))
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn golden_ratio() -> Self {
        Self::quadratic(1, 2, 5).expect("golden ratio")
    }

    pub fn decimal(digits: &str, bits: u32) -> Result<Self> {
        if bits == 0 || bits > MAX_PRECISION_BITS {
            return Err(Error::Parse {
                input: digits.to_string(),
                reason: format!("precision must be within 1..={MAX_PRECISION_BITS} bits"),
            });
        }
        Ok(Self(ExactReal::Interval(Interval::from_decimal(digits, bits)?)))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::parse_with_default_precision(s, None)
    }

    /// As [`Irrational::parse`], but `dec:<digits>` without `@<bits>` uses
    /// `default_bits`.
    pub fn parse_with_default_precision(s: &str, default_bits: Option<u32>) -> Result<Self> {
        let t = s.trim();
        let err = |reason: &str| Error::Parse { input: s.to_string(), reason: reason.to_string() };
        let int = |x: &str| -> Result<i128> { x.trim().parse().map_err(|_| err("expected an integer")) };
        if let Some(d) = t.strip_prefix("sqrt:") {
            let d = int(d)?;
            if d <= 0 {
                return Err(err("radicand must be positive"));
            }
            return Self::sqrt(d).map_err(|e| match e {
                Error::NotIrrational(_) => err("radicand is a perfect square, so the value is rational"),
                e => e,
            });
        }
        if let Some(rest) = t.strip_prefix("quad:") {
            let (frac, d) = rest
                .split_once("+sqrt:")
                .ok_or_else(|| err("expected quad:<p>/<q>+sqrt:<d>"))?;
            let (p, q) = frac.split_once('/').ok_or_else(|| err("expected <p>/<q>"))?;
            let (p, q, d) = (int(p)?, int(q)?, int(d)?);
            if q == 0 {
                return Err(err("denominator must be nonzero"));
            }
            if d <= 0 {
                return Err(err("radicand must be positive"));
            }
            return Self::quadratic(p, q, d).map_err(|e| match e {
                Error::NotIrrational(_) => err("radicand is a perfect square, so the value is rational"),
                e => e,
            });
        }
        if let Some(rest) = t.strip_prefix("dec:") {
            let (digits, bits) = match rest.split_once('@') {
                Some((digits, bits)) => {
                    (digits, bits.trim().parse::<u32>().map_err(|_| err("bad precision"))?)
                }
                None => (rest, default_bits.ok_or_else(|| err("expected dec:<digits>@<bits>"))?),
            };
            return Self::decimal(digits, bits);
        }
        Err(err("expected sqrt:<d>, quad:<p>/<q>+sqrt:<d> or dec:<digits>@<bits>"))
    }

    pub fn value(&self) -> &ExactReal {
        &self.0
    }

    pub fn into_inner(self) -> ExactReal {
        self.0
    }

    /// `1/x`, irrational again.
    pub fn recip(&self) -> Result<Self> {
        Ok(Self(self.0.recip()?))
    }

    /// `x·num/den` for a nonzero rational factor.
    pub fn scale(&self, num: i128, den: i128) -> Result<Self> {
        if num == 0 {
            return Err(Error::InvalidArgument("scaling an irrational by zero".into()));
        }
        Ok(Self(self.0.scale(num, den)?))
    }

    pub fn is_positive(&self) -> Result<bool> {
        Ok(self.0.signum()? == Ordering::Greater)
    }
}

/// `(⌊αn + β⌋, {αn + β})`.
pub fn floor_affine(alpha: &Irrational, n: i128, beta: &ExactReal) -> Result<(i128, f64)> {
    if !alpha.is_positive()? {
        return Err(Error::NotPositive);
    }
    AffineSeq::new(alpha, beta)?.floor_fract_at(n)
}

/// Exact `(num, den)` of a rational value, when it is one.
pub fn as_ratio(x: &ExactReal) -> Option<(i128, i128)> {
    match x {
        ExactReal::Quad(q) if q.is_rational() => {
            let (a, _, c, _) = q.parts();
            Some((a, c))
        }
        _ => None,
    }
}
