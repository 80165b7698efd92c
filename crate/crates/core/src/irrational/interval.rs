//! Rational interval enclosures for reals known only to finite precision.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::quad::Quad;
use crate::error::{Error, Result};

/// Extra bits carried by the outward-rounded endpoints beyond the nominal
/// precision.
const GUARD_BITS: u32 = 32;

/// A closed interval `[lo, hi]` with rational endpoints, tagged with the
/// working precision (in bits) that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
    bits: u32,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

fn floor_big(x: &BigRational) -> BigInt {
    x.numer().div_floor(x.denom())
}

fn round_down(x: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    let n = (x.numer() * &scale).div_floor(x.denom());
    BigRational::new(n, scale)
}

fn round_up(x: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    let n = -((-(x.numer() * &scale)).div_floor(x.denom()));
    BigRational::new(n, scale)
}

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128().ok_or(Error::Overflow)
}

impl Interval {
    /// The enclosure `[v − 2^−bits, v + 2^−bits]` of a decimal approximation
    /// `v`.
    pub fn from_decimal(digits: &str, bits: u32) -> Result<Self> {
        let v = parse_decimal(digits)?;
        let r = BigRational::new(BigInt::one(), pow2(bits));
        Ok(Self { lo: &v - &r, hi: &v + &r, bits })
    }

    pub fn exact(v: BigRational, bits: u32) -> Self {
        Self { lo: v.clone(), hi: v, bits }
    }

    /// Enclosure of an exact quadratic number, to `bits + GUARD_BITS` bits.
    pub fn from_quad(x: &Quad, bits: u32) -> Self {
        let (a, b, c, d) = x.parts();
        if b == 0 {
            return Self::exact(BigRational::new(a.into(), c.into()), bits);
        }
        let p = bits + GUARD_BITS;
        let scale = pow2(p);
        // √d ∈ [s, s + 1]/2^p
        let s = (BigInt::from(d) * &scale * &scale).sqrt();
        let lo_root = BigRational::new(s.clone(), scale.clone());
        let hi_root = BigRational::new(s + 1, scale);
        let (bl, bh) = if b > 0 { (lo_root, hi_root) } else { (hi_root, lo_root) };
        let a = BigRational::from_integer(a.into());
        let b = BigRational::from_integer(b.into());
        let c = BigRational::from_integer(c.into());
        Self { lo: (&a + &b * bl) / &c, hi: (&a + &b * bh) / &c, bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    fn rounded(lo: BigRational, hi: BigRational, bits: u32) -> Self {
        let p = bits + GUARD_BITS;
        Self { lo: round_down(&lo, p), hi: round_up(&hi, p), bits }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::rounded(&self.lo + &o.lo, &self.hi + &o.hi, self.bits.min(o.bits))
    }

    pub fn neg(&self) -> Self {
        Self { lo: -&self.hi, hi: -&self.lo, bits: self.bits }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let cands = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = cands.iter().min().cloned().unwrap_or_else(BigRational::zero);
        let hi = cands.iter().max().cloned().unwrap_or_else(BigRational::zero);
        Self::rounded(lo, hi, self.bits.min(o.bits))
    }

    pub fn mul_int(&self, n: i128) -> Self {
        let n = BigRational::from_integer(n.into());
        let (lo, hi) = if n.is_negative() {
            (&self.hi * &n, &self.lo * &n)
        } else {
            (&self.lo * &n, &self.hi * &n)
        };
        Self { lo, hi, bits: self.bits }
    }

    pub fn recip(&self) -> Result<Self> {
        if !self.lo.is_positive() && !self.hi.is_negative() {
            return Err(Error::PrecisionExhausted);
        }
        Ok(Self::rounded(self.hi.recip(), self.lo.recip(), self.bits))
    }

    /// Sign, when the enclosure certifies it.
    pub fn signum(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// `⌊x⌋` when both endpoints share it.
    pub fn floor(&self) -> Result<i128> {
        let a = floor_big(&self.lo);
        let b = floor_big(&self.hi);
        if a != b {
            return Err(Error::AmbiguousFloor(format!(
                "[{:.6}, {:.6}]",
                self.lo.to_f64().unwrap_or(f64::NAN),
                self.hi.to_f64().unwrap_or(f64::NAN)
            )));
        }
        to_i128(&a)
    }

    pub fn midpoint_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(2.into());
        mid.to_f64().unwrap_or(f64::NAN)
    }

    pub fn shift(&self, k: i128) -> Self {
        let k = BigRational::from_integer(k.into());
        Self { lo: &self.lo + &k, hi: &self.hi + &k, bits: self.bits }
    }
}

/// Parse a plain decimal (`-1.7`, `0.3`, `12`, `1e-3`) as an exact rational.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let err = |reason: &str| Error::Parse { input: s.to_string(), reason: reason.to_string() };
    let t = s.trim();
    if t.is_empty() {
        return Err(err("empty number"));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = t[i + 1..].parse().map_err(|_| err("bad exponent"))?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err("expected decimal digits"));
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num = BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(|| err("no digits"))?;
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let v = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(v)
}

pub(crate) fn big_to_i128_ratio(x: &BigRational) -> Result<(i128, i128)> {
    let n = to_i128(x.numer())?;
    let d = to_i128(x.denom())?;
    if d.signum() == 0 || x.denom().sign() == Sign::NoSign {
        return Err(Error::DivisionByZero);
    }
    Ok((n, d))
}
