//! Exact arithmetic in real quadratic fields `Q(√d)`.
//!
//! Elements are stored as `(a + b√d)/c` over `i128` with every operation
//! overflow-checked. All comparisons reduce to the sign of `x + y√d`, which
//! is decided by comparing `x²` with `y²d`, so floors and fractional-part
//! tests are exact.

use std::cmp::Ordering;
use std::fmt;

use num_integer::{Integer, Roots};

use crate::error::{Error, Result};

pub(crate) fn mul(x: i128, y: i128) -> Result<i128> {
    x.checked_mul(y).ok_or(Error::Overflow)
}

pub(crate) fn add(x: i128, y: i128) -> Result<i128> {
    x.checked_add(y).ok_or(Error::Overflow)
}

pub(crate) fn sub(x: i128, y: i128) -> Result<i128> {
    x.checked_sub(y).ok_or(Error::Overflow)
}

pub(crate) fn isqrt(n: u128) -> u128 {
    n.sqrt()
}

/// Sign of `x + y√d` for `d ≥ 0` not a perfect square (or `y = 0`).
pub(crate) fn sign_of(x: i128, y: i128, d: i128) -> Result<Ordering> {
    if y == 0 || d == 0 {
        return Ok(x.cmp(&0));
    }
    if x >= 0 && y > 0 {
        return Ok(Ordering::Greater);
    }
    if x <= 0 && y < 0 {
        return Ok(Ordering::Less);
    }
    let xx = mul(x, x)?;
    let yyd = mul(mul(y, y)?, d)?;
    // Opposite signs: the larger magnitude wins.
    let ord = xx.cmp(&yyd);
    Ok(if x > 0 { ord } else { ord.reverse() })
}

/// `⌊(x + y√d)/c⌋` for `c > 0`.
pub(crate) fn floor_of(x: i128, y: i128, c: i128, d: i128, sqrt_d: f64) -> Result<i128> {
    debug_assert!(c > 0);
    if y == 0 || d == 0 {
        return Ok(Integer::div_floor(&x, &c));
    }
    let est = (x as f64 + y as f64 * sqrt_d) / c as f64;
    if !est.is_finite() || est.abs() > 1e36 {
        return Err(Error::Overflow);
    }
    let mut k = est.floor() as i128;
    // k is within one or two of the answer; settle it exactly.
    while sign_of(sub(x, mul(k, c)?)?, y, d)? == Ordering::Less {
        k -= 1;
    }
    while sign_of(sub(x, mul(k + 1, c)?)?, y, d)? != Ordering::Less {
        k += 1;
    }
    Ok(k)
}

/// `(x + y√d)/c` as `f64` for a value known to be small (here: a fractional
/// part). The irrational part is split as `√D = r + (D − r²)/(√D + r)` with
/// `r = ⌊√D⌋`, so no catastrophic cancellation occurs however large `x`, `y`
/// are.
pub(crate) fn small_value_f64(x: i128, y: i128, c: i128, d: i128) -> Result<f64> {
    if y == 0 || d == 0 {
        return Ok(x as f64 / c as f64);
    }
    let big_d = mul(mul(y, y)?, d)?;
    let r = isqrt(big_d as u128) as i128;
    let rem = (big_d - r * r) as f64;
    let tail = rem / ((big_d as f64).sqrt() + r as f64);
    let s = y.signum();
    let int_part = add(x, s * r)?;
    Ok((int_part as f64 + s as f64 * tail) / c as f64)
}

/// Clamp a computed fractional part into `[0, 1)`.
pub(crate) fn clamp_unit(f: f64) -> f64 {
    if f < 0.0 {
        0.0
    } else if f >= 1.0 {
        1.0 - f64::EPSILON / 2.0
    } else {
        f
    }
}

/// Split `d` as `f²·s` with `s` squarefree.
fn square_part(d: i128) -> (i128, i128) {
    let mut f = 1i128;
    let mut s = d;
    let mut p = 2i128;
    while p * p <= s {
        while s % (p * p) == 0 {
            s /= p * p;
            f *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (f, s)
}

/// An element `(a + b√d)/c` of a real quadratic field, or a rational when
/// `b = 0`.
///
/// Canonical form: `c > 0`, `gcd(a, b, c) = 1`, `d` squarefree and ≥ 2 when
/// `b ≠ 0`, and `d = 0` for rationals. Structural equality is therefore
/// numerical equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quad {
    a: i128,
    b: i128,
    c: i128,
    d: i128,
}

impl Quad {
    pub fn new(a: i128, b: i128, c: i128, d: i128) -> Result<Self> {
        if c == 0 {
            return Err(Error::DivisionByZero);
        }
        if d < 0 {
            return Err(Error::InvalidArgument(format!("negative radicand {d}")));
        }
        let (mut a, mut b, mut c, mut d) = (a, b, c, d);
        if b != 0 && d != 0 {
            let (f, s) = square_part(d);
            if s == 1 {
                a = add(a, mul(b, f)?)?;
                b = 0;
                d = 0;
            } else {
                b = mul(b, f)?;
                d = s;
            }
        }
        if b == 0 || d == 0 {
            b = 0;
            d = 0;
        }
        if c < 0 {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if g > 1 {
            a /= g;
            b /= g;
            c /= g;
        }
        Ok(Self { a, b, c, d })
    }

    pub fn rational(num: i128, den: i128) -> Result<Self> {
        Self::new(num, 0, den, 0)
    }

    pub fn integer(n: i128) -> Self {
        Self { a: n, b: 0, c: 1, d: 0 }
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    /// `√d`; rational when `d` is a perfect square.
    pub fn sqrt(d: i128) -> Result<Self> {
        Self::new(0, 1, 1, d)
    }

    pub fn parts(&self) -> (i128, i128, i128, i128) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    /// Radicand of the field, `None` for rationals.
    pub fn radicand(&self) -> Option<i128> {
        (self.b != 0).then_some(self.d)
    }

    fn field(&self, other: &Self) -> Result<i128> {
        match (self.radicand(), other.radicand()) {
            (Some(x), Some(y)) if x != y => Err(Error::FieldMismatch(x, y)),
            (Some(x), _) | (_, Some(x)) => Ok(x),
            (None, None) => Ok(0),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let d = self.field(o)?;
        let a = add(mul(self.a, o.c)?, mul(o.a, self.c)?)?;
        let b = add(mul(self.b, o.c)?, mul(o.b, self.c)?)?;
        Self::new(a, b, mul(self.c, o.c)?, d)
    }

    pub fn neg(&self) -> Self {
        Self { a: -self.a, b: -self.b, ..*self }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let d = self.field(o)?;
        let a = add(mul(self.a, o.a)?, mul(mul(self.b, o.b)?, d)?)?;
        let b = add(mul(self.a, o.b)?, mul(self.b, o.a)?)?;
        Self::new(a, b, mul(self.c, o.c)?, d)
    }

    pub fn scale(&self, num: i128, den: i128) -> Result<Self> {
        Self::new(mul(self.a, num)?, mul(self.b, num)?, mul(self.c, den)?, self.d)
    }

    pub fn recip(&self) -> Result<Self> {
        // c/(a + b√d) = c(a − b√d)/(a² − b²d)
        let norm = sub(mul(self.a, self.a)?, mul(mul(self.b, self.b)?, self.d)?)?;
        if norm == 0 {
            return Err(Error::DivisionByZero);
        }
        Self::new(mul(self.c, self.a)?, mul(-self.c, self.b)?, norm, self.d)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.mul(&o.recip()?)
    }

    pub fn signum(&self) -> Result<Ordering> {
        sign_of(self.a, self.b, self.d)
    }

    pub fn cmp_exact(&self, o: &Self) -> Result<Ordering> {
        self.sub(o)?.signum()
    }

    pub fn floor(&self) -> Result<i128> {
        floor_of(self.a, self.b, self.c, self.d, (self.d as f64).sqrt())
    }

    pub fn ceil(&self) -> Result<i128> {
        Ok(-self.neg().floor()?)
    }

    /// Exact fractional part `{x} = x − ⌊x⌋ ∈ [0, 1)`.
    pub fn fract(&self) -> Result<Self> {
        self.sub(&Self::integer(self.floor()?))
    }

    pub fn to_f64(&self) -> f64 {
        match self.floor() {
            Ok(k) => {
                let rem = self.a - k * self.c;
                k as f64 + small_value_f64(rem, self.b, self.c, self.d).unwrap_or(0.0)
            }
            Err(_) => (self.a as f64 + self.b as f64 * (self.d as f64).sqrt()) / self.c as f64,
        }
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.b, self.c) {
            (0, 1) => write!(f, "{}", self.a),
            (0, c) => write!(f, "{}/{}", self.a, c),
            (b, c) => {
                let radical = match b {
                    1 => format!("sqrt({})", self.d),
                    -1 => format!("-sqrt({})", self.d),
                    _ => format!("{}*sqrt({})", b, self.d),
                };
                let num = if self.a == 0 {
                    radical
                } else if b > 0 {
                    format!("{}+{}", self.a, radical)
                } else {
                    format!("{}{}", self.a, radical)
                };
                if c == 1 {
                    write!(f, "{num}")
                } else {
                    write!(f, "({num})/{c}")
                }
            }
        }
    }
}
