use std::cmp::Ordering;

use super::interval::Interval;
use super::quad::{self, add, mul, Quad};
use super::ExactReal;
use crate::error::{Error, Result};

/// The map `m ↦ slope·m + offset` with certified floors and fractional parts.
///
/// For quadratic operands the value at `m` is `(x0 + x1·m + (y0 + y1·m)√d)/c`
/// over `i128`, so no normalization happens in the hot loop.
#[derive(Debug, Clone)]
pub struct AffineSeq {
    kind: Kind,
}

#[derive(Debug, Clone)]
enum Kind {
    Quad { x0: i128, x1: i128, y0: i128, y1: i128, c: i128, d: i128, sqrt_d: f64 },
    Interval { slope: Interval, offset: Interval },
}

impl AffineSeq {
    pub fn new(slope: &ExactReal, offset: &ExactReal) -> Result<Self> {
        let kind = match (slope, offset) {
            (ExactReal::Quad(s), ExactReal::Quad(o)) => {
                let (a1, b1, c1, d1) = s.parts();
                let (a2, b2, c2, d2) = o.parts();
                let d = match (d1, d2) {
                    (0, d) | (d, 0) => d,
                    (x, y) if x == y => x,
                    (x, y) => return Err(Error::FieldMismatch(x, y)),
                };
                Kind::Quad {
                    x0: mul(a2, c1)?,
                    x1: mul(a1, c2)?,
                    y0: mul(b2, c1)?,
                    y1: mul(b1, c2)?,
                    c: mul(c1, c2)?,
                    d,
                    sqrt_d: (d as f64).sqrt(),
                }
            }
            _ => {
                let bits = slope.precision().or(offset.precision()).unwrap_or(64);
                Kind::Interval { slope: slope.to_interval(bits), offset: offset.to_interval(bits) }
            }
        };
        Ok(Self { kind })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.kind, Kind::Quad { .. })
    }

    pub fn value_at(&self, m: i128) -> Result<ExactReal> {
        match &self.kind {
            Kind::Quad { x0, x1, y0, y1, c, d, .. } => {
                let x = add(*x0, mul(*x1, m)?)?;
                let y = add(*y0, mul(*y1, m)?)?;
                Ok(ExactReal::Quad(Quad::new(x, y, *c, *d)?))
            }
            Kind::Interval { slope, offset } => Ok(ExactReal::Interval(slope.mul_int(m).add(offset))),
        }
    }

    pub fn floor_at(&self, m: i128) -> Result<i128> {
        match &self.kind {
            Kind::Quad { x0, x1, y0, y1, c, d, sqrt_d } => {
                let x = add(*x0, mul(*x1, m)?)?;
                let y = add(*y0, mul(*y1, m)?)?;
                quad::floor_of(x, y, *c, *d, *sqrt_d)
            }
            Kind::Interval { slope, offset } => slope.mul_int(m).add(offset).floor(),
        }
    }

    /// `(⌊v⌋, {v})` for `v = slope·m + offset`.
    pub fn floor_fract_at(&self, m: i128) -> Result<(i128, f64)> {
        match &self.kind {
            Kind::Quad { x0, x1, y0, y1, c, d, sqrt_d } => {
                let x = add(*x0, mul(*x1, m)?)?;
                let y = add(*y0, mul(*y1, m)?)?;
                let k = quad::floor_of(x, y, *c, *d, *sqrt_d)?;
                let rem = quad::sub(x, mul(k, *c)?)?;
                let f = quad::small_value_f64(rem, y, *c, *d)?;
                Ok((k, quad::clamp_unit(f)))
            }
            Kind::Interval { slope, offset } => {
                let v = slope.mul_int(m).add(offset);
                let k = v.floor()?;
                Ok((k, quad::clamp_unit(v.shift(-k).midpoint_f64())))
            }
        }
    }

    pub fn fract_at(&self, m: i128) -> Result<f64> {
        Ok(self.floor_fract_at(m)?.1)
    }

    /// `(⌊v⌋, 0 < {v} ≤ upper)` decided exactly (quadratic) or certified
    /// (interval).
    pub fn fract_in_half_open(&self, m: i128, upper: &ExactReal) -> Result<(i128, bool)> {
        match (&self.kind, upper) {
            (Kind::Quad { x0, x1, y0, y1, c, d, sqrt_d }, ExactReal::Quad(u)) => {
                let x = add(*x0, mul(*x1, m)?)?;
                let y = add(*y0, mul(*y1, m)?)?;
                let k = quad::floor_of(x, y, *c, *d, *sqrt_d)?;
                let rem = quad::sub(x, mul(k, *c)?)?;
                if quad::sign_of(rem, y, *d)? != Ordering::Greater {
                    return Ok((k, false));
                }
                let (ua, ub, uc, ud) = u.parts();
                if ud != 0 && *d != 0 && ud != *d {
                    return Err(Error::FieldMismatch(*d, ud));
                }
                let field = if *d != 0 { *d } else { ud };
                // (rem + y√d)/c ≤ (ua + ub√d)/uc
                let sx = quad::sub(mul(uc, rem)?, mul(*c, ua)?)?;
                let sy = quad::sub(mul(uc, y)?, mul(*c, ub)?)?;
                Ok((k, quad::sign_of(sx, sy, field)? != Ordering::Greater))
            }
            _ => {
                let v = self.value_at(m)?;
                let k = v.floor()?;
                let frac = v.sub(&ExactReal::integer(k))?;
                let positive = frac.signum()? == Ordering::Greater;
                let below = upper.cmp_exact(&frac)? != Ordering::Less;
                Ok((k, positive && below))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_fractional_parts() {
        let s2 = ExactReal::Quad(Quad::sqrt(2).unwrap());
        let seq = AffineSeq::new(&s2, &ExactReal::parse("0.3").unwrap()).unwrap();
        let terms: Vec<_> = (1..=3).map(|n| seq.floor_at(n).unwrap()).collect();
        assert_eq!(terms, vec![1, 3, 4]);
        let f = seq.fract_at(2).unwrap();
        assert!((f - (2.0 * std::f64::consts::SQRT_2 + 0.3 - 3.0)).abs() < 1e-15);
    }

    #[test]
    fn half_open_membership() {
        // {5/√2} = 0.5355 ≤ 1/√2, {4/√2} = 0.8284 > 1/√2
        let g = ExactReal::Quad(Quad::new(0, 1, 2, 2).unwrap());
        let seq = AffineSeq::new(&g, &g).unwrap();
        assert_eq!(seq.fract_in_half_open(4, &g).unwrap(), (3, true));
        assert_eq!(seq.fract_in_half_open(3, &g).unwrap(), (2, false));
        // Rational upper bound and rational slope.
        let half = ExactReal::rational(1, 2).unwrap();
        let seq = AffineSeq::new(&half, &ExactReal::integer(0)).unwrap();
        assert_eq!(seq.fract_in_half_open(2, &half).unwrap(), (1, false));
        assert_eq!(seq.fract_in_half_open(3, &half).unwrap(), (1, true));
    }
}
