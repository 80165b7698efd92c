//! Scalar abstraction shared by every floating-point kernel.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float as NumFloat, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar used for weighted sums, Fourier coefficients and
/// discrepancies. Implemented for `f32` and `f64`.
pub trait Float:
    NumFloat + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from `f64`; every kernel computes phases in `f64` first.
    fn of(x: f64) -> Self {
        Self::from_f64(x).unwrap_or_else(Self::nan)
    }

    fn of_u64(n: u64) -> Self {
        Self::from_u64(n).unwrap_or_else(Self::nan)
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Float for f32 {}
impl Float for f64 {}

/// `e(x) = exp(2πi x)` for a phase already reduced modulo one.
pub fn unit_phase<F: Float>(x: F) -> Complex<F> {
    let angle = F::TAU() * x;
    Complex::new(angle.cos(), angle.sin())
}

/// Neumaier compensated summation. Terms are consumed in the order given, so
/// a fixed summation order yields bit-reproducible totals.
#[derive(Debug, Clone, Copy)]
pub struct CompensatedSum<F> {
    sum: F,
    carry: F,
}

impl<F: Float> Default for CompensatedSum<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Float> CompensatedSum<F> {
    pub fn new() -> Self {
        Self { sum: F::zero(), carry: F::zero() }
    }

    pub fn add(&mut self, x: F) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry = self.carry + ((self.sum - t) + x);
        } else {
            self.carry = self.carry + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn total(&self) -> F {
        self.sum + self.carry
    }
}

impl<F: Float> Extend<F> for CompensatedSum<F> {
    fn extend<I: IntoIterator<Item = F>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

/// Compensated accumulator for complex sums (real and imaginary parts tracked
/// separately).
#[derive(Debug, Clone, Copy)]
pub struct ComplexSum<F> {
    re: CompensatedSum<F>,
    im: CompensatedSum<F>,
}

impl<F: Float> Default for ComplexSum<F> {
    fn default() -> Self {
        Self { re: CompensatedSum::new(), im: CompensatedSum::new() }
    }
}

impl<F: Float> ComplexSum<F> {
    pub fn add(&mut self, z: Complex<F>) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn total(&self) -> Complex<F> {
        Complex::new(self.re.total(), self.im.total())
    }
}

/// Least-squares line `y = slope·x + intercept` with the RMS residual.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub residual: f64,
}

/// Ordinary least squares over `(x, y)` pairs. `None` for fewer than two
/// points or a degenerate abscissa.
pub fn fit_line(points: &[(f64, f64)]) -> Option<LineFit> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx <= 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = points
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).powi(2))
        .sum();
    Some(LineFit { slope, intercept, residual: (ss / n).sqrt() })
}
