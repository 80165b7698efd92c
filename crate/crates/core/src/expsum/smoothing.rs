use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::num::{unit_phase, CompensatedSum, Float};

/// The period-one indicator of `(0, γ]`.
pub fn psi_indicator<F: Float>(x: F, gamma: F) -> u8 {
    let r = x - x.floor();
    u8::from(r > F::zero() && r <= gamma)
}

/// `min(1/(πk), 1/(2π²k²Δ))`.
pub fn coefficient_bound(k: u64, delta: f64) -> f64 {
    let k = k as f64;
    let pi = std::f64::consts::PI;
    (1.0 / (pi * k)).min(1.0 / (2.0 * pi * pi * k * k * delta))
}

/// `1/(π²KΔ)`, bounding `Σ_{k>K} (|g_k| + |h_k|)`.
pub fn tail_bound(k_max: usize, delta: f64) -> f64 {
    let pi = std::f64::consts::PI;
    1.0 / (pi * pi * k_max as f64 * delta)
}

/// `K = ⌈M^ε⌉` with `ε = 1/(16τ)`.
pub fn default_truncation(m: u64, tau: f64) -> usize {
    let eps = 1.0 / (16.0 * tau.max(1.0));
    ((m.max(1) as f64).powf(eps).ceil() as usize).max(1)
}

/// Smoothed indicator of `(0, γ]`: the circular convolution with the box
/// kernel of half-width `Δ`, truncated to `|k| ≤ K`.
///
/// `ψ_Δ(x) = γ + Σ_{k=1}^{K} (g_k e(kx) + h_k e(−kx))` with
///
/// ```text
/// g_k = (1 − e(−kγ))/(2πik) · sin(2πkΔ)/(2πkΔ),    h_k = conj(g_k).
/// ```
///
/// The untruncated function takes values in `[0, 1]` and equals the
/// indicator at distance at least `Δ` from `0` and `γ`.
#[derive(Debug, Clone, Serialize)]
pub struct PsiDelta<F> {
    gamma: F,
    delta: F,
    g: Vec<Complex<F>>,
}

impl<F: Float> PsiDelta<F> {
    pub fn new(gamma: F, delta: F, k_max: usize) -> Result<Self> {
        let (gf, df) = (gamma.to_f64_lossy(), delta.to_f64_lossy());
        if !(gf > 0.0 && gf < 1.0) {
            return Err(Error::GammaOutOfRange(gf));
        }
        let eighth = F::of(0.125);
        let half_gap = gamma.min(F::one() - gamma) / F::of(2.0);
        if !(delta > F::zero() && delta < eighth && delta <= half_gap) {
            return Err(Error::DeltaOutOfRange { gamma: gf, delta: df });
        }
        if k_max == 0 {
            return Err(Error::InvalidArgument("truncation K must be at least 1".into()));
        }
        let two_pi = F::TAU();
        let g = (1..=k_max as u64)
            .map(|k| {
                let kf = F::of_u64(k);
                let s = (F::PI() * kf * gamma).sin();
                let indicator = Complex::new(
                    (two_pi * kf * gamma).sin() / (two_pi * kf),
                    -(F::of(2.0) * s * s) / (two_pi * kf),
                );
                let arg = two_pi * kf * delta;
                indicator * (arg.sin() / arg)
            })
            .collect();
        Ok(Self { gamma, delta, g })
    }

    pub fn gamma(&self) -> F {
        self.gamma
    }

    pub fn delta(&self) -> F {
        self.delta
    }

    pub fn truncation(&self) -> usize {
        self.g.len()
    }

    /// `g_k` for `1 ≤ k ≤ K`.
    pub fn g(&self, k: usize) -> Complex<F> {
        self.g[k - 1]
    }

    pub fn h(&self, k: usize) -> Complex<F> {
        self.g[k - 1].conj()
    }

    pub fn coefficients(&self) -> &[Complex<F>] {
        &self.g
    }

    pub fn tail_bound(&self) -> f64 {
        tail_bound(self.truncation(), self.delta.to_f64_lossy())
    }

    /// Truncated series at `x`.
    pub fn eval(&self, x: F) -> F {
        let r = x - x.floor();
        let mut sum = CompensatedSum::new();
        sum.add(self.gamma);
        for (i, g) in self.g.iter().enumerate() {
            let phase = F::of_u64(i as u64 + 1) * r;
            // g e(kx) + conj(g e(kx)) = 2 Re(g e(kx))
            let re = (*g * unit_phase(phase - phase.floor())).re;
            sum.add(re + re);
        }
        sum.total()
    }

    /// Distance from `x` (mod 1) to the nearer jump point `0` or `γ`.
    pub fn jump_distance(&self, x: F) -> F {
        let r = x - x.floor();
        let to_zero = r.min(F::one() - r);
        let to_gamma = (r - self.gamma).abs();
        to_zero.min(to_gamma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicator_conventions() {
        assert_eq!(psi_indicator(0.5, 0.5), 1);
        assert_eq!(psi_indicator(0.0, 0.5), 0);
        assert_eq!(psi_indicator(1.0, 0.5), 0);
        assert_eq!(psi_indicator(0.5 + 1e-9, 0.5), 0);
        assert_eq!(psi_indicator(-0.75, 0.5), 1);
    }

    #[test]
    fn construction_constraints() {
        assert!(PsiDelta::new(0.5, 0.05, 10).is_ok());
        assert!(matches!(PsiDelta::new(0.5, 0.13, 10), Err(Error::DeltaOutOfRange { .. })));
        assert!(matches!(PsiDelta::new(0.1, 0.06, 10), Err(Error::DeltaOutOfRange { .. })));
        assert!(matches!(PsiDelta::new(0.5, 0.0, 10), Err(Error::DeltaOutOfRange { .. })));
        assert!(matches!(PsiDelta::new(1.2, 0.05, 10), Err(Error::GammaOutOfRange(_))));
        assert!(PsiDelta::new(0.5, 0.05, 0).is_err());
    }

    #[test]
    fn coefficient_bounds() {
        let p = PsiDelta::new(0.5f64, 0.05, 2000).unwrap();
        assert!(p.g(1).norm() <= 1.0 / std::f64::consts::PI);
        for k in 1..=2000 {
            assert!(p.g(k).norm() <= coefficient_bound(k as u64, 0.05) * (1.0 + 1e-12));
            assert_eq!(p.g(k).norm(), p.h(k).norm());
        }
    }

    #[test]
    fn pointwise_away_from_jumps() {
        let p = PsiDelta::new(0.5f64, 0.05, 10_000).unwrap();
        assert!((p.eval(0.25) - 1.0).abs() <= 1e-3);
        assert!((p.eval(0.75)).abs() <= p.tail_bound());
        assert!((p.eval(0.25) - 1.0).abs() <= p.tail_bound());
    }

    #[test]
    fn truncation_default() {
        assert_eq!(default_truncation(10_000, 1.0), 2);
        assert_eq!(default_truncation(1, 1.0), 1);
        assert_eq!(default_truncation(1 << 32, 1.0), 4);
    }
}
