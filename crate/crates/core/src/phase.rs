//! Phase functions `φ(x) = x^p (1 + Σ a_j x^j)` and the change of variables
//! that straightens them into `y^p`.
//!
//! With `f(x) = x (1 + Σ a_j x^j)^(1/p)` one has `φ(x) = f(x)^p`, and the
//! inverse `Φ = f⁻¹` maps each half-line near the origin to itself. Both are
//! available here as truncated series.

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Minimum slope of `f` required on the certified interval.
pub const MIN_SLOPE: f64 = 0.1;

const SLOPE_GRID: usize = 400;
const RADIUS_BISECTIONS: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseModel {
    p: f64,
    perturbation: Vec<f64>,
    l0: f64,
    r0: f64,
    validity_radius: f64,
}

impl PhaseModel {
    /// Builds the phase `x^p (1 + Σ_{j=1}^{J} a_j x^j)` from `a_1..a_J`.
    ///
    /// `l0 = max |a_j|^(1/j)` and `R0 = 1/(2 l0)` are taken over the supplied
    /// coefficients only; the caller vouches for the tail of the sequence.
    pub fn new(p: f64, perturbation: Vec<f64>) -> Result<Self> {
        if p <= 0.0 || !p.is_finite() {
            return Err(Error::InvalidExponent(p));
        }
        if let Some(j) = perturbation.iter().position(|a| !a.is_finite()) {
            return Err(Error::InvalidPerturbation { index: j + 1 });
        }
        let l0 = perturbation
            .iter()
            .enumerate()
            .map(|(i, a)| a.abs().powf(1.0 / (i + 1) as f64))
            .fold(0.0, f64::max);
        let r0 = if l0 == 0.0 { f64::INFINITY } else { 0.5 / l0 };
        let mut model = Self {
            p,
            perturbation,
            l0,
            r0,
            validity_radius: r0,
        };
        model.validity_radius = model.certify_radius();
        Ok(model)
    }

    /// `a_j = 1/j!` for `j <= truncation`, so that `φ(x) ≈ x^p e^x`.
    pub fn exp_preset(p: f64, truncation: usize) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(truncation);
        let mut factorial = 1.0;
        for j in 1..=truncation {
            factorial *= j as f64;
            coeffs.push(1.0 / factorial);
        }
        Self::new(p, coeffs)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn perturbation(&self) -> &[f64] {
        &self.perturbation
    }

    pub fn l0(&self) -> f64 {
        self.l0
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    /// Half-width of the interval on which `Φ` is certified (`f' >= 0.1`).
    pub fn validity_radius(&self) -> f64 {
        self.validity_radius
    }

    /// The integer `[p]` with `p - 1 < [p] <= p`.
    pub fn gauss_symbol(&self) -> i64 {
        gauss_symbol(self.p)
    }

    /// `Some(m)` when `p` is the positive integer `m`.
    pub fn integer_exponent(&self) -> Option<u32> {
        (self.p.fract() == 0.0 && self.p <= u32::MAX as f64).then_some(self.p as u32)
    }

    fn perturbation_sum(&self, x: f64) -> f64 {
        self.perturbation
            .iter()
            .rev()
            .fold(0.0, |acc, a| (acc + a) * x)
    }

    fn perturbation_slope(&self, x: f64) -> f64 {
        self.perturbation
            .iter()
            .enumerate()
            .rev()
            .fold(0.0, |acc, (i, a)| acc * x + (i + 1) as f64 * a)
    }

    fn check_argument(&self, x: f64) -> Result<()> {
        if x.is_nan() || x.abs() >= self.r0 {
            return Err(Error::OutsideRadius {
                x: x.abs(),
                r0: self.r0,
            });
        }
        if x < 0.0 && self.integer_exponent().is_none() {
            return Err(Error::NegativeArgument { x, p: self.p });
        }
        Ok(())
    }

    /// `φ(x) = x^p (1 + Σ a_j x^j)` for `|x| < R0` (and `x >= 0` unless `p` is an integer).
    pub fn phi_eval(&self, x: f64) -> Result<f64> {
        self.check_argument(x)?;
        let power = match self.integer_exponent() {
            Some(m) if m <= i32::MAX as u32 => x.powi(m as i32),
            _ => x.powf(self.p),
        };
        Ok(power * (1.0 + self.perturbation_sum(x)))
    }

    /// `f(x) = x (1 + Σ a_j x^j)^(1/p)` evaluated in closed form.
    pub fn f_eval(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x.abs() >= self.r0 {
            return Err(Error::OutsideRadius {
                x: x.abs(),
                r0: self.r0,
            });
        }
        Ok(x * (1.0 + self.perturbation_sum(x)).powf(1.0 / self.p))
    }

    /// `f'(x)`, differentiated analytically.
    pub fn f_slope(&self, x: f64) -> f64 {
        let base = 1.0 + self.perturbation_sum(x);
        let root = base.powf(1.0 / self.p);
        root + x * root / (self.p * base) * self.perturbation_slope(x)
    }

    /// Largest radius `r <= R0/2` with `f' >= MIN_SLOPE` on a grid over `[-r, r]`.
    fn certify_radius(&self) -> f64 {
        if self.r0.is_infinite() {
            return f64::INFINITY;
        }
        let passes = |r: f64| {
            (0..=SLOPE_GRID).all(|i| {
                let x = -r + 2.0 * r * i as f64 / SLOPE_GRID as f64;
                self.f_slope(x) >= MIN_SLOPE
            })
        };
        let initial = 0.5 * self.r0;
        if passes(initial) {
            return initial;
        }
        let (mut lo, mut hi) = (0.0, initial);
        for _ in 0..RADIUS_BISECTIONS {
            let mid = 0.5 * (lo + hi);
            if passes(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Maclaurin series of `f` through `x^order`.
    pub fn f_series(&self, order: usize) -> Result<TruncatedSeries> {
        if order == 0 {
            return Ok(TruncatedSeries::zero(0));
        }
        let mut inner = vec![0.0];
        inner.extend_from_slice(&self.perturbation);
        let inner = TruncatedSeries::from_slice(&inner, order - 1);
        Ok(inner.binomial_power(1.0 / self.p)?.shift())
    }

    /// Maclaurin series of `Φ = f⁻¹` through `y^order`.
    pub fn phi_inverse_series(&self, order: usize) -> Result<TruncatedSeries> {
        self.f_series(order.max(1))?.revert()
    }
}

/// The integer `[p]` with `p - 1 < [p] <= p`.
pub fn gauss_symbol(p: f64) -> i64 {
    p.floor() as i64
}
