//! Compactly supported smooth amplitudes with exact Taylor data at 0.
//!
//! An [`Amplitude`] is a polynomial germ multiplied by a plateau cutoff that
//! is identically 1 on `[-r1, r1]` and vanishes outside `[-r2, r2]`. Because
//! the cutoff is flat near the origin, the Taylor coefficients at 0 are just
//! the germ coefficients.

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// A real amplitude that the quadrature oracle can integrate.
pub trait AmplitudeProfile {
    fn value(&self, x: f64) -> f64;

    /// Closed interval outside of which the amplitude vanishes.
    fn support(&self) -> (f64, f64);

    /// Interior points where the amplitude changes character; the oracle
    /// starts new panels there.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Amplitude {
    germ: Vec<f64>,
    plateau_radius: f64,
    support_radius: f64,
}

impl Amplitude {
    pub fn new(germ: Vec<f64>, plateau_radius: f64, support_radius: f64) -> Result<Self> {
        if germ.is_empty() {
            return Err(Error::InvalidAmplitude(
                "germ needs at least one coefficient".into(),
            ));
        }
        if germ.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidAmplitude(
                "germ coefficients must be finite".into(),
            ));
        }
        if plateau_radius <= 0.0 || !plateau_radius.is_finite() {
            return Err(Error::InvalidAmplitude(format!(
                "plateau radius r1 = {plateau_radius} must be positive"
            )));
        }
        if support_radius <= plateau_radius || !support_radius.is_finite() {
            return Err(Error::InvalidAmplitude(format!(
                "support radius r2 = {support_radius} must exceed r1 = {plateau_radius}"
            )));
        }
        Ok(Self {
            germ,
            plateau_radius,
            support_radius,
        })
    }

    pub fn germ(&self) -> &[f64] {
        &self.germ
    }

    pub fn plateau_radius(&self) -> f64 {
        self.plateau_radius
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    fn germ_eval(&self, x: f64) -> f64 {
        self.germ.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn cutoff(&self, x: f64) -> f64 {
        let r = x.abs();
        if r <= self.plateau_radius {
            return 1.0;
        }
        if r >= self.support_radius {
            return 0.0;
        }
        let q = (self.support_radius - r) / (self.support_radius - self.plateau_radius);
        let rise = smooth_bump(q);
        rise / (rise + smooth_bump(1.0 - q))
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.germ_eval(x) * self.cutoff(x)
    }

    /// Taylor coefficients `a^(k)(0)/k!` through `x^order`, read from the germ.
    pub fn taylor_at_zero(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::from_slice(&self.germ, order)
    }
}

/// `exp(-1/t)` for `t > 0`, zero otherwise.
fn smooth_bump(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

impl AmplitudeProfile for Amplitude {
    fn value(&self, x: f64) -> f64 {
        self.eval(x)
    }

    fn support(&self) -> (f64, f64) {
        (-self.support_radius, self.support_radius)
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![-self.plateau_radius, self.plateau_radius]
    }
}

/// Polynomial on `[lower, upper]` with sharp edges.
///
/// Only meant for checking the oracle against closed-form integrals; it is
/// not smooth, so no asymptotic expansion applies to it.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorAmplitude {
    pub germ: Vec<f64>,
    pub lower: f64,
    pub upper: f64,
}

impl IndicatorAmplitude {
    pub fn unit(lower: f64, upper: f64) -> Self {
        Self {
            germ: vec![1.0],
            lower,
            upper,
        }
    }
}

impl AmplitudeProfile for IndicatorAmplitude {
    fn value(&self, x: f64) -> f64 {
        if x < self.lower || x > self.upper {
            return 0.0;
        }
        self.germ.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    fn support(&self) -> (f64, f64) {
        (self.lower, self.upper)
    }
}
