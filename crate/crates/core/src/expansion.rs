//! Large-λ expansions of `∫ e^{±iλφ(x)} a(x) dx`.
//!
//! Substituting `x = Φ(y)` turns the phase into `y^p` and the amplitude into
//! `g(y) = a(Φ(y)) Φ'(y)`. On the positive half-line each Taylor coefficient
//! `g_k` then contributes `Ĩ_{p,k+1} g_k λ^{-(k+1)/p}` with
//!
//! ```text
//! Ĩ_{p,k+1}^± = p⁻¹ exp(±i π/2 (k+1)/p) Γ((k+1)/p).
//! ```
//!
//! For an integer exponent `m`, the negative half-line reflects through
//! `y = -u`, which flips the sign of the phase when `m` is odd and multiplies
//! `g_k` by `(-1)^k`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::amplitude::Amplitude;
use crate::error::{Error, Result};
use crate::phase::PhaseModel;
use crate::series::TruncatedSeries;
use crate::specfun::gamma;

/// Extra series terms carried beyond the last coefficient that is read.
pub const GUARD_TERMS: usize = 4;

/// The `±` in `e^{±iλφ}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn from_int(s: i64) -> Option<Self> {
        match s {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    /// `sign · (-1)^m`, the sign of the phase after reflecting `x -> -x`.
    pub fn reflected(self, m: u32) -> Self {
        if m.is_multiple_of(2) {
            self
        } else {
            match self {
                Sign::Plus => Sign::Minus,
                Sign::Minus => Sign::Plus,
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Region {
    HalfLinePositive,
    HalfLineNegative,
    FullLine,
}

impl Region {
    pub fn name(self) -> &'static str {
        match self {
            Region::HalfLinePositive => "half-line-positive",
            Region::HalfLineNegative => "half-line-negative",
            Region::FullLine => "full-line",
        }
    }
}

/// Which sign convention to use for the full-line constants `c_{m,k}`.
///
/// `Paper` combines the half-lines as `Ĩ + (-1)^{k+1} Ĩ_reflected`;
/// `Corrected` uses `Ĩ + (-1)^k Ĩ_reflected`, which is what the quadrature
/// oracle agrees with.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Paper,
    #[default]
    Corrected,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionTerm {
    pub k: usize,
    /// Decay exponent `(k+1)/p`.
    pub exponent: f64,
    pub coefficient: Complex64,
}

impl ExpansionTerm {
    pub fn value(&self, lambda: f64) -> Complex64 {
        self.coefficient * lambda.powf(-self.exponent)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticExpansion {
    pub terms: Vec<ExpansionTerm>,
    /// The truncation error is `O(λ^{-remainder_exponent})`.
    pub remainder_exponent: f64,
    pub sign: Sign,
    pub region: Region,
}

impl AsymptoticExpansion {
    pub fn evaluate(&self, lambda: f64) -> Result<Complex64> {
        if lambda <= 0.0 || !lambda.is_finite() {
            return Err(Error::NonPositiveLambda(lambda));
        }
        Ok(self
            .terms
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, t| acc + t.value(lambda)))
    }

    pub fn max_exponent(&self) -> Option<f64> {
        self.terms.iter().map(|t| t.exponent).reduce(f64::max)
    }
}

fn gamma_ratio(k: usize, p: f64) -> Result<f64> {
    gamma((k + 1) as f64 / p)
}

/// `Ĩ_{p,k+1}^± = p⁻¹ exp(±i π/2 (k+1)/p) Γ((k+1)/p)`.
pub fn coeff_i_plus(p: f64, k: usize, sign: Sign) -> Result<Complex64> {
    if p <= 0.0 || !p.is_finite() {
        return Err(Error::InvalidExponent(p));
    }
    let ratio = (k + 1) as f64 / p;
    let angle = sign.value() * FRAC_PI_2 * ratio;
    Ok(Complex64::from_polar(gamma_ratio(k, p)? / p, angle))
}

/// `Ĩ_{m,k+1}^{±±^m} = m⁻¹ exp(±(-1)^m i π/2 (k+1)/m) Γ((k+1)/m)`.
pub fn coeff_i_reflected(m: u32, k: usize, sign: Sign) -> Result<Complex64> {
    if m == 0 {
        return Err(Error::InvalidExponent(0.0));
    }
    coeff_i_plus(m as f64, k, sign.reflected(m))
}

/// Full-line constant `c_{m,k}^±`.
pub fn coeff_c(m: u32, k: usize, sign: Sign, variant: Variant) -> Result<Complex64> {
    let direct = coeff_i_plus(m as f64, k, sign)?;
    let reflected = coeff_i_reflected(m, k, sign)?;
    let odd = match variant {
        Variant::Corrected => k % 2 == 1,
        Variant::Paper => k.is_multiple_of(2),
    };
    Ok(if odd {
        direct - reflected
    } else {
        direct + reflected
    })
}

/// Series of `g(y) = a(Φ(y)) Φ'(y)` through `y^order`.
pub fn g_series(
    phase: &PhaseModel,
    amplitude: &Amplitude,
    order: usize,
) -> Result<TruncatedSeries> {
    check_support(phase, amplitude)?;
    let inverse = phase.phi_inverse_series(order + 1)?;
    let composed = amplitude.taylor_at_zero(order + 1).compose(&inverse)?;
    Ok(composed.multiply(&inverse.derivative()))
}

fn check_support(phase: &PhaseModel, amplitude: &Amplitude) -> Result<()> {
    if amplitude.support_radius() > phase.validity_radius() {
        return Err(Error::SupportViolation {
            support: amplitude.support_radius(),
            validity: phase.validity_radius(),
        });
    }
    Ok(())
}

fn integer_exponent(phase: &PhaseModel) -> Result<u32> {
    phase
        .integer_exponent()
        .ok_or(Error::NonIntegerExponent(phase.p()))
}

/// Number of retained terms and the working series order for a half-line
/// expansion with `n` requested terms.
fn last_term(phase: &PhaseModel, n: usize) -> Result<usize> {
    let p = phase.p();
    if (n as f64) < p + 1.0 {
        return Err(Error::TooFewTerms {
            n,
            p,
            requirement: "N >= p + 1",
        });
    }
    Ok((n as i64 - phase.gauss_symbol() - 1) as usize)
}

fn assemble(
    g: &TruncatedSeries,
    last: usize,
    p: f64,
    mut constant: impl FnMut(usize) -> Result<Complex64>,
) -> Result<Vec<ExpansionTerm>> {
    (0..=last)
        .map(|k| {
            Ok(ExpansionTerm {
                k,
                exponent: (k + 1) as f64 / p,
                coefficient: constant(k)? * g.coeff(k),
            })
        })
        .collect()
}

/// Expansion of `∫_0^∞ e^{±iλφ(x)} a(x) dx`, terms `k = 0..=N-[p]-1`.
pub fn half_line_positive(
    phase: &PhaseModel,
    amplitude: &Amplitude,
    sign: Sign,
    n: usize,
) -> Result<AsymptoticExpansion> {
    let last = last_term(phase, n)?;
    let g = g_series(phase, amplitude, last + GUARD_TERMS)?;
    let p = phase.p();
    let terms = assemble(&g, last, p, |k| coeff_i_plus(p, k, sign))?;
    Ok(AsymptoticExpansion {
        terms,
        remainder_exponent: (n as f64 - p + 1.0) / p,
        sign,
        region: Region::HalfLinePositive,
    })
}

fn integer_setup(phase: &PhaseModel, n: usize) -> Result<(u32, usize)> {
    let m = integer_exponent(phase)?;
    if n <= m as usize {
        return Err(Error::TooFewTerms {
            n,
            p: phase.p(),
            requirement: "N > m",
        });
    }
    Ok((m, n - m as usize - 1))
}

/// Expansion of `∫_{-∞}^0 e^{±iλφ(x)} a(x) dx` for an integer exponent `m`.
pub fn half_line_negative(
    phase: &PhaseModel,
    amplitude: &Amplitude,
    sign: Sign,
    n: usize,
) -> Result<AsymptoticExpansion> {
    let (m, last) = integer_setup(phase, n)?;
    let g = g_series(phase, amplitude, last + GUARD_TERMS)?;
    let terms = assemble(&g, last, m as f64, |k| {
        let parity = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(coeff_i_reflected(m, k, sign)? * parity)
    })?;
    Ok(AsymptoticExpansion {
        terms,
        remainder_exponent: (n as f64 - m as f64 + 1.0) / m as f64,
        sign,
        region: Region::HalfLineNegative,
    })
}

/// Expansion of `∫_{-∞}^{∞} e^{±iλφ(x)} a(x) dx` for an integer exponent `m`.
pub fn full_line(
    phase: &PhaseModel,
    amplitude: &Amplitude,
    sign: Sign,
    n: usize,
    variant: Variant,
) -> Result<AsymptoticExpansion> {
    let (m, last) = integer_setup(phase, n)?;
    let g = g_series(phase, amplitude, last + GUARD_TERMS)?;
    let terms = assemble(&g, last, m as f64, |k| coeff_c(m, k, sign, variant))?;
    Ok(AsymptoticExpansion {
        terms,
        remainder_exponent: (n as f64 - m as f64 + 1.0) / m as f64,
        sign,
        region: Region::FullLine,
    })
}

/// Dispatches on `region`; `variant` only affects the full line.
pub fn expand(
    phase: &PhaseModel,
    amplitude: &Amplitude,
    sign: Sign,
    region: Region,
    n: usize,
    variant: Variant,
) -> Result<AsymptoticExpansion> {
    match region {
        Region::HalfLinePositive => half_line_positive(phase, amplitude, sign, n),
        Region::HalfLineNegative => half_line_negative(phase, amplitude, sign, n),
        Region::FullLine => full_line(phase, amplitude, sign, n, variant),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn monomial(p: f64) -> PhaseModel {
        PhaseModel::new(p, vec![]).unwrap()
    }

    fn amp(germ: &[f64]) -> Amplitude {
        Amplitude::new(germ.to_vec(), 0.1, 0.2).unwrap()
    }

    #[test]
    fn i_plus_examples() {
        assert!(close(
            coeff_i_plus(1.0, 0, Sign::Plus).unwrap(),
            c(0.0, 1.0),
            1e-15
        ));
        let half_sqrt_pi = 0.5 * PI.sqrt();
        let expected = Complex64::from_polar(half_sqrt_pi, FRAC_PI_4);
        assert!(close(
            coeff_i_plus(2.0, 0, Sign::Plus).unwrap(),
            expected,
            1e-15
        ));
        assert!((expected.re - 0.6267).abs() < 1e-4);
        assert!(close(
            coeff_i_plus(2.0, 1, Sign::Minus).unwrap(),
            c(0.0, -0.5),
            1e-15
        ));
    }

    #[test]
    fn i_reflected_examples() {
        assert_eq!(
            coeff_i_reflected(2, 0, Sign::Plus).unwrap(),
            coeff_i_plus(2.0, 0, Sign::Plus).unwrap()
        );
        assert!(close(
            coeff_i_reflected(1, 0, Sign::Plus).unwrap(),
            c(0.0, -1.0),
            1e-15
        ));
        assert!(close(
            coeff_i_reflected(3, 2, Sign::Plus).unwrap(),
            c(0.0, -1.0 / 3.0),
            1e-15
        ));
    }

    #[test]
    fn c_examples() {
        let corrected = coeff_c(2, 0, Sign::Plus, Variant::Corrected).unwrap();
        assert!(close(
            corrected,
            Complex64::from_polar(PI.sqrt(), FRAC_PI_4),
            1e-15
        ));
        assert!((corrected.re - 1.2533).abs() < 1e-4);
        assert!(coeff_c(2, 0, Sign::Plus, Variant::Paper).unwrap().norm() < 1e-16);
        for k in 0..8 {
            for sign in [Sign::Plus, Sign::Minus] {
                let scale = gamma((k + 1) as f64).unwrap();
                assert!(
                    coeff_c(1, k, sign, Variant::Corrected).unwrap().norm() < 1e-15 * scale,
                    "k={k}"
                );
            }
        }
    }

    #[test]
    fn g_series_examples() {
        let g = g_series(&monomial(2.0), &amp(&[1.0]), 5).unwrap();
        assert_eq!(g.coeffs(), &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);

        let ph = PhaseModel::new(1.0, vec![1.0]).unwrap();
        let g = g_series(&ph, &amp(&[1.0]), 3).unwrap();
        for (a, e) in g.coeffs().iter().zip([1.0, -2.0, 6.0, -20.0]) {
            assert!((a - e).abs() < 1e-13);
        }

        let g = g_series(&ph, &amp(&[0.0]), 4).unwrap();
        assert!(g.coeffs().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn g_series_rejects_wide_support() {
        let ph = PhaseModel::new(1.0, vec![1.0]).unwrap();
        let wide = Amplitude::new(vec![1.0], 0.2, 0.3).unwrap();
        assert!(matches!(
            g_series(&ph, &wide, 3),
            Err(Error::SupportViolation { .. })
        ));
    }

    #[test]
    fn half_line_positive_examples() {
        let e = half_line_positive(&monomial(2.0), &amp(&[1.0]), Sign::Plus, 4).unwrap();
        assert_eq!(e.terms.len(), 2);
        let lead = Complex64::from_polar(0.5 * PI.sqrt(), FRAC_PI_4);
        assert!(close(e.terms[0].coefficient, lead, 1e-15));
        assert_eq!(e.terms[0].exponent, 0.5);
        assert_eq!(e.terms[1].coefficient, c(0.0, 0.0));
        assert_eq!(e.remainder_exponent, 1.5);

        let e = half_line_positive(&monomial(2.0), &amp(&[1.0, 1.0, 1.0]), Sign::Plus, 4).unwrap();
        assert!(close(e.terms[0].coefficient, lead, 1e-15));
        assert!(close(e.terms[1].coefficient, c(0.0, 0.5), 1e-15));
        assert_eq!(e.terms[1].exponent, 1.0);

        let ph = PhaseModel::new(1.0, vec![1.0]).unwrap();
        let e = half_line_positive(&ph, &amp(&[1.0]), Sign::Plus, 3).unwrap();
        assert_eq!(e.terms.len(), 2);
        assert!(close(e.terms[0].coefficient, c(0.0, 1.0), 1e-14));
        assert!(close(e.terms[1].coefficient, c(2.0, 0.0), 1e-13));
    }

    #[test]
    fn half_line_positive_fractional_exponent() {
        let ph = monomial(1.5);
        let e = half_line_positive(&ph, &amp(&[1.0, 2.0]), Sign::Plus, 3).unwrap();
        // N - [p] - 1 = 1
        assert_eq!(e.terms.len(), 2);
        assert!((e.remainder_exponent - 2.5 / 1.5).abs() < 1e-15);
        assert!(e.remainder_exponent > e.max_exponent().unwrap());
        assert!(matches!(
            half_line_positive(&ph, &amp(&[1.0]), Sign::Plus, 2),
            Err(Error::TooFewTerms { .. })
        ));
    }

    #[test]
    fn half_line_negative_examples() {
        let e = half_line_negative(&monomial(2.0), &amp(&[1.0]), Sign::Plus, 4).unwrap();
        let lead = Complex64::from_polar(0.5 * PI.sqrt(), FRAC_PI_4);
        assert!(close(e.terms[0].coefficient, lead, 1e-15));

        let e = half_line_negative(&monomial(1.0), &amp(&[1.0]), Sign::Plus, 3).unwrap();
        assert!(close(e.terms[0].coefficient, c(0.0, -1.0), 1e-15));

        let e = half_line_negative(&monomial(3.0), &amp(&[0.0]), Sign::Minus, 6).unwrap();
        assert!(e.terms.iter().all(|t| t.coefficient.norm() == 0.0));
    }

    #[test]
    fn integer_only_regions_reject_fractional_p() {
        let ph = monomial(2.5);
        assert_eq!(
            half_line_negative(&ph, &amp(&[1.0]), Sign::Plus, 5),
            Err(Error::NonIntegerExponent(2.5))
        );
        assert!(full_line(&ph, &amp(&[1.0]), Sign::Plus, 5, Variant::Corrected).is_err());
        assert!(matches!(
            full_line(
                &monomial(2.0),
                &amp(&[1.0]),
                Sign::Plus,
                2,
                Variant::Corrected
            ),
            Err(Error::TooFewTerms { .. })
        ));
    }

    #[test]
    fn full_line_examples() {
        let e = full_line(
            &monomial(2.0),
            &amp(&[1.0]),
            Sign::Plus,
            4,
            Variant::Corrected,
        )
        .unwrap();
        assert!(close(
            e.terms[0].coefficient,
            Complex64::from_polar(PI.sqrt(), FRAC_PI_4),
            1e-15
        ));
        let e = full_line(
            &monomial(1.0),
            &amp(&[1.0, 1.0]),
            Sign::Plus,
            6,
            Variant::Corrected,
        )
        .unwrap();
        assert!(e.terms.iter().all(|t| t.coefficient.norm() < 1e-12));
        let e = full_line(&monomial(2.0), &amp(&[1.0]), Sign::Plus, 4, Variant::Paper).unwrap();
        assert!(e.terms[0].coefficient.norm() < 1e-16);
    }

    #[test]
    fn evaluate_examples() {
        let e = AsymptoticExpansion {
            terms: vec![ExpansionTerm {
                k: 0,
                exponent: 0.5,
                coefficient: c(1.0, 0.0),
            }],
            remainder_exponent: 1.0,
            sign: Sign::Plus,
            region: Region::HalfLinePositive,
        };
        assert!(close(e.evaluate(4.0).unwrap(), c(0.5, 0.0), 1e-16));
        assert!(e.evaluate(0.0).is_err());
        assert!(e.evaluate(-1.0).is_err());
        let empty = AsymptoticExpansion { terms: vec![], ..e };
        assert_eq!(empty.evaluate(3.0).unwrap(), c(0.0, 0.0));

        let e = half_line_positive(&monomial(2.0), &amp(&[1.0]), Sign::Plus, 4).unwrap();
        let expected = Complex64::from_polar(0.5 * PI.sqrt(), FRAC_PI_4) / 10.0;
        assert!(close(e.evaluate(100.0).unwrap(), expected, 1e-16));
    }

    fn sample_phases() -> Vec<PhaseModel> {
        vec![
            monomial(1.0),
            monomial(2.0),
            monomial(3.0),
            PhaseModel::new(2.0, vec![0.5, -0.2]).unwrap(),
            PhaseModel::exp_preset(3.0, 12).unwrap(),
            PhaseModel::new(1.0, vec![0.3]).unwrap(),
        ]
    }

    #[test]
    fn full_line_splits_into_half_lines() {
        let a = amp(&[0.7, -0.4, 1.3, 0.2]);
        for ph in sample_phases() {
            let m = ph.p() as usize;
            for sign in [Sign::Plus, Sign::Minus] {
                let n = m + 6;
                let full = full_line(&ph, &a, sign, n, Variant::Corrected).unwrap();
                let pos = half_line_positive(&ph, &a, sign, n).unwrap();
                let neg = half_line_negative(&ph, &a, sign, n).unwrap();
                assert_eq!(full.terms.len(), pos.terms.len());
                for ((f, p), q) in full.terms.iter().zip(&pos.terms).zip(&neg.terms) {
                    assert!(close(f.coefficient, p.coefficient + q.coefficient, 1e-13));
                }
                for lambda in [1.0, 10.0, 123.4, 1e4] {
                    let lhs = full.evaluate(lambda).unwrap();
                    let rhs = pos.evaluate(lambda).unwrap() + neg.evaluate(lambda).unwrap();
                    assert!(close(lhs, rhs, 1e-13));
                }
            }
        }
    }

    #[test]
    fn scaling_covariance() {
        let ph = PhaseModel::new(2.0, vec![0.5]).unwrap();
        let e = half_line_positive(&ph, &amp(&[1.0, 1.0, 1.0]), Sign::Plus, 6).unwrap();
        for s in [0.5, 2.0, 7.3] {
            for lambda in [10.0, 100.0, 1000.0] {
                let direct = e.evaluate(s * lambda).unwrap();
                let via_terms = e.terms.iter().fold(c(0.0, 0.0), |acc, t| {
                    acc + t.value(lambda) * s.powf(-t.exponent)
                });
                assert!((direct - via_terms).norm() <= 1e-13 * direct.norm());
            }
        }
    }

    #[test]
    fn monomial_reduces_to_taylor_data() {
        let germ = [0.5, -1.0, 0.25, 3.0, -2.0];
        for p in [0.7, 1.0, 2.0, 2.5, 4.0] {
            let e = half_line_positive(&monomial(p), &amp(&germ), Sign::Plus, 9).unwrap();
            for t in &e.terms {
                let expected = coeff_i_plus(p, t.k, Sign::Plus).unwrap()
                    * germ.get(t.k).copied().unwrap_or(0.0);
                assert_eq!(t.coefficient, expected);
            }
        }
    }

    #[test]
    fn minus_sign_is_conjugate() {
        let a = amp(&[1.0, -0.5, 0.25]);
        for ph in sample_phases() {
            let n = ph.p() as usize + 5;
            for region in [
                Region::HalfLinePositive,
                Region::HalfLineNegative,
                Region::FullLine,
            ] {
                let plus = expand(&ph, &a, Sign::Plus, region, n, Variant::Corrected).unwrap();
                let minus = expand(&ph, &a, Sign::Minus, region, n, Variant::Corrected).unwrap();
                for (p, m) in plus.terms.iter().zip(&minus.terms) {
                    assert!(close(p.coefficient.conj(), m.coefficient, 1e-14));
                }
            }
        }
    }
}
