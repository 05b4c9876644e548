//! Truncated real power series in one variable.
//!
//! A [`TruncatedSeries`] of order `M` stores the Maclaurin coefficients
//! `c_0..=c_M`; everything beyond `x^M` is unknown. Binary operations
//! truncate to the smaller of the two orders, so the order of a result is
//! always explicit and never overstates what was actually computed.

use crate::error::{Error, Result};

/// Maclaurin coefficients `c_0..=c_M` of a real series, truncated after `x^M`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<f64>,
}

impl TruncatedSeries {
    /// Builds a series whose order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(Self { coeffs })
    }

    /// Builds a series of the given order, zero-padding or truncating `coeffs`.
    pub fn from_slice(coeffs: &[f64], order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        for (dst, src) in c.iter_mut().zip(coeffs) {
            *dst = *src;
        }
        Self { coeffs: c }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![0.0; order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = 1.0;
        s
    }

    /// The series `x`. At order 0 this degenerates to the zero series.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = 1.0;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Coefficient of `x^n`, zero beyond the stored range.
    pub fn coeff(&self, n: usize) -> f64 {
        self.coeffs.get(n).copied().unwrap_or(0.0)
    }

    /// Same coefficients at a different order (truncating or zero-padding).
    pub fn with_order(&self, order: usize) -> Self {
        Self::from_slice(&self.coeffs, order)
    }

    /// `alpha * a + beta * b`, truncated to the smaller order.
    pub fn linear_combine(a: &Self, alpha: f64, b: &Self, beta: f64) -> Self {
        let order = a.order().min(b.order());
        let coeffs = (0..=order)
            .map(|n| alpha * a.coeffs[n] + beta * b.coeffs[n])
            .collect();
        Self { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::linear_combine(self, 1.0, other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::linear_combine(self, 1.0, other, -1.0)
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn multiply(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![0.0; order + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }

    /// Multiplicative inverse of a series with non-zero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let d0 = self.coeffs[0];
        if d0 == 0.0 {
            return Err(Error::NotInvertible(
                "reciprocal of a series with zero constant term",
            ));
        }
        let order = self.order();
        let mut r = vec![0.0; order + 1];
        r[0] = 1.0 / d0;
        for n in 1..=order {
            let acc: f64 = (1..=n).map(|k| self.coeffs[k] * r[n - k]).sum();
            r[n] = -acc / d0;
        }
        Ok(Self { coeffs: r })
    }

    /// `self(inner(x))` by Horner's scheme on truncated series.
    ///
    /// The inner series must vanish at the origin. The result has order
    /// `min(self.order(), inner.order())`; coefficient `n` of the composite
    /// only depends on coefficients `0..=n` of both operands.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.coeffs[0] != 0.0 {
            return Err(Error::NonZeroConstantTerm(inner.coeffs[0]));
        }
        let order = self.order().min(inner.order());
        let inner = inner.with_order(order);
        let mut acc = Self::zero(order);
        for &c in self.coeffs[..=order].iter().rev() {
            acc = acc.multiply(&inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// `(1 + self)^alpha` through the generalized binomial series.
    pub fn binomial_power(&self, alpha: f64) -> Result<Self> {
        let order = self.order();
        let mut binom = vec![0.0; order + 1];
        binom[0] = 1.0;
        for n in 1..=order {
            binom[n] = binom[n - 1] * (alpha - (n as f64 - 1.0)) / n as f64;
        }
        Self { coeffs: binom }.compose(self)
    }

    /// Formal derivative. Order drops by one (a constant stays at order 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| n as f64 * c)
            .collect();
        Self { coeffs }
    }

    /// Multiplies by `x`, raising the order by one.
    pub fn shift(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(0.0);
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Evaluates the truncated polynomial at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// `k`-th derivative at the origin, `k! * c_k`.
    pub fn derivative_at_zero(&self, k: usize) -> Result<f64> {
        if k > self.order() {
            return Err(Error::OrderExceeded {
                k,
                order: self.order(),
            });
        }
        let factorial: f64 = (1..=k).map(|i| i as f64).product();
        Ok(factorial * self.coeffs[k])
    }

    fn abs(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.abs()).collect(),
        }
    }

    /// Compositional inverse: `G` with `self(G(y)) = y` through the order.
    ///
    /// Newton iteration on series, `G <- G - (F(G) - y) / F'(G)`, doubling the
    /// number of correct coefficients each pass. The result is checked by
    /// composing back; the residual of each coefficient must stay within
    /// `1e-8` of the magnitude bound `|F|(|G|)` at that degree.
    pub fn revert(&self) -> Result<Self> {
        if self.coeffs[0] != 0.0 {
            return Err(Error::NotInvertible("constant term is not zero"));
        }
        let order = self.order();
        if order == 0 || self.coeffs[1] == 0.0 {
            return Err(Error::NotInvertible("linear coefficient is zero"));
        }

        let fprime = self.derivative();
        let mut g = Self::identity(1).scale(1.0 / self.coeffs[1]);
        let mut correct = 1;
        while correct < order {
            correct = (2 * correct + 1).min(order);
            let g_ext = g.with_order(correct);
            let residual = self
                .with_order(correct)
                .compose(&g_ext)?
                .sub(&Self::identity(correct));
            let slope = fprime.with_order(correct).compose(&g_ext)?;
            let step = residual.multiply(&slope.reciprocal()?);
            g = g_ext.sub(&step);
        }
        let g = g.with_order(order);

        let round_trip = self.compose(&g)?.sub(&Self::identity(order));
        let bound = self.abs().compose(&g.abs())?;
        for n in 0..=order {
            let residual = round_trip.coeffs[n].abs();
            if residual.is_nan() || residual > 1e-8 * (1.0 + bound.coeffs[n]) {
                return Err(Error::ReversionCheck {
                    degree: n,
                    residual,
                });
            }
        }
        Ok(g)
    }

    /// Largest coefficientwise distance to another series over the common order.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let order = self.order().min(other.order());
        (0..=order)
            .map(|n| (self.coeffs[n] - other.coeffs[n]).abs())
            .fold(0.0, f64::max)
    }

    /// Per-degree magnitude bound for `self(inner)`: `|self|(|inner|)`.
    ///
    /// Floating point rounding in a composition is proportional to this
    /// bound rather than to the (possibly cancelled) result.
    pub fn composition_magnitude(&self, inner: &Self) -> Result<Self> {
        self.abs().compose(&inner.abs())
    }
}
