//! Direct numerical evaluation of `∫ e^{±iλφ(x)} a(x) dx` at finite λ.
//!
//! The support of the amplitude is cut into panels on which `λ|φ|` advances
//! by at most π, so every panel holds at most half an oscillation. Each panel
//! is integrated with two Gauss–Legendre rules of different order; panels
//! where they disagree are bisected. Nothing here touches the series code,
//! which keeps the oracle independent of the expansions it checks.

use num_complex::Complex64;

use crate::amplitude::AmplitudeProfile;
use crate::error::{Error, Result};
use crate::expansion::{Region, Sign};
use crate::phase::PhaseModel;

/// Panels whose two rules still disagree by more than this (relative to the
/// panel's L1 mass) after the deepest subdivision make the oracle fail.
pub const FAILURE_RTOL: f64 = 1e-6;

const PANEL_RTOL: f64 = 1e-13;
const MAX_DEPTH: u32 = 40;
const ROOT_BISECTIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    /// Sum over panels of the difference between the two rules.
    pub error_estimate: f64,
    pub panels: usize,
}

/// Nodes and weights of an `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                let pn = if n == 1 { x } else { p1 };
                let pm1 = if n == 1 { 1.0 } else { p0 };
                dp = nf * (x * pn - pm1) / (x * x - 1.0);
                let dx = pn / dp;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integral of `f` over `[a, b]` together with the rule's L1 mass.
    fn apply(&self, a: f64, b: f64, f: &impl Fn(f64) -> Complex64) -> (Complex64, f64) {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = Complex64::new(0.0, 0.0);
        let mut mass = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let v = f(mid + half * x);
            sum += v * *w;
            mass += w * v.norm();
        }
        (sum * half, mass * half.abs())
    }
}

/// The two panel rules; the higher order supplies the value.
#[derive(Debug, Clone)]
pub struct OracleOptions {
    low: GaussLegendre,
    high: GaussLegendre,
}

impl OracleOptions {
    pub fn with_orders(low: usize, high: usize) -> Self {
        Self {
            low: GaussLegendre::new(low),
            high: GaussLegendre::new(high),
        }
    }
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self::with_orders(16, 24)
    }
}

/// Integrates `e^{sign·iλφ(x)} a(x)` over `region ∩ supp a` with the default rules.
pub fn integrate_oscillatory<A: AmplitudeProfile + ?Sized>(
    phase: &PhaseModel,
    amplitude: &A,
    lambda: f64,
    sign: Sign,
    region: Region,
) -> Result<QuadratureResult> {
    integrate_with(
        phase,
        amplitude,
        lambda,
        sign,
        region,
        &OracleOptions::default(),
    )
}

pub fn integrate_with<A: AmplitudeProfile + ?Sized>(
    phase: &PhaseModel,
    amplitude: &A,
    lambda: f64,
    sign: Sign,
    region: Region,
    options: &OracleOptions,
) -> Result<QuadratureResult> {
    if lambda <= 0.0 || !lambda.is_finite() {
        return Err(Error::NonPositiveLambda(lambda));
    }
    if region != Region::HalfLinePositive && phase.integer_exponent().is_none() {
        return Err(Error::NonIntegerExponent(phase.p()));
    }
    let (lo, hi) = amplitude.support();
    let reach = lo.abs().max(hi.abs());
    if reach.is_nan() || reach >= phase.r0() {
        return Err(Error::OutsideRadius {
            x: reach,
            r0: phase.r0(),
        });
    }

    let mut segments = Vec::with_capacity(2);
    if region != Region::HalfLinePositive && lo < hi.min(0.0) {
        segments.push((lo, hi.min(0.0)));
    }
    if region != Region::HalfLineNegative && lo.max(0.0) < hi {
        segments.push((lo.max(0.0), hi));
    }

    let integrand = |x: f64| -> Complex64 {
        let a = amplitude.value(x);
        if a == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        // x lies inside the checked support, so the phase is defined
        let phi = phase.phi_eval(x).unwrap_or(f64::NAN);
        Complex64::from_polar(a, sign.value() * lambda * phi)
    };

    let mut total = QuadratureResult {
        value: Complex64::new(0.0, 0.0),
        error_estimate: 0.0,
        panels: 0,
    };
    let mut worst = 0.0f64;
    for (a, b) in segments {
        let cuts = panel_breaks(phase, amplitude, lambda, a, b);
        for w in cuts.windows(2) {
            // the phase argument λφ carries a rounding error of about ε·λ|φ|,
            // which bounds the agreement two rules can reach on this panel
            let scale = lambda * phase_abs(phase, w[0]).max(phase_abs(phase, w[1]));
            let rtol = PANEL_RTOL.max(16.0 * f64::EPSILON * (1.0 + scale));
            let panel = adaptive_panel(options, &integrand, w[0], w[1], rtol, 0);
            total.value += panel.value;
            total.error_estimate += panel.error;
            total.panels += panel.count;
            worst = worst.max(panel.worst_unresolved);
        }
    }
    if !total.value.re.is_finite() || !total.value.im.is_finite() {
        return Err(Error::OracleConvergence {
            lambda,
            discrepancy: f64::INFINITY,
        });
    }
    if worst > FAILURE_RTOL {
        return Err(Error::OracleConvergence {
            lambda,
            discrepancy: worst,
        });
    }
    Ok(total)
}

/// Sorted panel boundaries on `[a, b]`: the ends, the amplitude's own
/// breakpoints, and every point where `λ|φ|` crosses a multiple of π.
fn panel_breaks<A: AmplitudeProfile + ?Sized>(
    phase: &PhaseModel,
    amplitude: &A,
    lambda: f64,
    a: f64,
    b: f64,
) -> Vec<f64> {
    let level = |x: f64| lambda * phase_abs(phase, x) / std::f64::consts::PI;
    let mut cuts = vec![a, b];
    cuts.extend(
        amplitude
            .breakpoints()
            .into_iter()
            .filter(|&x| x > a && x < b),
    );

    let (la, lb) = (level(a), level(b));
    let (lmin, lmax) = (la.min(lb), la.max(lb));
    let first = lmin.floor() as u64 + 1;
    let last = lmax.ceil() as u64;
    // |φ| is monotone on each half-line inside the certified radius, so the
    // crossings come out ordered and each search can start from the last one
    let increasing = la < lb;
    let (mut left, mut right) = (a, b);
    for j in first..last {
        let target = j as f64;
        let (mut x0, mut x1) = (left, right);
        for _ in 0..ROOT_BISECTIONS {
            let mid = 0.5 * (x0 + x1);
            if mid <= x0 || mid >= x1 {
                break;
            }
            if (level(mid) < target) == increasing {
                x0 = mid;
            } else {
                x1 = mid;
            }
        }
        let root = 0.5 * (x0 + x1);
        if increasing {
            left = root;
        } else {
            right = root;
        }
        cuts.push(root);
    }
    cuts.sort_by(|x, y| x.total_cmp(y));
    cuts.dedup_by(|x, y| (*x - *y).abs() <= 4.0 * f64::EPSILON * y.abs().max(1e-300));
    cuts
}

fn phase_abs(phase: &PhaseModel, x: f64) -> f64 {
    phase.phi_eval(x).map(f64::abs).unwrap_or(0.0)
}

struct Panel {
    value: Complex64,
    error: f64,
    count: usize,
    worst_unresolved: f64,
}

fn adaptive_panel(
    options: &OracleOptions,
    f: &impl Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    rtol: f64,
    depth: u32,
) -> Panel {
    let (low, _) = options.low.apply(a, b, f);
    let (high, mass) = options.high.apply(a, b, f);
    let diff = (high - low).norm();
    let tol = rtol * mass + 1e-300;
    if diff <= tol || depth >= MAX_DEPTH {
        let worst_unresolved = if diff <= tol || mass == 0.0 {
            0.0
        } else {
            diff / mass
        };
        return Panel {
            value: high,
            error: diff,
            count: 1,
            worst_unresolved,
        };
    }
    let mid = 0.5 * (a + b);
    let left = adaptive_panel(options, f, a, mid, rtol, depth + 1);
    let right = adaptive_panel(options, f, mid, b, rtol, depth + 1);
    Panel {
        value: left.value + right.value,
        error: left.error + right.error,
        count: left.count + right.count,
        worst_unresolved: left.worst_unresolved.max(right.worst_unresolved),
    }
}

/// Least-squares slope of `ln residual` against `ln λ`.
pub fn decay_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 3 {
        return Err(Error::SlopeInput("fewer than 3 points"));
    }
    if points
        .iter()
        .any(|&(l, r)| l <= 0.0 || r <= 0.0 || !l.is_finite() || !r.is_finite())
    {
        return Err(Error::SlopeInput(
            "lambda and residual must be positive and finite",
        ));
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::SlopeInput("all lambda values coincide"));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(sxy / sxx)
}
