//! Real special functions: Γ on the positive axis and the principal branch
//! of the Lambert W function.

use std::f64::consts::{E, PI};

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

// Lanczos approximation, g = 7, nine terms.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Largest argument before Γ overflows an `f64`.
pub const GAMMA_MAX_ARG: f64 = 171.6;

/// Branch point of the real Lambert W function, `-1/e`.
pub const LAMBERT_BRANCH_POINT: f64 = -1.0 / E;

const HALLEY_MAX_ITER: usize = 40;

/// Γ(x) for `0 < x <= 171.6`.
///
/// Arguments below 1/2 are lifted with Γ(x) = Γ(x + 1) / x so the Lanczos sum
/// is only evaluated where it is accurate.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain {
            function: "gamma",
            argument: x,
            reason: "argument must be positive",
        });
    }
    if x > GAMMA_MAX_ARG {
        return Err(Error::Domain {
            function: "gamma",
            argument: x,
            reason: "result overflows f64",
        });
    }
    if x < 0.5 {
        return Ok(lanczos(x + 1.0) / x);
    }
    Ok(lanczos(x))
}

fn lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let sum = LANCZOS_COEFFS
        .iter()
        .enumerate()
        .skip(1)
        .fold(LANCZOS_COEFFS[0], |acc, (i, c)| acc + c / (z + i as f64));
    let t = z + LANCZOS_G + 0.5;
    // split the power so that t^(z + 1/2) cannot overflow before e^-t is applied
    let half = t.powf(0.5 * (z + 0.5));
    (2.0 * PI).sqrt() * (half * (-t).exp()) * half * sum
}

/// Principal branch W₀(y), the solution `w >= -1` of `w e^w = y`.
///
/// Halley iteration from a branch-point series (near `-1/e`), a log-based
/// guess elsewhere. Within about 1e-3 of the branch point the iteration is
/// ill-conditioned and accuracy degrades towards 1e-8.
pub fn lambert_w0(y: f64) -> Result<f64> {
    if y.is_nan() || y < LAMBERT_BRANCH_POINT {
        return Err(Error::Domain {
            function: "lambert_w0",
            argument: y,
            reason: "argument below -1/e",
        });
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    if y == f64::INFINITY {
        return Ok(f64::INFINITY);
    }

    let mut w = initial_guess(y);
    if w <= -1.0 {
        return Ok(-1.0);
    }
    for _ in 0..HALLEY_MAX_ITER {
        let ew = w.exp();
        let residual = w * ew - y;
        if residual == 0.0 {
            break;
        }
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * residual / (2.0 * wp1);
        let step = residual / denom;
        let next = (w - step).max(-1.0);
        let converged = (next - w).abs() <= 1e-15 * (1.0 + next.abs());
        w = next;
        if converged {
            break;
        }
    }
    Ok(w)
}

fn initial_guess(y: f64) -> f64 {
    if y < -0.25 {
        // w = -1 + q - q^2/3 + 11 q^3/72 with q = sqrt(2 (e y + 1))
        let q = (2.0 * (E * y + 1.0)).max(0.0).sqrt();
        -1.0 + q * (1.0 + q * (-1.0 / 3.0 + q * 11.0 / 72.0))
    } else if y < 3.0 {
        let l = y.ln_1p();
        l * (1.0 - l.ln_1p() / (2.0 + l))
    } else {
        let l1 = y.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    }
}

/// W₀'(y) = W / (y (1 + W)), with W'(0) = 1. Singular at the branch point.
pub fn lambert_w_derivative(y: f64) -> Result<f64> {
    if y == LAMBERT_BRANCH_POINT {
        return Err(Error::Domain {
            function: "lambert_w_derivative",
            argument: y,
            reason: "derivative is singular at -1/e",
        });
    }
    if y == 0.0 {
        return Ok(1.0);
    }
    let w = lambert_w0(y)?;
    Ok(w / (y * (1.0 + w)))
}

/// Maclaurin coefficients of W₀ through `y^order`: `w_n = (-n)^(n-1) / n!`.
pub fn lambert_w_series(order: usize) -> TruncatedSeries {
    let mut coeffs = vec![0.0; order + 1];
    let mut factorial = 1.0;
    for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
        factorial *= n as f64;
        *c = (-(n as f64)).powi(n as i32 - 1) / factorial;
    }
    TruncatedSeries::from_slice(&coeffs, order)
}
