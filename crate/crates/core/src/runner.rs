//! Expansion-versus-oracle runs over a λ grid, CSV output and the decay verdict.

use std::io::{self, Write};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::Result;
use crate::expansion::{expand, AsymptoticExpansion, Variant};
use crate::oracle::{decay_slope, integrate_oscillatory, QuadratureResult};

pub const CSV_HEADER: &str =
    "lambda,expansion_re,expansion_im,oracle_re,oracle_im,abs_residual,error_estimate";

/// Allowed excess of the fitted slope over `-remainder_exponent`.
pub const SLOPE_MARGIN: f64 = 0.2;

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub lambda: f64,
    pub expansion: Complex64,
    pub oracle: QuadratureResult,
}

impl Row {
    pub fn residual(&self) -> f64 {
        (self.expansion - self.oracle.value).norm()
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub expansion: AsymptoticExpansion,
    pub rows: Vec<Row>,
    /// `None` when the residuals cannot be fitted (e.g. an exact zero).
    pub slope: Option<f64>,
}

impl RunReport {
    pub fn expected_slope(&self) -> f64 {
        -self.expansion.remainder_exponent
    }

    pub fn passed(&self) -> bool {
        self.slope
            .is_some_and(|s| s <= self.expected_slope() + SLOPE_MARGIN)
    }

    pub fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for row in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                fmt_float(row.lambda),
                fmt_float(row.expansion.re),
                fmt_float(row.expansion.im),
                fmt_float(row.oracle.value.re),
                fmt_float(row.oracle.value.im),
                fmt_float(row.residual()),
                fmt_float(row.oracle.error_estimate),
            )?;
        }
        let slope = self.slope.map_or_else(|| "nan".to_string(), fmt_float);
        writeln!(
            out,
            "# slope={} expected={} verdict={}",
            slope,
            fmt_float(self.expected_slope()),
            if self.passed() { "pass" } else { "fail" }
        )
    }
}

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn coefficient_table(expansion: &AsymptoticExpansion) -> String {
    let mut s = String::from("k,exponent,coefficient_re,coefficient_im\n");
    for t in &expansion.terms {
        s.push_str(&format!(
            "{},{},{},{}\n",
            t.k,
            fmt_float(t.exponent),
            fmt_float(t.coefficient.re),
            fmt_float(t.coefficient.im)
        ));
    }
    s
}

pub fn build_expansion(config: &RunConfig, variant: Variant) -> Result<AsymptoticExpansion> {
    expand(
        &config.phase,
        &config.amplitude,
        config.sign,
        config.region,
        config.n,
        variant,
    )
}

/// Evaluates expansion and oracle on every grid point; rows keep grid order.
pub fn run(config: &RunConfig, variant: Variant) -> Result<RunReport> {
    let expansion = build_expansion(config, variant)?;
    let rows = config
        .lambdas()
        .into_par_iter()
        .map(|lambda| {
            let oracle = integrate_oscillatory(
                &config.phase,
                &config.amplitude,
                lambda,
                config.sign,
                config.region,
            )?;
            Ok(Row {
                lambda,
                expansion: expansion.evaluate(lambda)?,
                oracle,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<_> = rows.iter().map(|r| (r.lambda, r.residual())).collect();
    let slope = decay_slope(&points).ok();
    Ok(RunReport {
        expansion,
        rows,
        slope,
    })
}
