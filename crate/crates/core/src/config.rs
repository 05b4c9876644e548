//! JSON run configuration.
//!
//! ```json
//! {
//!   "phase": { "p": 2.0, "perturbation": [0.5] },
//!   "amplitude": { "germ": [1.0, 1.0, 1.0], "r1": 0.3, "r2": 0.6 },
//!   "sign": 1,
//!   "region": "half-line-positive",
//!   "N": 4,
//!   "variant": "corrected",
//!   "lambda_grid": { "start": 100.0, "factor": 2.0, "count": 5 },
//!   "output_path": "fresnel.csv"
//! }
//! ```
//!
//! Instead of `perturbation`, a phase may name `"preset": "exp"` together with
//! `"truncation": J` for `a_j = 1/j!, j <= J`. Every precondition of the
//! numerical layer is checked here, and errors name the offending field and,
//! where it can be found, its line in the document.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::amplitude::Amplitude;
use crate::error::Error;
use crate::expansion::{expand, Region, Sign, Variant};
use crate::phase::PhaseModel;

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub field: String,
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "config line {line}: `{}`: {}", self.field, self.message),
            None => write!(f, "config: `{}`: {}", self.field, self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    phase: RawPhase,
    amplitude: RawAmplitude,
    sign: i64,
    region: Region,
    #[serde(rename = "N", alias = "n")]
    n: usize,
    #[serde(default)]
    variant: Variant,
    lambda_grid: LambdaGrid,
    #[serde(default)]
    output_path: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPhase {
    p: f64,
    #[serde(default)]
    perturbation: Option<Vec<f64>>,
    #[serde(default)]
    preset: Option<String>,
    #[serde(default)]
    truncation: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAmplitude {
    germ: Vec<f64>,
    r1: f64,
    r2: f64,
}

/// Geometric grid `start, start·factor, …` with `count` points.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaGrid {
    pub start: f64,
    pub factor: f64,
    pub count: usize,
}

impl LambdaGrid {
    pub fn points(&self) -> Vec<f64> {
        (0..self.count)
            .map(|i| self.start * self.factor.powi(i as i32))
            .collect()
    }
}

/// A validated run description.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub phase: PhaseModel,
    pub amplitude: Amplitude,
    pub sign: Sign,
    pub region: Region,
    pub n: usize,
    pub variant: Variant,
    pub lambda_grid: LambdaGrid,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError {
            field: "<file>".into(),
            line: None,
            message: format!("cannot read {}: {e}", path.display()),
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let raw: RawConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let field = e.path().to_string();
            let inner = e.into_inner();
            ConfigError {
                field,
                line: Some(inner.line()),
                message: inner.to_string(),
            }
        })?;
        Validator { text }.validate(raw)
    }

    pub fn lambdas(&self) -> Vec<f64> {
        self.lambda_grid.points()
    }
}

struct Validator<'a> {
    text: &'a str,
}

impl Validator<'_> {
    /// Line of `"key"` in the document, searching after `"parent"` if given.
    fn line_of(&self, parent: Option<&str>, key: &str) -> Option<usize> {
        let start = parent
            .and_then(|p| self.text.find(&format!("\"{p}\"")))
            .unwrap_or(0);
        let offset = self.text[start..].find(&format!("\"{key}\""))? + start;
        Some(self.text[..offset].matches('\n').count() + 1)
    }

    fn error(&self, field: &str, message: impl Into<String>) -> ConfigError {
        let mut parts = field.rsplitn(2, '.');
        let key = parts.next().unwrap_or(field);
        let parent = parts.next();
        let line = self
            .line_of(parent, key)
            .or_else(|| parent.and_then(|p| self.line_of(None, p)));
        ConfigError {
            field: field.to_string(),
            line,
            message: message.into(),
        }
    }

    fn validate(&self, raw: RawConfig) -> Result<RunConfig, ConfigError> {
        let phase = self.phase(&raw.phase)?;
        let amplitude = self.amplitude(&raw.amplitude)?;
        let sign = Sign::from_int(raw.sign)
            .ok_or_else(|| self.error("sign", format!("must be 1 or -1, got {}", raw.sign)))?;

        if raw.region != Region::HalfLinePositive && phase.integer_exponent().is_none() {
            return Err(self.error(
                "region",
                format!(
                    "{} needs an integer exponent, got p = {}",
                    raw.region.name(),
                    phase.p()
                ),
            ));
        }
        let n = raw.n;
        match (raw.region, phase.integer_exponent()) {
            (Region::HalfLinePositive, _) if (n as f64) < phase.p() + 1.0 => {
                return Err(self.error(
                    "N",
                    format!("must satisfy N >= p + 1 = {}", phase.p() + 1.0),
                ));
            }
            (Region::HalfLineNegative | Region::FullLine, Some(m)) if n <= m as usize => {
                return Err(self.error("N", format!("must satisfy N > m = {m}")));
            }
            _ => {}
        }
        if amplitude.support_radius() > phase.validity_radius() {
            return Err(self.error(
                "amplitude.r2",
                format!(
                    "support radius {} exceeds the certified validity radius {} of the phase",
                    amplitude.support_radius(),
                    phase.validity_radius()
                ),
            ));
        }

        let grid = raw.lambda_grid;
        if grid.start <= 0.0 || !grid.start.is_finite() {
            return Err(self.error("lambda_grid.start", "must be positive"));
        }
        if grid.factor <= 1.0 || !grid.factor.is_finite() {
            return Err(self.error("lambda_grid.factor", "must exceed 1 so the grid increases"));
        }
        if grid.count < 3 {
            return Err(self.error(
                "lambda_grid.count",
                "needs at least 3 points for a slope fit",
            ));
        }
        if !grid.points().iter().all(|l| l.is_finite()) {
            return Err(self.error("lambda_grid.count", "grid overflows"));
        }

        expand(&phase, &amplitude, sign, raw.region, n, raw.variant)
            .map_err(|e| self.error("phase", e.to_string()))?;

        Ok(RunConfig {
            phase,
            amplitude,
            sign,
            region: raw.region,
            n,
            variant: raw.variant,
            lambda_grid: grid,
            output_path: raw.output_path,
        })
    }

    fn phase(&self, raw: &RawPhase) -> Result<PhaseModel, ConfigError> {
        let built = match (&raw.preset, &raw.perturbation) {
            (Some(_), Some(_)) => {
                return Err(self.error(
                    "phase.preset",
                    "give either `preset` or `perturbation`, not both",
                ))
            }
            (Some(name), None) if name == "exp" => {
                let j = raw.truncation.ok_or_else(|| {
                    self.error("phase.truncation", "preset `exp` needs a truncation J >= 1")
                })?;
                if j == 0 {
                    return Err(self.error("phase.truncation", "must be at least 1"));
                }
                PhaseModel::exp_preset(raw.p, j)
            }
            (Some(name), None) => {
                return Err(self.error(
                    "phase.preset",
                    format!("unknown preset `{name}` (known: exp)"),
                ))
            }
            (None, perturbation) => {
                if raw.truncation.is_some() {
                    return Err(self.error("phase.truncation", "only meaningful with `preset`"));
                }
                PhaseModel::new(raw.p, perturbation.clone().unwrap_or_default())
            }
        };
        built.map_err(|e| match e {
            Error::InvalidExponent(_) => self.error("phase.p", e.to_string()),
            _ => self.error("phase.perturbation", e.to_string()),
        })
    }

    fn amplitude(&self, raw: &RawAmplitude) -> Result<Amplitude, ConfigError> {
        Amplitude::new(raw.germ.clone(), raw.r1, raw.r2).map_err(|e| {
            let field = if raw.germ.is_empty() || raw.germ.iter().any(|c| !c.is_finite()) {
                "amplitude.germ"
            } else if raw.r1 <= 0.0 || !raw.r1.is_finite() {
                "amplitude.r1"
            } else {
                "amplitude.r2"
            };
            self.error(field, e.to_string())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FRESNEL: &str = r#"{
  "phase": { "p": 2.0, "perturbation": [] },
  "amplitude": { "germ": [1.0, 1.0, 1.0], "r1": 0.3, "r2": 0.6 },
  "sign": 1,
  "region": "half-line-positive",
  "N": 4,
  "lambda_grid": { "start": 100.0, "factor": 2.0, "count": 5 }
}"#;

    #[test]
    fn parses_valid_config() {
        let cfg = RunConfig::parse(FRESNEL).unwrap();
        assert_eq!(cfg.n, 4);
        assert_eq!(cfg.sign, Sign::Plus);
        assert_eq!(cfg.variant, Variant::Corrected);
        assert_eq!(cfg.lambdas(), vec![100.0, 200.0, 400.0, 800.0, 1600.0]);
        assert!(cfg.output_path.is_none());
    }

    #[test]
    fn exp_preset() {
        let text = FRESNEL
            .replace(
                r#""perturbation": []"#,
                r#""preset": "exp", "truncation": 12"#,
            )
            .replace(r#""r1": 0.3, "r2": 0.6"#, r#""r1": 0.1, "r2": 0.2"#);
        let cfg = RunConfig::parse(&text).unwrap();
        assert_eq!(cfg.phase.perturbation().len(), 12);
        assert_eq!(cfg.phase.r0(), 0.5);
    }

    fn err(text: &str) -> ConfigError {
        RunConfig::parse(text).unwrap_err()
    }

    #[test]
    fn too_few_terms_names_n() {
        let e = err(&FRESNEL.replace(r#""N": 4"#, r#""N": 2"#));
        assert_eq!(e.field, "N");
        assert_eq!(e.line, Some(6));
    }

    #[test]
    fn bad_values_name_their_fields() {
        let e = err(&FRESNEL.replace(r#""p": 2.0"#, r#""p": -1.0"#));
        assert_eq!((e.field.as_str(), e.line), ("phase.p", Some(2)));

        let e = err(&FRESNEL.replace(r#""sign": 1"#, r#""sign": 0"#));
        assert_eq!((e.field.as_str(), e.line), ("sign", Some(4)));

        let e = err(&FRESNEL.replace(r#""r2": 0.6"#, r#""r2": 0.2"#));
        assert_eq!((e.field.as_str(), e.line), ("amplitude.r2", Some(3)));

        let e = err(&FRESNEL.replace(r#""factor": 2.0"#, r#""factor": 1.0"#));
        assert_eq!((e.field.as_str(), e.line), ("lambda_grid.factor", Some(7)));

        let e = err(&FRESNEL.replace(r#""count": 5"#, r#""count": 2"#));
        assert_eq!(e.field, "lambda_grid.count");

        let e = err(&FRESNEL.replace(r#""perturbation": []"#, r#""perturbation": [3.0]"#));
        assert_eq!(e.field, "amplitude.r2");

        let e = err(&FRESNEL
            .replace(r#""p": 2.0"#, r#""p": 2.5"#)
            .replace("half-line-positive", "full-line"));
        assert_eq!(e.field, "region");

        let e = err(&FRESNEL.replace(r#""perturbation": []"#, r#""preset": "sin""#));
        assert_eq!(e.field, "phase.preset");
    }

    #[test]
    fn syntax_and_type_errors_carry_lines() {
        let e = err(&FRESNEL.replace(r#""N": 4"#, r#""N": "four""#));
        assert_eq!(e.field, "N");
        assert_eq!(e.line, Some(6));

        let e = err(&FRESNEL.replace(
            r#""region": "half-line-positive""#,
            r#""region": "everywhere""#,
        ));
        assert_eq!(e.field, "region");

        let e = err(&FRESNEL.replace(r#""sign": 1,"#, r#""sign": 1, "colour": 3,"#));
        assert!(e.message.contains("colour"));

        let e = err("{ \"phase\": ");
        assert!(e.line.is_some());
    }

    #[test]
    fn display_includes_field_and_line() {
        let e = err(&FRESNEL.replace(r#""N": 4"#, r#""N": 1"#));
        let text = e.to_string();
        assert!(text.contains("line 6") && text.contains("`N`"), "{text}");
    }
}
