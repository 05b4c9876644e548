//! Asymptotic expansions of one-dimensional oscillatory integrals
//!
//! ```text
//! ∫ e^{±iλφ(x)} a(x) dx,    φ(x) = x^p (1 + Σ_{j≥1} a_j x^j),
//! ```
//!
//! as λ → ∞, for smooth amplitudes supported near the origin. The phase is
//! straightened by the change of variables `x = Φ(y)` with `φ(Φ(y)) = y^p`,
//! computed as a reverted power series, after which each Taylor coefficient
//! of `a(Φ(y)) Φ'(y)` yields one term of the expansion. A panel-based
//! Gauss–Legendre quadrature evaluates the same integrals directly so that
//! coefficients and decay orders can be checked.

pub mod amplitude;
pub mod config;
pub mod error;
pub mod expansion;
pub mod oracle;
pub mod phase;
pub mod runner;
pub mod series;
pub mod specfun;

pub use amplitude::{Amplitude, AmplitudeProfile, IndicatorAmplitude};
pub use error::{Error, Result};
pub use expansion::{AsymptoticExpansion, ExpansionTerm, Region, Sign, Variant};
pub use num_complex::Complex64;
pub use oracle::QuadratureResult;
pub use phase::PhaseModel;
pub use series::TruncatedSeries;
