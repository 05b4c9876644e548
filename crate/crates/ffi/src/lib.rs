//! C ABI for `stphase`.
//!
//! Objects are handed out as opaque pointers created by `*_new` and released
//! by the matching `*_free`. Every fallible call returns a [`StphaseStatus`];
//! the message for the most recent failure on the calling thread is available
//! from [`stphase_last_error`].

use std::cell::RefCell;
#[cfg(test)]
use std::ffi::CStr;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use stphase::expansion::expand;
use stphase::oracle::integrate_oscillatory;
use stphase::specfun::{gamma, lambert_w0};
use stphase::{Amplitude, AsymptoticExpansion, Error, PhaseModel, Region, Sign, Variant};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StphaseStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    OutsideRadius = 4,
    TooFewTerms = 5,
    SeriesFailure = 6,
    OracleConvergence = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StphaseComplex {
    pub re: f64,
    pub im: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StphaseRegion {
    HalfLinePositive = 0,
    HalfLineNegative = 1,
    FullLine = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StphaseVariant {
    Corrected = 0,
    Paper = 1,
}

/// Opaque phase model.
pub struct StphasePhase(PhaseModel);

/// Opaque smooth amplitude.
pub struct StphaseAmplitude(Amplitude);

/// Opaque truncated expansion.
pub struct StphaseExpansion(AsymptoticExpansion);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> StphaseStatus {
    match err {
        Error::Domain { .. } | Error::NegativeArgument { .. } | Error::NonIntegerExponent(_) => {
            StphaseStatus::Domain
        }
        Error::OutsideRadius { .. } | Error::SupportViolation { .. } => {
            StphaseStatus::OutsideRadius
        }
        Error::TooFewTerms { .. } => StphaseStatus::TooFewTerms,
        Error::EmptySeries
        | Error::NonZeroConstantTerm(_)
        | Error::NotInvertible(_)
        | Error::ReversionCheck { .. }
        | Error::OrderExceeded { .. } => StphaseStatus::SeriesFailure,
        Error::OracleConvergence { .. } => StphaseStatus::OracleConvergence,
        _ => StphaseStatus::InvalidArgument,
    }
}

/// Runs `body`, recording errors and converting panics into a status.
fn guard(body: impl FnOnce() -> Result<(), (StphaseStatus, String)>) -> StphaseStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => StphaseStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            StphaseStatus::Panic
        }
    }
}

fn lib<T>(r: stphase::Result<T>) -> Result<T, (StphaseStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (StphaseStatus, String) {
    (StphaseStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_slice<'a>(
    data: *const f64,
    len: usize,
    what: &str,
) -> Result<&'a [f64], (StphaseStatus, String)> {
    if len == 0 {
        Ok(&[])
    } else if data.is_null() {
        Err(null(what))
    } else {
        Ok(slice::from_raw_parts(data, len))
    }
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, (StphaseStatus, String)> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn obj<'a, T>(p: *const T, what: &str) -> Result<&'a T, (StphaseStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

fn sign_of(sign: i32) -> Result<Sign, (StphaseStatus, String)> {
    Sign::from_int(sign.into()).ok_or((
        StphaseStatus::InvalidArgument,
        format!("sign must be +1 or -1, got {sign}"),
    ))
}

impl From<StphaseRegion> for Region {
    fn from(r: StphaseRegion) -> Self {
        match r {
            StphaseRegion::HalfLinePositive => Region::HalfLinePositive,
            StphaseRegion::HalfLineNegative => Region::HalfLineNegative,
            StphaseRegion::FullLine => Region::FullLine,
        }
    }
}

impl From<StphaseVariant> for Variant {
    fn from(v: StphaseVariant) -> Self {
        match v {
            StphaseVariant::Corrected => Variant::Corrected,
            StphaseVariant::Paper => Variant::Paper,
        }
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn stphase_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread; empty if none.
/// Valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn stphase_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `out` must be null or point to writable storage for one `double`.
#[no_mangle]
pub unsafe extern "C" fn stphase_gamma(x: f64, out: *mut f64) -> StphaseStatus {
    guard(|| {
        *self::out(out, "out")? = lib(gamma(x))?;
        Ok(())
    })
}

/// Principal branch of the Lambert W function.
///
/// # Safety
/// `out` must be null or point to writable storage for one `double`.
#[no_mangle]
pub unsafe extern "C" fn stphase_lambert_w0(y: f64, out: *mut f64) -> StphaseStatus {
    guard(|| {
        *self::out(out, "out")? = lib(lambert_w0(y))?;
        Ok(())
    })
}

/// Builds the phase `x^p (1 + sum_j a_j x^j)` with `a_1..a_len` read from
/// `perturbation` (which may be null when `len` is 0).
///
/// # Safety
/// `perturbation` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stphase_phase_new(
    p: f64,
    perturbation: *const f64,
    len: usize,
    out: *mut *mut StphasePhase,
) -> StphaseStatus {
    guard(|| {
        let slot = self::out(out, "out")?;
        let coeffs = read_slice(perturbation, len, "perturbation")?;
        let phase = lib(PhaseModel::new(p, coeffs.to_vec()))?;
        *slot = Box::into_raw(Box::new(StphasePhase(phase)));
        Ok(())
    })
}

/// Phase with `a_j = 1/j!` for `j <= truncation`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stphase_phase_new_exp(
    p: f64,
    truncation: usize,
    out: *mut *mut StphasePhase,
) -> StphaseStatus {
    guard(|| {
        let slot = self::out(out, "out")?;
        let phase = lib(PhaseModel::exp_preset(p, truncation))?;
        *slot = Box::into_raw(Box::new(StphasePhase(phase)));
        Ok(())
    })
}

/// # Safety
/// `phase` must be null or a pointer from `stphase_phase_new*` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stphase_phase_free(phase: *mut StphasePhase) {
    if !phase.is_null() {
        drop(Box::from_raw(phase));
    }
}

/// Radii of the phase: `r0` and the certified validity radius. Either
/// output may be null.
///
/// # Safety
/// `phase` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn stphase_phase_radii(
    phase: *const StphasePhase,
    r0: *mut f64,
    validity_radius: *mut f64,
) -> StphaseStatus {
    guard(|| {
        let phase = &obj(phase, "phase")?.0;
        if let Some(r) = r0.as_mut() {
            *r = phase.r0();
        }
        if let Some(r) = validity_radius.as_mut() {
            *r = phase.validity_radius();
        }
        Ok(())
    })
}

/// Writes the coefficients of the inverse series through `y^order` into
/// `coeffs[0..=order]`.
///
/// # Safety
/// `phase` must be a live handle; `coeffs` must hold `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn stphase_phase_inverse_series(
    phase: *const StphasePhase,
    order: usize,
    coeffs: *mut f64,
    capacity: usize,
) -> StphaseStatus {
    guard(|| {
        let phase = &obj(phase, "phase")?.0;
        if capacity < order + 1 {
            return Err((
                StphaseStatus::BufferTooSmall,
                format!("need {} coefficients, buffer holds {capacity}", order + 1),
            ));
        }
        if coeffs.is_null() {
            return Err(null("coeffs"));
        }
        let series = lib(phase.phi_inverse_series(order))?;
        slice::from_raw_parts_mut(coeffs, order + 1).copy_from_slice(series.coeffs());
        Ok(())
    })
}

/// Polynomial germ times a cutoff equal to 1 on `[-r1, r1]` and vanishing
/// outside `(-r2, r2)`.
///
/// # Safety
/// `germ` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stphase_amplitude_new(
    germ: *const f64,
    len: usize,
    r1: f64,
    r2: f64,
    out: *mut *mut StphaseAmplitude,
) -> StphaseStatus {
    guard(|| {
        let slot = self::out(out, "out")?;
        let germ = read_slice(germ, len, "germ")?;
        let amp = lib(Amplitude::new(germ.to_vec(), r1, r2))?;
        *slot = Box::into_raw(Box::new(StphaseAmplitude(amp)));
        Ok(())
    })
}

/// # Safety
/// `amplitude` must be null or a pointer from `stphase_amplitude_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stphase_amplitude_free(amplitude: *mut StphaseAmplitude) {
    if !amplitude.is_null() {
        drop(Box::from_raw(amplitude));
    }
}

/// # Safety
/// `amplitude` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stphase_amplitude_eval(
    amplitude: *const StphaseAmplitude,
    x: f64,
    out: *mut f64,
) -> StphaseStatus {
    guard(|| {
        let amp = &obj(amplitude, "amplitude")?.0;
        *self::out(out, "out")? = amp.eval(x);
        Ok(())
    })
}

/// Truncated expansion with `n` as the truncation parameter; `sign` is +1 or -1.
///
/// # Safety
/// `phase` and `amplitude` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stphase_expansion_new(
    phase: *const StphasePhase,
    amplitude: *const StphaseAmplitude,
    sign: i32,
    region: StphaseRegion,
    n: usize,
    variant: StphaseVariant,
    out: *mut *mut StphaseExpansion,
) -> StphaseStatus {
    guard(|| {
        let slot = self::out(out, "out")?;
        let phase = &obj(phase, "phase")?.0;
        let amp = &obj(amplitude, "amplitude")?.0;
        let e = lib(expand(
            phase,
            amp,
            sign_of(sign)?,
            region.into(),
            n,
            variant.into(),
        ))?;
        *slot = Box::into_raw(Box::new(StphaseExpansion(e)));
        Ok(())
    })
}

/// # Safety
/// `expansion` must be null or a pointer from `stphase_expansion_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stphase_expansion_free(expansion: *mut StphaseExpansion) {
    if !expansion.is_null() {
        drop(Box::from_raw(expansion));
    }
}

/// Number of terms, or 0 for a null handle.
///
/// # Safety
/// `expansion` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stphase_expansion_len(expansion: *const StphaseExpansion) -> usize {
    expansion.as_ref().map_or(0, |e| e.0.terms.len())
}

/// # Safety
/// `expansion` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stphase_expansion_remainder_exponent(
    expansion: *const StphaseExpansion,
    out: *mut f64,
) -> StphaseStatus {
    guard(|| {
        let e = &obj(expansion, "expansion")?.0;
        *self::out(out, "out")? = e.remainder_exponent;
        Ok(())
    })
}

/// Term `index`: `coefficient * lambda^(-exponent)`.
///
/// # Safety
/// `expansion` must be a live handle; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn stphase_expansion_term(
    expansion: *const StphaseExpansion,
    index: usize,
    exponent: *mut f64,
    coefficient: *mut StphaseComplex,
) -> StphaseStatus {
    guard(|| {
        let e = &obj(expansion, "expansion")?.0;
        let term = e.terms.get(index).ok_or((
            StphaseStatus::InvalidArgument,
            format!("term index {index} out of range ({} terms)", e.terms.len()),
        ))?;
        *out(exponent, "exponent")? = term.exponent;
        *out(coefficient, "coefficient")? = StphaseComplex {
            re: term.coefficient.re,
            im: term.coefficient.im,
        };
        Ok(())
    })
}

/// # Safety
/// `expansion` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stphase_expansion_evaluate(
    expansion: *const StphaseExpansion,
    lambda: f64,
    out: *mut StphaseComplex,
) -> StphaseStatus {
    guard(|| {
        let e = &obj(expansion, "expansion")?.0;
        let v = lib(e.evaluate(lambda))?;
        *self::out(out, "out")? = StphaseComplex { re: v.re, im: v.im };
        Ok(())
    })
}

/// Quadrature value of the integral at finite `lambda`. `error_estimate`
/// may be null.
///
/// # Safety
/// `phase` and `amplitude` must be live handles; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn stphase_oracle_integrate(
    phase: *const StphasePhase,
    amplitude: *const StphaseAmplitude,
    lambda: f64,
    sign: i32,
    region: StphaseRegion,
    value: *mut StphaseComplex,
    error_estimate: *mut f64,
) -> StphaseStatus {
    guard(|| {
        let phase = &obj(phase, "phase")?.0;
        let amp = &obj(amplitude, "amplitude")?.0;
        let slot = out(value, "value")?;
        let r = lib(integrate_oscillatory(
            phase,
            amp,
            lambda,
            sign_of(sign)?,
            region.into(),
        ))?;
        *slot = StphaseComplex {
            re: r.value.re,
            im: r.value.im,
        };
        if let Some(e) = error_estimate.as_mut() {
            *e = r.error_estimate;
        }
        Ok(())
    })
}
