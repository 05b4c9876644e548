use std::ffi::CStr;
use std::ptr;

use stphase_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(stphase_last_error()) }
        .to_string_lossy()
        .into_owned()
}

struct Handles {
    phase: *mut StphasePhase,
    amp: *mut StphaseAmplitude,
}

impl Handles {
    fn new(p: f64, perturbation: &[f64], germ: &[f64], r1: f64, r2: f64) -> Self {
        let mut phase = ptr::null_mut();
        let mut amp = ptr::null_mut();
        unsafe {
            assert_eq!(
                stphase_phase_new(p, perturbation.as_ptr(), perturbation.len(), &mut phase),
                StphaseStatus::Ok
            );
            assert_eq!(
                stphase_amplitude_new(germ.as_ptr(), germ.len(), r1, r2, &mut amp),
                StphaseStatus::Ok
            );
        }
        Self { phase, amp }
    }
}

impl Drop for Handles {
    fn drop(&mut self) {
        unsafe {
            stphase_phase_free(self.phase);
            stphase_amplitude_free(self.amp);
        }
    }
}

#[test]
fn special_functions() {
    let mut v = 0.0;
    unsafe {
        assert_eq!(stphase_gamma(5.0, &mut v), StphaseStatus::Ok);
        assert!((v - 24.0).abs() < 1e-12);
        assert_eq!(
            stphase_lambert_w0(std::f64::consts::E, &mut v),
            StphaseStatus::Ok
        );
        assert!((v - 1.0).abs() < 1e-15);
        assert_eq!(stphase_gamma(-1.0, &mut v), StphaseStatus::Domain);
    }
    assert!(last_error().contains("gamma"));
}

#[test]
fn inverse_series_of_exp_phase() {
    let mut phase = ptr::null_mut();
    let mut coeffs = [0.0; 6];
    unsafe {
        assert_eq!(
            stphase_phase_new_exp(1.0, 12, &mut phase),
            StphaseStatus::Ok
        );
        assert_eq!(
            stphase_phase_inverse_series(phase, 8, coeffs.as_mut_ptr(), coeffs.len()),
            StphaseStatus::BufferTooSmall
        );
        assert_eq!(
            stphase_phase_inverse_series(phase, 5, coeffs.as_mut_ptr(), coeffs.len()),
            StphaseStatus::Ok
        );
        let mut r0 = 0.0;
        assert_eq!(
            stphase_phase_radii(phase, &mut r0, ptr::null_mut()),
            StphaseStatus::Ok
        );
        assert_eq!(r0, 0.5);
        stphase_phase_free(phase);
    }
    let w = [0.0, 1.0, -1.0, 1.5, -8.0 / 3.0, 125.0 / 24.0];
    for (c, e) in coeffs.iter().zip(w) {
        assert!((c - e).abs() < 1e-12, "{c} vs {e}");
    }
}

#[test]
fn expansion_round_trip() {
    let h = Handles::new(2.0, &[], &[1.0, 1.0, 1.0], 0.3, 0.6);
    let mut e = ptr::null_mut();
    unsafe {
        assert_eq!(
            stphase_expansion_new(
                h.phase,
                h.amp,
                1,
                StphaseRegion::HalfLinePositive,
                4,
                StphaseVariant::Corrected,
                &mut e
            ),
            StphaseStatus::Ok
        );
        assert_eq!(stphase_expansion_len(e), 2);
        let mut rem = 0.0;
        assert_eq!(
            stphase_expansion_remainder_exponent(e, &mut rem),
            StphaseStatus::Ok
        );
        assert_eq!(rem, 1.5);

        let mut exponent = 0.0;
        let mut c = StphaseComplex { re: 0.0, im: 0.0 };
        assert_eq!(
            stphase_expansion_term(e, 1, &mut exponent, &mut c),
            StphaseStatus::Ok
        );
        assert_eq!(exponent, 1.0);
        assert!(c.re.abs() < 1e-16 && (c.im - 0.5).abs() < 1e-15);
        assert_eq!(
            stphase_expansion_term(e, 2, &mut exponent, &mut c),
            StphaseStatus::InvalidArgument
        );

        let mut approx = StphaseComplex { re: 0.0, im: 0.0 };
        let mut exact = StphaseComplex { re: 0.0, im: 0.0 };
        let mut err = 0.0;
        assert_eq!(
            stphase_expansion_evaluate(e, 1600.0, &mut approx),
            StphaseStatus::Ok
        );
        assert_eq!(
            stphase_oracle_integrate(
                h.phase,
                h.amp,
                1600.0,
                1,
                StphaseRegion::HalfLinePositive,
                &mut exact,
                &mut err
            ),
            StphaseStatus::Ok
        );
        let residual = (approx.re - exact.re).hypot(approx.im - exact.im);
        assert!(residual < 1e-4, "{residual}");
        assert!(err < 1e-10);
        assert_eq!(
            stphase_expansion_evaluate(e, -1.0, &mut approx),
            StphaseStatus::InvalidArgument
        );
        stphase_expansion_free(e);
    }
}

#[test]
fn rejections_carry_messages() {
    let h = Handles::new(2.0, &[], &[1.0], 0.3, 0.6);
    let mut e = ptr::null_mut();
    unsafe {
        assert_eq!(
            stphase_expansion_new(
                h.phase,
                h.amp,
                1,
                StphaseRegion::FullLine,
                2,
                StphaseVariant::Corrected,
                &mut e
            ),
            StphaseStatus::TooFewTerms
        );
        assert!(e.is_null());
        assert!(last_error().contains("N = 2"), "{}", last_error());
        assert_eq!(
            stphase_expansion_new(
                h.phase,
                h.amp,
                0,
                StphaseRegion::FullLine,
                4,
                StphaseVariant::Corrected,
                &mut e
            ),
            StphaseStatus::InvalidArgument
        );
        assert_eq!(
            stphase_expansion_new(
                ptr::null(),
                h.amp,
                1,
                StphaseRegion::FullLine,
                4,
                StphaseVariant::Corrected,
                &mut e
            ),
            StphaseStatus::NullPointer
        );
        let mut phase = ptr::null_mut();
        assert_eq!(
            stphase_phase_new(2.0, ptr::null(), 3, &mut phase),
            StphaseStatus::NullPointer
        );
        assert_eq!(
            stphase_phase_new(-1.0, ptr::null(), 0, &mut phase),
            StphaseStatus::InvalidArgument
        );
        let mut amp = ptr::null_mut();
        assert_eq!(
            stphase_amplitude_new([1.0].as_ptr(), 1, 0.5, 0.4, &mut amp),
            StphaseStatus::InvalidArgument
        );
        stphase_phase_free(ptr::null_mut());
        stphase_amplitude_free(ptr::null_mut());
        stphase_expansion_free(ptr::null_mut());
    }
}

#[test]
fn support_outside_validity_radius() {
    let h = Handles::new(2.0, &[3.0], &[1.0], 0.05, 0.2);
    let mut e = ptr::null_mut();
    let status = unsafe {
        stphase_expansion_new(
            h.phase,
            h.amp,
            1,
            StphaseRegion::HalfLinePositive,
            4,
            StphaseVariant::Corrected,
            &mut e,
        )
    };
    assert_eq!(status, StphaseStatus::OutsideRadius);
}
