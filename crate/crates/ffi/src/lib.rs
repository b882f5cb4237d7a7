//! C ABI over `bessel_radii`.
//!
//! Every function returns a [`BrStatus`]; results go through out-pointers.
//! Evaluators are opaque heap handles created by [`br_evaluator_new`] and
//! released with [`br_evaluator_free`]. Panics never cross the boundary.

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bessel_radii::bessel::{bessel_j, Order};
use bessel_radii::functional::{EvalMethod, Evaluator, Family, FunctionalParams, Tail};
use bessel_radii::zeros::{compute_zeros, ZeroKind};
use bessel_radii::Error;
use num_complex::Complex64;

pub const BR_FAMILY_F: u32 = 0;
pub const BR_FAMILY_G: u32 = 1;
pub const BR_FAMILY_H: u32 = 2;

pub const BR_ZEROS_J: u32 = 0;
pub const BR_ZEROS_JPRIME: u32 = 1;
pub const BR_ZEROS_DINI_G: u32 = 2;
pub const BR_ZEROS_DINI_H: u32 = 3;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidOrder = 2,
    InvalidParameter = 3,
    OutOfInterval = 4,
    DomainCapExceeded = 5,
    NonConvergence = 6,
    ZeroArgument = 7,
    ScanExhausted = 8,
    NearPole = 9,
    BracketFailure = 10,
    PreconditionViolated = 11,
    BufferTooSmall = 12,
    Panic = 13,
}

impl From<&Error> for BrStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::DomainCapExceeded { .. } => BrStatus::DomainCapExceeded,
            Error::NonConvergence { .. } => BrStatus::NonConvergence,
            Error::ZeroArgument { .. } => BrStatus::ZeroArgument,
            Error::InvalidOrder { .. } => BrStatus::InvalidOrder,
            Error::InvalidParameter { .. } => BrStatus::InvalidParameter,
            Error::ScanExhausted { .. } => BrStatus::ScanExhausted,
            Error::OutOfInterval { .. } => BrStatus::OutOfInterval,
            Error::NearPole { .. } => BrStatus::NearPole,
            Error::BracketFailure { .. } => BrStatus::BracketFailure,
            Error::PreconditionViolated(_) => BrStatus::PreconditionViolated,
        }
    }
}

/// Opaque evaluator handle.
pub struct BrEvaluator {
    inner: Evaluator,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BrRadius {
    pub radius: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub residual: f64,
    pub zero_sum_residual: f64,
    pub cap: f64,
    pub iterations: usize,
}

fn guard(f: impl FnOnce() -> Result<(), BrStatus>) -> BrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BrStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => BrStatus::Panic,
    }
}

fn check<T>(r: bessel_radii::Result<T>) -> Result<T, BrStatus> {
    r.map_err(|e| BrStatus::from(&e))
}

fn family(code: u32) -> Result<Family, BrStatus> {
    match code {
        BR_FAMILY_F => Ok(Family::F),
        BR_FAMILY_G => Ok(Family::G),
        BR_FAMILY_H => Ok(Family::H),
        _ => Err(BrStatus::InvalidParameter),
    }
}

fn zero_kind(code: u32) -> Result<ZeroKind, BrStatus> {
    match code {
        BR_ZEROS_J => Ok(ZeroKind::BesselJ),
        BR_ZEROS_JPRIME => Ok(ZeroKind::BesselJPrime),
        BR_ZEROS_DINI_G => Ok(ZeroKind::DiniG),
        BR_ZEROS_DINI_H => Ok(ZeroKind::DiniH),
        _ => Err(BrStatus::InvalidParameter),
    }
}

unsafe fn handle<'a>(ev: *const BrEvaluator) -> Result<&'a Evaluator, BrStatus> {
    ev.as_ref().map(|h| &h.inner).ok_or(BrStatus::NullPointer)
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), BrStatus> {
    if out.is_null() {
        return Err(BrStatus::NullPointer);
    }
    out.write(v);
    Ok(())
}

/// Static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn br_status_message(status: BrStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        BrStatus::Ok => b"ok\0",
        BrStatus::NullPointer => b"null pointer argument\0",
        BrStatus::InvalidOrder => b"invalid Bessel order\0",
        BrStatus::InvalidParameter => b"invalid parameter\0",
        BrStatus::OutOfInterval => b"argument outside the admissible interval\0",
        BrStatus::DomainCapExceeded => b"argument exceeds the series domain\0",
        BrStatus::NonConvergence => b"series did not converge\0",
        BrStatus::ZeroArgument => b"value not finite at z = 0\0",
        BrStatus::ScanExhausted => b"zero scan ended before enough zeros were found\0",
        BrStatus::NearPole => b"too close to a pole\0",
        BrStatus::BracketFailure => b"no sign change in the root bracket\0",
        BrStatus::PreconditionViolated => b"precondition violated\0",
        BrStatus::BufferTooSmall => b"output buffer too small\0",
        BrStatus::Panic => b"internal panic\0",
    };
    s.as_ptr().cast()
}

/// Creates an evaluator for `family` (one of `BR_FAMILY_*`) and order `nu`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn br_evaluator_new(family_code: u32, nu: f64, out: *mut *mut BrEvaluator) -> BrStatus {
    guard(|| {
        if out.is_null() {
            return Err(BrStatus::NullPointer);
        }
        out.write(ptr::null_mut());
        let fam = family(family_code)?;
        let inner = check(Order::new(nu).and_then(|o| Evaluator::new(fam, o)))?;
        out.write(Box::into_raw(Box::new(BrEvaluator { inner })));
        Ok(())
    })
}

/// # Safety
/// `ev` must be null or a handle from [`br_evaluator_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn br_evaluator_free(ev: *mut BrEvaluator) {
    if !ev.is_null() {
        drop(Box::from_raw(ev));
    }
}

/// Writes `j'_{nu,1}`, `alpha_{nu,1}` or `beta_{nu,1}^2`.
///
/// # Safety
/// `ev` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn br_evaluator_cap(ev: *const BrEvaluator, out: *mut f64) -> BrStatus {
    guard(|| write(out, handle(ev)?.cap()))
}

/// Ratio-form value of the functional at `0 < r < cap`.
///
/// # Safety
/// `ev` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn br_eval(ev: *const BrEvaluator, alpha: f64, r: f64, out: *mut f64) -> BrStatus {
    guard(|| {
        let v = check(handle(ev)?.eval(alpha, r, EvalMethod::RatioForm))?;
        write(out, v)
    })
}

/// Zero-sum value over `terms` zeros with the tail bound; `half_width` may be null.
///
/// # Safety
/// `ev` must be a live handle, `out` writable, `half_width` null or writable.
#[no_mangle]
pub unsafe extern "C" fn br_eval_zero_sum(
    ev: *const BrEvaluator,
    alpha: f64,
    r: f64,
    terms: usize,
    out: *mut f64,
    half_width: *mut f64,
) -> BrStatus {
    guard(|| {
        let v = check(handle(ev)?.zero_sum(alpha, r, terms, Tail::IntegralBound))?;
        write(out, v.value)?;
        if !half_width.is_null() {
            half_width.write(v.tail_half_width);
        }
        Ok(())
    })
}

/// Radius of alpha-convexity of order beta.
///
/// # Safety
/// `ev` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn br_radius(
    ev: *const BrEvaluator,
    alpha: f64,
    beta: f64,
    tol: f64,
    out: *mut BrRadius,
) -> BrStatus {
    guard(|| {
        let ev = handle(ev)?;
        let r = check(FunctionalParams::new(alpha, beta).and_then(|p| ev.radius(p, tol)))?;
        write(
            out,
            BrRadius {
                radius: r.radius,
                bracket_lo: r.bracket.0,
                bracket_hi: r.bracket.1,
                residual: r.residual,
                zero_sum_residual: r.zero_sum_residual,
                cap: r.domain_cap_value,
                iterations: r.iterations,
            },
        )
    })
}

/// First `count` positive zeros of the function named by `kind` (`BR_ZEROS_*`)
/// into `buf[0..count]`.
///
/// # Safety
/// `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn br_zeros(kind: u32, nu: f64, count: usize, tol: f64, buf: *mut f64, len: usize) -> BrStatus {
    guard(|| {
        if buf.is_null() {
            return Err(BrStatus::NullPointer);
        }
        if len < count {
            return Err(BrStatus::BufferTooSmall);
        }
        let kind = zero_kind(kind)?;
        let t = check(Order::new(nu).and_then(|o| compute_zeros(kind, o, count, tol)))?;
        std::slice::from_raw_parts_mut(buf, count).copy_from_slice(t.values());
        Ok(())
    })
}

/// `J_nu(re + i im)` on the principal branch.
///
/// # Safety
/// `out_re` and `out_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn br_bessel_j(nu: f64, re: f64, im: f64, out_re: *mut f64, out_im: *mut f64) -> BrStatus {
    guard(|| {
        if out_re.is_null() || out_im.is_null() {
            return Err(BrStatus::NullPointer);
        }
        let v = check(Order::new(nu).and_then(|o| bessel_j(o, Complex64::new(re, im))))?;
        out_re.write(v.re);
        out_im.write(v.im);
        Ok(())
    })
}
