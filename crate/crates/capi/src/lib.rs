//! C ABI over the separatrix library: opaque handles, integer error codes,
//! out-parameters for all results. The header is generated by cbindgen into
//! `include/separatrix.h` at build time.

use separatrix::melnikov::{Engine, ModelParams};
use separatrix::resonances::build_catalog_extended;
use separatrix::scan::FrequencySpec;
use separatrix::Error;
use std::ffi::{c_char, c_int, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

pub const SX_OK: c_int = 0;
/// a required pointer argument was null
pub const SX_ERR_NULL: c_int = 1;
/// the frequency spec string could not be parsed
pub const SX_ERR_INVALID_SPEC: c_int = 2;
/// the catalog is indeterminate (e.g. tie in the minimal limit numerator)
pub const SX_ERR_INDETERMINATE: c_int = 3;
/// a numeric argument was outside its domain
pub const SX_ERR_DOMAIN: c_int = 4;
/// the queried quantity exists only for the cubic case
pub const SX_ERR_NOT_CUBIC: c_int = 5;
/// index out of range
pub const SX_ERR_RANGE: c_int = 6;
/// internal invariant violation
pub const SX_ERR_INTERNAL: c_int = 7;

/// Opaque analysis handle: one frequency vector with its certified resonance
/// catalog and exponent engine.
pub struct SxHandle {
    engine: Engine,
}

fn err_code(e: &Error) -> c_int {
    match e {
        Error::InvalidSpec(_) | Error::InvalidPeriod => SX_ERR_INVALID_SPEC,
        Error::AmbiguousMinimum => SX_ERR_INDETERMINATE,
        _ => SX_ERR_INTERNAL,
    }
}

fn guarded(f: impl FnOnce() -> c_int + std::panic::UnwindSafe) -> c_int {
    catch_unwind(f).unwrap_or(SX_ERR_INTERNAL)
}

/// Create a handle for a frequency spec ("golden", "silver", "cubic-golden",
/// "omega:a[,b,...]" or a comma-separated period word) and model parameters
/// rho > 0 (Fourier decay width) and p (exponent of mu = eps^p).
///
/// # Safety
/// `spec` must be a valid NUL-terminated string; `out` must be valid for a
/// single pointer write.
#[no_mangle]
pub unsafe extern "C" fn sx_open(
    spec: *const c_char,
    rho: f64,
    p: f64,
    out: *mut *mut SxHandle,
) -> c_int {
    if spec.is_null() || out.is_null() {
        return SX_ERR_NULL;
    }
    let Ok(text) = CStr::from_ptr(spec).to_str() else {
        return SX_ERR_INVALID_SPEC;
    };
    if !(rho > 0.0) || !p.is_finite() {
        return SX_ERR_DOMAIN;
    }
    guarded(AssertUnwindSafe(|| {
        let parsed: Result<FrequencySpec, _> = text.parse();
        let fspec = match parsed {
            Ok(s) => s,
            Err(e) => return err_code(&e),
        };
        let data = fspec.build();
        let cat = match build_catalog_extended(&data) {
            Ok(c) => std::sync::Arc::new(c),
            Err(e) => return err_code(&e),
        };
        let engine = Engine::new(cat, ModelParams { rho, p });
        *out = Box::into_raw(Box::new(SxHandle { engine }));
        SX_OK
    }))
}

/// Release a handle created by `sx_open`. Passing NULL is a no-op.
///
/// # Safety
/// `h` must be NULL or a pointer returned by `sx_open` not yet closed.
#[no_mangle]
pub unsafe extern "C" fn sx_close(h: *mut SxHandle) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

macro_rules! getter {
    ($h:expr, $out:expr, $val:expr) => {{
        if $h.is_null() || $out.is_null() {
            return SX_ERR_NULL;
        }
        let handle = &*$h;
        guarded(AssertUnwindSafe(|| {
            *$out = $val(handle);
            SX_OK
        }))
    }};
}

/// Field degree: 2 (quadratic) or 3 (cubic).
///
/// # Safety
/// `h` must be a live handle; `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sx_degree(h: *const SxHandle, out: *mut u32) -> c_int {
    getter!(h, out, |x: &SxHandle| x.engine.cat.data.ell as u32)
}

/// Koch eigenvalue lambda.
///
/// # Safety
/// `h` must be a live handle; `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sx_lambda(h: *const SxHandle, out: *mut f64) -> c_int {
    getter!(h, out, |x: &SxHandle| x.engine.cat.data.lambda_f64())
}

/// Minimal limit numerator gamma* of the primary resonant sequence.
///
/// # Safety
/// `h` must be a live handle; `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sx_gamma_star(h: *const SxHandle, out: *mut f64) -> c_int {
    getter!(h, out, |x: &SxHandle| x.engine.cat.gamma_star)
}

/// Separation constant B0 (quadratic) or B0- (cubic).
///
/// # Safety
/// `h` must be a live handle; `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sx_b0(h: *const SxHandle, out: *mut f64) -> c_int {
    getter!(h, out, |x: &SxHandle| x.engine.cat.b0)
}

/// Oscillation amplitude delta (cubic only).
///
/// # Safety
/// `h` must be a live handle; `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sx_delta(h: *const SxHandle, out: *mut f64) -> c_int {
    if h.is_null() || out.is_null() {
        return SX_ERR_NULL;
    }
    let handle = &*h;
    match handle.engine.cat.data.cubic.as_ref() {
        Some(e) => {
            *out = e.delta;
            SX_OK
        }
        None => SX_ERR_NOT_CUBIC,
    }
}

/// Lower and upper exponent bounds: (A0, A1) quadratic, (A0-, A1+) cubic.
///
/// # Safety
/// `h` must be a live handle; `a0`/`a1` valid for one write each.
#[no_mangle]
pub unsafe extern "C" fn sx_bounds(h: *const SxHandle, a0: *mut f64, a1: *mut f64) -> c_int {
    if h.is_null() || a0.is_null() || a1.is_null() {
        return SX_ERR_NULL;
    }
    guarded(AssertUnwindSafe(|| {
        let (lo, hi) = (*h).engine.bounds();
        *a0 = lo;
        *a1 = hi;
        SX_OK
    }))
}

/// Certified separation condition B0 >= A1 (resp. B0- >= A1+): writes 1 or 0.
///
/// # Safety
/// `h` must be a live handle; `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sx_separation_check(h: *const SxHandle, out: *mut c_int) -> c_int {
    getter!(h, out, |x: &SxHandle| x.engine.separation_check() as c_int)
}

/// Number of primitives in the catalog.
///
/// # Safety
/// `h` must be a live handle; `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sx_primitive_count(h: *const SxHandle, out: *mut usize) -> c_int {
    getter!(h, out, |x: &SxHandle| x.engine.cat.primitives.len())
}

/// Limit numerators (gamma-, gamma*, gamma+) of the idx-th primitive, sorted
/// ascending by gamma*. For the quadratic case all three coincide.
///
/// # Safety
/// `h` must be a live handle; the three out-pointers valid for one write each.
#[no_mangle]
pub unsafe extern "C" fn sx_primitive(
    h: *const SxHandle,
    idx: usize,
    gamma_minus: *mut f64,
    gamma_star: *mut f64,
    gamma_plus: *mut f64,
) -> c_int {
    if h.is_null() || gamma_minus.is_null() || gamma_star.is_null() || gamma_plus.is_null() {
        return SX_ERR_NULL;
    }
    let handle = &*h;
    let prims = &handle.engine.cat.primitives;
    if idx >= prims.len() {
        return SX_ERR_RANGE;
    }
    let p = &prims[idx];
    *gamma_minus = p.gamma_minus.unwrap_or(p.gamma_star);
    *gamma_star = p.gamma_star;
    *gamma_plus = p.gamma_plus.unwrap_or(p.gamma_star);
    SX_OK
}

/// h1(eps) and the dominant index N(eps).
///
/// # Safety
/// `h` must be a live handle; `out`/`n_out` valid for one write each.
#[no_mangle]
pub unsafe extern "C" fn sx_h1(
    h: *const SxHandle,
    eps: f64,
    out: *mut f64,
    n_out: *mut u32,
) -> c_int {
    if h.is_null() || out.is_null() || n_out.is_null() {
        return SX_ERR_NULL;
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return SX_ERR_DOMAIN;
    }
    guarded(AssertUnwindSafe(|| {
        let (v, n) = (*h).engine.h1(eps);
        *out = v;
        *n_out = n;
        SX_OK
    }))
}

/// h2(eps): second-smallest exponent function over all non-dominant harmonics.
///
/// # Safety
/// `h` must be a live handle; `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sx_h2(h: *const SxHandle, eps: f64, out: *mut f64) -> c_int {
    if h.is_null() || out.is_null() {
        return SX_ERR_NULL;
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return SX_ERR_DOMAIN;
    }
    guarded(AssertUnwindSafe(|| {
        *out = (*h).engine.h2(eps);
        SX_OK
    }))
}

/// ln of the maximal-splitting envelope eps^{p - 1/l} exp(-C0 h1 / eps^{1/2l}).
///
/// # Safety
/// `h` must be a live handle; `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sx_ln_envelope(h: *const SxHandle, eps: f64, out: *mut f64) -> c_int {
    if h.is_null() || out.is_null() {
        return SX_ERR_NULL;
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return SX_ERR_DOMAIN;
    }
    guarded(AssertUnwindSafe(|| {
        *out = (*h).engine.max_splitting_estimate(eps).ln_envelope;
        SX_OK
    }))
}

/// Static description of an error code; never NULL.
#[no_mangle]
pub extern "C" fn sx_error_message(code: c_int) -> *const c_char {
    let s: &'static [u8] = match code {
        SX_OK => b"ok\0",
        SX_ERR_NULL => b"null pointer argument\0",
        SX_ERR_INVALID_SPEC => b"invalid frequency spec\0",
        SX_ERR_INDETERMINATE => b"indeterminate catalog (tie in minimal numerator)\0",
        SX_ERR_DOMAIN => b"numeric argument out of domain\0",
        SX_ERR_NOT_CUBIC => b"quantity defined only for the cubic case\0",
        SX_ERR_RANGE => b"index out of range\0",
        _ => b"internal error\0",
    };
    s.as_ptr() as *const c_char
}
