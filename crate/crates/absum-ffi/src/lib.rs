//! C ABI for the absum library: an opaque config handle, status codes, and
//! flat functions over the summatory functions and constants. The matching
//! header lives in `include/absum.h` (regenerated by the build script).
//!
//! Conventions: every compute function takes an optional config (`NULL`
//! means defaults), writes through out-pointers, and returns a status.
//! No function unwinds across the boundary.

use std::panic::{catch_unwind, AssertUnwindSafe};

use absum::arith::ArithError;
use absum::constants::{c_series, c_rk, zeta_int, ConstError, TruncationConfig};
use absum::sieve::{
    dk_shift_sum, dk_shift_sum_auto, max_a, q_sum, q_sum_auto, sieve_a, squarefull_count, t_sum,
    SieveConfig, SieveError,
};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbsumStatus {
    Ok = 0,
    /// A required pointer was NULL.
    NullPointer = 1,
    /// A range, modulus, truncation cutoff or buffer length was rejected.
    InvalidArgument = 2,
    /// A value or sum does not fit its integer type.
    Overflow = 3,
    /// The configured lookahead margin is below A(x); raise it and retry.
    MarginExceeded = 4,
    /// Unexpected internal failure.
    Internal = 5,
}

/// Opaque handle bundling sieve tuning and series truncation settings.
pub struct AbsumConfig {
    sieve: SieveConfig,
    trunc: TruncationConfig,
    // an explicit margin disables the automatic retry, so callers can
    // observe MarginExceeded deterministically
    strict_margin: bool,
}

impl Default for AbsumConfig {
    fn default() -> AbsumConfig {
        AbsumConfig {
            sieve: SieveConfig::new(),
            trunc: TruncationConfig::default(),
            strict_margin: false,
        }
    }
}

fn arith_status(e: &ArithError) -> AbsumStatus {
    match e {
        ArithError::PartitionOverflow { .. }
        | ArithError::ExponentOutOfRange { .. }
        | ArithError::Overflow { .. } => AbsumStatus::Overflow,
        ArithError::FactorizeZero | ArithError::BadDivisorOrder { .. } => {
            AbsumStatus::InvalidArgument
        }
    }
}

fn sieve_status(e: &SieveError) -> AbsumStatus {
    match e {
        SieveError::MarginExceeded { .. } => AbsumStatus::MarginExceeded,
        SieveError::ValueOverflow { .. }
        | SieveError::DkOverflow { .. }
        | SieveError::SumOverflow
        | SieveError::WindowTooLarge { .. } => AbsumStatus::Overflow,
        SieveError::BadRange { .. }
        | SieveError::ZeroModulus
        | SieveError::BadSegmentLen { .. }
        | SieveError::BadSieveK { .. } => AbsumStatus::InvalidArgument,
        SieveError::Arith(a) => arith_status(a),
    }
}

fn const_status(e: &ConstError) -> AbsumStatus {
    match e {
        ConstError::BadZetaArg { .. } | ConstError::BadConfig { .. } | ConstError::BadModulus => {
            AbsumStatus::InvalidArgument
        }
        ConstError::Arith(a) => arith_status(a),
    }
}

fn guard(f: impl FnOnce() -> AbsumStatus) -> AbsumStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(AbsumStatus::Internal)
}

unsafe fn with_cfg<T>(cfg: *const AbsumConfig, f: impl FnOnce(&AbsumConfig) -> T) -> T {
    if cfg.is_null() {
        f(&AbsumConfig::default())
    } else {
        f(&*cfg)
    }
}

/// Allocates a config with default settings. Free with `absum_config_free`.
#[no_mangle]
pub extern "C" fn absum_config_new() -> *mut AbsumConfig {
    Box::into_raw(Box::new(AbsumConfig::default()))
}

/// Frees a config. NULL is accepted and ignored.
///
/// # Safety
///
/// `cfg` must be NULL or a pointer returned by `absum_config_new` that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn absum_config_free(cfg: *mut AbsumConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Sets the worker thread count (0 is rejected). Results never depend on
/// this setting.
///
/// # Safety
///
/// `cfg` must be a live pointer from `absum_config_new`.
#[no_mangle]
pub unsafe extern "C" fn absum_config_set_threads(
    cfg: *mut AbsumConfig,
    threads: usize,
) -> AbsumStatus {
    if cfg.is_null() {
        return AbsumStatus::NullPointer;
    }
    if threads == 0 {
        return AbsumStatus::InvalidArgument;
    }
    (*cfg).sieve = (*cfg).sieve.clone().with_threads(threads);
    AbsumStatus::Ok
}

/// Sets the sieve segment length in elements (minimum 65536). Results never
/// depend on this setting.
///
/// # Safety
///
/// `cfg` must be a live pointer from `absum_config_new`.
#[no_mangle]
pub unsafe extern "C" fn absum_config_set_segment_len(
    cfg: *mut AbsumConfig,
    len: usize,
) -> AbsumStatus {
    if cfg.is_null() {
        return AbsumStatus::NullPointer;
    }
    match (*cfg).sieve.clone().with_segment_len(len) {
        Ok(s) => {
            (*cfg).sieve = s;
            AbsumStatus::Ok
        }
        Err(e) => sieve_status(&e),
    }
}

/// Sets the lookahead margin for the shifted sums and disables the
/// automatic retry; the margin must be at least A(x) or the computation
/// reports `MarginExceeded`.
///
/// # Safety
///
/// `cfg` must be a live pointer from `absum_config_new`.
#[no_mangle]
pub unsafe extern "C" fn absum_config_set_margin(cfg: *mut AbsumConfig, margin: u64) -> AbsumStatus {
    if cfg.is_null() {
        return AbsumStatus::NullPointer;
    }
    (*cfg).sieve = (*cfg).sieve.clone().with_margin(margin);
    (*cfg).strict_margin = true;
    AbsumStatus::Ok
}

/// Sets the Euler product truncation bounds used by the constants. Any
/// argument of 0 keeps the current value.
///
/// # Safety
///
/// `cfg` must be a live pointer from `absum_config_new`.
#[no_mangle]
pub unsafe extern "C" fn absum_config_set_cutoffs(
    cfg: *mut AbsumConfig,
    prime_cutoff: u64,
    squarefull_cutoff: u64,
    d_cutoff: u64,
) -> AbsumStatus {
    if cfg.is_null() {
        return AbsumStatus::NullPointer;
    }
    let mut t = (*cfg).trunc.clone();
    if prime_cutoff > 0 {
        t.prime_cutoff = prime_cutoff;
    }
    if squarefull_cutoff > 0 {
        t.squarefull_cutoff = squarefull_cutoff;
    }
    if d_cutoff > 0 {
        t.d_cutoff = d_cutoff;
    }
    match t.validate() {
        Ok(()) => {
            (*cfg).trunc = t;
            AbsumStatus::Ok
        }
        Err(e) => const_status(&e),
    }
}

/// Q(x), the sum of a(n + a(n)) over n <= x (x >= 1).
///
/// # Safety
///
/// `cfg` must be NULL or a live pointer from `absum_config_new`; `out` must
/// be valid for one u64 write.
#[no_mangle]
pub unsafe extern "C" fn absum_qsum(
    cfg: *const AbsumConfig,
    x: u64,
    out: *mut u64,
) -> AbsumStatus {
    if out.is_null() {
        return AbsumStatus::NullPointer;
    }
    guard(|| {
        with_cfg(cfg, |c| {
            let r = if c.strict_margin {
                q_sum(x, &c.sieve)
            } else {
                q_sum_auto(x, &c.sieve)
            };
            match r {
                Ok(s) => {
                    *out = s.value;
                    AbsumStatus::Ok
                }
                Err(e) => sieve_status(&e),
            }
        })
    })
}

/// T(x; k, r), the sum of a(m) over m <= x with m congruent to k mod r
/// (r >= 1, x >= 1; k is reduced mod r).
///
/// # Safety
///
/// `cfg` must be NULL or a live pointer from `absum_config_new`; `out` must
/// be valid for one u64 write.
#[no_mangle]
pub unsafe extern "C" fn absum_tsum(
    cfg: *const AbsumConfig,
    x: u64,
    k: u64,
    r: u64,
    out: *mut u64,
) -> AbsumStatus {
    if out.is_null() {
        return AbsumStatus::NullPointer;
    }
    guard(|| {
        with_cfg(cfg, |c| match t_sum(x, k, r, &c.sieve) {
            Ok(v) => {
                *out = v;
                AbsumStatus::Ok
            }
            Err(e) => sieve_status(&e),
        })
    })
}

/// The sum of d_k(n + a(n)) over n <= x, for k in {2, 3, 4}.
///
/// # Safety
///
/// `cfg` must be NULL or a live pointer from `absum_config_new`; `out` must
/// be valid for one u64 write.
#[no_mangle]
pub unsafe extern "C" fn absum_dkshift(
    cfg: *const AbsumConfig,
    x: u64,
    k: u32,
    out: *mut u64,
) -> AbsumStatus {
    if out.is_null() {
        return AbsumStatus::NullPointer;
    }
    guard(|| {
        with_cfg(cfg, |c| {
            let r = if c.strict_margin {
                dk_shift_sum(x, k, &c.sieve)
            } else {
                dk_shift_sum_auto(x, k, &c.sieve)
            };
            match r {
                Ok(s) => {
                    *out = s.value;
                    AbsumStatus::Ok
                }
                Err(e) => sieve_status(&e),
            }
        })
    })
}

/// A(x), the maximum of a(n) over n <= x (x >= 1).
///
/// # Safety
///
/// `cfg` must be NULL or a live pointer from `absum_config_new`; `out` must
/// be valid for one u64 write.
#[no_mangle]
pub unsafe extern "C" fn absum_maxa(
    cfg: *const AbsumConfig,
    x: u64,
    out: *mut u64,
) -> AbsumStatus {
    if out.is_null() {
        return AbsumStatus::NullPointer;
    }
    guard(|| {
        with_cfg(cfg, |c| match max_a(x, &c.sieve) {
            Ok(v) => {
                *out = v;
                AbsumStatus::Ok
            }
            Err(e) => sieve_status(&e),
        })
    })
}

/// The number of squarefull integers not exceeding u.
///
/// # Safety
///
/// `out` must be valid for one u64 write.
#[no_mangle]
pub unsafe extern "C" fn absum_squarefull_count(u: u64, out: *mut u64) -> AbsumStatus {
    if out.is_null() {
        return AbsumStatus::NullPointer;
    }
    guard(|| {
        *out = squarefull_count(u);
        AbsumStatus::Ok
    })
}

/// a(n) for every n in [lo, hi), written to `buf` in order. `buf_len` must
/// equal hi - lo.
///
/// # Safety
///
/// `cfg` must be NULL or a live pointer from `absum_config_new`; `buf` must
/// be valid for `buf_len` u16 writes.
#[no_mangle]
pub unsafe extern "C" fn absum_sieve_a(
    cfg: *const AbsumConfig,
    lo: u64,
    hi: u64,
    buf: *mut u16,
    buf_len: usize,
) -> AbsumStatus {
    if buf.is_null() {
        return AbsumStatus::NullPointer;
    }
    if hi <= lo || hi - lo != buf_len as u64 {
        return AbsumStatus::InvalidArgument;
    }
    guard(|| {
        with_cfg(cfg, |c| match sieve_a(lo, hi, &c.sieve) {
            Ok(w) => {
                let out = std::slice::from_raw_parts_mut(buf, buf_len);
                out.copy_from_slice(w.values());
                AbsumStatus::Ok
            }
            Err(e) => sieve_status(&e),
        })
    })
}

/// The progression density constant c(r, k) (r, k >= 1). `out_tail`
/// receives a truncation error estimate and may be NULL.
///
/// # Safety
///
/// `cfg` must be NULL or a live pointer from `absum_config_new`; `out` must
/// be valid for one double write, `out_tail` NULL or likewise.
#[no_mangle]
pub unsafe extern "C" fn absum_crk(
    cfg: *const AbsumConfig,
    r: u64,
    k: u64,
    out: *mut f64,
    out_tail: *mut f64,
) -> AbsumStatus {
    if out.is_null() {
        return AbsumStatus::NullPointer;
    }
    guard(|| {
        with_cfg(cfg, |c| match c_rk(r, k, &c.trunc) {
            Ok(res) => {
                *out = res.value;
                if !out_tail.is_null() {
                    *out_tail = res.tail_estimate;
                }
                AbsumStatus::Ok
            }
            Err(e) => const_status(&e),
        })
    })
}

/// The mean value constant C of Q(x). `out_tail` receives a truncation
/// error estimate and may be NULL.
///
/// # Safety
///
/// `cfg` must be NULL or a live pointer from `absum_config_new`; `out` must
/// be valid for one double write, `out_tail` NULL or likewise.
#[no_mangle]
pub unsafe extern "C" fn absum_c_constant(
    cfg: *const AbsumConfig,
    out: *mut f64,
    out_tail: *mut f64,
) -> AbsumStatus {
    if out.is_null() {
        return AbsumStatus::NullPointer;
    }
    guard(|| {
        with_cfg(cfg, |c| match c_series(&c.trunc) {
            Ok(res) => {
                *out = res.value;
                if !out_tail.is_null() {
                    *out_tail = res.tail_estimate;
                }
                AbsumStatus::Ok
            }
            Err(e) => const_status(&e),
        })
    })
}

/// The Riemann zeta function at an integer argument j >= 2.
///
/// # Safety
///
/// `out` must be valid for one double write.
#[no_mangle]
pub unsafe extern "C" fn absum_zeta(j: u32, out: *mut f64) -> AbsumStatus {
    if out.is_null() {
        return AbsumStatus::NullPointer;
    }
    guard(|| match zeta_int(j) {
        Ok(v) => {
            *out = v;
            AbsumStatus::Ok
        }
        Err(e) => const_status(&e),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_lifecycle_and_setters() {
        unsafe {
            let cfg = absum_config_new();
            assert!(!cfg.is_null());
            assert_eq!(absum_config_set_threads(cfg, 2), AbsumStatus::Ok);
            assert_eq!(
                absum_config_set_threads(cfg, 0),
                AbsumStatus::InvalidArgument
            );
            assert_eq!(absum_config_set_segment_len(cfg, 1 << 17), AbsumStatus::Ok);
            assert_eq!(
                absum_config_set_segment_len(cfg, 1024),
                AbsumStatus::InvalidArgument
            );
            assert_eq!(
                absum_config_set_cutoffs(cfg, 10_000, 100_000, 1_000),
                AbsumStatus::Ok
            );
            assert_eq!(
                absum_config_set_cutoffs(cfg, 1, 0, 0),
                AbsumStatus::InvalidArgument
            );
            absum_config_free(cfg);
            absum_config_free(std::ptr::null_mut());
        }
    }

    #[test]
    fn null_handling() {
        unsafe {
            assert_eq!(
                absum_qsum(std::ptr::null(), 10, std::ptr::null_mut()),
                AbsumStatus::NullPointer
            );
            assert_eq!(
                absum_config_set_threads(std::ptr::null_mut(), 1),
                AbsumStatus::NullPointer
            );
            let mut v = 0u64;
            assert_eq!(
                absum_qsum(std::ptr::null(), 0, &mut v),
                AbsumStatus::InvalidArgument
            );
        }
    }

    #[test]
    fn sums_match_library_anchors() {
        unsafe {
            let mut v = 0u64;
            assert_eq!(absum_qsum(std::ptr::null(), 100, &mut v), AbsumStatus::Ok);
            assert_eq!(v, 177);
            assert_eq!(
                absum_tsum(std::ptr::null(), 10, 1, 3, &mut v),
                AbsumStatus::Ok
            );
            assert_eq!(v, 5);
            assert_eq!(
                absum_dkshift(std::ptr::null(), 3, 2, &mut v),
                AbsumStatus::Ok
            );
            assert_eq!(v, 7);
            assert_eq!(absum_maxa(std::ptr::null(), 100, &mut v), AbsumStatus::Ok);
            assert_eq!(v, 11);
            assert_eq!(absum_squarefull_count(100, &mut v), AbsumStatus::Ok);
            assert_eq!(v, 14);
            assert_eq!(
                absum_tsum(std::ptr::null(), 10, 1, 0, &mut v),
                AbsumStatus::InvalidArgument
            );
        }
    }

    #[test]
    fn strict_margin_reports_exceeded() {
        unsafe {
            let cfg = absum_config_new();
            assert_eq!(absum_config_set_margin(cfg, 5), AbsumStatus::Ok);
            let mut v = 0u64;
            assert_eq!(absum_qsum(cfg, 100, &mut v), AbsumStatus::MarginExceeded);
            // same call without the strict margin succeeds
            assert_eq!(absum_qsum(std::ptr::null(), 100, &mut v), AbsumStatus::Ok);
            absum_config_free(cfg);
        }
    }

    #[test]
    fn sieve_buffer_roundtrip() {
        unsafe {
            let mut buf = vec![0u16; 1000];
            assert_eq!(
                absum_sieve_a(std::ptr::null(), 1, 1001, buf.as_mut_ptr(), buf.len()),
                AbsumStatus::Ok
            );
            assert_eq!(&buf[..10], &[1, 1, 1, 2, 1, 1, 1, 3, 2, 1]);
            assert_eq!(buf[63], 11); // a(64)
            assert_eq!(
                absum_sieve_a(std::ptr::null(), 1, 1001, buf.as_mut_ptr(), 999),
                AbsumStatus::InvalidArgument
            );
            assert_eq!(
                absum_sieve_a(std::ptr::null(), 5, 5, buf.as_mut_ptr(), 0),
                AbsumStatus::InvalidArgument
            );
        }
    }

    #[test]
    fn constants_reachable() {
        unsafe {
            let mut v = 0f64;
            let mut tail = 0f64;
            assert_eq!(absum_zeta(2, &mut v), AbsumStatus::Ok);
            assert!((v - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
            assert_eq!(absum_zeta(1, &mut v), AbsumStatus::InvalidArgument);
            assert_eq!(
                absum_crk(std::ptr::null(), 1, 1, &mut v, &mut tail),
                AbsumStatus::Ok
            );
            assert!((v - 2.2948565916733138).abs() < 2e-9);
            assert_eq!(
                absum_crk(std::ptr::null(), 3, 1, &mut v, std::ptr::null_mut()),
                AbsumStatus::Ok
            );
            assert!(v > 0.0);

            let cfg = absum_config_new();
            assert_eq!(
                absum_config_set_cutoffs(cfg, 10_000, 50_000, 1_000),
                AbsumStatus::Ok
            );
            assert_eq!(absum_c_constant(cfg, &mut v, &mut tail), AbsumStatus::Ok);
            assert!(v > 1.0 && v < 4.0, "C = {v}");
            assert!(tail > 0.0);
            absum_config_free(cfg);
        }
    }
}
