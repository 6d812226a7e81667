//! C ABI over the core library: opaque config handles, status codes, and
//! flat float buffers, so the entropy machinery can be driven from other
//! languages. The header is generated by cbindgen at build time (a copy
//! is kept in `include/entmax.h`).
//!
//! Conventions: every function returns an [`EntmaxStatus`]; outputs go
//! through pointers supplied by the caller; any non-`Ok` status leaves a
//! message retrievable with [`entmax_last_error`]. Handles returned by
//! the `*_new`-style constructors must be released with
//! [`entmax_config_free`].

use entmax_core::dist::{shannon_entropy, sum_law, CoeffSeq, SumConfig};
use entmax_core::error::Error;
use entmax_core::input::parse_config_json;
use entmax_core::maximizer::{attaining_config_general, ClosedForm};
use entmax_core::optimize::numeric_maximize;
use entmax_core::residue::{conditional_entropy_report, is_log_concave, is_ulc};
use entmax_core::scalar::Rat;
use entmax_core::{poly, FinitePmf};
use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Status code returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntmaxStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument failed validation (shape, range, UTF-8, JSON).
    InvalidArgument = 2,
    /// The request is outside the mathematical domain of the operation.
    DomainError = 3,
    /// An output buffer is too small; retry with the reported length.
    BufferTooSmall = 4,
    /// The implementation panicked; state is unchanged.
    InternalError = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = msg.into());
}

fn status_of(err: &Error) -> EntmaxStatus {
    match err {
        Error::Domain(_) => EntmaxStatus::DomainError,
        Error::Config(_) | Error::Parse(_) | Error::GridTooLarge { .. } => {
            EntmaxStatus::InvalidArgument
        }
    }
}

/// Copy the message of the most recent error on this thread into `buf`
/// (NUL-terminated, truncated to `len` bytes). Returns the full message
/// length in bytes, excluding the terminator. `buf` may be null to query
/// the length alone.
///
/// # Safety
/// `buf`, when non-null, must point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn entmax_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let msg = slot.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast(), n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Opaque handle: an immutable list of independent pmfs on `{0, ..., r}`.
pub struct EntmaxConfig {
    inner: SumConfig<f64>,
}

/// Parity-conditioned entropies of a ternary sum (bits).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct EntmaxParityReport {
    /// Mass on even sums.
    pub w: f64,
    pub h_even: f64,
    pub h_odd: f64,
    pub bound_even: f64,
    pub bound_odd: f64,
    /// 1 when the even class has zero mass.
    pub even_empty: u8,
    /// 1 when the odd class has zero mass.
    pub odd_empty: u8,
}

/// Closed-form and numeric maximization summary (entropies in bits).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct EntmaxMaxSummary {
    pub bound_bits: f64,
    pub w0: f64,
    pub attaining_entropy: f64,
    pub numeric_best: f64,
    pub gap_bits: f64,
}

fn guarded<F: FnOnce() -> EntmaxStatus>(f: F) -> EntmaxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal panic: {msg}"));
            EntmaxStatus::InternalError
        }
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> EntmaxStatus {
    if out.is_null() {
        set_error("null output pointer");
        return EntmaxStatus::NullPointer;
    }
    *out = value;
    EntmaxStatus::Ok
}

/// Build a config from a row-major `n x (r + 1)` probability matrix.
///
/// # Safety
/// `probs` must point to `n * (r + 1)` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmax_config_new(
    r: u32,
    n: u32,
    probs: *const f64,
    out: *mut *mut EntmaxConfig,
) -> EntmaxStatus {
    guarded(|| {
        if probs.is_null() || out.is_null() {
            set_error("null pointer argument");
            return EntmaxStatus::NullPointer;
        }
        let width = r as usize + 1;
        let rows = n as usize;
        let flat = std::slice::from_raw_parts(probs, rows * width);
        let pmfs: Result<Vec<_>, Error> = flat
            .chunks(width)
            .map(|row| FinitePmf::new(row.to_vec()))
            .collect();
        match pmfs.and_then(SumConfig::new) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(EntmaxConfig { inner }));
                EntmaxStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Build a config from the JSON format `{"r": 2, "pmfs": [[...], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmax_config_from_json(
    json: *const c_char,
    out: *mut *mut EntmaxConfig,
) -> EntmaxStatus {
    guarded(|| {
        if json.is_null() || out.is_null() {
            set_error("null pointer argument");
            return EntmaxStatus::NullPointer;
        }
        let text = match CStr::from_ptr(json).to_str() {
            Ok(t) => t,
            Err(_) => {
                set_error("config JSON is not valid UTF-8");
                return EntmaxStatus::InvalidArgument;
            }
        };
        match parse_config_json(text).and_then(|raw| raw.resolve::<f64>()) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(EntmaxConfig { inner }));
                EntmaxStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                status_of(&e)
            }
        }
    })
}

/// The configuration attaining the closed-form maximum for `(n, r)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmax_attaining_config(
    n: u32,
    r: u32,
    out: *mut *mut EntmaxConfig,
) -> EntmaxStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return EntmaxStatus::NullPointer;
        }
        match attaining_config_general::<f64>(n as usize, r as usize) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(EntmaxConfig { inner }));
                EntmaxStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Release a config handle. Null is ignored.
///
/// # Safety
/// `config` must have come from this library and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn entmax_config_free(config: *mut EntmaxConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// Number of variables in the config.
///
/// # Safety
/// `config` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmax_config_n(
    config: *const EntmaxConfig,
    out: *mut u32,
) -> EntmaxStatus {
    guarded(|| {
        if config.is_null() {
            set_error("null config handle");
            return EntmaxStatus::NullPointer;
        }
        write_out(out, (*config).inner.n() as u32)
    })
}

/// Largest symbol value `r` of the config's alphabet.
///
/// # Safety
/// `config` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmax_config_r(
    config: *const EntmaxConfig,
    out: *mut u32,
) -> EntmaxStatus {
    guarded(|| {
        if config.is_null() {
            set_error("null config handle");
            return EntmaxStatus::NullPointer;
        }
        write_out(out, (*config).inner.r() as u32)
    })
}

/// PMF of the sum of the config's variables; `n * r + 1` doubles.
/// `written` receives the required length; the copy happens only when
/// `buf_len` suffices.
///
/// # Safety
/// `config` must be a live handle; `buf` must point to `buf_len` doubles;
/// `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmax_sum_law(
    config: *const EntmaxConfig,
    buf: *mut f64,
    buf_len: usize,
    written: *mut usize,
) -> EntmaxStatus {
    guarded(|| {
        if config.is_null() || written.is_null() {
            set_error("null pointer argument");
            return EntmaxStatus::NullPointer;
        }
        let law = sum_law(&(*config).inner);
        *written = law.len();
        if buf.is_null() || buf_len < law.len() {
            set_error(format!("law needs {} doubles, got {buf_len}", law.len()));
            return EntmaxStatus::BufferTooSmall;
        }
        ptr::copy_nonoverlapping(law.coeffs().as_ptr(), buf, law.len());
        EntmaxStatus::Ok
    })
}

/// Shannon entropy (bits) of the sum of the config's variables.
///
/// # Safety
/// `config` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmax_sum_entropy(
    config: *const EntmaxConfig,
    out: *mut f64,
) -> EntmaxStatus {
    guarded(|| {
        if config.is_null() {
            set_error("null config handle");
            return EntmaxStatus::NullPointer;
        }
        match shannon_entropy(&sum_law(&(*config).inner)) {
            Ok(bits) => write_out(out, bits),
            Err(e) => {
                set_error(e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Parity-conditioned entropy report of a ternary config.
///
/// # Safety
/// `config` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmax_parity_report(
    config: *const EntmaxConfig,
    out: *mut EntmaxParityReport,
) -> EntmaxStatus {
    guarded(|| {
        if config.is_null() {
            set_error("null config handle");
            return EntmaxStatus::NullPointer;
        }
        match conditional_entropy_report(&(*config).inner) {
            Ok(rep) => write_out(
                out,
                EntmaxParityReport {
                    w: rep.w,
                    h_even: rep.h_even,
                    h_odd: rep.h_odd,
                    bound_even: rep.bound_even,
                    bound_odd: rep.bound_odd,
                    even_empty: rep.even_empty as u8,
                    odd_empty: rep.odd_empty as u8,
                },
            ),
            Err(e) => {
                set_error(e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Binary entropy `h(p)` in bits, `p` in `[0, 1]`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmax_binary_entropy(p: f64, out: *mut f64) -> EntmaxStatus {
    guarded(|| match entmax_core::binary_entropy(p) {
        Ok(bits) => write_out(out, bits),
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    })
}

/// Entropy of the symmetric binomial `Bin(m, 1/2)` in bits.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmax_binomial_entropy(m: u32, out: *mut f64) -> EntmaxStatus {
    guarded(|| write_out(out, entmax_core::binomial_entropy(m as usize)))
}

/// Closed-form maximum of the sum entropy over products of laws on
/// `{0, ..., r}`, with its mixing weight.
///
/// # Safety
/// `w0` and `bound_bits` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmax_bound(
    n: u32,
    r: u32,
    w0: *mut f64,
    bound_bits: *mut f64,
) -> EntmaxStatus {
    guarded(|| match ClosedForm::new(n as usize, r as usize) {
        Ok(cf) => {
            if w0.is_null() || bound_bits.is_null() {
                set_error("null output pointer");
                return EntmaxStatus::NullPointer;
            }
            *w0 = cf.w0;
            *bound_bits = cf.bound_bits;
            EntmaxStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    })
}

/// Multi-start numeric maximization; deterministic in `(n, r, starts,
/// seed)`. `best_config` may be null; when non-null it receives a handle
/// to the best configuration found.
///
/// # Safety
/// `out` must be writable; `best_config`, when non-null, must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmax_optimize(
    n: u32,
    r: u32,
    starts: u32,
    seed: u64,
    out: *mut EntmaxMaxSummary,
    best_config: *mut *mut EntmaxConfig,
) -> EntmaxStatus {
    guarded(|| {
        match numeric_maximize(n as usize, r as usize, starts as usize, seed) {
            Ok(report) => {
                if out.is_null() {
                    set_error("null output pointer");
                    return EntmaxStatus::NullPointer;
                }
                *out = EntmaxMaxSummary {
                    bound_bits: report.closed_form.bound_bits,
                    w0: report.closed_form.w0,
                    attaining_entropy: report.attaining_entropy,
                    numeric_best: report.numeric_best,
                    gap_bits: report.gap_bits,
                };
                if !best_config.is_null() {
                    *best_config = Box::into_raw(Box::new(EntmaxConfig {
                        inner: report.numeric_config,
                    }));
                }
                EntmaxStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                status_of(&e)
            }
        }
    })
}

unsafe fn seq_from_raw(
    coeffs: *const f64,
    len: usize,
    order: u64,
) -> Result<CoeffSeq<Rat>, Error> {
    if len == 0 {
        return Err(Error::domain("empty coefficient sequence"));
    }
    let slice = std::slice::from_raw_parts(coeffs, len);
    let exact: Vec<Rat> = slice
        .iter()
        .map(|&x| {
            if x.is_finite() {
                Ok(<Rat as entmax_core::Scalar>::from_f64(x))
            } else {
                Err(Error::domain(format!("non-finite coefficient {x}")))
            }
        })
        .collect::<Result<_, _>>()?;
    CoeffSeq::new(exact, order as usize)
}

/// Ultra-log-concavity of order `order`, decided exactly (the doubles
/// embed exactly into the rationals).
///
/// # Safety
/// `coeffs` must point to `len` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmax_seq_is_ulc(
    coeffs: *const f64,
    len: usize,
    order: u64,
    out: *mut u8,
) -> EntmaxStatus {
    guarded(|| {
        if coeffs.is_null() {
            set_error("null coefficient pointer");
            return EntmaxStatus::NullPointer;
        }
        match seq_from_raw(coeffs, len, order).and_then(|seq| is_ulc(&seq, order as usize)) {
            Ok(v) => write_out(out, v as u8),
            Err(e) => {
                set_error(e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Log-concavity, decided exactly.
///
/// # Safety
/// `coeffs` must point to `len` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmax_seq_is_log_concave(
    coeffs: *const f64,
    len: usize,
    out: *mut u8,
) -> EntmaxStatus {
    guarded(|| {
        if coeffs.is_null() {
            set_error("null coefficient pointer");
            return EntmaxStatus::NullPointer;
        }
        match seq_from_raw(coeffs, len, len.saturating_sub(1) as u64) {
            Ok(seq) => write_out(out, is_log_concave(&seq) as u8),
            Err(e) => {
                set_error(e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Whether all zeros of the polynomial are real (exact Sturm count).
///
/// # Safety
/// `coeffs` must point to `len` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmax_seq_real_rooted(
    coeffs: *const f64,
    len: usize,
    out: *mut u8,
) -> EntmaxStatus {
    guarded(|| {
        if coeffs.is_null() {
            set_error("null coefficient pointer");
            return EntmaxStatus::NullPointer;
        }
        let slice = std::slice::from_raw_parts(coeffs, len);
        match poly::real_rooted(slice) {
            Ok(v) => write_out(out, v as u8),
            Err(e) => {
                set_error(e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Whether all zeros lie in the open left half-plane (exact Routh table).
///
/// # Safety
/// `coeffs` must point to `len` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmax_seq_hurwitz_stable(
    coeffs: *const f64,
    len: usize,
    out: *mut u8,
) -> EntmaxStatus {
    guarded(|| {
        if coeffs.is_null() {
            set_error("null coefficient pointer");
            return EntmaxStatus::NullPointer;
        }
        let slice = std::slice::from_raw_parts(coeffs, len);
        match poly::hurwitz_stable(slice) {
            Ok(v) => write_out(out, v as u8),
            Err(e) => {
                set_error(e.to_string());
                status_of(&e)
            }
        }
    })
}
