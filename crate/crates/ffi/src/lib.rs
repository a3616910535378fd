//! C ABI over the `vacillating` library.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free` function. Strings returned through
//! out-parameters are heap allocated and released with
//! [`vac_string_free`]. Every fallible call returns a [`VacStatus`]; on
//! failure [`vac_last_error`] describes the problem for the calling
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use vacillating::enumeration::{self, Report, VerifyOptions};
use vacillating::{
    di_insert, di_invert, vac_insert, vac_invert, Error, Family, SetPartitionDiagram, StandardTableau,
    VacillatingTableau,
};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VacStatus {
    Ok = 0,
    NullPointer = 1,
    ParseError = 2,
    InvalidInput = 3,
    LimitExceeded = 4,
    VerificationFailed = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

/// A set partition diagram.
pub struct VacDiagram(SetPartitionDiagram);

/// A vacillating tableau in either coordinate form.
pub struct VacPath(VacillatingTableau);

/// A standard tableau.
pub struct VacTableau(StandardTableau);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("nul bytes removed"));
}

fn status_of(e: &Error) -> VacStatus {
    match e {
        Error::Parse { .. } => VacStatus::ParseError,
        Error::LimitExceeded { .. } => VacStatus::LimitExceeded,
        _ => VacStatus::InvalidInput,
    }
}

fn fail(e: Error) -> VacStatus {
    set_error(e.to_string());
    status_of(&e)
}

/// Runs `body`, converting panics into [`VacStatus::Internal`].
fn guard(body: impl FnOnce() -> VacStatus) -> VacStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal error");
            VacStatus::Internal
        }
    }
}

fn null() -> VacStatus {
    set_error("null pointer argument");
    VacStatus::NullPointer
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, VacStatus> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string is not valid UTF-8");
        VacStatus::ParseError
    })
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> VacStatus {
    let c = CString::new(text.replace('\0', " ")).expect("nul bytes removed");
    *out = c.into_raw();
    VacStatus::Ok
}

unsafe fn boxed<T>(out: *mut *mut T, value: T) -> VacStatus {
    *out = Box::into_raw(Box::new(value));
    VacStatus::Ok
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message describing the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn vac_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library.
#[no_mangle]
pub unsafe extern "C" fn vac_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses diagram text such as `1 3 4' | 2 1' | 4 3' 2'`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vac_diagram_parse(text: *const c_char, out: *mut *mut VacDiagram) -> VacStatus {
    guard(|| {
        if out.is_null() {
            return null();
        }
        let text = try_status!(read_str(text));
        match text.parse() {
            Ok(d) => boxed(out, VacDiagram(d)),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vac_diagram_to_string(d: *const VacDiagram, out: *mut *mut c_char) -> VacStatus {
    guard(|| match (d.as_ref(), out.is_null()) {
        (Some(d), false) => write_string(out, d.0.to_string()),
        _ => null(),
    })
}

/// Size `k` of the diagram; 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vac_diagram_k(d: *const VacDiagram) -> usize {
    d.as_ref().map_or(0, |d| d.0.k())
}

/// # Safety
/// `d` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vac_diagram_free(d: *mut VacDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Parses a vacillating tableau: `-;-;1` or `(6);(5);(5,1)`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vac_path_parse(text: *const c_char, out: *mut *mut VacPath) -> VacStatus {
    guard(|| {
        if out.is_null() {
            return null();
        }
        let text = try_status!(read_str(text));
        match text.parse() {
            Ok(p) => boxed(out, VacPath(p)),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vac_path_to_string(p: *const VacPath, out: *mut *mut c_char) -> VacStatus {
    guard(|| match (p.as_ref(), out.is_null()) {
        (Some(p), false) => write_string(out, p.0.to_string()),
        _ => null(),
    })
}

/// # Safety
/// `p` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vac_path_free(p: *mut VacPath) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Parses a standard tableau such as `1,2,3,6/4/5`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vac_tableau_parse(text: *const c_char, out: *mut *mut VacTableau) -> VacStatus {
    guard(|| {
        if out.is_null() {
            return null();
        }
        let text = try_status!(read_str(text));
        match text.parse() {
            Ok(t) => boxed(out, VacTableau(t)),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vac_tableau_to_string(t: *const VacTableau, out: *mut *mut c_char) -> VacStatus {
    guard(|| match (t.as_ref(), out.is_null()) {
        (Some(t), false) => write_string(out, t.0.to_string()),
        _ => null(),
    })
}

/// # Safety
/// `t` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vac_tableau_free(t: *mut VacTableau) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Inserts a diagram, producing the pair `(P, Q)`.
///
/// # Safety
/// `d` must be a live handle; `out_p` and `out_q` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn vac_insert_diagram(
    d: *const VacDiagram,
    out_p: *mut *mut VacPath,
    out_q: *mut *mut VacPath,
) -> VacStatus {
    guard(|| {
        let Some(d) = d.as_ref() else { return null() };
        if out_p.is_null() || out_q.is_null() {
            return null();
        }
        let (p, q) = vac_insert(&d.0);
        boxed(out_p, VacPath(p));
        boxed(out_q, VacPath(q))
    })
}

/// Recovers the diagram with insertion output `(P, Q)`.
///
/// # Safety
/// `p` and `q` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vac_invert_paths(
    p: *const VacPath,
    q: *const VacPath,
    out: *mut *mut VacDiagram,
) -> VacStatus {
    guard(|| {
        let (Some(p), Some(q)) = (p.as_ref(), q.as_ref()) else { return null() };
        if out.is_null() {
            return null();
        }
        match vac_invert(&p.0, &q.0) {
            Ok(d) => boxed(out, VacDiagram(d)),
            Err(e) => fail(e),
        }
    })
}

/// Delete-insert of `seq[0..len]` with parameter `n`.
///
/// # Safety
/// `seq` must point to `len` readable values; `out_t` and `out_p` must be
/// valid pointers.
#[no_mangle]
pub unsafe extern "C" fn vac_di_insert(
    seq: *const u32,
    len: usize,
    n: u32,
    out_t: *mut *mut VacTableau,
    out_p: *mut *mut VacPath,
) -> VacStatus {
    guard(|| {
        if (seq.is_null() && len > 0) || out_t.is_null() || out_p.is_null() {
            return null();
        }
        let seq = if len == 0 { &[][..] } else { std::slice::from_raw_parts(seq, len) };
        match di_insert(seq, n) {
            Ok((t, p)) => {
                boxed(out_t, VacTableau(t));
                boxed(out_p, VacPath(p))
            }
            Err(e) => fail(e),
        }
    })
}

/// Inverse of [`vac_di_insert`]. Writes up to `capacity` values to `out`
/// and the sequence length to `out_len`; returns
/// [`VacStatus::BufferTooSmall`] when `capacity` is short.
///
/// # Safety
/// `t` and `p` must be live handles, `out` must have room for `capacity`
/// values and `out_len` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vac_di_invert(
    t: *const VacTableau,
    p: *const VacPath,
    out: *mut u32,
    capacity: usize,
    out_len: *mut usize,
) -> VacStatus {
    guard(|| {
        let (Some(t), Some(p)) = (t.as_ref(), p.as_ref()) else { return null() };
        if out_len.is_null() || (out.is_null() && capacity > 0) {
            return null();
        }
        match di_invert(&t.0, &p.0) {
            Ok(seq) => {
                *out_len = seq.len();
                if seq.len() > capacity {
                    set_error(format!("sequence has {} entries, buffer holds {capacity}", seq.len()));
                    return VacStatus::BufferTooSmall;
                }
                if !seq.is_empty() {
                    ptr::copy_nonoverlapping(seq.as_ptr(), out, seq.len());
                }
                VacStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Runs an exhaustive identity check and writes its JSON report to
/// `out_json`.
///
/// `identity` is one of `bell`, `odd-bell`, `nk`, `ideal`, `catalan`,
/// `binomial`, `symmetric:<family>` or `squares:<family>`. `k2` is twice
/// `k`. `extra` is `n` for `nk` and `t` for `ideal`; pass a negative value
/// for the default (`n = 2k`, every `t`). `workers` of 0 uses the global
/// pool. Returns [`VacStatus::VerificationFailed`] (with the report still
/// written) when the identity does not hold.
///
/// # Safety
/// `identity` must be a nul-terminated string and `out_json` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn vac_verify(
    identity: *const c_char,
    k2: usize,
    extra: i64,
    workers: usize,
    out_json: *mut *mut c_char,
) -> VacStatus {
    guard(|| {
        if out_json.is_null() {
            return null();
        }
        let identity = try_status!(read_str(identity));
        let opts = VerifyOptions {
            workers: (workers > 0).then_some(workers),
            force: false,
        };
        let reports = match run_verify(identity, k2, extra, &opts) {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        let value = if reports.len() == 1 {
            reports[0].to_json()
        } else {
            serde_json::Value::Array(reports.iter().map(Report::to_json).collect())
        };
        write_string(out_json, value.to_string());
        if reports.iter().all(|r| r.pass) {
            VacStatus::Ok
        } else {
            set_error(format!("{identity} does not hold"));
            VacStatus::VerificationFailed
        }
    })
}

fn run_verify(identity: &str, k2: usize, extra: i64, opts: &VerifyOptions) -> Result<Vec<Report>, Error> {
    let integer = |k2: usize| {
        if k2.is_multiple_of(2) {
            Ok(k2 / 2)
        } else {
            Err(Error::InvalidArgument(format!("{identity} needs an integer k")))
        }
    };
    let (name, family) = match identity.split_once(':') {
        Some((name, family)) => (name, Some(family.parse::<Family>()?)),
        None => (identity, None),
    };
    let family_size = |family: Family| match (family, k2 % 2) {
        (Family::HalfA, 1) => Ok(k2.div_ceil(2)),
        (Family::HalfA, _) => Err(Error::InvalidArgument("half_A needs a half-integer k".into())),
        _ => integer(k2),
    };
    Ok(match name {
        "bell" => vec![enumeration::verify_bell(integer(k2)?, opts)?],
        "odd-bell" => vec![enumeration::verify_odd_bell(family_size(Family::HalfA)?, opts)?],
        "nk" => {
            let k = integer(k2)?;
            let n = if extra < 0 { 2 * k as u32 } else { extra as u32 };
            vec![enumeration::verify_nk(n, k, opts)?]
        }
        "ideal" => {
            let k = integer(k2)?;
            if extra < 0 {
                (0..=k)
                    .map(|t| enumeration::verify_ideal(k, t, opts))
                    .collect::<Result<_, _>>()?
            } else {
                vec![enumeration::verify_ideal(k, extra as usize, opts)?]
            }
        }
        "catalan" => vec![enumeration::verify_catalan(k2, opts)?],
        "binomial" => vec![enumeration::verify_binomial(integer(k2)?, opts)?],
        "symmetric" => {
            let family = family.unwrap_or(Family::A);
            vec![enumeration::verify_symmetric(family, family_size(family)?, opts)?]
        }
        "squares" => {
            let family = family.unwrap_or(Family::A);
            vec![enumeration::verify_squares(family, family_size(family)?, opts)?]
        }
        other => return Err(Error::InvalidArgument(format!("unknown identity {other:?}"))),
    })
}
