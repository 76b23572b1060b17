//! C ABI over `rsdesign`.
//!
//! Designs are exposed as opaque `RsdDesign` handles created by the
//! `rsd_design_*` constructors and released with `rsd_design_free`. Every
//! fallible function returns an `RsdStatus`; on failure a description is
//! available from `rsd_last_error_message` on the same thread. Strings
//! returned by the library are freed with `rsd_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;
use rsdesign::constructions::{construction_a, fixture, sts, trivial_oa};
use rsdesign::designs::{tdesign_spectral_check, verify_rs_design, DesignArray};
use rsdesign::exactmath::{fisher_bound, multiplicity, natural_bound, IndexPair, SchemeParams};
use rsdesign::format::{parse_design, read_design, write_design};
use rsdesign::search::{exact_cover_search, SearchOptions, SearchStatus};
use rsdesign::Error;

/// Result codes shared by every function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RsdStatus {
    Ok = 0,
    /// The array is not an `(r,s)`-design, or the spectral check says no.
    NotADesign = 1,
    InvalidArgument = 2,
    ParseError = 3,
    /// A mathematical precondition failed (for example `r > m`).
    Precondition = 4,
    TooLarge = 5,
    /// Search exhausted without a design.
    NotFound = 6,
    BudgetExceeded = 7,
    IoError = 8,
    NullPointer = 9,
    Internal = 10,
}

/// An owned design array.
pub struct RsdDesign {
    inner: DesignArray,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(err: &Error) -> RsdStatus {
    match err {
        Error::Parse { .. } | Error::DuplicateRow { .. } | Error::InvalidRow(_) => RsdStatus::ParseError,
        Error::InvalidParams(_) | Error::OutOfRange(_) | Error::WeightMismatch(..) | Error::Ingredient(_) => {
            RsdStatus::InvalidArgument
        }
        Error::Precondition(_) | Error::NonIntegralBound(_) => RsdStatus::Precondition,
        Error::TooLarge { .. } => RsdStatus::TooLarge,
        Error::Io(_) => RsdStatus::IoError,
        _ => RsdStatus::Internal,
    }
}

/// Runs `f`, recording errors and turning panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<RsdStatus, (RsdStatus, String)>) -> RsdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside rsdesign");
            RsdStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (RsdStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (RsdStatus, String) {
    (RsdStatus::NullPointer, format!("{what} is NULL"))
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (RsdStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (RsdStatus::InvalidArgument, format!("{what} is not valid UTF-8")))
}

unsafe fn deref_design<'a>(d: *const RsdDesign) -> Result<&'a DesignArray, (RsdStatus, String)> {
    d.as_ref().map(|h| &h.inner).ok_or_else(|| null("design"))
}

unsafe fn hand_out(y: DesignArray, out: *mut *mut RsdDesign) {
    *out = Box::into_raw(Box::new(RsdDesign { inner: y }));
}

fn params(n: usize, w: usize, q: usize) -> Result<SchemeParams, (RsdStatus, String)> {
    SchemeParams::new(n, w, q).map_err(lib_err)
}

/// Message for the last failure on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rsd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a design from text in the `n w q` header format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rsd_design_parse(text: *const c_char, out: *mut *mut RsdDesign) -> RsdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let y = parse_design(c_str(text, "text")?).map_err(lib_err)?;
        hand_out(y, out);
        Ok(RsdStatus::Ok)
    })
}

/// Reads a design file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rsd_design_load(path: *const c_char, out: *mut *mut RsdDesign) -> RsdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let y = read_design(c_str(path, "path")?).map_err(lib_err)?;
        hand_out(y, out);
        Ok(RsdStatus::Ok)
    })
}

/// One of the built-in example designs, `"fig1"` or `"fig2"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rsd_design_fixture(name: *const c_char, out: *mut *mut RsdDesign) -> RsdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let y = fixture(c_str(name, "name")?).map_err(lib_err)?;
        hand_out(y, out);
        Ok(RsdStatus::Ok)
    })
}

/// Releases a design. NULL is ignored.
///
/// # Safety
/// `design` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rsd_design_free(design: *mut RsdDesign) {
    if !design.is_null() {
        drop(Box::from_raw(design));
    }
}

/// Writes `n`, `w`, `q` and the row count. Any output pointer may be NULL.
///
/// # Safety
/// Non-NULL pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rsd_design_dims(
    design: *const RsdDesign,
    n: *mut usize,
    w: *mut usize,
    q: *mut usize,
    rows: *mut usize,
) -> RsdStatus {
    guard(|| {
        let y = deref_design(design)?;
        let p = y.params();
        for (dst, v) in [(n, p.n()), (w, p.w()), (q, p.q()), (rows, y.len())] {
            if !dst.is_null() {
                *dst = v;
            }
        }
        Ok(RsdStatus::Ok)
    })
}

/// Symbol at 0-based `row` and `col`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rsd_design_get(design: *const RsdDesign, row: usize, col: usize, out: *mut u8) -> RsdStatus {
    guard(|| {
        let y = deref_design(design)?;
        if out.is_null() {
            return Err(null("out"));
        }
        if row >= y.len() || col >= y.params().n() {
            return Err((RsdStatus::InvalidArgument, format!("cell ({row},{col}) outside the array")));
        }
        *out = y.rows()[row].get(col);
        Ok(RsdStatus::Ok)
    })
}

/// `Ok` with the index in `lambda` when the array is an `(r,s)`-design,
/// `NotADesign` otherwise.
///
/// # Safety
/// `lambda` may be NULL; otherwise it must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rsd_design_verify(design: *const RsdDesign, r: usize, s: usize, lambda: *mut u64) -> RsdStatus {
    guard(|| {
        let report = verify_rs_design(deref_design(design)?, r, s).map_err(lib_err)?;
        match report.lambda {
            Some(l) if report.is_design => {
                if !lambda.is_null() {
                    *lambda = l;
                }
                Ok(RsdStatus::Ok)
            }
            _ => {
                let w = report.witness.map(|w| format!("{} observed {} expected {}", w.triple, w.observed, w.expected));
                set_error(format!("not a ({r},{s})-design: {}", w.unwrap_or_default()));
                Ok(RsdStatus::NotADesign)
            }
        }
    })
}

/// Exact character-sum check; `Precondition` when `r > m`.
///
/// # Safety
/// `design` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn rsd_design_spectral(design: *const RsdDesign, r: usize, s: usize) -> RsdStatus {
    guard(|| {
        let ok = tdesign_spectral_check(deref_design(design)?, r, s).map_err(lib_err)?;
        Ok(if ok { RsdStatus::Ok } else { RsdStatus::NotADesign })
    })
}

/// The design in file format, to be released with `rsd_string_free`; NULL on failure.
///
/// # Safety
/// `design` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn rsd_design_to_string(design: *const RsdDesign) -> *mut c_char {
    let mut out = ptr::null_mut();
    guard(|| {
        let text = write_design(deref_design(design)?);
        out = CString::new(text).map_err(|_| (RsdStatus::Internal, "interior NUL".into()))?.into_raw();
        Ok(RsdStatus::Ok)
    });
    out
}

/// Releases a string from `rsd_design_to_string`. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rsd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Multiplicity `m_ij` of `J_q(w,n)`; `TooLarge` if it exceeds 64 bits.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rsd_multiplicity(n: usize, w: usize, q: usize, i: usize, j: usize, out: *mut u64) -> RsdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let m = multiplicity(&params(n, w, q)?, IndexPair::new(i, j)).map_err(lib_err)?;
        *out = m.to_u64().ok_or((RsdStatus::TooLarge, format!("multiplicity {m} exceeds 64 bits")))?;
        Ok(RsdStatus::Ok)
    })
}

/// Natural bound `(q-1)^s C(n,r)/C(w,r)` as a reduced fraction, and the
/// Fisher-type bound in `fisher` (0 when `r > m` or `(r,s)` is not in `L`).
///
/// # Safety
/// Output pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rsd_bounds(
    n: usize,
    w: usize,
    q: usize,
    r: usize,
    s: usize,
    natural_num: *mut u64,
    natural_den: *mut u64,
    fisher: *mut u64,
) -> RsdStatus {
    guard(|| {
        if natural_num.is_null() || natural_den.is_null() || fisher.is_null() {
            return Err(null("output pointer"));
        }
        let p = params(n, w, q)?;
        let nat = natural_bound(&p, r, s).map_err(lib_err)?;
        let too_big = || (RsdStatus::TooLarge, "bound exceeds 64 bits".to_string());
        *natural_num = nat.numer().to_u64().ok_or_else(too_big)?;
        *natural_den = nat.denom().to_u64().ok_or_else(too_big)?;
        let rs = IndexPair::new(r, s);
        *fisher = if r <= p.m() && p.in_l(rs) && rs != IndexPair::ZERO {
            fisher_bound(&p, r, s).map_err(lib_err)?.to_u64().ok_or_else(too_big)?
        } else {
            0
        };
        Ok(RsdStatus::Ok)
    })
}

/// A Steiner triple system on `n` points with the trivial array over
/// `q-1` symbols placed on each block: a `(2,1)`-design with index 1.
///
/// # Safety
/// `out` must be a valid pointer; `lambda` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn rsd_construct_sts_trivial(n: usize, q: usize, out: *mut *mut RsdDesign, lambda: *mut u64) -> RsdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let built = construction_a(&sts(n).map_err(lib_err)?, &trivial_oa(3, q).map_err(lib_err)?).map_err(lib_err)?;
        if !lambda.is_null() {
            *lambda = built.lambda;
        }
        hand_out(built.design, out);
        Ok(RsdStatus::Ok)
    })
}

/// Exact-cover search for an index-1 `(r,s)`-design. `Ok` with the design in
/// `out`, `NotFound` when the space is exhausted, `BudgetExceeded` when the
/// node budget runs out, `Precondition` for a non-integral natural bound.
///
/// # Safety
/// `out` must be a valid pointer; `nodes` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn rsd_search(
    n: usize,
    w: usize,
    q: usize,
    r: usize,
    s: usize,
    budget: u64,
    jobs: usize,
    out: *mut *mut RsdDesign,
    nodes: *mut u64,
) -> RsdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let opts = SearchOptions { budget, jobs: jobs.max(1), symmetry: false };
        let res = exact_cover_search(&params(n, w, q)?, r, s, &opts).map_err(lib_err)?;
        if !nodes.is_null() {
            *nodes = res.nodes_explored;
        }
        match (res.status, res.solution) {
            (SearchStatus::Found, Some(y)) => {
                hand_out(y, out);
                Ok(RsdStatus::Ok)
            }
            (SearchStatus::BudgetExceeded, _) => Err((RsdStatus::BudgetExceeded, format!("budget of {budget} nodes exhausted"))),
            _ => Err((RsdStatus::NotFound, "no index-1 design exists".into())),
        }
    })
}
