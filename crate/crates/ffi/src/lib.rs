//! C ABI over the session runner, the K-theory helpers and Leavitt normal forms.
//!
//! Every fallible call returns a `SkewdilStatus` and writes its result through an
//! out pointer. On failure `skewdil_last_error` describes what went wrong; the
//! message belongs to the calling thread and lives until that thread's next call.
//! Strings handed out by the library are released with `skewdil_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use skewdil::cli::expr::{parse_expr, Expr};
use skewdil::cli::{parse_session, run, Session, DEFAULT_SEED, DEFAULT_TRIALS};
use skewdil::ktheory_examples::{pv_cokernel, LocalizedInt};
use skewdil::report::Report;
use skewdil::ring::{Leavitt, LeavittElem, Notation, Ring};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkewdilStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    Panic = 5,
}

/// A parsed session.
pub struct SkewdilSession {
    inner: Session,
}

/// The report of one run.
pub struct SkewdilReport {
    inner: Report,
}

/// Overrides for `skewdil_session_run`. A null pointer means no overrides.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SkewdilRunOptions {
    /// When false, the session's `seed` (or 0) is used.
    pub override_seed: bool,
    pub seed: u64,
    /// 0 keeps the session's `trials` (or 50).
    pub trials: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guard(f: impl FnOnce() -> Result<(), (SkewdilStatus, String)> + UnwindSafe) -> SkewdilStatus {
    clear_error();
    match catch_unwind(f) {
        Ok(Ok(())) => SkewdilStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            SkewdilStatus::Panic
        }
    }
}

fn null(what: &str) -> (SkewdilStatus, String) {
    (SkewdilStatus::NullArgument, format!("`{what}` is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (SkewdilStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (SkewdilStatus::InvalidUtf8, format!("`{what}` is not UTF-8: {e}")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (SkewdilStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| (SkewdilStatus::InvalidArgument, "output holds a NUL byte".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or null.
#[no_mangle]
pub extern "C" fn skewdil_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn skewdil_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` is null or came from this library and has not been freed.
#[no_mangle]
pub unsafe extern "C" fn skewdil_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse session text. Errors carry `line L, column C`.
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn skewdil_session_parse(text: *const c_char, out: *mut *mut SkewdilSession) -> SkewdilStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = parse_session(text).map_err(|e| (SkewdilStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(SkewdilSession { inner }));
        Ok(())
    })
}

/// # Safety
/// `s` is null or a live session from `skewdil_session_parse`.
#[no_mangle]
pub unsafe extern "C" fn skewdil_session_free(s: *mut SkewdilSession) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Canonical text of a session; parsing it gives the same statements.
///
/// # Safety
/// `s` is a live session; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn skewdil_session_render(s: *const SkewdilSession, out: *mut *mut c_char) -> SkewdilStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("session"))?;
        write_string(out, s.inner.render())
    })
}

/// Run every statement. A failing check is not an error: inspect the report.
///
/// # Safety
/// `s` is a live session; `opts` is null or valid; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn skewdil_session_run(
    s: *const SkewdilSession,
    opts: *const SkewdilRunOptions,
    out: *mut *mut SkewdilReport,
) -> SkewdilStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("session"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let o = opts.as_ref().copied();
        let seed = match o {
            Some(o) if o.override_seed => o.seed,
            _ => s.inner.seed().unwrap_or(DEFAULT_SEED),
        };
        let trials = match o {
            Some(o) if o.trials > 0 => o.trials,
            _ => s.inner.trials().unwrap_or(DEFAULT_TRIALS),
        };
        let inner = run(&s.inner, seed, trials);
        *out = Box::into_raw(Box::new(SkewdilReport { inner }));
        Ok(())
    })
}

/// # Safety
/// `r` is null or a live report.
#[no_mangle]
pub unsafe extern "C" fn skewdil_report_free(r: *mut SkewdilReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` is a live report; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn skewdil_report_text(r: *const SkewdilReport, out: *mut *mut c_char) -> SkewdilStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("report"))?;
        write_string(out, r.inner.render_text())
    })
}

/// Line-oriented `key=value` form, stable for a fixed seed.
///
/// # Safety
/// `r` is a live report; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn skewdil_report_structured(r: *const SkewdilReport, out: *mut *mut c_char) -> SkewdilStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("report"))?;
        write_string(out, r.inner.render_structured())
    })
}

/// Number of checks; 0 for a null report.
///
/// # Safety
/// `r` is null or a live report.
#[no_mangle]
pub unsafe extern "C" fn skewdil_report_checks(r: *const SkewdilReport) -> usize {
    r.as_ref().map_or(0, |r| r.inner.records().count())
}

/// Number of failed checks; 0 for a null report.
///
/// # Safety
/// `r` is null or a live report.
#[no_mangle]
pub unsafe extern "C" fn skewdil_report_failures(r: *const SkewdilReport) -> usize {
    r.as_ref().map_or(0, |r| r.inner.failures())
}

/// The CLI's exit status for this report: 0 when every check passed, else 1.
/// A null report gives 2.
///
/// # Safety
/// `r` is null or a live report.
#[no_mangle]
pub unsafe extern "C" fn skewdil_report_exit_code(r: *const SkewdilReport) -> i32 {
    match r.as_ref() {
        None => 2,
        Some(r) if r.inner.all_passed() => 0,
        Some(_) => 1,
    }
}

/// Order of the cokernel of 1 − n on Z[1/n]; 1 means trivial.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn skewdil_ktheory_cokernel_order(n: u64, out: *mut u64) -> SkewdilStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let c = pv_cokernel(n).map_err(|e| (SkewdilStatus::InvalidArgument, e.to_string()))?;
        *out = c.group.order.max(1);
        Ok(())
    })
}

/// Class of `num / n^k` in the cokernel Z/(n − 1).
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn skewdil_ktheory_class(n: u64, num: i64, k: u32, out: *mut u64) -> SkewdilStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let bad = |e: skewdil::ktheory_examples::KError| (SkewdilStatus::InvalidArgument, e.to_string());
        let c = pv_cokernel(n).map_err(bad)?;
        let x = LocalizedInt::new(num, k, n).map_err(bad)?;
        *out = c.class(&x).map_err(bad)?;
        Ok(())
    })
}

fn leavitt_eval(l: &Leavitt, e: &Expr) -> Result<LeavittElem, String> {
    Ok(match e {
        Expr::Num(c) | Expr::Name(c, _) => l.parse_atom(c).map_err(|e| e.to_string())?,
        Expr::Sm(..) | Expr::Sp(..) => return Err("`sm`/`sp` have no meaning in L_n".into()),
        Expr::Neg(a) => l.neg(&leavitt_eval(l, a)?),
        Expr::Add(a, b) => l.add(&leavitt_eval(l, a)?, &leavitt_eval(l, b)?),
        Expr::Sub(a, b) => l.sub(&leavitt_eval(l, a)?, &leavitt_eval(l, b)?),
        Expr::Mul(a, b) => l.mul(&leavitt_eval(l, a)?, &leavitt_eval(l, b)?),
    })
}

/// Normal form in L_n of an expression over `x<i>`, `y<i>` and rationals,
/// e.g. `y1*x1 + y2*x2` or `2*x1*(y1 - y2)`.
///
/// # Safety
/// `expr` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn skewdil_leavitt_normalize(n: u8, expr: *const c_char, out: *mut *mut c_char) -> SkewdilStatus {
    guard(|| {
        let src = read_str(expr, "expr")?;
        let l = Leavitt::new(n.into()).map_err(|e| (SkewdilStatus::InvalidArgument, e.to_string()))?;
        let e = parse_expr(src).map_err(|e| (SkewdilStatus::ParseError, e.to_string()))?;
        let v = leavitt_eval(&l, &e).map_err(|e| (SkewdilStatus::ParseError, e))?;
        write_string(out, l.format(&v))
    })
}
