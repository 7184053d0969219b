//! C interface to the `mvk` library.
//!
//! Objects are opaque heap handles released with their `*_free` function.
//! Every fallible call returns an [`MvkStatus`]; on failure the message is
//! available from [`mvk_last_error`] on the same thread. Strings returned
//! through `char **` out-parameters are released with [`mvk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mvk::centripetal::{game_fixpoint, game_step, CentralCone};
use mvk::format::{element_list_json, element_value, Document};
use mvk::spectra::below_order;
use mvk::verifier::{Bounds, Standard, Suite};
use mvk::{ChainProduct, Error, MvElement, PLFunction, Rational};

/// Result of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MvkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    AlgebraMismatch = 4,
    Counterexample = 5,
    Internal = 6,
}

/// A finite product of Łukasiewicz chains.
pub struct MvkAlgebra(ChainProduct);

/// An element of an [`MvkAlgebra`].
pub struct MvkElement(MvElement);

/// A piecewise-linear function on `[0, 1]` with rational breakpoints.
pub struct MvkPl(PLFunction);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MvkStatus {
    match e {
        Error::AlgebraMismatch { .. } | Error::ArityMismatch { .. } => MvkStatus::AlgebraMismatch,
        Error::DocumentParse { .. }
        | Error::Schema(_)
        | Error::MalformedRational(_)
        | Error::TermParse { .. } => MvkStatus::ParseError,
        _ => MvkStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (MvkStatus, String)>) -> MvkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MvkStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MvkStatus::Internal
        }
    }
}

trait IntoFfi<T> {
    fn ffi(self) -> Result<T, (MvkStatus, String)>;
}

impl<T> IntoFfi<T> for Result<T, Error> {
    fn ffi(self) -> Result<T, (MvkStatus, String)> {
        self.map_err(|e| (status_of(&e), e.to_string()))
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (MvkStatus, String)> {
    p.as_ref()
        .ok_or_else(|| (MvkStatus::NullPointer, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), (MvkStatus, String)> {
    if out.is_null() {
        return Err((MvkStatus::NullPointer, "out-parameter is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (MvkStatus, String)> {
    if out.is_null() {
        return Err((MvkStatus::NullPointer, "out-parameter is null".into()));
    }
    *out = CString::new(s)
        .map_err(|_| (MvkStatus::Internal, "string contains nul".to_string()))?
        .into_raw();
    Ok(())
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (MvkStatus, String)> {
    if s.is_null() {
        return Err((MvkStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (MvkStatus::ParseError, format!("{what} is not UTF-8")))
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mvk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mvk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `Ł_{d_0} × … × Ł_{d_{len-1}}`.
///
/// # Safety
/// `denominators` must point to `len` readable values.
#[no_mangle]
pub unsafe extern "C" fn mvk_algebra_new(
    denominators: *const u32,
    len: usize,
    out: *mut *mut MvkAlgebra,
) -> MvkStatus {
    guard(|| {
        if denominators.is_null() && len > 0 {
            return Err((MvkStatus::NullPointer, "denominators is null".into()));
        }
        let ds = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(denominators, len).to_vec()
        };
        put(out, MvkAlgebra(ChainProduct::new(ds).ffi()?))
    })
}

/// # Safety
/// `a` must come from [`mvk_algebra_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mvk_algebra_free(a: *mut MvkAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Number of factors, or 0 for null.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mvk_algebra_rank(a: *const MvkAlgebra) -> usize {
    a.as_ref().map_or(0, |a| a.0.rank())
}

/// Number of elements (saturating), or 0 for null.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mvk_algebra_carrier(a: *const MvkAlgebra) -> u64 {
    a.as_ref().map_or(0, |a| a.0.carrier_size())
}

/// The element with coordinate values `numerators[i] / d_i`.
///
/// # Safety
/// `a` must be a live handle and `numerators` must point to `len` values.
#[no_mangle]
pub unsafe extern "C" fn mvk_element_new(
    a: *const MvkAlgebra,
    numerators: *const u32,
    len: usize,
    out: *mut *mut MvkElement,
) -> MvkStatus {
    guard(|| {
        let a = deref(a, "algebra")?;
        if numerators.is_null() && len > 0 {
            return Err((MvkStatus::NullPointer, "numerators is null".into()));
        }
        let ks = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(numerators, len).to_vec()
        };
        put(out, MvkElement(a.0.element_from_numerators(ks).ffi()?))
    })
}

/// Reads an element document such as `{"kind":"element","values":["1/2"]}`.
///
/// # Safety
/// `json` must be a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn mvk_element_parse(json: *const c_char, out: *mut *mut MvkElement) -> MvkStatus {
    guard(|| {
        let src = read_str(json, "json")?;
        let e = mvk::format::parse_element(src).ffi()?.element;
        put(out, MvkElement(e))
    })
}

/// # Safety
/// `e` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mvk_element_free(e: *mut MvkElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Copies up to `cap` numerators into `buf` and stores the rank in `len`.
///
/// # Safety
/// `buf` must have room for `cap` values; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mvk_element_numerators(
    e: *const MvkElement,
    buf: *mut u32,
    cap: usize,
    len: *mut usize,
) -> MvkStatus {
    guard(|| {
        let e = deref(e, "element")?;
        let ks = e.0.numerators();
        if len.is_null() {
            return Err((MvkStatus::NullPointer, "len is null".into()));
        }
        *len = ks.len();
        if cap > 0 {
            if buf.is_null() {
                return Err((MvkStatus::NullPointer, "buf is null".into()));
            }
            let n = cap.min(ks.len());
            ptr::copy_nonoverlapping(ks.as_ptr(), buf, n);
        }
        Ok(())
    })
}

/// Element document with explicit denominators.
///
/// # Safety
/// `e` must be a live handle; `out` receives a string for [`mvk_string_free`].
#[no_mangle]
pub unsafe extern "C" fn mvk_element_to_json(e: *const MvkElement, out: *mut *mut c_char) -> MvkStatus {
    guard(|| {
        let e = deref(e, "element")?;
        put_string(out, element_value(&e.0).to_string())
    })
}

/// Binary operation selector for [`mvk_element_op`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MvkOp {
    Oplus = 0,
    Odot = 1,
    Join = 2,
    Meet = 3,
    Distance = 4,
}

/// `a op b` for elements of one algebra.
///
/// # Safety
/// `a`, `b` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn mvk_element_op(
    op: MvkOp,
    a: *const MvkElement,
    b: *const MvkElement,
    out: *mut *mut MvkElement,
) -> MvkStatus {
    guard(|| {
        let (a, b) = (&deref(a, "a")?.0, &deref(b, "b")?.0);
        let r = match op {
            MvkOp::Oplus => a.oplus(b),
            MvkOp::Odot => a.odot(b),
            MvkOp::Join => a.join(b),
            MvkOp::Meet => a.meet(b),
            MvkOp::Distance => a.chang_distance(b),
        };
        put(out, MvkElement(r.ffi()?))
    })
}

/// `¬a`.
///
/// # Safety
/// `a` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn mvk_element_neg(a: *const MvkElement, out: *mut *mut MvkElement) -> MvkStatus {
    guard(|| put(out, MvkElement(deref(a, "a")?.0.neg())))
}

/// Whether `x ⊑ y`.
///
/// # Safety
/// `x`, `y` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mvk_element_below(
    x: *const MvkElement,
    y: *const MvkElement,
    out: *mut bool,
) -> MvkStatus {
    guard(|| {
        let r = below_order(&deref(x, "x")?.0, &deref(y, "y")?.0).ffi()?;
        if out.is_null() {
            return Err((MvkStatus::NullPointer, "out is null".into()));
        }
        *out = r;
        Ok(())
    })
}

/// Whether `a ⊕ a = a`; false for null.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mvk_element_is_boolean(a: *const MvkElement) -> bool {
    a.as_ref().is_some_and(|a| a.0.is_boolean())
}

/// One application of the game map.
///
/// # Safety
/// `a` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn mvk_game_step(a: *const MvkElement, out: *mut *mut MvkElement) -> MvkStatus {
    guard(|| put(out, MvkElement(game_step(&deref(a, "a")?.0))))
}

/// The fixpoint of the game map from `a` and the number of steps to reach it.
///
/// # Safety
/// `a` must be a live handle; `steps` may be null.
#[no_mangle]
pub unsafe extern "C" fn mvk_game_fixpoint(
    a: *const MvkElement,
    out: *mut *mut MvkElement,
    steps: *mut usize,
) -> MvkStatus {
    guard(|| {
        let trace = game_fixpoint(&deref(a, "a")?.0);
        if !steps.is_null() {
            *steps = trace.n;
        }
        put(out, MvkElement(trace.fixpoint().clone()))
    })
}

/// The central elements below `a` as a JSON array of element documents.
///
/// # Safety
/// `a` must be a live handle; `out` receives a string for [`mvk_string_free`].
#[no_mangle]
pub unsafe extern "C" fn mvk_central_cone_json(a: *const MvkElement, out: *mut *mut c_char) -> MvkStatus {
    guard(|| {
        let cone = CentralCone::of(&deref(a, "a")?.0);
        put_string(out, element_list_json(&cone.members))
    })
}

/// The one-variable function of the σ term.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mvk_pl_sigma(out: *mut *mut MvkPl) -> MvkStatus {
    guard(|| put(out, MvkPl(PLFunction::sigma_star())))
}

/// Reads a `pl1` document.
///
/// # Safety
/// `json` must be a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn mvk_pl_parse(json: *const c_char, out: *mut *mut MvkPl) -> MvkStatus {
    guard(|| match Document::parse(read_str(json, "json")?).ffi()? {
        Document::Pl(f) => put(out, MvkPl(f)),
        other => Err((
            MvkStatus::ParseError,
            format!("expected a pl1 document, got {}", other.kind()),
        )),
    })
}

/// # Safety
/// `f` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mvk_pl_free(f: *mut MvkPl) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// `f(num/den)` as a reduced fraction.
///
/// # Safety
/// `f` must be a live handle; `out_num`, `out_den` writable.
#[no_mangle]
pub unsafe extern "C" fn mvk_pl_eval(
    f: *const MvkPl,
    num: i64,
    den: i64,
    out_num: *mut i64,
    out_den: *mut i64,
) -> MvkStatus {
    guard(|| {
        let f = deref(f, "function")?;
        let x = Rational::new(num, den).ffi()?;
        let y = f.0.eval(&x).ffi()?;
        let (p, q) = y
            .to_i64_parts()
            .ok_or_else(|| (MvkStatus::Internal, "result does not fit in 64 bits".to_string()))?;
        if out_num.is_null() || out_den.is_null() {
            return Err((MvkStatus::NullPointer, "out-parameter is null".into()));
        }
        *out_num = p;
        *out_den = q;
        Ok(())
    })
}

/// Runs a verification suite (or `"all"`) with default bounds, or with every
/// element-level sweep capped at `max_carrier` when it is nonzero. Returns
/// [`MvkStatus::Counterexample`] when a suite fails; the text report is
/// stored in `report` either way.
///
/// # Safety
/// `suite` must be a nul-terminated string; `report` may be null.
#[no_mangle]
pub unsafe extern "C" fn mvk_verify(
    suite: *const c_char,
    max_carrier: u64,
    report: *mut *mut c_char,
) -> MvkStatus {
    let mut failed = false;
    let status = guard(|| {
        let name = read_str(suite, "suite")?;
        let suites = if name == "all" {
            Suite::ALL.to_vec()
        } else {
            vec![name
                .parse::<Suite>()
                .map_err(|e| (MvkStatus::InvalidArgument, e.to_string()))?]
        };
        let bounds = if max_carrier == 0 {
            Bounds::default()
        } else {
            Bounds::with_max_carrier(max_carrier)
        };
        let reports: Vec<_> = suites.iter().map(|s| s.run(&Standard, &bounds)).collect();
        failed = reports.iter().any(|r| !r.passed());
        if !report.is_null() {
            let text: Vec<String> = reports.iter().map(ToString::to_string).collect();
            put_string(report, text.join("\n"))?;
        }
        Ok(())
    });
    if status == MvkStatus::Ok && failed {
        set_error("verification found a counterexample");
        return MvkStatus::Counterexample;
    }
    status
}
