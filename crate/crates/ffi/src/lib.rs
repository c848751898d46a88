//! C interface to `partalg`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Every fallible call returns a
//! [`PaStatus`]; on failure the message is kept per thread and read with
//! [`pa_last_error`]. Strings handed out are freed with [`pa_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use partalg::algebra::SpecialElement;
use partalg::combinatorics::Partition;
use partalg::diagrams::{enumerate, Diagram, Rank};
use partalg::scalars::{format_rational, Rational};
use partalg::structure::{char_poly, semisimple_verdict};
use partalg::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    LimitExceeded = 5,
    DivisionByZero = 6,
    Panic = 7,
}

/// A partition diagram.
pub struct PaDiagram(Diagram);

/// An algebra element at a rational parameter.
pub struct PaElement(SpecialElement);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> PaStatus {
    match err {
        Error::Parse(_) | Error::NotAPartition(_) | Error::VertexOutOfRange(_) => PaStatus::Parse,
        Error::LimitExceeded(_) => PaStatus::LimitExceeded,
        Error::DivisionByZero | Error::DenominatorVanishes(_) => PaStatus::DivisionByZero,
        _ => PaStatus::Domain,
    }
}

fn guard<F>(f: F) -> PaStatus
where
    F: FnOnce() -> Result<(), (PaStatus, String)> + UnwindSafe,
{
    match catch_unwind(f) {
        Ok(Ok(())) => PaStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside partalg".into());
            PaStatus::Panic
        }
    }
}

type Fallible<T> = Result<T, (PaStatus, String)>;

fn lift<T>(r: partalg::Result<T>) -> Fallible<T> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (PaStatus, String) {
    (PaStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Fallible<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (PaStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn out_string(out: *mut *mut c_char, s: String) -> Fallible<()> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| (PaStatus::Domain, "interior NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn put<T>(out: *mut T, v: T) -> Fallible<()> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = v;
    Ok(())
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Fallible<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Message of the last failed call on this thread, or NULL. Owned by the
/// library and valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pa_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of diagrams at double rank `double_rank` (at most 8).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pa_count_diagrams(double_rank: u32, out: *mut u64) -> PaStatus {
    guard(|| {
        let rank = u8::try_from(double_rank)
            .map_err(|_| (PaStatus::LimitExceeded, format!("double rank {double_rank}")))?;
        let n = lift(enumerate(Rank::from_double(rank)))?.len();
        put(out, n as u64)
    })
}

/// Parses `{"double_rank": 4, "blocks": [[1, -1], [2], [-2]]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pa_diagram_from_json(json: *const c_char, out: *mut *mut PaDiagram) -> PaStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        let d: Diagram = serde_json::from_str(text).map_err(|e| (PaStatus::Parse, e.to_string()))?;
        put(out, Box::into_raw(Box::new(PaDiagram(d))))
    })
}

/// # Safety
/// `d` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pa_diagram_free(d: *mut PaDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pa_diagram_to_json(d: *const PaDiagram, out: *mut *mut c_char) -> PaStatus {
    guard(|| {
        let d = borrow(d, "diagram")?;
        out_string(out, serde_json::to_string(&d.0).expect("diagrams serialize"))
    })
}

/// Concatenation `a` over `b`; `loops` receives the number of closed
/// components removed.
///
/// # Safety
/// `a`, `b` must be live handles; `out` and `loops` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pa_diagram_compose(
    a: *const PaDiagram,
    b: *const PaDiagram,
    out: *mut *mut PaDiagram,
    loops: *mut usize,
) -> PaStatus {
    guard(|| {
        let (a, b) = (borrow(a, "a")?, borrow(b, "b")?);
        let (d, l) = lift(a.0.compose(&b.0))?;
        put(loops, l)?;
        put(out, Box::into_raw(Box::new(PaDiagram(d))))
    })
}

/// # Safety
/// `d` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pa_diagram_propagating_number(d: *const PaDiagram, out: *mut usize) -> PaStatus {
    guard(|| put(out, borrow(d, "diagram")?.0.propagating_number()))
}

fn parameter(num: i64, den: i64) -> Fallible<Rational> {
    if den == 0 {
        return Err((PaStatus::DivisionByZero, "zero denominator".into()));
    }
    Ok(Rational::new(num.into(), den.into()))
}

/// The diagram as an element at parameter `num / den`.
///
/// # Safety
/// `d` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pa_element_from_diagram(
    d: *const PaDiagram,
    num: i64,
    den: i64,
    out: *mut *mut PaElement,
) -> PaStatus {
    guard(|| {
        let d = borrow(d, "diagram")?;
        let n = parameter(num, den)?;
        put(out, Box::into_raw(Box::new(PaElement(SpecialElement::from_diagram(&d.0, n)))))
    })
}

/// # Safety
/// `e` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pa_element_free(e: *mut PaElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// # Safety
/// `a`, `b` must be live handles and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pa_element_add(a: *const PaElement, b: *const PaElement, out: *mut *mut PaElement) -> PaStatus {
    guard(|| {
        let (a, b) = (borrow(a, "a")?, borrow(b, "b")?);
        let s = lift(a.0.add(&b.0))?;
        put(out, Box::into_raw(Box::new(PaElement(s))))
    })
}

/// # Safety
/// `a`, `b` must be live handles and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pa_element_mul(a: *const PaElement, b: *const PaElement, out: *mut *mut PaElement) -> PaStatus {
    guard(|| {
        let (a, b) = (borrow(a, "a")?, borrow(b, "b")?);
        let p = lift(a.0.mul(&b.0))?;
        put(out, Box::into_raw(Box::new(PaElement(p))))
    })
}

/// Markov trace as a decimal fraction string such as `"49"` or `"7/2"`.
///
/// # Safety
/// `e` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pa_element_trace(e: *const PaElement, out: *mut *mut c_char) -> PaStatus {
    guard(|| out_string(out, format_rational(&borrow(e, "element")?.0.trace())))
}

/// # Safety
/// `e` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pa_element_is_zero(e: *const PaElement, out: *mut c_int) -> PaStatus {
    guard(|| put(out, c_int::from(borrow(e, "element")?.0.is_zero())))
}

/// # Safety
/// `e` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pa_element_to_json(e: *const PaElement, out: *mut *mut c_char) -> PaStatus {
    guard(|| out_string(out, borrow(e, "element")?.0.to_json().to_string()))
}

/// Coefficients (constant term first) of the character polynomial of `mu`,
/// written `"2,1"`, as a JSON array of fraction strings.
///
/// # Safety
/// `mu` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pa_char_poly(mu: *const c_char, half: c_int, out: *mut *mut c_char) -> PaStatus {
    guard(|| {
        let mu = lift(Partition::parse(str_arg(mu, "mu")?))?;
        let c = char_poly(&mu, half != 0);
        let coeffs: Vec<String> = c.poly.coeffs().iter().map(format_rational).collect();
        out_string(out, serde_json::to_string(&coeffs).expect("strings serialize"))
    })
}

/// Semisimplicity at double rank `double_rank` and integer `n >= 2`:
/// by the rank bound, and by the regular-trace Gram determinant (`-1` above
/// the Gram cap).
///
/// # Safety
/// `by_theorem` and `by_gram` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pa_semisimple(
    double_rank: u32,
    n: u32,
    by_theorem: *mut c_int,
    by_gram: *mut c_int,
) -> PaStatus {
    guard(|| {
        let rank = u8::try_from(double_rank)
            .map_err(|_| (PaStatus::LimitExceeded, format!("double rank {double_rank}")))?;
        let v = lift(semisimple_verdict(Rank::from_double(rank), n as usize))?;
        put(by_theorem, c_int::from(v.by_theorem))?;
        put(by_gram, v.by_gram.map_or(-1, c_int::from))
    })
}
