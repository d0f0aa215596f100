//! C ABI for `qlogic`.
//!
//! Objects are opaque handles created by `*_parse` / `*_catalog` and
//! released by the matching `*_free`. Every function returns a
//! [`QlogicStatus`]; results travel through out-pointers, which are left
//! untouched on failure. After a failure, [`qlogic_last_error`] describes it.
//! Strings returned through `char **` are owned by the caller and must be
//! released with [`qlogic_string_free`].
//!
//! Handles are immutable after construction and may be shared between
//! threads for reading. The last-error message is per thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qlogic::catalog;
use qlogic::cli::ScenarioFile;
use qlogic::lattice::{parse_lattice, to_dot, ElementId, FiniteLattice};
use qlogic::laws::{check, classify, Law};
use qlogic::quantum::{QuantumError, Tolerance};
use qlogic::query::{compile, evaluate, parse_query};

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QlogicStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Text input (lattice file, scenario file, query) did not parse or
    /// was inconsistent.
    ParseError = 3,
    /// Input parsed but failed numeric validation.
    NumericError = 4,
    /// A label, name or index does not exist.
    NotFound = 5,
    /// The operation needs an orthocomplement the lattice lacks.
    NoOrthocomplement = 6,
    /// A Rust panic was caught at the boundary.
    Panic = 7,
}

/// Lattice laws that can be checked.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QlogicLaw {
    Orthocomplemented = 0,
    Distributive = 1,
    Modular = 2,
    Orthomodular = 3,
    Boolean = 4,
    Atomistic = 5,
    Covering = 6,
}

impl From<QlogicLaw> for Law {
    fn from(l: QlogicLaw) -> Law {
        match l {
            QlogicLaw::Orthocomplemented => Law::Orthocomplemented,
            QlogicLaw::Distributive => Law::Distributive,
            QlogicLaw::Modular => Law::Modular,
            QlogicLaw::Orthomodular => Law::Orthomodular,
            QlogicLaw::Boolean => Law::Boolean,
            QlogicLaw::Atomistic => Law::Atomistic,
            QlogicLaw::Covering => Law::Covering,
        }
    }
}

/// Opaque finite lattice.
pub struct QlogicLattice(FiniteLattice);

/// Opaque scenario: question families plus a prior state.
pub struct QlogicScenario(ScenarioFile);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let mut bytes = message.into().into_bytes();
    bytes.retain(|&b| b != 0);
    let message = CString::new(bytes).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = message);
}

type Outcome = Result<(), (QlogicStatus, String)>;

/// Runs `f`, records its error message and converts panics.
fn guard(f: impl FnOnce() -> Outcome) -> QlogicStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            QlogicStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("panic inside qlogic");
            QlogicStatus::Panic
        }
    }
}

fn fail<T>(status: QlogicStatus, message: impl Into<String>) -> Result<T, (QlogicStatus, String)> {
    Err((status, message.into()))
}

/// # Safety
/// `p` is null or points to a NUL-terminated string.
unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, (QlogicStatus, String)> {
    if p.is_null() {
        return fail(QlogicStatus::NullArgument, format!("{what} is null"));
    }
    // SAFETY: non-null and NUL-terminated per the caller contract.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .or_else(|_| fail(QlogicStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` is null or valid for reads of `T`.
unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, (QlogicStatus, String)> {
    // SAFETY: the caller passes null or a live handle.
    unsafe { p.as_ref() }.ok_or_else(|| (QlogicStatus::NullArgument, format!("{what} is null")))
}

/// # Safety
/// `out` is null or valid for writes of `T`.
unsafe fn put<T>(out: *mut T, value: T) -> Outcome {
    require_out(out)?;
    // SAFETY: non-null and writable per the caller contract.
    unsafe { out.write(value) };
    Ok(())
}

fn require_out<T>(out: *mut T) -> Outcome {
    if out.is_null() {
        return fail(QlogicStatus::NullArgument, "output pointer is null");
    }
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    let mut bytes = s.into_bytes();
    bytes.retain(|&b| b != 0);
    CString::new(bytes)
        .expect("interior NULs removed")
        .into_raw()
}

fn element(l: &FiniteLattice, index: usize) -> Result<ElementId, (QlogicStatus, String)> {
    l.elements().nth(index).ok_or_else(|| {
        (
            QlogicStatus::NotFound,
            format!(
                "element index {index} out of range for {} elements",
                l.len()
            ),
        )
    })
}

/// Message describing the last failed call on this thread, or an empty
/// string after a successful call. The pointer stays valid until the next
/// call into this library on the same thread.
#[no_mangle]
pub extern "C" fn qlogic_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qlogic_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: allocated by `CString::into_raw` in this library.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses a lattice file (`elements:`, `covers:`, `ortho:` lines).
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qlogic_lattice_parse(
    text: *const c_char,
    out: *mut *mut QlogicLattice,
) -> QlogicStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let input = unsafe { self::text(text, "text") }?;
        require_out(out)?;
        let l = parse_lattice(input).or_else(|e| fail(QlogicStatus::ParseError, e.to_string()))?;
        // SAFETY: forwarded caller contract.
        unsafe { put(out, Box::into_raw(Box::new(QlogicLattice(l)))) }
    })
}

/// Builds a built-in lattice: `egg1`, `egg2`, `sg1`, `sg2` or `o6`.
///
/// # Safety
/// `name` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qlogic_lattice_catalog(
    name: *const c_char,
    out: *mut *mut QlogicLattice,
) -> QlogicStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let name = unsafe { text(name, "name") }?;
        require_out(out)?;
        let l = catalog::by_name(name).ok_or_else(|| {
            (
                QlogicStatus::NotFound,
                format!("unknown catalog name `{name}`"),
            )
        })?;
        // SAFETY: forwarded caller contract.
        unsafe { put(out, Box::into_raw(Box::new(QlogicLattice(l)))) }
    })
}

/// Releases a lattice. Null is ignored.
///
/// # Safety
/// `l` is null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qlogic_lattice_free(l: *mut QlogicLattice) {
    if !l.is_null() {
        // SAFETY: allocated by `Box::into_raw` in this library.
        drop(unsafe { Box::from_raw(l) });
    }
}

/// Number of elements.
///
/// # Safety
/// `l` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qlogic_lattice_len(
    l: *const QlogicLattice,
    out: *mut usize,
) -> QlogicStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let l = unsafe { handle(l, "lattice") }?;
        // SAFETY: forwarded caller contract.
        unsafe { put(out, l.0.len()) }
    })
}

/// Index of the element labelled `label`.
///
/// # Safety
/// `l` is a live handle; `label` is a NUL-terminated string; `out` is
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qlogic_lattice_find(
    l: *const QlogicLattice,
    label: *const c_char,
    out: *mut usize,
) -> QlogicStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let (l, label) = unsafe { (handle(l, "lattice")?, text(label, "label")?) };
        let x =
            l.0.element(label)
                .ok_or_else(|| (QlogicStatus::NotFound, format!("unknown label `{label}`")))?;
        // SAFETY: forwarded caller contract.
        unsafe { put(out, x.index()) }
    })
}

/// Label of the element at `index`, as a new string.
///
/// # Safety
/// `l` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qlogic_lattice_label(
    l: *const QlogicLattice,
    index: usize,
    out: *mut *mut c_char,
) -> QlogicStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let l = unsafe { handle(l, "lattice") }?;
        let x = element(&l.0, index)?;
        require_out(out)?;
        // SAFETY: forwarded caller contract.
        unsafe { put(out, to_c_string(l.0.label(x).to_owned())) }
    })
}

/// Index of the meet of elements `a` and `b`.
///
/// # Safety
/// `l` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qlogic_lattice_meet(
    l: *const QlogicLattice,
    a: usize,
    b: usize,
    out: *mut usize,
) -> QlogicStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let l = unsafe { handle(l, "lattice") }?;
        let m = l.0.meet(element(&l.0, a)?, element(&l.0, b)?);
        // SAFETY: forwarded caller contract.
        unsafe { put(out, m.index()) }
    })
}

/// Index of the join of elements `a` and `b`.
///
/// # Safety
/// `l` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qlogic_lattice_join(
    l: *const QlogicLattice,
    a: usize,
    b: usize,
    out: *mut usize,
) -> QlogicStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let l = unsafe { handle(l, "lattice") }?;
        let j = l.0.join(element(&l.0, a)?, element(&l.0, b)?);
        // SAFETY: forwarded caller contract.
        unsafe { put(out, j.index()) }
    })
}

/// Index of the orthocomplement of element `a`.
///
/// # Safety
/// `l` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qlogic_lattice_complement(
    l: *const QlogicLattice,
    a: usize,
    out: *mut usize,
) -> QlogicStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let l = unsafe { handle(l, "lattice") }?;
        let c =
            l.0.complement(element(&l.0, a)?)
                .or_else(|e| fail(QlogicStatus::NoOrthocomplement, e.to_string()))?;
        // SAFETY: forwarded caller contract.
        unsafe { put(out, c.index()) }
    })
}

/// Whether `law` holds, decided by exhaustive search.
///
/// # Safety
/// `l` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qlogic_lattice_check(
    l: *const QlogicLattice,
    law: QlogicLaw,
    out: *mut bool,
) -> QlogicStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let l = unsafe { handle(l, "lattice") }?;
        // SAFETY: forwarded caller contract.
        unsafe { put(out, check(&l.0, law.into()).holds) }
    })
}

/// Report of every law, one line each; `key=value` lines if `kv`.
///
/// # Safety
/// `l` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qlogic_lattice_report(
    l: *const QlogicLattice,
    kv: bool,
    out: *mut *mut c_char,
) -> QlogicStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let l = unsafe { handle(l, "lattice") }?;
        require_out(out)?;
        let report: String = classify(&l.0)
            .iter()
            .map(|r| if kv { r.to_kv(&l.0) } else { r.to_text(&l.0) } + "\n")
            .collect();
        // SAFETY: forwarded caller contract.
        unsafe { put(out, to_c_string(report)) }
    })
}

/// Hasse diagram in Graphviz DOT, as a graph called `name`.
///
/// # Safety
/// `l` is a live handle; `name` is a NUL-terminated string; `out` is
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qlogic_lattice_dot(
    l: *const QlogicLattice,
    name: *const c_char,
    out: *mut *mut c_char,
) -> QlogicStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let (l, name) = unsafe { (handle(l, "lattice")?, text(name, "name")?) };
        require_out(out)?;
        // SAFETY: forwarded caller contract.
        unsafe { put(out, to_c_string(to_dot(&l.0, name))) }
    })
}

/// Parses a scenario file at the default tolerance.
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qlogic_scenario_parse(
    text: *const c_char,
    out: *mut *mut QlogicScenario,
) -> QlogicStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let input = unsafe { self::text(text, "text") }?;
        require_out(out)?;
        let s = ScenarioFile::parse(input, Tolerance::default()).or_else(|e| {
            let status = if e.is_numeric() {
                QlogicStatus::NumericError
            } else {
                QlogicStatus::ParseError
            };
            fail(status, e.to_string())
        })?;
        // SAFETY: forwarded caller contract.
        unsafe { put(out, Box::into_raw(Box::new(QlogicScenario(s)))) }
    })
}

/// Probability of `query` under the scenario's prior.
///
/// # Safety
/// `s` is a live handle; `query` is a NUL-terminated string; `out` is
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qlogic_scenario_eval(
    s: *const QlogicScenario,
    query: *const c_char,
    out: *mut f64,
) -> QlogicStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let (s, q) = unsafe { (handle(s, "scenario")?, text(query, "query")?) };
        let expr = parse_query(q).or_else(|e| fail(QlogicStatus::ParseError, e.to_string()))?;
        let plan = compile(&expr, s.0.families())
            .or_else(|e| fail(QlogicStatus::ParseError, e.to_string()))?;
        let p =
            evaluate(&plan, s.0.prior(), s.0.families(), Tolerance::default()).or_else(|e| {
                let status = match e {
                    QuantumError::UnknownLabel(_) => QlogicStatus::NotFound,
                    _ => QlogicStatus::NumericError,
                };
                fail(status, e.to_string())
            })?;
        // SAFETY: forwarded caller contract.
        unsafe { put(out, p) }
    })
}

/// Releases a scenario. Null is ignored.
///
/// # Safety
/// `s` is null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qlogic_scenario_free(s: *mut QlogicScenario) {
    if !s.is_null() {
        // SAFETY: allocated by `Box::into_raw` in this library.
        drop(unsafe { Box::from_raw(s) });
    }
}
