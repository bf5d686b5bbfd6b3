//! C ABI for bocal.
//!
//! Every function returns a [`BocalStatus`]; on failure the message is
//! available from [`bocal_last_error`] until the next call on the same thread.
//! Handles are opaque and must be released with their `_free` function.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use libc::c_char;

use bocal::algebra::{AlgebraData, AlgebraError};
use bocal::catalog;
use bocal::commands::{self, CommandError, Context};
use bocal::corpus::CorpusError;
use bocal::document::ReportDocument;
use bocal::formats::{AlgebraFile, FormatError};
use bocal::linalg::Field;
use bocal::modules::{algebra_loewy_length, gl_dim, pd, ModuleError, ModuleRep, PdValue, SearchConfig};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BocalStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    ParameterOutOfRange = 5,
    Algebra = 6,
    Module = 7,
    Command = 8,
    OutOfRange = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BocalPdKind {
    Finite = 0,
    InfiniteCertified = 1,
    /// The cutoff was reached; the value is a lower bound.
    AtLeast = 2,
}

/// A finite-dimensional algebra.
pub struct BocalAlgebra(Arc<AlgebraData>);

/// A right module over an algebra handle.
pub struct BocalModule(ModuleRep);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(BocalStatus, String);

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        let status = match e {
            FormatError::Parse { .. } => BocalStatus::Parse,
            _ => BocalStatus::Invalid,
        };
        Failure(status, e.to_string())
    }
}

impl From<CorpusError> for Failure {
    fn from(e: CorpusError) -> Self {
        let status = match e {
            CorpusError::ParameterOutOfRange(_) => BocalStatus::ParameterOutOfRange,
            _ => BocalStatus::Invalid,
        };
        Failure(status, e.to_string())
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure(BocalStatus::Algebra, e.to_string())
    }
}

impl From<ModuleError> for Failure {
    fn from(e: ModuleError) -> Self {
        Failure(BocalStatus::Module, e.to_string())
    }
}

impl From<CommandError> for Failure {
    fn from(e: CommandError) -> Self {
        match e {
            CommandError::Format { source, .. } => source.into(),
            CommandError::Corpus(c) => c.into(),
            other => Failure(BocalStatus::Command, other.to_string()),
        }
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BocalStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BocalStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BocalStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(BocalStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(BocalStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn get<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(BocalStatus::NullPointer, "null handle".into()))
}

fn put<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(BocalStatus::NullPointer, "null output pointer".into()));
    }
    unsafe { out.write(v) };
    Ok(())
}

fn field(p: *const c_char) -> Result<Field, Failure> {
    if p.is_null() {
        return Ok(Field::Rational);
    }
    unsafe { text(p)? }.parse().map_err(|e: bocal::linalg::LinalgError| Failure(BocalStatus::Invalid, e.to_string()))
}

fn split_pd(v: PdValue) -> (BocalPdKind, usize) {
    match v {
        PdValue::Finite(n) => (BocalPdKind::Finite, n),
        PdValue::InfiniteCertified => (BocalPdKind::InfiniteCertified, 0),
        PdValue::AtLeast(n) => (BocalPdKind::AtLeast, n),
    }
}

/// The message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn bocal_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a corpus entry such as `"family"` or `"trivial-loop(3)"`. `field_name` is
/// `"Q"`, a prime such as `"101"`, or null for Q.
///
/// # Safety
/// `name` and `field_name` must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bocal_algebra_from_corpus(
    name: *const c_char,
    field_name: *const c_char,
    out: *mut *mut BocalAlgebra,
) -> BocalStatus {
    guard(|| {
        let entry = catalog::lookup(text(name)?, &BTreeMap::new(), field(field_name)?)?;
        let built = entry.build()?;
        put(out, Box::into_raw(Box::new(BocalAlgebra(built.algebra))))
    })
}

/// Parses an algebra file held in memory and builds its root algebra.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bocal_algebra_from_json(json: *const c_char, out: *mut *mut BocalAlgebra) -> BocalStatus {
    guard(|| {
        let a = AlgebraFile::parse(text(json)?)?.build_root()?;
        put(out, Box::into_raw(Box::new(BocalAlgebra(Arc::new(a)))))
    })
}

/// # Safety
/// `a` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bocal_algebra_free(a: *mut BocalAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bocal_algebra_dim(a: *const BocalAlgebra, out: *mut usize) -> BocalStatus {
    guard(|| put(out, get(a)?.0.dim()))
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bocal_algebra_num_vertices(a: *const BocalAlgebra, out: *mut usize) -> BocalStatus {
    guard(|| put(out, get(a)?.0.num_vertices()))
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bocal_algebra_loewy_length(a: *const BocalAlgebra, out: *mut usize) -> BocalStatus {
    guard(|| put(out, algebra_loewy_length(&get(a)?.0)?))
}

/// Global dimension from the simples, computing at most `cutoff` syzygies each.
///
/// # Safety
/// `a` must be a live handle; `kind` and `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bocal_algebra_gl_dim(
    a: *const BocalAlgebra,
    cutoff: usize,
    seed: u64,
    kind: *mut BocalPdKind,
    value: *mut usize,
) -> BocalStatus {
    guard(|| {
        let cfg = SearchConfig { seed, ..SearchConfig::default() };
        let (k, v) = split_pd(gl_dim(&get(a)?.0, cutoff, &cfg)?.value);
        put(kind, k)?;
        put(value, v)
    })
}

fn vertex_module(
    a: *const BocalAlgebra,
    vertex: usize,
    out: *mut *mut BocalModule,
    make: fn(&Arc<AlgebraData>, usize) -> Result<ModuleRep, ModuleError>,
) -> BocalStatus {
    guard(|| {
        let a = unsafe { get(a)? };
        if vertex >= a.0.num_vertices() {
            return Err(Failure(BocalStatus::OutOfRange, format!("vertex {vertex} out of range")));
        }
        put(out, Box::into_raw(Box::new(BocalModule(make(&a.0, vertex)?))))
    })
}

/// The simple module at vertex index `vertex`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bocal_module_simple(a: *const BocalAlgebra, vertex: usize, out: *mut *mut BocalModule) -> BocalStatus {
    vertex_module(a, vertex, out, ModuleRep::simple)
}

/// The indecomposable projective module at vertex index `vertex`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bocal_module_projective(
    a: *const BocalAlgebra,
    vertex: usize,
    out: *mut *mut BocalModule,
) -> BocalStatus {
    vertex_module(a, vertex, out, ModuleRep::projective)
}

/// # Safety
/// `m` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bocal_module_free(m: *mut BocalModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bocal_module_dim(m: *const BocalModule, out: *mut usize) -> BocalStatus {
    guard(|| put(out, get(m)?.0.dim()))
}

/// Projective dimension, computing at most `cutoff` syzygies.
///
/// # Safety
/// `m` must be a live handle; `kind` and `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bocal_module_pd(
    m: *const BocalModule,
    cutoff: usize,
    seed: u64,
    kind: *mut BocalPdKind,
    value: *mut usize,
) -> BocalStatus {
    guard(|| {
        let cfg = SearchConfig { seed, ..SearchConfig::default() };
        let r = pd(&get(m)?.0, cutoff, &cfg)?;
        if !r.verify() {
            return Err(Failure(BocalStatus::Module, "certificate failed to re-verify".into()));
        }
        let (k, v) = split_pd(r.value);
        put(kind, k)?;
        put(value, v)
    })
}

/// Runs `report <entry>` and returns the JSON report document. `passed` is set
/// to 1 when every verdict passes. Free the string with [`bocal_string_free`].
///
/// # Safety
/// `entry` must be NUL-terminated; `json` and `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bocal_report(
    entry: *const c_char,
    compare: bool,
    seed: u64,
    json: *mut *mut c_char,
    passed: *mut i32,
) -> BocalStatus {
    guard(|| {
        let ctx = Context { seed, ..Context::default() };
        let run = commands::report(&ctx, text(entry)?, compare)?;
        let mut doc = ReportDocument::new(seed);
        doc.runs.push(run);
        let s = CString::new(doc.to_json()).map_err(|_| Failure(BocalStatus::Command, "report contains NUL".into()))?;
        put(passed, i32::from(doc.ok()))?;
        put(json, s.into_raw())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bocal_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

