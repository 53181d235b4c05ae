//! C ABI over `braidrep`.
//!
//! Every fallible call returns a [`BraidrepStatus`]; on failure the message is
//! available from [`braidrep_last_error`] until the next call on the same
//! thread. Handles are opaque and must be released with their `_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use braidrep::braid::BraidWord;
use braidrep::graded::GradedMap;
use braidrep::harness::{export_graded, export_matrix, run_suite, ExportFormat, SuiteParams};
use braidrep::matrix::Matrix;
use braidrep::quantum::{quant, PINNED_SIGN};
use braidrep::{bkl, gassner, lawrence, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraidrepStatus {
    Ok = 0,
    NullPointer,
    InvalidUtf8,
    Parse,
    InvalidBounds,
    NotPure,
    Mismatch,
    Arithmetic,
    UnknownName,
    Panic,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraidrepFamily {
    Burau = 0,
    ReducedBurau,
    Gassner,
    Quant,
    Bkl,
    Lawrence,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraidrepFormat {
    Json = 0,
    Latex,
    CsvMonomial,
}

/// One variable per strand.
pub const BRAIDREP_COLORED: u32 = 1;
/// All n! blocks of the induced representation.
pub const BRAIDREP_INDUCED: u32 = 2;

pub struct BraidrepBraid(BraidWord);

pub enum BraidrepRep {
    Plain(Matrix),
    Graded(GradedMap),
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BraidrepStatus {
    match e {
        Error::Parse(_) | Error::Json(_) => BraidrepStatus::Parse,
        Error::InvalidBounds(_) => BraidrepStatus::InvalidBounds,
        Error::NotPure | Error::NotReducible(_) => BraidrepStatus::NotPure,
        Error::VarSetMismatch { .. } | Error::DimensionMismatch(_) | Error::GradingMismatch(_) => BraidrepStatus::Mismatch,
        Error::NonInvertibleImage(_) | Error::NotAUnit(_) | Error::InexactDivision => BraidrepStatus::Arithmetic,
        Error::DuplicateVariable(_)
        | Error::UnknownVariable(_)
        | Error::UnknownSuite(_)
        | Error::UnknownFormat(_) => BraidrepStatus::UnknownName,
    }
}

struct Fail(BraidrepStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, clearing the last error first and converting errors and panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> BraidrepStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BraidrepStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside braidrep".into());
            BraidrepStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(BraidrepStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(BraidrepStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(BraidrepStatus::NullPointer, format!("{what} is null")))
}

fn out_arg<T>(p: *mut T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(BraidrepStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message of the last failed call on this thread, or NULL. Borrowed; do not free.
#[no_mangle]
pub extern "C" fn braidrep_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses signed generator indices such as `"1 -2 1"` on `n` strands.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn braidrep_braid_parse(n: usize, text: *const c_char, out: *mut *mut BraidrepBraid) -> BraidrepStatus {
    guard(|| {
        out_arg(out, "out")?;
        let w = BraidWord::parse(n, str_arg(text, "text")?)?;
        *out = Box::into_raw(Box::new(BraidrepBraid(w)));
        Ok(())
    })
}

/// # Safety
/// `b` must come from `braidrep_braid_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn braidrep_braid_free(b: *mut BraidrepBraid) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Strand count, or 0 for NULL.
///
/// # Safety
/// `b` must be NULL or a live braid handle.
#[no_mangle]
pub unsafe extern "C" fn braidrep_braid_strands(b: *const BraidrepBraid) -> usize {
    b.as_ref().map_or(0, |b| b.0.n())
}

/// Word length, or 0 for NULL.
///
/// # Safety
/// `b` must be NULL or a live braid handle.
#[no_mangle]
pub unsafe extern "C" fn braidrep_braid_length(b: *const BraidrepBraid) -> usize {
    b.as_ref().map_or(0, |b| b.0.len())
}

/// # Safety
/// `b` must be NULL or a live braid handle.
#[no_mangle]
pub unsafe extern "C" fn braidrep_braid_is_pure(b: *const BraidrepBraid) -> bool {
    b.as_ref().is_some_and(|b| b.0.is_pure())
}

fn compute(w: &BraidWord, family: BraidrepFamily, m: u32, flags: u32) -> braidrep::Result<BraidrepRep> {
    use BraidrepFamily as F;
    use BraidrepRep::{Graded, Plain};
    let colored = flags & BRAIDREP_COLORED != 0;
    let induced = flags & BRAIDREP_INDUCED != 0;
    Ok(match family {
        F::Burau => Plain(gassner::burau_matrix(w)?),
        F::ReducedBurau => Plain(gassner::reduced_burau_matrix(w)?),
        F::Gassner if induced => Graded(gassner::induced_gassner(w, None)?),
        F::Gassner => Plain(gassner::gamma(w)?),
        F::Quant => Graded(quant(w, PINNED_SIGN, None)?),
        F::Bkl if induced => Graded(bkl::induced_bkl(w, None)?),
        F::Bkl if colored => Plain(bkl::cbkl(w)?),
        F::Bkl => Plain(bkl::bkl_matrix(w)?),
        F::Lawrence if induced => Graded(lawrence::induced_lawrence(w, m, None)?),
        F::Lawrence if colored => Plain(lawrence::claw(w, m)?),
        F::Lawrence => Plain(lawrence::lawrence_matrix(w, m)?),
    })
}

/// Matrix (or graded map, for induced and quantum families) of a braid.
/// `m` is only read for Lawrence; `flags` is a mask of `BRAIDREP_COLORED`
/// and `BRAIDREP_INDUCED`.
///
/// # Safety
/// `braid` must be a live braid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn braidrep_rep_compute(
    braid: *const BraidrepBraid,
    family: BraidrepFamily,
    m: u32,
    flags: u32,
    out: *mut *mut BraidrepRep,
) -> BraidrepStatus {
    guard(|| {
        out_arg(out, "out")?;
        let b = ref_arg(braid, "braid")?;
        *out = Box::into_raw(Box::new(compute(&b.0, family, m, flags)?));
        Ok(())
    })
}

/// # Safety
/// `r` must come from `braidrep_rep_compute` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn braidrep_rep_free(r: *mut BraidrepRep) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Rows and columns of each block, and the number of blocks (1 for a plain matrix).
///
/// # Safety
/// `r` must be a live handle; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn braidrep_rep_dims(
    r: *const BraidrepRep,
    rows: *mut usize,
    cols: *mut usize,
    blocks: *mut usize,
) -> BraidrepStatus {
    guard(|| {
        out_arg(rows, "rows")?;
        out_arg(cols, "cols")?;
        out_arg(blocks, "blocks")?;
        let (r_, c_, b_) = match ref_arg(r, "rep")? {
            BraidrepRep::Plain(m) => (m.rows(), m.cols(), 1),
            BraidrepRep::Graded(g) => (g.dim(), g.dim(), g.len()),
        };
        (*rows, *cols, *blocks) = (r_, c_, b_);
        Ok(())
    })
}

/// Serialises a representation; release the string with `braidrep_string_free`.
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn braidrep_rep_to_string(
    r: *const BraidrepRep,
    format: BraidrepFormat,
    out: *mut *mut c_char,
) -> BraidrepStatus {
    guard(|| {
        out_arg(out, "out")?;
        let fmt = match format {
            BraidrepFormat::Json => ExportFormat::Json,
            BraidrepFormat::Latex => ExportFormat::Latex,
            BraidrepFormat::CsvMonomial => ExportFormat::CsvMonomial,
        };
        let s = match ref_arg(r, "rep")? {
            BraidrepRep::Plain(m) => export_matrix(m, fmt),
            BraidrepRep::Graded(g) => export_graded(g, fmt),
        };
        *out = c_string(s);
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn braidrep_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs a verification suite. `max_n`/`max_m` of 0 keep the suite defaults.
/// `passed` receives the verdict; `report`, if non-NULL, the JSON report.
///
/// # Safety
/// `suite` must be a NUL-terminated string; `passed` a valid pointer;
/// `report` NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn braidrep_verify(
    suite: *const c_char,
    seed: u64,
    max_n: usize,
    max_m: u32,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> BraidrepStatus {
    guard(|| {
        out_arg(passed, "passed")?;
        let params = SuiteParams {
            seed: Some(seed),
            max_n: (max_n > 0).then_some(max_n),
            max_m: (max_m > 0).then_some(max_m),
        };
        let r = run_suite(str_arg(suite, "suite")?, &params)?;
        *passed = r.passed();
        if !report.is_null() {
            *report = c_string(r.to_json().to_string());
        }
        Ok(())
    })
}
