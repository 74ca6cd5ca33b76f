//! C ABI over `errball`.
//!
//! Every fallible call returns an [`ErrballStatus`]; on failure a message
//! is available from [`errball_last_error_message`] on the same thread.
//! Sequences are opaque handles released with [`errball_sequence_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use errball::ballsize::{count_abcd, evaluate, EvalOptions};
use errball::oracle::error_ball_size;
use errball::{ChannelSpec, Error, EvalMode, Method, Sequence};

/// Closed form where one exists, enumeration otherwise.
pub const ERRBALL_MODE_FORMULA: u32 = 0;
/// Enumeration only.
pub const ERRBALL_MODE_ORACLE: u32 = 1;

pub const ERRBALL_METHOD_FORMULA: u32 = 0;
pub const ERRBALL_METHOD_ORACLE: u32 = 1;
pub const ERRBALL_METHOD_FORMULA_WITH_ORACLE_FALLBACK: u32 = 2;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrballStatus {
    Ok = 0,
    NullPointer = 1,
    MalformedInput = 2,
    InvalidAlphabet = 3,
    InvalidChannel = 4,
    Range = 5,
    BudgetExceeded = 6,
    Precondition = 7,
    Overflow = 8,
    InvalidArgument = 9,
    Panic = 10,
}

/// Opaque sequence handle.
pub struct ErrballSequence {
    inner: Sequence,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ErrballChannel {
    pub t1: u32,
    pub t2: u32,
    pub t3: u32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ErrballPairCounts {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ErrballStatus {
    match e {
        Error::MalformedInput { .. } | Error::Parse(_) | Error::EmptyInput => ErrballStatus::MalformedInput,
        Error::InvalidAlphabet(_) => ErrballStatus::InvalidAlphabet,
        Error::InvalidChannel(_) => ErrballStatus::InvalidChannel,
        Error::Range { .. } | Error::Index { .. } | Error::Dimension(_) => ErrballStatus::Range,
        Error::BudgetExceeded { .. } => ErrballStatus::BudgetExceeded,
        Error::Overflow(_) => ErrballStatus::Overflow,
        _ => ErrballStatus::Precondition,
    }
}

fn guard<F: FnOnce() -> Result<(), ErrballStatus>>(f: F) -> ErrballStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ErrballStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_last_error("internal panic".into());
            ErrballStatus::Panic
        }
    }
}

fn fail(e: Error) -> ErrballStatus {
    let status = status_of(&e);
    set_last_error(e.to_string());
    status
}

fn null(what: &str) -> ErrballStatus {
    set_last_error(format!("{what} is null"));
    ErrballStatus::NullPointer
}

fn channel(c: ErrballChannel) -> ChannelSpec {
    ChannelSpec::new(c.t1 as usize, c.t2 as usize, c.t3 as usize)
}

/// # Safety
/// `seq` must be null or a live handle.
unsafe fn seq_ref<'a>(seq: *const ErrballSequence) -> Result<&'a Sequence, ErrballStatus> {
    // SAFETY: caller guarantees `seq` is null or points to a live handle.
    unsafe { seq.as_ref() }.map(|s| &s.inner).ok_or_else(|| null("sequence"))
}

/// Message for the most recent failure on this thread, or null. The
/// pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn errball_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parse a NUL-terminated sequence over `Σ_q` into a new handle.
///
/// # Safety
/// `text` must be a valid C string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn errball_sequence_parse(
    text: *const c_char,
    q: u32,
    out: *mut *mut ErrballSequence,
) -> ErrballStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        // SAFETY: checked non-null; caller guarantees NUL termination.
        let text = unsafe { CStr::from_ptr(text) };
        let text = text.to_str().map_err(|_| fail(Error::Parse("text is not UTF-8".into())))?;
        let inner = Sequence::parse(text, q).map_err(fail)?;
        let handle = Box::into_raw(Box::new(ErrballSequence { inner }));
        // SAFETY: checked non-null; caller guarantees it is writable.
        unsafe { *out = handle };
        Ok(())
    })
}

/// Release a handle from [`errball_sequence_parse`]. Null is ignored.
///
/// # Safety
/// `seq` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn errball_sequence_free(seq: *mut ErrballSequence) {
    if !seq.is_null() {
        // SAFETY: caller guarantees the handle came from `Box::into_raw` and is freed once.
        drop(unsafe { Box::from_raw(seq) });
    }
}

/// Word length; 0 for null.
///
/// # Safety
/// `seq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn errball_sequence_len(seq: *const ErrballSequence) -> usize {
    // SAFETY: forwarded caller contract.
    unsafe { seq_ref(seq) }.map_or(0, Sequence::len)
}

/// Number of runs; 0 for null.
///
/// # Safety
/// `seq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn errball_sequence_rho(seq: *const ErrballSequence) -> usize {
    // SAFETY: forwarded caller contract.
    unsafe { seq_ref(seq) }.map_or(0, Sequence::rho)
}

/// `|B_{t1,t2,t3}(seq)|`. `mode` is one of the `ERRBALL_MODE_*` values;
/// `budget` caps enumeration (0 uses the default). `out_method` may be null.
///
/// # Safety
/// `seq` must be a live handle; `out_size` and a non-null `out_method`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn errball_ball_size(
    seq: *const ErrballSequence,
    chan: ErrballChannel,
    mode: u32,
    budget: u64,
    out_size: *mut u64,
    out_method: *mut u32,
) -> ErrballStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let seq = unsafe { seq_ref(seq) }?;
        if out_size.is_null() {
            return Err(null("out_size"));
        }
        let mode = match mode {
            ERRBALL_MODE_FORMULA => EvalMode::FormulaPreferred,
            ERRBALL_MODE_ORACLE => EvalMode::OracleOnly,
            other => {
                set_last_error(format!("unknown mode {other}"));
                return Err(ErrballStatus::InvalidArgument);
            }
        };
        let mut opts = EvalOptions { mode, ..EvalOptions::default() };
        if budget > 0 {
            opts.budget = budget;
        }
        let report = evaluate(seq, channel(chan), opts).map_err(fail)?;
        // SAFETY: checked non-null; caller guarantees writability.
        unsafe { *out_size = report.size };
        if !out_method.is_null() {
            let m = match report.method {
                Method::Formula => ERRBALL_METHOD_FORMULA,
                Method::Oracle => ERRBALL_METHOD_ORACLE,
                Method::FormulaWithOracleFallback => ERRBALL_METHOD_FORMULA_WITH_ORACLE_FALLBACK,
            };
            // SAFETY: checked non-null; caller guarantees writability.
            unsafe { *out_method = m };
        }
        Ok(())
    })
}

/// Ball size by exhaustive enumeration.
///
/// # Safety
/// `seq` must be a live handle and `out_size` writable.
#[no_mangle]
pub unsafe extern "C" fn errball_oracle_size(
    seq: *const ErrballSequence,
    chan: ErrballChannel,
    budget: u64,
    out_size: *mut u64,
) -> ErrballStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let seq = unsafe { seq_ref(seq) }?;
        if out_size.is_null() {
            return Err(null("out_size"));
        }
        let budget = if budget == 0 { errball::DEFAULT_BUDGET } else { budget };
        let spec = channel(chan);
        spec.validate_for(seq.len()).map_err(fail)?;
        let size = error_ball_size(seq, spec, budget).map_err(fail)?;
        // SAFETY: checked non-null; caller guarantees writability.
        unsafe { *out_size = size };
        Ok(())
    })
}

/// Pair and triple counts `(A, B, C, D)` of the 1-subsequences.
///
/// # Safety
/// `seq` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn errball_count_abcd(seq: *const ErrballSequence, out: *mut ErrballPairCounts) -> ErrballStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let seq = unsafe { seq_ref(seq) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let c = count_abcd(seq).map_err(fail)?;
        // SAFETY: checked non-null; caller guarantees writability.
        unsafe { *out = ErrballPairCounts { a: c.a, b: c.b, c: c.c, d: c.d } };
        Ok(())
    })
}
