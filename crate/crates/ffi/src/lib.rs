//! C ABI over `schubert-core`.
//!
//! Tables are opaque handles created by `schubert_table_new_*` and
//! released with `schubert_table_free`. Every fallible call returns a
//! [`SchubertStatus`]; on failure a message is available from
//! `schubert_last_error_message` until the next call on the same thread.
//! Class indices are `(m, i)` pairs with `i` starting at 1.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use schubert_core::cartan::{CartanMatrix, Series};
use schubert_core::characteristics::{characteristic, structure_matrix};
use schubert_core::weyl::{enumerate_cosets_with_limits, CosetIndex, CosetTable, Limits};
use schubert_core::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchubertStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidGroup = 3,
    NotCartan = 4,
    ResourceLimit = 5,
    NotFound = 6,
    TruncatedTable = 7,
    DegreeMismatch = 8,
    BufferTooSmall = 9,
    Failed = 10,
    Panic = 11,
}

/// Opaque coset table.
pub struct SchubertTable {
    table: CosetTable,
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

fn status_of(e: &Error) -> SchubertStatus {
    match e {
        Error::InvalidSeriesRank { .. } => SchubertStatus::InvalidGroup,
        Error::NotCartan(_) => SchubertStatus::NotCartan,
        Error::ResourceLimit(_) => SchubertStatus::ResourceLimit,
        Error::NotFound(_) | Error::IndexOutOfRange { .. } => SchubertStatus::NotFound,
        Error::TruncatedTable(_) => SchubertStatus::TruncatedTable,
        Error::DegreeMismatch { .. } => SchubertStatus::DegreeMismatch,
        Error::EmptyK | Error::Parse(_) | Error::OutOfRange(_) => SchubertStatus::InvalidArgument,
        _ => SchubertStatus::Failed,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (SchubertStatus, String)>) -> SchubertStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SchubertStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SchubertStatus::Panic
        }
    }
}

fn core_err(e: Error) -> (SchubertStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (SchubertStatus, String) {
    (SchubertStatus::NullPointer, format!("{what} is null"))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], (SchubertStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn table_ref<'a>(t: *const SchubertTable) -> Result<&'a CosetTable, (SchubertStatus, String)> {
    t.as_ref().map(|t| &t.table).ok_or_else(|| null("table"))
}

fn max_length(max_len: i64) -> Option<usize> {
    usize::try_from(max_len).ok()
}

unsafe fn build(
    cartan: CartanMatrix,
    k: *const usize,
    k_len: usize,
    max_len: i64,
    max_cosets: usize,
    out: *mut *mut SchubertTable,
) -> Result<(), (SchubertStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    let k = slice(k, k_len, "k")?;
    let limits = if max_cosets == 0 { Limits::default() } else { Limits { max_cosets } };
    let table = enumerate_cosets_with_limits(&cartan, k, max_length(max_len), limits).map_err(core_err)?;
    *out = Box::into_raw(Box::new(SchubertTable { table }));
    Ok(())
}

/// Builds the table of a builtin group, `series` one of `ABCDEFG`.
/// `max_len < 0` means no bound; `max_cosets == 0` uses the default limit.
///
/// # Safety
/// `k` must point to `k_len` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn schubert_table_new_builtin(
    series: c_char,
    rank: usize,
    k: *const usize,
    k_len: usize,
    max_len: i64,
    max_cosets: usize,
    out: *mut *mut SchubertTable,
) -> SchubertStatus {
    guard(|| {
        let letter = char::from(series as u8);
        let s = Series::from_letter(letter)
            .ok_or((SchubertStatus::InvalidGroup, format!("unknown series {letter:?}")))?;
        let c = CartanMatrix::builtin(s, rank).map_err(core_err)?;
        build(c, k, k_len, max_len, max_cosets, out)
    })
}

/// Builds the table of a Cartan matrix given row-major as `rank * rank`
/// entries.
///
/// # Safety
/// `entries` must point to `rank * rank` values, `k` to `k_len` values and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn schubert_table_new_cartan(
    entries: *const i64,
    rank: usize,
    k: *const usize,
    k_len: usize,
    max_len: i64,
    max_cosets: usize,
    out: *mut *mut SchubertTable,
) -> SchubertStatus {
    guard(|| {
        let n2 = rank.checked_mul(rank).ok_or((SchubertStatus::InvalidArgument, "rank too large".into()))?;
        let flat = slice(entries, n2, "entries")?;
        let rows: Vec<Vec<i64>> = flat.chunks(rank.max(1)).map(|r| r.to_vec()).collect();
        let c = CartanMatrix::validate(rows).map_err(core_err)?;
        build(c, k, k_len, max_len, max_cosets, out)
    })
}

/// Releases a table; null is ignored.
///
/// # Safety
/// `t` must come from a `schubert_table_new_*` call and not be used after.
#[no_mangle]
pub unsafe extern "C" fn schubert_table_free(t: *mut SchubertTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of cosets, 0 for null.
///
/// # Safety
/// `t` must be null or a live table.
#[no_mangle]
pub unsafe extern "C" fn schubert_table_len(t: *const SchubertTable) -> usize {
    t.as_ref().map_or(0, |t| t.table.len())
}

/// Largest length present.
///
/// # Safety
/// `t` must be null or a live table.
#[no_mangle]
pub unsafe extern "C" fn schubert_table_top_length(t: *const SchubertTable) -> usize {
    t.as_ref().map_or(0, |t| t.table.top_length())
}

/// 1 when the table was not cut off by a length bound.
///
/// # Safety
/// `t` must be null or a live table.
#[no_mangle]
pub unsafe extern "C" fn schubert_table_is_complete(t: *const SchubertTable) -> i32 {
    t.as_ref().map_or(0, |t| i32::from(t.table.is_complete()))
}

/// Number of classes of length `m`.
///
/// # Safety
/// `t` must be null or a live table.
#[no_mangle]
pub unsafe extern "C" fn schubert_table_betti(t: *const SchubertTable, m: usize) -> usize {
    t.as_ref().map_or(0, |t| t.table.betti_at(m))
}

/// Copies the minimized word of `w_{m,i}` into `buf`. `out_len` receives
/// the word length, also when the buffer is too small.
///
/// # Safety
/// `buf` must hold `cap` bytes; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn schubert_table_word(
    t: *const SchubertTable,
    m: usize,
    i: usize,
    buf: *mut u8,
    cap: usize,
    out_len: *mut usize,
) -> SchubertStatus {
    guard(|| {
        let table = table_ref(t)?;
        if out_len.is_null() {
            return Err(null("out_len"));
        }
        let word = table.word(CosetIndex::new(m, i)).map_err(core_err)?;
        *out_len = word.len();
        if word.len() > cap {
            return Err((SchubertStatus::BufferTooSmall, format!("word needs {} bytes", word.len())));
        }
        if !word.is_empty() {
            if buf.is_null() {
                return Err(null("buf"));
            }
            ptr::copy_nonoverlapping(word.letters().as_ptr(), buf, word.len());
        }
        Ok(())
    })
}

/// Index `(m, i)` of the coset containing the element of `word`.
///
/// # Safety
/// `word` must hold `len` bytes; `out_m` and `out_i` must be writable.
#[no_mangle]
pub unsafe extern "C" fn schubert_table_lookup(
    t: *const SchubertTable,
    word: *const u8,
    len: usize,
    out_m: *mut usize,
    out_i: *mut usize,
) -> SchubertStatus {
    guard(|| {
        let table = table_ref(t)?;
        if out_m.is_null() || out_i.is_null() {
            return Err(null("out_m/out_i"));
        }
        let w = slice(word, len, "word")?;
        let idx = table.lookup_word(w).map_err(core_err)?;
        *out_m = idx.m;
        *out_i = idx.i;
        Ok(())
    })
}

/// Writes the structure matrix of `w_{m,i}` row-major into `buf`
/// (`l * l` entries, `l = m`).
///
/// # Safety
/// `buf` must hold `cap` values.
#[no_mangle]
pub unsafe extern "C" fn schubert_structure_matrix(
    t: *const SchubertTable,
    m: usize,
    i: usize,
    buf: *mut i64,
    cap: usize,
) -> SchubertStatus {
    guard(|| {
        let table = table_ref(t)?;
        let word = table.word(CosetIndex::new(m, i)).map_err(core_err)?;
        let a = structure_matrix(table.cartan(), word.letters()).map_err(core_err)?;
        let flat: Vec<i64> = a.entries().iter().flatten().copied().collect();
        if flat.len() > cap {
            return Err((SchubertStatus::BufferTooSmall, format!("matrix needs {} entries", flat.len())));
        }
        if !flat.is_empty() {
            if buf.is_null() {
                return Err(null("buf"));
            }
            ptr::copy_nonoverlapping(flat.as_ptr(), buf, flat.len());
        }
        Ok(())
    })
}

/// `c^w_{u_1..u_k}` with `w = w_{w_m,w_i}` and `classes` holding `k`
/// consecutive `(m, i)` pairs. The decimal result is returned in `out` and
/// must be released with `schubert_string_free`.
///
/// # Safety
/// `classes` must hold `2 * n_classes` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn schubert_characteristic(
    t: *const SchubertTable,
    w_m: usize,
    w_i: usize,
    classes: *const usize,
    n_classes: usize,
    out: *mut *mut c_char,
) -> SchubertStatus {
    guard(|| {
        let table = table_ref(t)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let flat = slice(classes, n_classes.saturating_mul(2), "classes")?;
        let idx: Vec<CosetIndex> = flat.chunks(2).map(|p| CosetIndex::new(p[0], p[1])).collect();
        let value = characteristic(table, CosetIndex::new(w_m, w_i), &idx).map_err(core_err)?;
        *out = CString::new(value.to_string()).expect("digits only").into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used after.
#[no_mangle]
pub unsafe extern "C" fn schubert_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn schubert_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn schubert_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version contains a nul byte"),
    };
    VERSION.as_ptr()
}
