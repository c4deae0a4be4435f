use std::ffi::CStr;
use std::ptr;

use schubert_ffi::*;

fn builtin(series: u8, rank: usize, k: &[usize]) -> *mut SchubertTable {
    let mut t = ptr::null_mut();
    let st = unsafe { schubert_table_new_builtin(series as _, rank, k.as_ptr(), k.len(), -1, 0, &mut t) };
    assert_eq!(st, SchubertStatus::Ok);
    t
}

fn last_error() -> String {
    let p = schubert_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn table_queries() {
    let t = builtin(b'G', 2, &[1, 2]);
    unsafe {
        assert_eq!(schubert_table_len(t), 12);
        assert_eq!(schubert_table_top_length(t), 6);
        assert_eq!(schubert_table_is_complete(t), 1);
        assert_eq!(schubert_table_betti(t, 3), 2);
        let mut buf = [0u8; 8];
        let mut len = 0;
        assert_eq!(schubert_table_word(t, 6, 1, buf.as_mut_ptr(), buf.len(), &mut len), SchubertStatus::Ok);
        assert_eq!(len, 6);
        let (mut m, mut i) = (0, 0);
        assert_eq!(schubert_table_lookup(t, buf.as_ptr(), len, &mut m, &mut i), SchubertStatus::Ok);
        assert_eq!((m, i), (6, 1));
        assert_eq!(schubert_table_word(t, 6, 1, buf.as_mut_ptr(), 2, &mut len), SchubertStatus::BufferTooSmall);
        assert_eq!(len, 6);
        assert_eq!(schubert_table_word(t, 9, 1, buf.as_mut_ptr(), 8, &mut len), SchubertStatus::NotFound);
        schubert_table_free(t);
    }
}

#[test]
fn characteristic_as_decimal() {
    let t = builtin(b'A', 8, &[4]);
    // c1^20 on the Grassmannian of 4-planes in C^9
    let classes: Vec<usize> = std::iter::repeat_n([1usize, 1], 20).flatten().collect();
    let mut out = ptr::null_mut();
    let st = unsafe { schubert_characteristic(t, 20, 1, classes.as_ptr(), 20, &mut out) };
    assert_eq!(st, SchubertStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(out) }.to_str().unwrap(), "1662804");
    unsafe {
        schubert_string_free(out);
        let st = schubert_characteristic(t, 20, 1, classes.as_ptr(), 3, &mut out);
        assert_eq!(st, SchubertStatus::DegreeMismatch);
        assert!(!last_error().is_empty());
        schubert_table_free(t);
    }
}

#[test]
fn structure_matrix_g2() {
    let t = builtin(b'G', 2, &[1, 2]);
    let mut buf = [0i64; 36];
    unsafe {
        assert_eq!(schubert_structure_matrix(t, 6, 1, buf.as_mut_ptr(), 36), SchubertStatus::Ok);
        for s in 0..6 {
            assert_eq!(buf[s * 6 + s], 0);
        }
        assert_eq!(schubert_structure_matrix(t, 6, 1, buf.as_mut_ptr(), 10), SchubertStatus::BufferTooSmall);
        schubert_table_free(t);
    }
}

#[test]
fn cartan_input_and_errors() {
    let entries = [2i64, -1, -3, 2];
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(schubert_table_new_cartan(entries.as_ptr(), 2, [1usize].as_ptr(), 1, -1, 0, &mut t), SchubertStatus::Ok);
        assert_eq!(schubert_table_len(t), 6);
        schubert_table_free(t);

        let bad = [2i64, 1, -1, 2];
        assert_eq!(schubert_table_new_cartan(bad.as_ptr(), 2, ptr::null(), 0, -1, 0, &mut t), SchubertStatus::NotCartan);
        assert!(!last_error().is_empty());
        assert_eq!(schubert_table_new_builtin(b'E' as _, 9, ptr::null(), 0, -1, 0, &mut t), SchubertStatus::InvalidGroup);
        assert_eq!(schubert_table_new_builtin(b'Q' as _, 2, ptr::null(), 0, -1, 0, &mut t), SchubertStatus::InvalidGroup);
        assert_eq!(schubert_table_new_builtin(b'F' as _, 4, [1usize, 2, 3, 4].as_ptr(), 4, -1, 100, &mut t), SchubertStatus::ResourceLimit);
        assert_eq!(schubert_table_new_builtin(b'A' as _, 3, ptr::null(), 0, -1, 0, &mut t), SchubertStatus::InvalidArgument);
        assert_eq!(schubert_table_new_builtin(b'A' as _, 2, ptr::null(), 0, -1, 0, ptr::null_mut()), SchubertStatus::NullPointer);
        assert_eq!(schubert_table_len(ptr::null()), 0);
        schubert_table_free(ptr::null_mut());
        schubert_string_free(ptr::null_mut());
    }
}

#[test]
fn error_cleared_on_success() {
    let mut t = ptr::null_mut();
    unsafe {
        schubert_table_new_builtin(b'Q' as _, 2, ptr::null(), 0, -1, 0, &mut t);
        assert!(!schubert_last_error_message().is_null());
        let t = builtin(b'A', 2, &[1]);
        assert!(schubert_last_error_message().is_null());
        schubert_table_free(t);
    }
    let v = unsafe { CStr::from_ptr(schubert_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/schubert.h")).unwrap();
    for name in [
        "SchubertStatus",
        "SchubertTable",
        "schubert_table_new_builtin",
        "schubert_table_new_cartan",
        "schubert_table_free",
        "schubert_table_len",
        "schubert_table_top_length",
        "schubert_table_is_complete",
        "schubert_table_betti",
        "schubert_table_word",
        "schubert_table_lookup",
        "schubert_structure_matrix",
        "schubert_characteristic",
        "schubert_string_free",
        "schubert_last_error_message",
        "schubert_version",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
