use holonomic_ffi::*;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

fn take(s: *mut c_char) -> String {
    let v = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { holo_string_free(s) };
    v
}

fn last_error() -> String {
    let p = holo_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn sequence(text: &str) -> *mut HoloSequence {
    let c = CString::new(text).unwrap();
    let mut seq = ptr::null_mut();
    assert_eq!(unsafe { holo_sequence_parse(c.as_ptr(), &mut seq) }, HoloStatus::Ok);
    seq
}

fn relation(text: &str) -> *mut HoloRelation {
    let c = CString::new(text).unwrap();
    let mut rel = ptr::null_mut();
    assert_eq!(unsafe { holo_relation_parse(c.as_ptr(), &mut rel) }, HoloStatus::Ok, "{}", last_error());
    rel
}

fn pretty(rel: *const HoloRelation) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { holo_relation_format(rel, false, &mut s) }, HoloStatus::Ok);
    take(s)
}

#[test]
fn catalan_guess_through_handles() {
    let seq = sequence("1\n1\n2\n5\n14\n42\n");
    assert_eq!(unsafe { holo_sequence_len(seq) }, 6);
    let mut rel = ptr::null_mut();
    assert_eq!(unsafe { holo_guess(seq, HoloGuessKind::Rec, 0, &mut rel) }, HoloStatus::Ok);
    assert_eq!(pretty(rel), "(n + 2)*u(n+1) + (-4*n - 2)*u(n) = 0; u(0) = 1");

    let mut big = ptr::null_mut();
    assert_eq!(unsafe { holo_nth_term(rel, 30, &mut big) }, HoloStatus::Ok);
    assert_eq!(take(big), "3814986502092304");

    let mut more = ptr::null_mut();
    assert_eq!(unsafe { holo_expand(rel, 8, &mut more) }, HoloStatus::Ok);
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { holo_sequence_term(more, 7, &mut t) }, HoloStatus::Ok);
    assert_eq!(take(t), "429");
    unsafe {
        holo_sequence_free(more);
        holo_relation_free(rel);
        holo_sequence_free(seq);
    }
}

#[test]
fn random_data_reports_no_relation() {
    let seq = sequence("3\n1\n4\n1\n5\n9\n");
    let mut rel = ptr::null_mut();
    assert_eq!(unsafe { holo_guess(seq, HoloGuessKind::Rec, 0, &mut rel) }, HoloStatus::NoRelation);
    assert!(rel.is_null());
    assert!(last_error().contains("no relation"));
    unsafe { holo_sequence_free(seq) };
}

#[test]
fn error_codes() {
    let bad = CString::new("1 1\n3 2\n").unwrap();
    let mut seq = ptr::null_mut();
    assert_eq!(unsafe { holo_sequence_parse(bad.as_ptr(), &mut seq) }, HoloStatus::ParseError);
    assert!(last_error().contains("contiguous"));

    assert_eq!(unsafe { holo_sequence_parse(ptr::null(), &mut seq) }, HoloStatus::NullPointer);
    let ok = CString::new("1\n").unwrap();
    assert_eq!(unsafe { holo_sequence_parse(ok.as_ptr(), ptr::null_mut()) }, HoloStatus::NullPointer);

    let seq = sequence("1\n2\n");
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { holo_sequence_term(seq, 5, &mut t) }, HoloStatus::InvalidInput);
    unsafe { holo_sequence_free(seq) };

    let rec = relation("(n + 2)*u(n+1) + (-4*n - 2)*u(n) = 0; u(0) = 1");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { holo_convert(rec, HoloConversion::AlgToOde, &mut out) }, HoloStatus::InvalidInput);
    unsafe { holo_relation_free(rec) };

    unsafe {
        holo_string_free(ptr::null_mut());
        holo_relation_free(ptr::null_mut());
        holo_operator_free(ptr::null_mut());
    }
}

#[test]
fn conversion_and_closure() {
    let rec = relation("(n + 2)*u(n+1) + (-4*n - 2)*u(n) = 0; u(0) = 1");
    let mut ode = ptr::null_mut();
    assert_eq!(unsafe { holo_convert(rec, HoloConversion::RecToOde, &mut ode) }, HoloStatus::Ok);
    let mut coeffs = ptr::null_mut();
    assert_eq!(unsafe { holo_expand(ode, 6, &mut coeffs) }, HoloStatus::Ok);
    let got: Vec<String> = (0..6)
        .map(|i| {
            let mut t = ptr::null_mut();
            unsafe { holo_sequence_term(coeffs, i, &mut t) };
            take(t)
        })
        .collect();
    assert_eq!(got, ["1", "1", "2", "5", "14", "42"]);

    let mut sq = ptr::null_mut();
    assert_eq!(unsafe { holo_closure_mul(rec, rec, &mut sq) }, HoloStatus::Ok);
    let mut terms = ptr::null_mut();
    assert_eq!(unsafe { holo_expand(sq, 6, &mut terms) }, HoloStatus::Ok);
    let mut t = ptr::null_mut();
    unsafe { holo_sequence_term(terms, 5, &mut t) };
    assert_eq!(take(t), "1764");

    let mut mixed = ptr::null_mut();
    assert_eq!(unsafe { holo_closure_add(rec, ode, &mut mixed) }, HoloStatus::InvalidInput);
    unsafe {
        holo_sequence_free(terms);
        holo_relation_free(sq);
        holo_sequence_free(coeffs);
        holo_relation_free(ode);
        holo_relation_free(rec);
    }
}

#[test]
fn operator_gcrd_and_lclm() {
    let a = CString::new("kind=shift var=n; [[-2, -4]; [2, 1]]").unwrap();
    let b = CString::new("kind=shift var=n; [[-1]; [1]]").unwrap();
    let (mut pa, mut pb) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(holo_operator_parse(a.as_ptr(), &mut pa), HoloStatus::Ok);
        assert_eq!(holo_operator_parse(b.as_ptr(), &mut pb), HoloStatus::Ok);
    }
    let mut l = ptr::null_mut();
    assert_eq!(unsafe { holo_operator_lclm(pa, pb, &mut l) }, HoloStatus::Ok);
    assert_eq!(unsafe { holo_operator_order(l) }, 2);
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { holo_operator_gcrd(l, pa, &mut g) }, HoloStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { holo_operator_format(g, &mut s) }, HoloStatus::Ok);
    assert_eq!(take(s), "kind=shift var=n; [[-2, -4]; [2, 1]]");

    let junk = CString::new("kind=spin var=n; [[1]]").unwrap();
    let mut bad = ptr::null_mut();
    assert_eq!(unsafe { holo_operator_parse(junk.as_ptr(), &mut bad) }, HoloStatus::ParseError);
    unsafe {
        holo_operator_free(g);
        holo_operator_free(l);
        holo_operator_free(pb);
        holo_operator_free(pa);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(holo_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
