use std::ffi::{c_char, CStr, CString};
use std::ptr;

use mactt_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    mactt_string_free(s);
    out
}

fn last_error() -> String {
    let p = mactt_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

const DELTA1_TO_POINT: &str = include_str!("../../core/corpus/delta1_to_point.sset");
const TWO_POINTS: &str = include_str!("../../core/corpus/two_points_to_point.sset");

#[test]
fn sets_parse_print_and_compare() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(mactt_set_parse(c("{#0,#2}").as_ptr(), &mut a), MacttStatus::Ok);
        assert!(mactt_last_error().is_null());
        assert_eq!(mactt_set_cardinality(a), 2);
        let mut s = ptr::null_mut();
        assert_eq!(mactt_set_to_string(a, &mut s), MacttStatus::Ok);
        assert_eq!(take(s), "{#0,#2}");

        // {#0,#2} = {0, {0,1}} has code 1 + 2^3.
        let b = mactt_set_from_code(9);
        assert_eq!(mactt_set_compare(a, b), 0);
        let zero = mactt_set_from_code(0);
        assert!(mactt_set_contains(a, zero));
        assert_eq!(mactt_set_compare(zero, a), -1);
        assert_eq!(mactt_set_compare(a, zero), 1);
        for h in [a, b, zero] {
            mactt_set_free(h);
        }
    }
}

#[test]
fn parse_errors_are_reported() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(mactt_set_parse(c("{#0,").as_ptr(), &mut a), MacttStatus::Parse);
        assert!(a.is_null());
        assert!(last_error().contains("column"));
        assert_eq!(mactt_set_parse(ptr::null(), &mut a), MacttStatus::NullArgument);
        assert_eq!(
            mactt_set_parse(c("#1").as_ptr(), ptr::null_mut()),
            MacttStatus::NullArgument
        );
        let bad = [0xffu8, 0];
        assert_eq!(mactt_set_parse(bad.as_ptr().cast(), &mut a), MacttStatus::InvalidUtf8);
    }
}

#[test]
fn separation_through_the_interface() {
    unsafe {
        let from = mactt_set_from_code(255);
        let mut out = ptr::null_mut();
        let status = mactt_separation(c("exists y in x . true").as_ptr(), c("x").as_ptr(), from, &mut out);
        assert_eq!(status, MacttStatus::Ok);
        // Members 0..7 of the set with code 255; all but the empty set are inhabited.
        assert_eq!(mactt_set_cardinality(out), 7);
        mactt_set_free(out);
        let status = mactt_separation(c("y in x").as_ptr(), c("x").as_ptr(), from, &mut out);
        assert_eq!(status, MacttStatus::Invalid);
        assert!(last_error().contains('y'));
        mactt_set_free(from);
    }
}

#[test]
fn documents_and_kan_witnesses() {
    unsafe {
        let mut doc = ptr::null_mut();
        assert_eq!(
            mactt_document_parse(c(DELTA1_TO_POINT).as_ptr(), &mut doc),
            MacttStatus::Ok
        );
        assert_eq!(mactt_document_object_count(doc), 2);
        assert_eq!(mactt_document_map_count(doc), 1);
        let mut n = 0usize;
        assert_eq!(
            mactt_document_simplex_count(doc, c("X").as_ptr(), 1, &mut n),
            MacttStatus::Ok
        );
        assert_eq!(n, 3);
        assert_eq!(
            mactt_document_simplex_count(doc, c("Q").as_ptr(), 1, &mut n),
            MacttStatus::NotFound
        );
        assert_eq!(
            mactt_document_simplex_count(doc, c("X").as_ptr(), 9, &mut n),
            MacttStatus::Truncation
        );

        let (mut holds, mut witness) = (true, ptr::null_mut());
        assert_eq!(
            mactt_kan_check(doc, ptr::null(), false, 2, &mut holds, &mut witness),
            MacttStatus::Ok
        );
        assert!(!holds);
        assert!(take(witness).starts_with("horn(2,0)"));
        assert_eq!(
            mactt_kan_check(doc, c("nope").as_ptr(), false, 2, &mut holds, ptr::null_mut()),
            MacttStatus::NotFound
        );
        assert_eq!(
            mactt_kan_check(doc, ptr::null(), false, 9, &mut holds, ptr::null_mut()),
            MacttStatus::Truncation
        );
        mactt_document_free(doc);

        assert_eq!(mactt_document_parse(c(TWO_POINTS).as_ptr(), &mut doc), MacttStatus::Ok);
        assert_eq!(
            mactt_kan_check(doc, ptr::null(), false, 2, &mut holds, &mut witness),
            MacttStatus::Ok
        );
        assert!(holds);
        assert!(witness.is_null());
        assert_eq!(
            mactt_kan_check(doc, ptr::null(), true, 2, &mut holds, &mut witness),
            MacttStatus::Ok
        );
        assert!(!holds);
        assert!(take(witness).starts_with("boundary(1)"));
        mactt_document_free(doc);

        assert_eq!(
            mactt_document_parse(c("object X 2\nsimplex").as_ptr(), &mut doc),
            MacttStatus::Parse
        );
    }
}

#[test]
fn cli_runs_in_process() {
    unsafe {
        let args = [
            c("wtype"),
            c(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/corpus/nat.sig")),
            c("--summary"),
        ];
        let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
        let (mut out, mut err, mut code) = (ptr::null_mut(), ptr::null_mut(), -1);
        assert_eq!(
            mactt_cli_run(argv.len(), argv.as_ptr(), &mut out, &mut err, &mut code),
            MacttStatus::Ok
        );
        assert_eq!(code, 0);
        assert!(take(out).contains("status=ok"));
        assert_eq!(take(err), "");

        let args = [c("validate"), c("/nonexistent.sset")];
        let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
        assert_eq!(
            mactt_cli_run(argv.len(), argv.as_ptr(), ptr::null_mut(), &mut err, &mut code),
            MacttStatus::Ok
        );
        assert_eq!(code, 2);
        assert!(take(err).contains("nonexistent"));
    }
}

#[test]
fn null_handles_are_harmless() {
    unsafe {
        mactt_set_free(ptr::null_mut());
        mactt_document_free(ptr::null_mut());
        mactt_string_free(ptr::null_mut());
        assert_eq!(mactt_set_cardinality(ptr::null()), 0);
        assert_eq!(mactt_document_map_count(ptr::null()), 0);
        let mut s = ptr::null_mut();
        assert_eq!(mactt_set_to_string(ptr::null(), &mut s), MacttStatus::NullArgument);
    }
}
