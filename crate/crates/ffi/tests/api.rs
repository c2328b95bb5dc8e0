use std::ffi::{CStr, CString};
use std::ptr;

use predmodal_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(pm_last_error()) }
        .to_str()
        .unwrap()
        .to_string()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let text = CStr::from_ptr(s).to_str().unwrap().to_string();
    pm_string_free(s);
    text
}

unsafe fn formula(src: &str) -> *mut PmFormula {
    let mut f = ptr::null_mut();
    assert_eq!(
        pm_formula_parse(c(src).as_ptr(), &mut f),
        PmStatus::Ok,
        "{}",
        last_error()
    );
    f
}

unsafe fn frame(family: &str, n: usize) -> *mut PmFrame {
    let mut f = ptr::null_mut();
    assert_eq!(
        pm_frame_generate(c(family).as_ptr(), n, &mut f),
        PmStatus::Ok,
        "{}",
        last_error()
    );
    f
}

#[test]
fn formula_round_trip_and_depth() {
    unsafe {
        let f = formula("<> [] false & <><> [] false");
        let mut depth = 0;
        assert_eq!(pm_formula_modal_depth(f, &mut depth), PmStatus::Ok);
        assert_eq!(depth, 3);
        let text = take(pm_formula_to_string(f));
        let again = formula(&text);
        assert_eq!(take(pm_formula_to_string(again)), text);
        pm_formula_free(f);
        pm_formula_free(again);
    }
}

#[test]
fn parse_errors_and_null_pointers() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(
            pm_formula_parse(c("[] (p &").as_ptr(), &mut f),
            PmStatus::ParseError
        );
        assert!(f.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(pm_formula_parse(ptr::null(), &mut f), PmStatus::NullPointer);
        assert_eq!(
            pm_formula_modal_depth(ptr::null(), &mut 0),
            PmStatus::NullPointer
        );
        assert!(pm_formula_to_string(ptr::null()).is_null());
        pm_formula_free(ptr::null_mut());
        pm_frame_free(ptr::null_mut());
        pm_string_free(ptr::null_mut());
        let bad = [0xffu8, 0];
        assert_eq!(
            pm_formula_parse(bad.as_ptr().cast(), &mut f),
            PmStatus::InvalidUtf8
        );
    }
}

#[test]
fn frames_generate_and_json() {
    unsafe {
        let g = frame("ring", 6);
        let mut n = 0;
        assert_eq!(pm_frame_world_count(g, &mut n), PmStatus::Ok);
        assert_eq!(n, 7);
        let json = take(pm_frame_to_json(g));
        let mut back = ptr::null_mut();
        assert_eq!(
            pm_frame_from_json(c(&json).as_ptr(), &mut back),
            PmStatus::Ok
        );
        assert_eq!(take(pm_frame_to_json(back)), json);
        let mut junk = ptr::null_mut();
        assert_eq!(
            pm_frame_from_json(c("{").as_ptr(), &mut junk),
            PmStatus::ParseError
        );
        assert_eq!(
            pm_frame_generate(c("lattice").as_ptr(), 3, &mut junk),
            PmStatus::InvalidArgument
        );
        assert_eq!(
            pm_frame_generate(c("ring").as_ptr(), 1, &mut junk),
            PmStatus::InvalidArgument
        );
        let u = frame("ring-union", 4);
        assert_eq!(pm_frame_world_count(u, &mut n), PmStatus::Ok);
        assert_eq!(n, 3 + 5);
        pm_frame_free(g);
        pm_frame_free(back);
        pm_frame_free(u);
    }
}

#[test]
fn validity_and_membership() {
    unsafe {
        let alt2 = formula("[]p1 | [](p1 -> p2) | [](p1 & p2 -> p3)");
        let g = frame("ring", 4);
        let mut valid = false;
        assert_eq!(pm_frame_validity(g, alt2, 1, &mut valid), PmStatus::Ok);
        assert!(valid);

        let neg_beta4 =
            formula("~(<>[]false & <><><><><>[]false & ~<><><>[]false & ~<><><><>[]false)");
        let mut member = true;
        let mut cm = ptr::null_mut();
        assert_eq!(
            pm_check(PmLogic::L1, neg_beta4, 2, 0, &mut member, &mut cm),
            PmStatus::Ok
        );
        assert!(!member);
        let doc = take(cm);
        assert!(doc.contains("\"w4\""));
        assert_eq!(
            pm_check(PmLogic::L0, alt2, 2, 0, &mut member, ptr::null_mut()),
            PmStatus::Ok
        );
        assert!(member);

        let open = formula("P(y)");
        assert_eq!(
            pm_check(PmLogic::L0, open, 2, 0, &mut member, ptr::null_mut()),
            PmStatus::InvalidArgument
        );
        pm_formula_free(open);
        pm_formula_free(alt2);
        pm_formula_free(neg_beta4);
        pm_frame_free(g);
    }
}

#[test]
fn translations() {
    unsafe {
        let f = formula("[] false");
        let mut out = ptr::null_mut();
        assert_eq!(
            pm_translate(PmTranslation::StandardX, f, &mut out),
            PmStatus::Ok
        );
        assert_eq!(take(out), "forall _v0. W(_v0) & R(x,_v0) -> false");
        assert_eq!(
            pm_translate(PmTranslation::EmbedL1, f, &mut out),
            PmStatus::Ok
        );
        let text = take(out);
        assert!(predmodal::parse_fol(&text).unwrap().is_closed());
        pm_formula_free(f);
    }
}

#[test]
fn ef_games_over_handles() {
    unsafe {
        let (a, b) = (frame("ring", 4), frame("ring", 5));
        let mut wins = false;
        assert_eq!(pm_ef_duplicator_wins(a, b, 2, &mut wins), PmStatus::Ok);
        assert!(wins);
        assert_eq!(pm_ef_duplicator_wins(a, b, 3, &mut wins), PmStatus::Ok);
        assert!(!wins);
        pm_frame_free(a);
        pm_frame_free(b);
    }
}

#[test]
fn header_declares_every_export() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/predmodal.h"))
            .unwrap();
    for name in [
        "pm_last_error",
        "pm_string_free",
        "pm_formula_parse",
        "pm_formula_free",
        "pm_formula_modal_depth",
        "pm_formula_to_string",
        "pm_frame_generate",
        "pm_frame_from_json",
        "pm_frame_to_json",
        "pm_frame_world_count",
        "pm_frame_free",
        "pm_frame_validity",
        "pm_check",
        "pm_translate",
        "pm_ef_duplicator_wins",
        "typedef struct PmFormula PmFormula;",
        "PM_STATUS_BUDGET_EXCEEDED = 5",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
