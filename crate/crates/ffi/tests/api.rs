use std::ffi::{c_char, CStr, CString};
use std::ptr;

use qlogic_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(qlogic_last_error()) }
        .to_str()
        .unwrap()
        .to_owned()
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { qlogic_string_free(s) };
    out
}

fn catalog(name: &str) -> *mut QlogicLattice {
    let mut l = ptr::null_mut();
    assert_eq!(
        unsafe { qlogic_lattice_catalog(c(name).as_ptr(), &mut l) },
        QlogicStatus::Ok
    );
    l
}

fn find(l: *const QlogicLattice, label: &str) -> usize {
    let mut i = usize::MAX;
    assert_eq!(
        unsafe { qlogic_lattice_find(l, c(label).as_ptr(), &mut i) },
        QlogicStatus::Ok
    );
    i
}

#[test]
fn two_orientation_lattice_through_the_c_abi() {
    let l = catalog("sg2");
    let mut n = 0;
    assert_eq!(unsafe { qlogic_lattice_len(l, &mut n) }, QlogicStatus::Ok);
    assert_eq!(n, 14);

    let (h, v, vc) = (find(l, "H+"), find(l, "V-"), find(l, "V-⊥"));
    let mut x = 0;
    // H+ ∨ (V- ∧ V-⊥) = H+
    assert_eq!(
        unsafe { qlogic_lattice_meet(l, v, vc, &mut x) },
        QlogicStatus::Ok
    );
    assert_eq!(x, find(l, "0"));
    assert_eq!(
        unsafe { qlogic_lattice_join(l, h, x, &mut x) },
        QlogicStatus::Ok
    );
    assert_eq!(x, h);
    // (H+ ∨ V-) ∧ (H+ ∨ V-⊥) = 1 ∧ V-⊥ = V-⊥
    let (mut a, mut b) = (0, 0);
    unsafe {
        qlogic_lattice_join(l, h, v, &mut a);
        qlogic_lattice_join(l, h, vc, &mut b);
        qlogic_lattice_meet(l, a, b, &mut x);
    }
    assert_eq!(x, vc);
    assert_eq!(
        unsafe { qlogic_lattice_complement(l, v, &mut x) },
        QlogicStatus::Ok
    );
    assert_eq!(x, vc);

    let mut label = ptr::null_mut();
    assert_eq!(
        unsafe { qlogic_lattice_label(l, vc, &mut label) },
        QlogicStatus::Ok
    );
    assert_eq!(take(label), "V-⊥");

    let mut holds = true;
    assert_eq!(
        unsafe { qlogic_lattice_check(l, QlogicLaw::Distributive, &mut holds) },
        QlogicStatus::Ok
    );
    assert!(!holds);
    unsafe { qlogic_lattice_check(l, QlogicLaw::Orthocomplemented, &mut holds) };
    assert!(holds);

    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { qlogic_lattice_report(l, true, &mut report) },
        QlogicStatus::Ok
    );
    let report = take(report);
    assert!(report.contains("law=distributive holds=false witness=H+,V-,V-⊥ lhs=H+ rhs=V-⊥\n"));
    assert_eq!(report.lines().count(), 7);

    let mut dot = ptr::null_mut();
    assert_eq!(
        unsafe { qlogic_lattice_dot(l, c("sg2").as_ptr(), &mut dot) },
        QlogicStatus::Ok
    );
    assert!(take(dot).starts_with("digraph \"sg2\""));
    unsafe { qlogic_lattice_free(l) };
}

#[test]
fn parse_and_errors() {
    let mut l = ptr::null_mut();
    let text = c("elements: 0 a b 1\ncovers: 0<a, 0<b, a<1, b<1\northo: a~b\n");
    assert_eq!(
        unsafe { qlogic_lattice_parse(text.as_ptr(), &mut l) },
        QlogicStatus::Ok
    );
    assert_eq!(last_error(), "");
    let mut holds = false;
    unsafe { qlogic_lattice_check(l, QlogicLaw::Boolean, &mut holds) };
    assert!(holds);

    let mut x = 7;
    assert_eq!(
        unsafe { qlogic_lattice_meet(l, 0, 99, &mut x) },
        QlogicStatus::NotFound
    );
    assert_eq!(x, 7, "out-pointer untouched on failure");
    assert!(last_error().contains("out of range"));
    assert_eq!(
        unsafe { qlogic_lattice_find(l, c("zz").as_ptr(), &mut x) },
        QlogicStatus::NotFound
    );
    assert_eq!(
        unsafe { qlogic_lattice_meet(l, 0, 1, ptr::null_mut()) },
        QlogicStatus::NullArgument
    );
    assert_eq!(
        unsafe { qlogic_lattice_len(ptr::null(), &mut x) },
        QlogicStatus::NullArgument
    );
    unsafe { qlogic_lattice_free(l) };

    let mut bad = ptr::null_mut();
    let text = c("elements: 0 1\ncovers: 0<q\n");
    assert_eq!(
        unsafe { qlogic_lattice_parse(text.as_ptr(), &mut bad) },
        QlogicStatus::ParseError
    );
    assert!(bad.is_null());
    assert!(last_error().contains('q'));
    assert_eq!(
        unsafe { qlogic_lattice_catalog(c("nope").as_ptr(), &mut bad) },
        QlogicStatus::NotFound
    );
    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { qlogic_lattice_parse(invalid.as_ptr().cast(), &mut bad) },
        QlogicStatus::InvalidUtf8
    );

    // no orthocomplement
    let text = c("elements: 0 a 1\ncovers: 0<a, a<1\n");
    unsafe { qlogic_lattice_parse(text.as_ptr(), &mut l) };
    assert_eq!(
        unsafe { qlogic_lattice_complement(l, 1, &mut x) },
        QlogicStatus::NoOrthocomplement
    );
    unsafe {
        qlogic_lattice_free(l);
        qlogic_lattice_free(ptr::null_mut());
        qlogic_string_free(ptr::null_mut());
    }
}

const SLITS: &str = "\
[slits]
slits: A B
source: 0.7071067811865476 0.7071067811865476
detector D0: 0.7071067811865476 0.7071067811865476
detector D1: 0.7071067811865476 -0.7071067811865476
";

#[test]
fn scenario_queries() {
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { qlogic_scenario_parse(c(SLITS).as_ptr(), &mut s) },
        QlogicStatus::Ok
    );
    let eval = |q: &str| {
        let mut p = -1.0;
        let status = unsafe { qlogic_scenario_eval(s, c(q).as_ptr(), &mut p) };
        (status, p)
    };
    let (st, p) = eval("D0@screen after (A@slits or B@slits)");
    assert_eq!(st, QlogicStatus::Ok);
    assert!((p - 1.0).abs() < 1e-12);
    let (_, p) = eval("(D0@screen after A@slits) or (D0@screen after B@slits)");
    assert!((p - 0.5).abs() < 1e-12);
    assert_eq!(eval("D0@screen after").0, QlogicStatus::ParseError);
    assert_eq!(eval("D0@nowhere").0, QlogicStatus::ParseError);
    assert!(last_error().contains("unknown atom"));
    assert_eq!(eval("D1@screen after D0@screen").0, QlogicStatus::Ok);
    unsafe { qlogic_scenario_free(s) };

    let mut bad = ptr::null_mut();
    let text = c("[slits]\nsource: 1 1\ndetector D: 1 0\n");
    assert_eq!(
        unsafe { qlogic_scenario_parse(text.as_ptr(), &mut bad) },
        QlogicStatus::NumericError
    );
    assert!(bad.is_null());
}
