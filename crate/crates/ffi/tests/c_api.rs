use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use bocal_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(bocal_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn corpus_algebra_invariants() {
    let mut a = ptr::null_mut();
    unsafe {
        assert_eq!(bocal_algebra_from_corpus(c("family").as_ptr(), ptr::null(), &mut a), BocalStatus::Ok);
        let mut ll = 0;
        assert_eq!(bocal_algebra_loewy_length(a, &mut ll), BocalStatus::Ok);
        assert_eq!(ll, 7);
        let (mut kind, mut value) = (BocalPdKind::Finite, 0);
        assert_eq!(bocal_algebra_gl_dim(a, 10, 0, &mut kind, &mut value), BocalStatus::Ok);
        assert_eq!(kind, BocalPdKind::InfiniteCertified);
        bocal_algebra_free(a);
    }
}

#[test]
fn module_projective_dimension() {
    let mut a = ptr::null_mut();
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(bocal_algebra_from_corpus(c("a3tilde-hereditary").as_ptr(), c("101").as_ptr(), &mut a), BocalStatus::Ok);
        let mut nv = 0;
        assert_eq!(bocal_algebra_num_vertices(a, &mut nv), BocalStatus::Ok);
        assert_eq!(nv, 4);
        let mut max = 0;
        for v in 0..nv {
            assert_eq!(bocal_module_simple(a, v, &mut m), BocalStatus::Ok);
            let (mut kind, mut value) = (BocalPdKind::AtLeast, 0);
            assert_eq!(bocal_module_pd(m, 10, 0, &mut kind, &mut value), BocalStatus::Ok);
            assert_eq!(kind, BocalPdKind::Finite);
            max = max.max(value);
            bocal_module_free(m);
        }
        assert_eq!(max, 1);
        assert_eq!(bocal_module_projective(a, 0, &mut m), BocalStatus::Ok);
        let (mut kind, mut value) = (BocalPdKind::AtLeast, 9);
        assert_eq!(bocal_module_pd(m, 10, 0, &mut kind, &mut value), BocalStatus::Ok);
        assert_eq!((kind, value), (BocalPdKind::Finite, 0));
        bocal_module_free(m);
        assert_eq!(bocal_module_simple(a, 4, &mut m), BocalStatus::OutOfRange);
        bocal_algebra_free(a);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let mut a = ptr::null_mut();
    unsafe {
        assert_eq!(bocal_algebra_from_corpus(c("family(6,2)").as_ptr(), ptr::null(), &mut a), BocalStatus::ParameterOutOfRange);
        assert!(last_error().contains("s >= 7"), "{}", last_error());
        assert_eq!(bocal_algebra_from_json(c("{\n  \"field\": ").as_ptr(), &mut a), BocalStatus::Parse);
        assert!(!last_error().is_empty());
        assert_eq!(bocal_algebra_from_json(ptr::null(), &mut a), BocalStatus::NullPointer);
        let mut n = 0;
        assert_eq!(bocal_algebra_dim(ptr::null(), &mut n), BocalStatus::NullPointer);
        assert_eq!(bocal_algebra_from_corpus(c("semisimple").as_ptr(), c("Q").as_ptr(), &mut a), BocalStatus::Ok);
        assert_eq!(last_error(), "");
        assert_eq!(bocal_algebra_dim(a, &mut n), BocalStatus::Ok);
        assert_eq!(n, 2);
        bocal_algebra_free(a);
        bocal_algebra_free(ptr::null_mut());
    }
}

#[test]
fn algebra_from_json_file() {
    let text = r#"{"field": "Q", "vertices": ["1", "2"], "arrows": [{"name": "a", "src": "1", "tgt": "2"}], "relations": []}"#;
    let mut a = ptr::null_mut();
    unsafe {
        assert_eq!(bocal_algebra_from_json(c(text).as_ptr(), &mut a), BocalStatus::Ok, "{}", last_error());
        let mut n = 0;
        assert_eq!(bocal_algebra_dim(a, &mut n), BocalStatus::Ok);
        assert_eq!(n, 3);
        bocal_algebra_free(a);
    }
}

#[test]
fn report_document() {
    let mut json = ptr::null_mut();
    let mut passed = 0;
    unsafe {
        assert_eq!(bocal_report(c("trivial-loop").as_ptr(), true, 0, &mut json, &mut passed), BocalStatus::Ok);
        let s = CStr::from_ptr(json).to_str().unwrap().to_owned();
        bocal_string_free(json);
        assert_eq!(passed, 1);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["format"], "bocal-report/1");
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/bocal.h");
    assert!(header.is_file());
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("probe.c");
    std::fs::write(
        &src,
        "#include \"bocal.h\"\nint main(void) { BocalAlgebra *a = 0; size_t n = 0;\n\
         return bocal_algebra_dim(a, &n) == BOCAL_STATUS_NULL_POINTER ? 0 : 1; }\n",
    )
    .unwrap();
    let Ok(out) = Command::new("cc").arg("-fsyntax-only").arg("-Wall").arg("-Werror").arg("-I").arg(dir.join("include")).arg(&src).output()
    else {
        eprintln!("no C compiler available; header syntax not checked");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
