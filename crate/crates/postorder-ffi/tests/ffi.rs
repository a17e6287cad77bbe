//! Exercises the C ABI from Rust: the happy paths for every exported
//! function plus the null-argument, bad-UTF-8, and malformed-input branches
//! of the status-code contract.

use postorder_ffi::*;
use serde_json::Value;
use std::ffi::{c_char, CStr, CString};

const A14: &str = r#"{"space":{"classical":2},"effects":[["1/2","1/4"],["1/2","3/4"]]}"#;
const A13: &str = r#"{"space":{"classical":2},"effects":[["1/3","1/9"],["2/3","8/9"]]}"#;
const TRIVIAL: &str = r#"{"space":{"classical":2},"effects":[["1/2","1/2"],["1/2","1/2"]]}"#;
const ENSEMBLE: &str = r#"{"space":{"classical":2},"members":[["1/2","0/1"],["0/1","1/2"]]}"#;
const CHAIN3: &str =
    r#"{"elements":["c0","c1","c2"],"pairs":[["c0","c1"],["c1","c2"],["c0","c2"]]}"#;

fn cstring(text: &str) -> CString {
    CString::new(text).expect("fixtures contain no nul bytes")
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(po_last_error()) }
        .to_str()
        .expect("error messages are UTF-8")
        .to_string()
}

/// Takes ownership of a string the library allocated and frees it.
unsafe fn claim(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null(), "expected an output string");
    let text = CStr::from_ptr(ptr)
        .to_str()
        .expect("outputs are UTF-8")
        .to_string();
    po_string_free(ptr);
    text
}

#[test]
fn version_is_a_static_semver_string() {
    let version = unsafe { CStr::from_ptr(po_version()) }
        .to_str()
        .expect("version is UTF-8");
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
}

#[test]
fn measurements_parse_compare_and_score() {
    unsafe {
        let m = po_evm_parse(cstring(A14).as_ptr());
        let n = po_evm_parse(cstring(A13).as_ptr());
        assert!(!m.is_null() && !n.is_null(), "{}", last_error());
        assert_eq!(po_evm_outcomes(m), 2);
        assert_eq!(po_evm_space_dim(m), 2);

        let mut out: *mut c_char = std::ptr::null_mut();
        assert_eq!(po_compare(m, n, &mut out), PoStatus::Ok);
        let verdict: Value = serde_json::from_str(&claim(out)).expect("verdict is JSON");
        assert_eq!(verdict["verdict"], "incomparable");
        assert!(verdict["ensembles"]["forward"].is_object());
        assert!(verdict["ensembles"]["backward"].is_object());

        let trivial = po_evm_parse(cstring(TRIVIAL).as_ptr());
        let mut down: *mut c_char = std::ptr::null_mut();
        assert_eq!(po_compare(m, trivial, &mut down), PoStatus::Ok);
        let coarse: Value = serde_json::from_str(&claim(down)).expect("verdict is JSON");
        assert_eq!(coarse["verdict"], "greater");
        assert!(coarse["markov"].is_array());

        let mut value: *mut c_char = std::ptr::null_mut();
        assert_eq!(
            po_pg(cstring(ENSEMBLE).as_ptr(), m, &mut value),
            PoStatus::Ok
        );
        assert_eq!(claim(value), "5/8");

        let mut floor: *mut c_char = std::ptr::null_mut();
        assert_eq!(
            po_pg(cstring(ENSEMBLE).as_ptr(), trivial, &mut floor),
            PoStatus::Ok
        );
        assert_eq!(claim(floor), "1/2");

        po_evm_free(trivial);
        po_evm_free(n);
        po_evm_free(m);
    }
}

#[test]
fn posets_parse_measure_and_render() {
    unsafe {
        let chain = po_poset_parse(cstring(CHAIN3).as_ptr());
        assert!(!chain.is_null(), "{}", last_error());
        assert_eq!(po_poset_len(chain), 3);

        let mut dimension = usize::MAX;
        assert_eq!(po_poset_dimension(chain, 4, &mut dimension), PoStatus::Ok);
        assert_eq!(dimension, 1, "a chain is an intersection of one extension");

        let mut dot: *mut c_char = std::ptr::null_mut();
        assert_eq!(po_poset_dot(chain, &mut dot), PoStatus::Ok);
        let rendered = claim(dot);
        assert!(rendered.contains("digraph"));
        assert!(rendered.contains("\"c0\" -> \"c1\""));
        assert!(
            !rendered.contains("\"c0\" -> \"c2\""),
            "the diagram keeps only covering edges"
        );
        po_poset_free(chain);

        let s3 = po_standard_example(3);
        assert!(!s3.is_null(), "{}", last_error());
        assert_eq!(po_poset_len(s3), 6);
        let mut s3_dim = 0;
        assert_eq!(po_poset_dimension(s3, 4, &mut s3_dim), PoStatus::Ok);
        assert_eq!(s3_dim, 3);
        po_poset_free(s3);
    }
}

#[test]
fn dimension_search_bound_reports_domain_error() {
    unsafe {
        let s3 = po_standard_example(3);
        let mut dimension = 0;
        assert_eq!(
            po_poset_dimension(s3, 2, &mut dimension),
            PoStatus::Domain,
            "dimension 3 cannot be found with max_k = 2"
        );
        assert!(last_error().contains("search bound"));
        po_poset_free(s3);
    }
}

#[test]
fn bit_family_report_matches_the_expected_shape() {
    unsafe {
        let mut out: *mut c_char = std::ptr::null_mut();
        assert_eq!(po_main1(3, &mut out), PoStatus::Ok);
        let report: Value = serde_json::from_str(&claim(out)).expect("report is JSON");
        assert_eq!(report["n"], 3);
        assert_eq!(report["comparisons"], 15);
        assert_eq!(report["dimension"], 3);
        assert_eq!(report["patterns"]["a-below-b"], 6);
        assert_eq!(
            report["poset"]["elements"].as_array().map(Vec::len),
            Some(6)
        );
    }
}

#[test]
fn null_arguments_are_rejected_without_crashing() {
    unsafe {
        assert!(po_evm_parse(std::ptr::null()).is_null());
        assert!(last_error().contains("must not be null"));
        assert!(po_poset_parse(std::ptr::null()).is_null());

        let mut out: *mut c_char = std::ptr::null_mut();
        assert_eq!(
            po_compare(std::ptr::null(), std::ptr::null(), &mut out),
            PoStatus::NullArgument
        );
        assert!(out.is_null(), "failed calls leave the output untouched");

        let m = po_evm_parse(cstring(A14).as_ptr());
        assert_eq!(
            po_pg(cstring(ENSEMBLE).as_ptr(), std::ptr::null(), &mut out),
            PoStatus::NullArgument
        );
        let mut dimension = 0;
        assert_eq!(
            po_poset_dimension(std::ptr::null(), 4, &mut dimension),
            PoStatus::NullArgument
        );
        assert_eq!(po_poset_dot(std::ptr::null(), &mut out), PoStatus::NullArgument);
        assert_eq!(po_compare(m, m, std::ptr::null_mut()), PoStatus::NullArgument);
        po_evm_free(m);

        assert_eq!(po_evm_outcomes(std::ptr::null()), 0);
        assert_eq!(po_evm_space_dim(std::ptr::null()), 0);
        assert_eq!(po_poset_len(std::ptr::null()), 0);

        po_evm_free(std::ptr::null_mut());
        po_poset_free(std::ptr::null_mut());
        po_string_free(std::ptr::null_mut());
    }
}

#[test]
fn malformed_inputs_set_informative_errors() {
    unsafe {
        let bad_utf8 = CString::new(vec![0xffu8, 0xfe]).expect("no nul bytes");
        assert!(po_evm_parse(bad_utf8.as_ptr()).is_null());
        assert!(last_error().contains("UTF-8"));

        assert!(po_evm_parse(cstring("not json").as_ptr()).is_null());
        assert!(!last_error().is_empty());

        let incomplete = r#"{"space":{"classical":2},"effects":[["1/2","1/4"]]}"#;
        assert!(
            po_evm_parse(cstring(incomplete).as_ptr()).is_null(),
            "effects must sum to the unit"
        );

        let cyclic = r#"{"elements":["x","y"],"pairs":[["x","y"],["y","x"]]}"#;
        assert!(po_poset_parse(cstring(cyclic).as_ptr()).is_null());

        assert!(po_standard_example(1).is_null());
        assert!(!last_error().is_empty());

        let m = po_evm_parse(cstring(A14).as_ptr());
        let mut out: *mut c_char = std::ptr::null_mut();
        assert_eq!(
            po_pg(cstring("[1, 2, 3]").as_ptr(), m, &mut out),
            PoStatus::InvalidInput
        );
        po_evm_free(m);
    }
}

#[test]
fn mismatched_spaces_fail_at_the_comparison_stage() {
    unsafe {
        let bit = po_evm_parse(cstring(A14).as_ptr());
        let trit = po_evm_parse(
            cstring(r#"{"space":{"classical":3},"effects":[["1/1","1/1","1/1"]]}"#).as_ptr(),
        );
        assert!(!bit.is_null() && !trit.is_null(), "{}", last_error());

        let mut out: *mut c_char = std::ptr::null_mut();
        assert_eq!(po_compare(bit, trit, &mut out), PoStatus::Domain);
        assert!(!last_error().is_empty());

        po_evm_free(trit);
        po_evm_free(bit);
    }
}
