use std::ffi::{c_char, CStr, CString};
use std::ptr;

use ramsey_nice_ffi::*;

fn last_error() -> String {
    let p = rn_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn graph_handles() {
    unsafe {
        let text = CString::new("5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n").unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(rn_graph_parse(text.as_ptr(), &mut g), RnStatus::Ok);
        assert_eq!(rn_graph_vertex_count(g), 5);
        assert_eq!(rn_graph_edge_count(g), 5);
        let mut chi = 0;
        let mut colors = [usize::MAX; 5];
        assert_eq!(rn_graph_chromatic_number(g, 0, &mut chi, colors.as_mut_ptr()), RnStatus::Ok);
        assert_eq!(chi, 3);
        assert!((0..5).all(|v| colors[v] != colors[(v + 1) % 5]));
        assert_eq!(rn_graph_chromatic_number(g, 1, &mut chi, ptr::null_mut()), RnStatus::BudgetExceeded);
        assert!(last_error().starts_with("BUDGET_EXCEEDED"));
        assert_eq!(rn_graph_add_edge(g, 0, 2), RnStatus::Ok);
        assert_eq!(rn_graph_add_edge(g, 0, 0), RnStatus::InvalidArgument);
        assert!(last_error().starts_with("SELF_LOOP"));
        assert_eq!(rn_graph_add_edge(g, 0, 99), RnStatus::OutOfRange);
        let mut w = 0;
        assert_eq!(rn_graph_clique_number(g, 0, &mut w), RnStatus::Ok);
        assert_eq!(w, 3);
        rn_graph_free(g);

        let mut k = ptr::null_mut();
        assert_eq!(rn_graph_complete(6, &mut k), RnStatus::Ok);
        assert_eq!(rn_graph_chromatic_number(k, 0, &mut chi, ptr::null_mut()), RnStatus::Ok);
        assert_eq!(chi, 6);
        rn_graph_free(k);
        rn_graph_free(ptr::null_mut());
    }
}

#[test]
fn null_and_parse_errors() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(rn_graph_parse(ptr::null(), &mut g), RnStatus::NullPointer);
        let bad = CString::new("3 1\n0 7\n").unwrap();
        assert_eq!(rn_graph_parse(bad.as_ptr(), &mut g), RnStatus::OutOfRange);
        let junk = CString::new("three").unwrap();
        assert_eq!(rn_graph_parse(junk.as_ptr(), &mut g), RnStatus::ParseError);
        assert!(g.is_null());
        assert_eq!(rn_graph_complete(3, ptr::null_mut()), RnStatus::NullPointer);
        let mut out = 0;
        assert_eq!(rn_graph_clique_number(ptr::null(), 0, &mut out), RnStatus::NullPointer);
    }
}

#[test]
fn ramsey_values() {
    unsafe {
        let spec = CString::new("P4").unwrap();
        let mut f = ptr::null_mut();
        assert_eq!(rn_family_parse(spec.as_ptr(), &mut f), RnStatus::Ok);
        for (k, want) in [(1, 3), (2, 4), (3, 5)] {
            let mut v = 0;
            assert_eq!(rn_compute_c_k(f, k, 8, 0, &mut v), RnStatus::Ok);
            assert_eq!(v, want);
        }
        let (mut v, mut asym, mut cond) = (0u64, true, true);
        assert_eq!(rn_closed_form_c_k(f, 4, 50_000_000_000_000, &mut v, &mut asym, &mut cond), RnStatus::Ok);
        assert_eq!((v, asym, cond), (9, false, false));
        let mut cap = 0;
        assert_eq!(rn_compute_c_k(f, 3, 4, 0, &mut cap), RnStatus::CapReached);
        rn_family_free(f);

        let cycle = CString::new("G4[0-1 1-2 2-3 3-0]").unwrap();
        assert_eq!(rn_family_parse(cycle.as_ptr(), &mut f), RnStatus::Ok);
        assert_eq!(rn_closed_form_c_k(f, 2, 1, &mut v, ptr::null_mut(), ptr::null_mut()), RnStatus::NotFound);
        rn_family_free(f);
    }
}

#[test]
fn hypergraph_handles() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(rn_ach_counterexample(4, &mut h), RnStatus::Ok);
        assert_eq!(rn_hypergraph_edge_count(h), 24);
        let mut m = 0;
        assert_eq!(rn_max_matching(h, 0, &mut m), RnStatus::Ok);
        assert_eq!(m, 4);
        let mut text: *mut c_char = ptr::null_mut();
        assert_eq!(rn_hypergraph_to_text(h, &mut text), RnStatus::Ok);
        let mut h2 = ptr::null_mut();
        assert_eq!(rn_hypergraph_parse(text, false, &mut h2), RnStatus::Ok);
        assert_eq!(rn_hypergraph_edge_count(h2), 24);
        let mut q = 0;
        assert_eq!(rn_chromatic_index(h2, 0, &mut q), RnStatus::Ok);
        assert!(q >= 24usize.div_ceil(4));
        rn_string_free(text);
        rn_hypergraph_free(h);
        rn_hypergraph_free(h2);
        assert_eq!(rn_ach_counterexample(1, &mut h), RnStatus::InvalidArgument);
        assert!(last_error().starts_with("BAD_D"));
    }
}

fn run(args: &[&str]) -> (i32, String, String) {
    let owned: Vec<CString> = args.iter().map(|a| CString::new(*a).unwrap()).collect();
    let ptrs: Vec<*const c_char> = owned.iter().map(|c| c.as_ptr()).collect();
    let (mut code, mut so, mut se) = (-1, ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(rn_run(ptrs.len(), ptrs.as_ptr(), &mut code, &mut so, &mut se), RnStatus::Ok);
        let out = CStr::from_ptr(so).to_string_lossy().into_owned();
        let err = CStr::from_ptr(se).to_string_lossy().into_owned();
        rn_string_free(so);
        rn_string_free(se);
        (code, out, err)
    }
}

#[test]
fn command_line_and_certificates() {
    let (code, cert, _) = run(&["ramsey-nice", "--deterministic", "k11"]);
    assert_eq!(code, 0);
    let c = CString::new(cert.clone()).unwrap();
    assert_eq!(unsafe { rn_certificate_verify(c.as_ptr()) }, RnStatus::Ok);
    let mut v: serde_json::Value = serde_json::from_str(&cert).unwrap();
    let f0 = v["witness"]["factors"][0].as_str().unwrap().to_string();
    // drop one edge so the union is no longer complete
    let mut lines: Vec<String> = f0.lines().map(str::to_string).collect();
    lines.remove(1);
    lines[0] = format!("11 {}", lines.len() - 1);
    v["witness"]["factors"][0] = serde_json::Value::String(lines.join("\n") + "\n");
    let tampered = CString::new(v.to_string()).unwrap();
    assert_eq!(unsafe { rn_certificate_verify(tampered.as_ptr()) }, RnStatus::VerifyFailed);
    let cut = CString::new(&cert[..cert.len() / 3]).unwrap();
    assert_eq!(unsafe { rn_certificate_verify(cut.as_ptr()) }, RnStatus::ParseError);
    let (code, _, err) = run(&["ramsey-nice", "cover", "--n", "4", "--r", "2", "--proper"]);
    assert_eq!(code, 1);
    assert!(err.contains("BAD_N"));
    let version = unsafe { CStr::from_ptr(rn_version()) };
    assert_eq!(version.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
