use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use skewdil_ffi::*;

fn owned(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { skewdil_string_free(p) };
    s
}

fn last_error() -> String {
    let p = skewdil_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

const SESSION: &str = "seed 4\ntrials 8\nmonoid nat\nring leavitt 2\naction diagonal\nlet a = sm(1) * y1*x2 * sp(1)\ncheck nonzero a\ndilate\n";

#[test]
fn session_round_trip_and_run() {
    let text = CString::new(SESSION).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { skewdil_session_parse(text.as_ptr(), &mut s) }, SkewdilStatus::Ok);
    assert!(skewdil_last_error().is_null());

    let mut rendered = ptr::null_mut();
    assert_eq!(unsafe { skewdil_session_render(s, &mut rendered) }, SkewdilStatus::Ok);
    let rendered = owned(rendered);
    assert!(rendered.contains("ring leavitt 2"), "{rendered}");

    let mut r = ptr::null_mut();
    assert_eq!(unsafe { skewdil_session_run(s, ptr::null(), &mut r) }, SkewdilStatus::Ok);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { skewdil_report_structured(r, &mut out) }, SkewdilStatus::Ok);
    let structured = owned(out);
    assert!(structured.starts_with("report seed=4 trials=8"), "{structured}");
    assert_eq!(unsafe { skewdil_report_exit_code(r) }, 0, "{structured}");
    assert!(unsafe { skewdil_report_checks(r) } > 20);
    assert_eq!(unsafe { skewdil_report_failures(r) }, 0);

    // the same run through the library gives the same bytes
    let direct = skewdil::cli::run(&skewdil::cli::parse_session(SESSION).unwrap(), 4, 8).render_structured();
    assert_eq!(structured, direct);

    let opts = SkewdilRunOptions { override_seed: true, seed: 9, trials: 3 };
    let mut r2 = ptr::null_mut();
    assert_eq!(unsafe { skewdil_session_run(s, &opts, &mut r2) }, SkewdilStatus::Ok);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { skewdil_report_text(r2, &mut out) }, SkewdilStatus::Ok);
    assert!(owned(out).starts_with("seed 9 trials 3"));

    unsafe {
        skewdil_report_free(r);
        skewdil_report_free(r2);
        skewdil_session_free(s);
    }
}

#[test]
fn failing_checks_are_reported_not_errors() {
    let text = CString::new("monoid nat\nring idemq2\naction collapse\nlet x = u2\ncheck zero x\n").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { skewdil_session_parse(text.as_ptr(), &mut s) }, SkewdilStatus::Ok);
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { skewdil_session_run(s, ptr::null(), &mut r) }, SkewdilStatus::Ok);
    assert_eq!(unsafe { skewdil_report_exit_code(r) }, 1);
    assert_eq!(unsafe { skewdil_report_failures(r) }, 1);
    unsafe {
        skewdil_report_free(r);
        skewdil_session_free(s);
    }
}

#[test]
fn error_codes() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { skewdil_session_parse(ptr::null(), &mut s) }, SkewdilStatus::NullArgument);
    assert!(last_error().contains("text"));

    let bad = CString::new("monoid nat\nring uhf 2\naction corner\nlet x = sp(2\n").unwrap();
    assert_eq!(unsafe { skewdil_session_parse(bad.as_ptr(), &mut s) }, SkewdilStatus::ParseError);
    assert!(last_error().starts_with("line 4, column"), "{}", last_error());
    assert!(s.is_null());

    let not_utf8 = [0xffu8, 0xfe, 0];
    assert_eq!(unsafe { skewdil_session_parse(not_utf8.as_ptr().cast(), &mut s) }, SkewdilStatus::InvalidUtf8);

    let mut order = 0;
    assert_eq!(unsafe { skewdil_ktheory_cokernel_order(1, &mut order) }, SkewdilStatus::InvalidArgument);
    assert_eq!(unsafe { skewdil_ktheory_cokernel_order(7, ptr::null_mut()) }, SkewdilStatus::NullArgument);

    let w = CString::new("x3").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { skewdil_leavitt_normalize(2, w.as_ptr(), &mut out) }, SkewdilStatus::ParseError);
    assert!(out.is_null());

    assert_eq!(unsafe { skewdil_report_exit_code(ptr::null()) }, 2);
    assert_eq!(unsafe { skewdil_report_checks(ptr::null()) }, 0);
    unsafe {
        skewdil_string_free(ptr::null_mut());
        skewdil_session_free(ptr::null_mut());
        skewdil_report_free(ptr::null_mut());
    }
}

#[test]
fn ktheory() {
    for n in 2..=10u64 {
        let mut order = 0;
        assert_eq!(unsafe { skewdil_ktheory_cokernel_order(n, &mut order) }, SkewdilStatus::Ok);
        assert_eq!(order, (n - 1).max(1));
    }
    // 7/16 in Z[1/4]: 16 ≡ 1 mod 3, so the class is 7 mod 3
    let mut c = 99;
    assert_eq!(unsafe { skewdil_ktheory_class(4, 7, 2, &mut c) }, SkewdilStatus::Ok);
    assert_eq!(c, 1);
    assert_eq!(unsafe { skewdil_ktheory_class(4, -1, 0, &mut c) }, SkewdilStatus::Ok);
    assert_eq!(c, 2);
}

#[test]
fn leavitt_normal_forms() {
    let norm = |w: &str| {
        let w = CString::new(w).unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { skewdil_leavitt_normalize(2, w.as_ptr(), &mut out) }, SkewdilStatus::Ok);
        owned(out)
    };
    assert_eq!(norm("x1*y1"), "1");
    assert_eq!(norm("x1*y2"), "0");
    assert_eq!(norm("y1*x1"), norm("1 - y2*x2"));
    assert_eq!(norm("2 * y1*x2"), "2*y1*x2");
    // y_n x_n is rewritten through Σ y_i x_i = 1
    assert_eq!(norm("y2*x2"), "1 - y1*x1");
    assert_eq!(norm("x1*(y1 + y2)*x2"), "x2");
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(skewdil_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_and_links_from_c() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/skewdil.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for sym in ["skewdil_session_parse", "skewdil_session_run", "skewdil_last_error", "SKEWDIL_STATUS_PARSE_ERROR", "typedef struct SkewdilSession SkewdilSession"] {
        assert!(text.contains(sym), "{sym} missing from the header");
    }
    let Ok(cc) = which_cc() else { return };
    // target/<profile>/deps/abi-xxxx -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    let profile = exe.parent().unwrap().parent().unwrap();
    let lib = profile.join("libskewdil_ffi.a");
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("smoke");
    let mut cmd = Command::new(&cc);
    cmd.arg("-std=c99").arg("-Wall").arg("-Werror").arg("-I").arg(dir.join("include")).arg(dir.join("tests/c/smoke.c"));
    if !lib.exists() {
        // header only
        let st = cmd.arg("-fsyntax-only").status().unwrap();
        assert!(st.success());
        return;
    }
    let st = cmd.arg(&lib).args(["-lpthread", "-ldl", "-lm", "-o"]).arg(&out).status().unwrap();
    assert!(st.success(), "C smoke test did not build");
    let run = Command::new(&out).output().unwrap();
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert_eq!(run.status.code(), Some(0), "{stdout}\n{}", String::from_utf8_lossy(&run.stderr));
    assert!(stdout.contains("check name=\"nonzero x\" status=pass"), "{stdout}");
    assert!(stdout.contains("error: line 1"), "{stdout}");
    assert!(stdout.contains("x1*y2 = 0"), "{stdout}");
}

fn which_cc() -> Result<String, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok_and(|o| o.status.success()) {
            return Ok(cc.to_string());
        }
    }
    Err(())
}
