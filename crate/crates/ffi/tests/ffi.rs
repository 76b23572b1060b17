use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use rsdesign_ffi::*;

fn new_design(f: impl FnOnce(*mut *mut RsdDesign) -> RsdStatus) -> (RsdStatus, *mut RsdDesign) {
    let mut d = ptr::null_mut();
    let status = f(&mut d);
    (status, d)
}

fn last_error() -> String {
    let p = rsd_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn fixture_dims_and_cells() {
    let name = CString::new("fig2").unwrap();
    let (status, d) = new_design(|out| unsafe { rsd_design_fixture(name.as_ptr(), out) });
    assert_eq!(status, RsdStatus::Ok);
    let (mut n, mut w, mut q, mut rows) = (0, 0, 0, 0);
    unsafe {
        assert_eq!(rsd_design_dims(d, &mut n, &mut w, &mut q, &mut rows), RsdStatus::Ok);
        assert_eq!((n, w, q, rows), (6, 4, 3, 15));
        let mut nonzero = 0;
        for c in 0..n {
            let mut v = 9u8;
            assert_eq!(rsd_design_get(d, 0, c, &mut v), RsdStatus::Ok);
            assert!(v < 3);
            nonzero += (v != 0) as usize;
        }
        assert_eq!(nonzero, 4);
        let mut v = 0u8;
        assert_eq!(rsd_design_get(d, 15, 0, &mut v), RsdStatus::InvalidArgument);
        let mut lambda = 0;
        assert_eq!(rsd_design_verify(d, 2, 1, &mut lambda), RsdStatus::Ok);
        assert_eq!(lambda, 3);
        rsd_design_free(d);
    }
}

#[test]
fn verify_negative_sets_message() {
    let name = CString::new("fig1").unwrap();
    let (_, d) = new_design(|out| unsafe { rsd_design_fixture(name.as_ptr(), out) });
    unsafe {
        assert_eq!(rsd_design_verify(d, 3, 2, ptr::null_mut()), RsdStatus::NotADesign);
        let msg = last_error();
        assert!(msg.contains("not a (3,2)-design"), "{msg}");
        assert_eq!(rsd_design_spectral(d, 2, 1), RsdStatus::Ok);
        rsd_design_free(d);
    }
}

#[test]
fn spectral_precondition() {
    let name = CString::new("fig1").unwrap();
    let (_, d) = new_design(|out| unsafe { rsd_design_fixture(name.as_ptr(), out) });
    unsafe {
        assert_eq!(rsd_design_spectral(d, 3, 1), RsdStatus::Precondition);
        rsd_design_free(d);
    }
}

#[test]
fn parse_errors_and_nulls() {
    let bad = CString::new("3 2 3\n1 1\n").unwrap();
    let (status, d) = new_design(|out| unsafe { rsd_design_parse(bad.as_ptr(), out) });
    assert_eq!(status, RsdStatus::ParseError);
    assert!(d.is_null());
    assert!(last_error().contains("line 2"));
    let (status, _) = new_design(|out| unsafe { rsd_design_parse(ptr::null(), out) });
    assert_eq!(status, RsdStatus::NullPointer);
    unsafe {
        assert_eq!(rsd_design_verify(ptr::null(), 2, 1, ptr::null_mut()), RsdStatus::NullPointer);
        assert!(rsd_design_to_string(ptr::null()).is_null());
        rsd_design_free(ptr::null_mut());
        rsd_string_free(ptr::null_mut());
    }
    let missing = CString::new("/nonexistent/design.rsd").unwrap();
    let (status, _) = new_design(|out| unsafe { rsd_design_load(missing.as_ptr(), out) });
    assert_eq!(status, RsdStatus::IoError);
}

#[test]
fn text_round_trip() {
    let name = CString::new("fig1").unwrap();
    let (_, d) = new_design(|out| unsafe { rsd_design_fixture(name.as_ptr(), out) });
    unsafe {
        let text = rsd_design_to_string(d);
        let owned = CStr::from_ptr(text).to_str().unwrap().to_owned();
        let (status, e) = new_design(|out| rsd_design_parse(text, out));
        assert_eq!(status, RsdStatus::Ok);
        let again = rsd_design_to_string(e);
        assert_eq!(CStr::from_ptr(again).to_str().unwrap(), owned);
        rsd_string_free(text);
        rsd_string_free(again);
        rsd_design_free(d);
        rsd_design_free(e);
    }
}

#[test]
fn scheme_numbers() {
    let mut m = 0;
    unsafe {
        let mut total = 0;
        for i in 0..=3usize {
            for j in i.saturating_sub(2)..=i {
                assert_eq!(rsd_multiplicity(5, 3, 4, i, j, &mut m), RsdStatus::Ok);
                total += m;
            }
        }
        assert_eq!(total, 10 * 27);
        assert_eq!(rsd_multiplicity(5, 3, 4, 3, 0, &mut m), RsdStatus::InvalidArgument);
        assert_eq!(rsd_multiplicity(5, 3, 4, 4, 0, &mut m), RsdStatus::InvalidArgument);
        let (mut num, mut den, mut fisher) = (0, 0, 0);
        assert_eq!(rsd_bounds(5, 3, 4, 2, 1, &mut num, &mut den, &mut fisher), RsdStatus::Ok);
        assert_eq!((num, den), (10, 1));
        assert!(fisher >= 1);
        assert_eq!(rsd_bounds(5, 3, 2, 2, 2, &mut num, &mut den, &mut fisher), RsdStatus::Ok);
        assert_eq!((num, den), (10, 3));
        assert_eq!(rsd_bounds(3, 2, 1, 1, 0, &mut num, &mut den, &mut fisher), RsdStatus::InvalidArgument);
    }
}

#[test]
fn construct_and_search() {
    let mut lambda = 0;
    let (status, d) = new_design(|out| unsafe { rsd_construct_sts_trivial(9, 3, out, &mut lambda) });
    assert_eq!(status, RsdStatus::Ok);
    let mut rows = 0;
    unsafe {
        rsd_design_dims(d, ptr::null_mut(), ptr::null_mut(), ptr::null_mut(), &mut rows);
        rsd_design_free(d);
    }
    assert_eq!((rows, lambda), (24, 1));
    let (status, _) = new_design(|out| unsafe { rsd_construct_sts_trivial(8, 3, out, ptr::null_mut()) });
    assert_eq!(status, RsdStatus::Precondition);

    let mut nodes = 0;
    let (status, d) = new_design(|out| unsafe { rsd_search(3, 2, 3, 2, 1, 1_000_000, 2, out, &mut nodes) });
    assert_eq!(status, RsdStatus::Ok);
    assert!(nodes > 0);
    unsafe {
        assert_eq!(rsd_design_verify(d, 2, 1, &mut lambda), RsdStatus::Ok);
        rsd_design_free(d);
    }
    let (status, d) = new_design(|out| unsafe { rsd_search(5, 3, 2, 2, 2, 1000, 1, out, ptr::null_mut()) });
    assert_eq!(status, RsdStatus::Precondition);
    assert!(d.is_null());
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn exported_functions() -> Vec<String> {
    let src = std::fs::read_to_string(crate_dir().join("src/lib.rs")).unwrap();
    src.lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap().to_string())
        .collect()
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(crate_dir().join("include/rsdesign.h")).unwrap();
    let names = exported_functions();
    assert!(names.len() >= 15);
    for name in names {
        assert!(
            header.contains(&format!(" {name}(")) || header.contains(&format!("*{name}(")),
            "{name} missing from header"
        );
    }
    assert!(header.contains("typedef struct RsdDesign RsdDesign;"));
    assert!(header.contains("RSD_STATUS_NOT_A_DESIGN = 1"));
}

fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let profile_dir = exe.parent()?.parent()?;
    let lib = profile_dir.join("librsdesign_ffi.a");
    lib.exists().then_some(lib)
}

fn compiler() -> Option<&'static str> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
}

#[test]
fn c_program_links_and_runs() {
    let (Some(cc), Some(lib)) = (compiler(), static_lib()) else {
        eprintln!("skipping: no C compiler or static library");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let out = Command::new(cc)
        .arg(crate_dir().join("tests/c/smoke.c"))
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "compile failed: {}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(Path::new(&exe)).output().unwrap();
    assert!(run.status.success(), "smoke failed: {}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
