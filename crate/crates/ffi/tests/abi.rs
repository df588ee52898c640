use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use symquad_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let v = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { sq_string_free(s) };
    v
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sq_last_error()) }.to_str().unwrap().to_owned()
}

fn cstrings(xs: &[&str]) -> (Vec<CString>, Vec<*const c_char>) {
    let owned: Vec<CString> = xs.iter().map(|s| CString::new(*s).unwrap()).collect();
    let ptrs = owned.iter().map(|s| s.as_ptr()).collect();
    (owned, ptrs)
}

#[test]
fn secant_degrees() {
    let mut out = ptr::null_mut();
    for (n, h, d) in [(3, 3, "4"), (3, 1, "8"), (3, 2, "10"), (8, 1, "256")] {
        assert_eq!(unsafe { sq_secant_degree(n, h, &mut out) }, SqStatus::Ok);
        assert_eq!(take(out), d);
    }
    assert_eq!(unsafe { sq_secant_degree(3, 9, &mut out) }, SqStatus::OutOfRange, "{}", last_error());
    assert!(!last_error().is_empty());
}

#[test]
fn null_out_pointer() {
    assert_eq!(unsafe { sq_secant_degree(3, 1, ptr::null_mut()) }, SqStatus::NullPointer);
    assert!(last_error().contains("null"));
    assert_eq!(unsafe { sq_preset_value(ptr::null(), ptr::null_mut()) }, SqStatus::NullPointer);
}

#[test]
fn classify() {
    let (_keep, ptrs) = cstrings(&[
        "1", "0", "0", "0", //
        "0", "0", "0", "0", //
        "0", "0", "0", "0", //
        "0", "0", "0", "0",
    ]);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sq_classify_point(2, ptrs.as_ptr(), 16, &mut out) }, SqStatus::Ok);
    assert_eq!(take(out), "rank-1");
    assert_eq!(
        unsafe { sq_classify_point(2, ptrs.as_ptr(), 9, &mut out) },
        SqStatus::DimensionMismatch
    );
    let (_keep, bad) = cstrings(&["x"; 16]);
    assert_eq!(unsafe { sq_classify_point(2, bad.as_ptr(), 16, &mut out) }, SqStatus::Parse);
}

#[test]
fn blowup_and_presets() {
    let (_keep, segre) = cstrings(&["1", "-9", "51"]);
    let mut out = ptr::null_mut();
    // conics through five points: (2H - E)^5 on complete conics
    assert_eq!(
        unsafe { sq_blowup_power(2, 1, 5, 1, 2, segre.as_ptr(), 3, &mut out) },
        SqStatus::Ok
    );
    assert_eq!(take(out), "1");
    assert_eq!(
        unsafe { sq_blowup_power(6, 2, 5, 1, 2, segre.as_ptr(), 3, &mut out) },
        SqStatus::Ok
    );
    assert_eq!(take(out), "3264");
    assert_eq!(
        unsafe { sq_blowup_power(6, 2, 5, 0, 2, segre.as_ptr(), 3, &mut out) },
        SqStatus::InvalidArgument
    );

    for (name, v) in [("nine-lines", "92"), ("chasles", "3264"), ("six-lines-symplectic", "40")] {
        let c = CString::new(name).unwrap();
        assert_eq!(unsafe { sq_preset_value(c.as_ptr(), &mut out) }, SqStatus::Ok);
        assert_eq!(take(out), v);
    }
    let mut n = 0i64;
    assert_eq!(unsafe { sq_symplectic_tangency_number(&mut n) }, SqStatus::Ok);
    assert_eq!(n, 40);
}

#[test]
fn fano_types() {
    let mut t = SqFano::Fano;
    for (r, want) in [(2, SqFano::Fano), (6, SqFano::Fano), (7, SqFano::WeakFano), (8, SqFano::NotAmple)] {
        assert_eq!(unsafe { sq_fano_type(r, &mut t) }, SqStatus::Ok);
        assert_eq!(t, want, "r = {r}");
    }
    assert_ne!(unsafe { sq_fano_type(1, &mut t) }, SqStatus::Ok);
}

#[test]
fn ring_handle() {
    let mut ring = ptr::null_mut();
    assert_eq!(unsafe { sq_ring_new(3, &mut ring) }, SqStatus::Ok);
    let mut dims = Vec::new();
    for d in 0..=6 {
        let mut k = 0usize;
        assert_eq!(unsafe { sq_ring_graded_dimension(ring, d, &mut k) }, SqStatus::Ok);
        dims.push(k);
    }
    assert_eq!(dims, [1, 1, 1, 2, 1, 1, 1]);

    let mut out = ptr::null_mut();
    let e = CString::new("s1*s1*s1*s1*s1*s1").unwrap();
    assert_eq!(unsafe { sq_ring_integrate(ring, e.as_ptr(), &mut out) }, SqStatus::Ok);
    assert_eq!(take(out), "16");
    let e = CString::new("s1*s1").unwrap();
    assert_eq!(unsafe { sq_ring_evaluate(ring, e.as_ptr(), &mut out) }, SqStatus::Ok);
    assert_eq!(take(out), "2*s[2]");
    assert_ne!(unsafe { sq_ring_integrate(ring, e.as_ptr(), &mut out) }, SqStatus::Ok);
    unsafe { sq_ring_free(ring) };
    unsafe { sq_ring_free(ptr::null_mut()) };

    assert_eq!(unsafe { sq_ring_new(0, &mut ring) }, SqStatus::OutOfRange);
    assert_eq!(
        unsafe { sq_ring_graded_dimension(ptr::null(), 0, &mut 0) },
        SqStatus::NullPointer
    );
}

#[test]
fn header_is_valid_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/symquad.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in ["sq_ring_new", "sq_blowup_power", "sq_last_error", "typedef struct SqRing SqRing"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let probe = std::env::temp_dir().join(format!("symquad_probe_{}.c", std::process::id()));
    std::fs::write(
        &probe,
        "#include \"symquad.h\"\n\
         int main(void) {\n\
           SqRing *ring = 0;\n\
           char *s = 0;\n\
           SqStatus st = sq_ring_new(2, &ring);\n\
           if (st == SQ_STATUS_OK) st = sq_ring_integrate(ring, \"s1*s1*s1\", &s);\n\
           sq_string_free(s);\n\
           sq_ring_free(ring);\n\
           return (int)st;\n\
         }\n",
    )
    .unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&probe)
        .status();
    let _ = std::fs::remove_file(&probe);
    match status {
        Ok(s) => assert!(s.success(), "header does not compile"),
        Err(e) => eprintln!("skipping C compile check: {cc} unavailable ({e})"),
    }
}
