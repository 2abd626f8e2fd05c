use std::ffi::{c_char, CStr, CString};
use std::ptr;

use lien2_ffi::*;

fn algebra(name: &str) -> *mut Lien2Algebra {
    let s = CString::new(name).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { lien2_algebra_new(s.as_ptr(), &mut out) }, Lien2Status::Ok);
    assert!(!out.is_null());
    out
}

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    assert_eq!(unsafe { lien2_last_error(buf.as_mut_ptr(), buf.len()) }, Lien2Status::Ok);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

#[test]
fn algebra_lifecycle() {
    let a = algebra("g5_2k(k=2)");
    assert_eq!(unsafe { lien2_algebra_dim(a) }, 9);
    let mut d = -1.0;
    assert_eq!(unsafe { lien2_algebra_jacobi_defect(a, &mut d) }, Lien2Status::Ok);
    assert_eq!(d, 0.0);
    unsafe { lien2_algebra_free(a) };
    unsafe { lien2_algebra_free(ptr::null_mut()) };
    assert_eq!(unsafe { lien2_algebra_dim(ptr::null()) }, 0);
}

#[test]
fn parameter_errors_map_to_codes() {
    let mut out = ptr::null_mut();
    let bad = CString::new("g3_1(lambda=0)").unwrap();
    assert_eq!(unsafe { lien2_algebra_new(bad.as_ptr(), &mut out) }, Lien2Status::InvalidParameter);
    assert!(last_error().contains("lambda"));
    let unknown = CString::new("g9_9").unwrap();
    assert_eq!(unsafe { lien2_algebra_new(unknown.as_ptr(), &mut out) }, Lien2Status::ParseError);
    assert_eq!(unsafe { lien2_algebra_new(ptr::null(), &mut out) }, Lien2Status::NullPointer);
    let s = unsafe { CStr::from_ptr(lien2_status_str(Lien2Status::LeafMismatch)) };
    assert_eq!(s.to_str().unwrap(), "leaf mismatch");
}

#[test]
fn exponential_and_character() {
    let a = algebra("g4_1");
    let x = [0.3, -0.2, 1.0, 0.5];
    let mut m = [0.0; 16];
    assert_eq!(unsafe { lien2_exp_ad(a, x.as_ptr(), 4, m.as_mut_ptr(), 16) }, Lien2Status::Ok);
    let trace = m[0] + m[5] + m[10] + m[15];
    let mut chi = 0.0;
    assert_eq!(unsafe { lien2_character_ad(a, x.as_ptr(), 4, &mut chi) }, Lien2Status::Ok);
    assert!((trace - chi).abs() < 1e-12);
    assert!((chi - (1f64.exp() + 3.0)).abs() < 1e-12);
    let mut small = [0.0; 4];
    assert_eq!(unsafe { lien2_exp_ad(a, x.as_ptr(), 4, small.as_mut_ptr(), 4) }, Lien2Status::BufferTooSmall);
    assert_eq!(unsafe { lien2_exp_ad(a, x.as_ptr(), 3, m.as_mut_ptr(), 16) }, Lien2Status::DimensionMismatch);
    unsafe { lien2_algebra_free(a) };
}

#[test]
fn orbits_and_foliation() {
    let a = algebra("g4_1");
    let f = [1.0, 0.0, 0.0, 5.0];
    let mut dim = 0usize;
    assert_eq!(unsafe { lien2_orbit_dimension(a, f.as_ptr(), 4, &mut dim) }, Lien2Status::Ok);
    assert_eq!(dim, 2);
    let mut buf = [0 as c_char; 32];
    assert_eq!(unsafe { lien2_orbit_kind(a, f.as_ptr(), 4, buf.as_mut_ptr(), 32) }, Lien2Status::Ok);
    assert_eq!(unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap(), "half_plane");
    assert_eq!(unsafe { lien2_connes_label(a, buf.as_mut_ptr(), 32) }, Lien2Status::UnsupportedFamily);
    unsafe { lien2_algebra_free(a) };

    let g = algebra("g6_2k_1(k=0)");
    let mut inside = false;
    let p = [2.0, 1.0, 0.0, 1.0, 0.0, 0.0];
    assert_eq!(unsafe { lien2_in_foliated_manifold(g, p.as_ptr(), 6, &mut inside) }, Lien2Status::Ok);
    assert!(inside);
    let mut label = [0 as c_char; 32];
    assert_eq!(unsafe { lien2_connes_label(g, label.as_mut_ptr(), 32) }, Lien2Status::Ok);
    assert_eq!(unsafe { CStr::from_ptr(label.as_ptr()) }.to_str().unwrap(), "C0(R* x R) ⊗ K");
    assert_eq!(unsafe { lien2_connes_label(g, label.as_mut_ptr(), 4) }, Lien2Status::BufferTooSmall);
    unsafe { lien2_algebra_free(g) };

    let mut img = [0.0; 6];
    let mut res = 1.0;
    assert_eq!(unsafe { lien2_equivalence_h(p.as_ptr(), 6, img.as_mut_ptr(), &mut res) }, Lien2Status::Ok);
    assert_eq!(img[0], 3.0);
    assert!((img[3] - (9.0 - 2.0 * (-1f64).exp()) / 2.0).abs() < 1e-15);
    assert!(res <= 1e-10);
    let off = [2.0, 0.0, 0.0, 1.0, 0.0, 0.0];
    assert_eq!(
        unsafe { lien2_equivalence_h(off.as_ptr(), 6, img.as_mut_ptr(), ptr::null_mut()) },
        Lien2Status::NotInFoliatedManifold
    );
}

#[test]
fn representations() {
    let a = algebra("g4_1");
    let mut rep = ptr::null_mut();
    assert_eq!(unsafe { lien2_faithful_rep(a, &mut rep) }, Lien2Status::Ok);
    assert_eq!(unsafe { lien2_rep_degree(rep) }, 7);
    let mut m = [0.0; 49];
    let x = [0.0, 0.0, 1.0, 0.0];
    assert_eq!(unsafe { lien2_rep_eval(rep, x.as_ptr(), 4, m.as_mut_ptr(), 49) }, Lien2Status::Ok);
    assert!(m.iter().any(|v| *v != 0.0));
    unsafe { lien2_rep_free(rep) };
    unsafe { lien2_algebra_free(a) };

    let n = algebra("g5_2k(k=0)");
    let mut rep = ptr::null_mut();
    assert_eq!(unsafe { lien2_faithful_rep(n, &mut rep) }, Lien2Status::UnsupportedFamily);
    unsafe { lien2_algebra_free(n) };
}

/// The generated header is valid C when a C compiler is available.
#[test]
fn header_compiles() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/lien2.h");
    assert!(std::path::Path::new(header).exists());
    let dir = tempfile_dir();
    let src = dir.join("use_header.c");
    std::fs::write(&src, format!("#include \"{header}\"\nint main(void) {{ return LIEN2_STATUS_OK; }}\n")).unwrap();
    match std::process::Command::new("cc").args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"]).arg(&src).status() {
        Ok(status) => assert!(status.success(), "header failed to compile"),
        Err(_) => eprintln!("no C compiler found; header syntax check skipped"),
    }
}

fn tempfile_dir() -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("lien2-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
