//! C ABI for `lien2`.
//!
//! Algebras and representations are opaque heap handles created by
//! `*_new` functions and released by the matching `*_free`. Every fallible
//! call returns a [`Lien2Status`]; the message of the most recent failure
//! on the calling thread is available from [`lien2_last_error`]. Matrices
//! are written row-major into caller-provided buffers.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lien2::adjoint::{character_ad, exp_ad};
use lien2::coadjoint::{orbit_classify, orbit_dimension};
use lien2::foliation::{connes_label, equivalence_h, h_residual, in_foliated_manifold};
use lien2::representation::{faithful_rep, Representation};
use lien2::{build, Error, FamilySpec, LieAlgebra};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lien2Status {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    DimensionMismatch = 3,
    UnsupportedFamily = 4,
    AlgebraMismatch = 5,
    BranchUndefined = 6,
    NotInFoliatedManifold = 7,
    LeafMismatch = 8,
    ParseError = 9,
    InvalidUtf8 = 10,
    BufferTooSmall = 11,
    Panic = 12,
}

/// Opaque handle to a Lie algebra.
pub struct Lien2Algebra {
    inner: LieAlgebra,
}

/// Opaque handle to a matrix representation.
pub struct Lien2Representation {
    inner: Representation,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> Lien2Status {
    match e {
        Error::InvalidParameter(_) => Lien2Status::InvalidParameter,
        Error::DimensionMismatch { .. } => Lien2Status::DimensionMismatch,
        Error::UnsupportedFamily { .. } => Lien2Status::UnsupportedFamily,
        Error::AlgebraMismatch { .. } => Lien2Status::AlgebraMismatch,
        Error::BranchUndefined(_) => Lien2Status::BranchUndefined,
        Error::NotInFoliatedManifold => Lien2Status::NotInFoliatedManifold,
        Error::LeafMismatch => Lien2Status::LeafMismatch,
        Error::Parse(_) => Lien2Status::ParseError,
    }
}

struct Fail(Lien2Status, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> Lien2Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            Lien2Status::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            Lien2Status::Panic
        }
    }
}

fn null() -> Fail {
    Fail(Lien2Status::NullPointer, "null pointer argument".into())
}

unsafe fn slice<'a>(p: *const f64, len: usize) -> Result<&'a [f64], Fail> {
    if p.is_null() {
        return if len == 0 { Ok(&[]) } else { Err(null()) };
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn slice_mut<'a>(p: *mut f64, len: usize) -> Result<&'a mut [f64], Fail> {
    if p.is_null() {
        return Err(null());
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

unsafe fn algebra<'a>(p: *const Lien2Algebra) -> Result<&'a LieAlgebra, Fail> {
    p.as_ref().map(|a| &a.inner).ok_or_else(null)
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

fn copy_matrix(m: &lien2::linalg::Matrix, out: &mut [f64]) -> Result<(), Fail> {
    let (r, c) = m.shape();
    if out.len() < r * c {
        return Err(Fail(Lien2Status::BufferTooSmall, format!("need {} doubles, got {}", r * c, out.len())));
    }
    for i in 0..r {
        for j in 0..c {
            out[i * c + j] = m[(i, j)];
        }
    }
    Ok(())
}

/// Copies `s` with a terminating NUL into `buf` of capacity `len`.
unsafe fn copy_str(s: &str, buf: *mut c_char, len: usize) -> Result<(), Fail> {
    if buf.is_null() {
        return Err(null());
    }
    let bytes = s.as_bytes();
    if bytes.len() + 1 > len {
        return Err(Fail(Lien2Status::BufferTooSmall, format!("need {} bytes, got {len}", bytes.len() + 1)));
    }
    ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, bytes.len());
    *buf.add(bytes.len()) = 0;
    Ok(())
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn lien2_status_str(status: Lien2Status) -> *const c_char {
    let s: &'static CStr = match status {
        Lien2Status::Ok => c"ok",
        Lien2Status::NullPointer => c"null pointer",
        Lien2Status::InvalidParameter => c"invalid parameter",
        Lien2Status::DimensionMismatch => c"dimension mismatch",
        Lien2Status::UnsupportedFamily => c"unsupported family",
        Lien2Status::AlgebraMismatch => c"algebra mismatch",
        Lien2Status::BranchUndefined => c"branch undefined",
        Lien2Status::NotInFoliatedManifold => c"not in foliated manifold",
        Lien2Status::LeafMismatch => c"leaf mismatch",
        Lien2Status::ParseError => c"parse error",
        Lien2Status::InvalidUtf8 => c"invalid utf-8",
        Lien2Status::BufferTooSmall => c"buffer too small",
        Lien2Status::Panic => c"panic",
    };
    s.as_ptr()
}

/// Copies the last error message of this thread into `buf`.
///
/// # Safety
/// `buf` must point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn lien2_last_error(buf: *mut c_char, len: usize) -> Lien2Status {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    match copy_str(&msg, buf, len) {
        Ok(()) => Lien2Status::Ok,
        Err(Fail(s, _)) => s,
    }
}

/// Builds an algebra from a family string such as `g6_2k_1(k=1)`.
///
/// # Safety
/// `family` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lien2_algebra_new(family: *const c_char, out: *mut *mut Lien2Algebra) -> Lien2Status {
    guard(|| {
        if family.is_null() || out.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(family)
            .to_str()
            .map_err(|_| Fail(Lien2Status::InvalidUtf8, "family string is not UTF-8".into()))?;
        let spec: FamilySpec = s.parse()?;
        let alg = build(&spec)?;
        out.write(Box::into_raw(Box::new(Lien2Algebra { inner: alg })));
        Ok(())
    })
}

/// Releases an algebra. Null is ignored.
///
/// # Safety
/// `alg` must come from [`lien2_algebra_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lien2_algebra_free(alg: *mut Lien2Algebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Dimension of the algebra, 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lien2_algebra_dim(alg: *const Lien2Algebra) -> usize {
    alg.as_ref().map_or(0, |a| a.inner.dim())
}

/// Largest Jacobi identity defect over basis triples.
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lien2_algebra_jacobi_defect(alg: *const Lien2Algebra, out: *mut f64) -> Lien2Status {
    guard(|| write_out(out, algebra(alg)?.jacobi_defect()))
}

/// Writes `exp(ad_X)` (n×n, row-major) into `out` of capacity `out_len`.
///
/// # Safety
/// `x` must hold `n` doubles and `out` `out_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn lien2_exp_ad(
    alg: *const Lien2Algebra,
    x: *const f64,
    n: usize,
    out: *mut f64,
    out_len: usize,
) -> Lien2Status {
    guard(|| {
        let e = exp_ad(algebra(alg)?, slice(x, n)?)?;
        copy_matrix(&e.matrix, slice_mut(out, out_len)?)
    })
}

/// `Tr exp(ad_X)` from its closed form.
///
/// # Safety
/// `x` must hold `n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lien2_character_ad(
    alg: *const Lien2Algebra,
    x: *const f64,
    n: usize,
    out: *mut f64,
) -> Lien2Status {
    guard(|| {
        let a = algebra(alg)?;
        write_out(out, character_ad(a.spec(), slice(x, n)?)?)
    })
}

/// Dimension of the coadjoint orbit through `f`.
///
/// # Safety
/// `f` must hold `n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lien2_orbit_dimension(
    alg: *const Lien2Algebra,
    f: *const f64,
    n: usize,
    out: *mut usize,
) -> Lien2Status {
    guard(|| {
        let a = algebra(alg)?;
        let f = slice(f, n)?;
        write_out(out, orbit_dimension(a, f)?)
    })
}

/// Writes the orbit kind name (e.g. `half_plane`) through `f` into `buf`.
///
/// # Safety
/// `f` must hold `n` doubles and `buf` `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn lien2_orbit_kind(
    alg: *const Lien2Algebra,
    f: *const f64,
    n: usize,
    buf: *mut c_char,
    len: usize,
) -> Lien2Status {
    guard(|| {
        let d = orbit_classify(algebra(alg)?, slice(f, n)?)?;
        copy_str(d.kind.as_str(), buf, len)
    })
}

/// Whether `f` lies in the union of maximal orbits (`f_2 ≠ 0`).
///
/// # Safety
/// `f` must hold `n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lien2_in_foliated_manifold(
    alg: *const Lien2Algebra,
    f: *const f64,
    n: usize,
    out: *mut bool,
) -> Lien2Status {
    guard(|| write_out(out, in_foliated_manifold(algebra(alg)?, slice(f, n)?)?))
}

/// Writes the C*-algebra label of the foliation into `buf`.
///
/// # Safety
/// `buf` must hold `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn lien2_connes_label(alg: *const Lien2Algebra, buf: *mut c_char, len: usize) -> Lien2Status {
    guard(|| copy_str(connes_label(algebra(alg)?)?, buf, len))
}

/// Image of `x` under the map h, written to `out` (length `n`), with the
/// leaf identity residual in `residual` (may be null).
///
/// # Safety
/// `x` and `out` must hold `n` doubles.
#[no_mangle]
pub unsafe extern "C" fn lien2_equivalence_h(
    x: *const f64,
    n: usize,
    out: *mut f64,
    residual: *mut f64,
) -> Lien2Status {
    guard(|| {
        let x = slice(x, n)?;
        let img = equivalence_h(x)?;
        slice_mut(out, n)?.copy_from_slice(&img);
        if !residual.is_null() {
            residual.write(h_residual(x)?);
        }
        Ok(())
    })
}

/// Builds the faithful representation used for the bound on its minimal
/// degree.
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lien2_faithful_rep(
    alg: *const Lien2Algebra,
    out: *mut *mut Lien2Representation,
) -> Lien2Status {
    guard(|| {
        let rep = faithful_rep(algebra(alg)?)?;
        write_out(out, Box::into_raw(Box::new(Lien2Representation { inner: rep })))
    })
}

/// Releases a representation. Null is ignored.
///
/// # Safety
/// `rep` must come from [`lien2_faithful_rep`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lien2_rep_free(rep: *mut Lien2Representation) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// Matrix degree of a representation, 0 for a null handle.
///
/// # Safety
/// `rep` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lien2_rep_degree(rep: *const Lien2Representation) -> usize {
    rep.as_ref().map_or(0, |r| r.inner.degree)
}

/// Writes `ρ(X)` (degree×degree, row-major) into `out`.
///
/// # Safety
/// `x` must hold `n` doubles and `out` `out_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn lien2_rep_eval(
    rep: *const Lien2Representation,
    x: *const f64,
    n: usize,
    out: *mut f64,
    out_len: usize,
) -> Lien2Status {
    guard(|| {
        let r = rep.as_ref().ok_or_else(null)?;
        let m = r.inner.eval(slice(x, n)?)?;
        copy_matrix(&m, slice_mut(out, out_len)?)
    })
}
