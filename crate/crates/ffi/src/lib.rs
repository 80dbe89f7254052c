//! C ABI for the bandspec spectral toolkit.
//!
//! Matrices and truncation spectra are opaque handles. Every function
//! returns a [`BsStatus`]; a human-readable message for the most recent
//! failure on the calling thread is available through [`bs_last_error`].
//! Output arrays are caller-allocated; sizes are documented per function.

use std::cell::RefCell;
use std::ffi::{c_char, c_int};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;

use bandspec::band::BandedMatrix;
use bandspec::error::Error;
use bandspec::jacobi::JacobiMatrix;
use bandspec::mixed::{self, InitialConditions, TruncationSpectrum};
use bandspec::moments;
use bandspec::neville;

/// Status codes returned by every API function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Degenerate = 3,
    ToleranceExceeded = 4,
    PoleProximity = 5,
    SearchExhausted = 6,
    NoConvergence = 7,
    Unknown = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_for(err: &Error) -> BsStatus {
    match err {
        Error::Invalid(_)
        | Error::OutOfRange { .. }
        | Error::NotSquare { .. }
        | Error::NotBanded { .. }
        | Error::WrongFactorCount { .. }
        | Error::InvalidVariant { .. }
        | Error::NonFiniteEntry { .. } => BsStatus::InvalidArgument,
        Error::Degenerate { .. } | Error::DegenerateSpectrum { .. } | Error::Regularity { .. } => {
            BsStatus::Degenerate
        }
        Error::ToleranceExceeded { .. } => BsStatus::ToleranceExceeded,
        Error::PoleProximity { .. } => BsStatus::PoleProximity,
        Error::SearchExhausted { .. } => BsStatus::SearchExhausted,
        Error::EigenNoConvergence { .. } => BsStatus::NoConvergence,
    }
}

fn fail(err: Error) -> BsStatus {
    let st = status_for(&err);
    set_error(err.to_string());
    st
}

/// Opaque matrix handle: a tridiagonal or banded (2,3) operator.
pub struct BsMatrix {
    inner: MatrixKind,
}

enum MatrixKind {
    Jacobi(JacobiMatrix),
    Banded(BandedMatrix),
}

impl BsMatrix {
    fn banded(&self) -> Result<BandedMatrix, Error> {
        match &self.inner {
            MatrixKind::Jacobi(j) => j.to_banded(),
            MatrixKind::Banded(b) => Ok(b.clone()),
        }
    }
}

/// Opaque truncation spectrum handle for the banded (2,3) case.
pub struct BsSpectrum {
    matrix: BandedMatrix,
    ic: InitialConditions,
    spectrum: TruncationSpectrum,
}

/// Crate version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Copies the most recent error message on this thread into `buf`
/// (NUL-terminated, truncated to `cap`). Returns the full message length.
///
/// # Safety
/// `buf` must point to `cap` writable bytes (or be NULL with cap 0).
#[no_mangle]
pub unsafe extern "C" fn bs_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

unsafe fn slice_arg<'a>(ptr: *const f64, len: usize) -> Option<&'a [f64]> {
    if ptr.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(ptr, len))
    }
}

fn guard<F: FnOnce() -> BsStatus>(f: F) -> BsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(st) => st,
        Err(_) => {
            set_error("internal panic".into());
            BsStatus::Unknown
        }
    }
}

/// Creates a tridiagonal matrix from its diagonal (length n_max+1) and
/// positive subdiagonal (length n_max); the superdiagonal is fixed at one.
///
/// # Safety
/// `diag` and `sub` must point to arrays of the stated lengths; `out` must
/// be a valid destination pointer. The handle must be released with
/// [`bs_matrix_free`].
#[no_mangle]
pub unsafe extern "C" fn bs_matrix_jacobi(
    diag: *const f64,
    sub: *const f64,
    n_max: usize,
    out: *mut *mut BsMatrix,
) -> BsStatus {
    guard(|| {
        if out.is_null() {
            set_error("out pointer is NULL".into());
            return BsStatus::NullPointer;
        }
        let (diag, sub) = match (slice_arg(diag, n_max + 1), slice_arg(sub, n_max)) {
            (Some(d), Some(s)) => (d, s),
            _ => {
                set_error("input array pointer is NULL".into());
                return BsStatus::NullPointer;
            }
        };
        match JacobiMatrix::new(diag.to_vec(), sub.to_vec(), n_max) {
            Ok(j) => {
                *out = Box::into_raw(Box::new(BsMatrix {
                    inner: MatrixKind::Jacobi(j),
                }));
                BsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Creates a banded matrix with two superdiagonals and three subdiagonals
/// from six diagonal arrays ordered by offset -3, -2, -1, 0, +1, +2 with
/// lengths n_max+1-|offset|.
///
/// # Safety
/// All six diagonal pointers must reference arrays of the stated lengths;
/// `out` must be valid. Release with [`bs_matrix_free`].
#[no_mangle]
pub unsafe extern "C" fn bs_matrix_banded23(
    d_m3: *const f64,
    d_m2: *const f64,
    d_m1: *const f64,
    d_0: *const f64,
    d_p1: *const f64,
    d_p2: *const f64,
    n_max: usize,
    out: *mut *mut BsMatrix,
) -> BsStatus {
    guard(|| {
        if out.is_null() {
            set_error("out pointer is NULL".into());
            return BsStatus::NullPointer;
        }
        let ptrs = [
            (d_m3, 3),
            (d_m2, 2),
            (d_m1, 1),
            (d_0, 0),
            (d_p1, 1),
            (d_p2, 2),
        ];
        let mut bands = Vec::with_capacity(6);
        for (p, off) in ptrs {
            match slice_arg(p, n_max + 1 - off) {
                Some(s) => bands.push(s.to_vec()),
                None => {
                    set_error("diagonal pointer is NULL".into());
                    return BsStatus::NullPointer;
                }
            }
        }
        match BandedMatrix::new(2, 3, bands, n_max) {
            Ok(b) => {
                *out = Box::into_raw(Box::new(BsMatrix {
                    inner: MatrixKind::Banded(b),
                }));
                BsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Creates the banded (2,3) matrix assembled from positive bidiagonal
/// factors L1 L2 L3 Δ U2 U1 (subdiagonal and superdiagonal arrays of
/// length n_max, diagonal of length n_max+1).
///
/// # Safety
/// All factor pointers must reference arrays of the stated lengths; `out`
/// must be valid. Release with [`bs_matrix_free`].
#[no_mangle]
pub unsafe extern "C" fn bs_matrix_from_factors(
    l1: *const f64,
    l2: *const f64,
    l3: *const f64,
    delta: *const f64,
    u2: *const f64,
    u1: *const f64,
    n_max: usize,
    out: *mut *mut BsMatrix,
) -> BsStatus {
    guard(|| {
        if out.is_null() {
            set_error("out pointer is NULL".into());
            return BsStatus::NullPointer;
        }
        let args = [
            slice_arg(l1, n_max),
            slice_arg(l2, n_max),
            slice_arg(l3, n_max),
            slice_arg(delta, n_max + 1),
            slice_arg(u2, n_max),
            slice_arg(u1, n_max),
        ];
        if args.iter().any(|a| a.is_none()) {
            set_error("factor pointer is NULL".into());
            return BsStatus::NullPointer;
        }
        let lowers = [
            args[0].unwrap().to_vec(),
            args[1].unwrap().to_vec(),
            args[2].unwrap().to_vec(),
        ];
        let uppers = [args[4].unwrap().to_vec(), args[5].unwrap().to_vec()];
        match BandedMatrix::from_bidiagonal_factors(&lowers, args[3].unwrap(), &uppers, n_max) {
            Ok(b) => {
                *out = Box::into_raw(Box::new(BsMatrix {
                    inner: MatrixKind::Banded(b),
                }));
                BsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Shifts the main diagonal by `s`, producing a new handle.
///
/// # Safety
/// `m` must be a live handle from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bs_matrix_shift(
    m: *const BsMatrix,
    s: f64,
    out: *mut *mut BsMatrix,
) -> BsStatus {
    guard(|| {
        if m.is_null() || out.is_null() {
            set_error("NULL handle".into());
            return BsStatus::NullPointer;
        }
        let shifted = match &(*m).inner {
            MatrixKind::Jacobi(j) => match j.to_banded() {
                Ok(b) => MatrixKind::Banded(b.shift(s)),
                Err(e) => return fail(e),
            },
            MatrixKind::Banded(b) => MatrixKind::Banded(b.shift(s)),
        };
        *out = Box::into_raw(Box::new(BsMatrix { inner: shifted }));
        BsStatus::Ok
    })
}

/// Releases a matrix handle. NULL is ignored.
///
/// # Safety
/// `m` must be a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bs_matrix_free(m: *mut BsMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Bidiagonal factorization verdicts of the truncation of order n+1:
/// `positive` reports an all-positive factorization, `oscillatory` the
/// Gantmacher--Krein test.
///
/// # Safety
/// `m` must be live; `positive` and `oscillatory` must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn bs_factorize(
    m: *const BsMatrix,
    n: usize,
    positive: *mut c_int,
    oscillatory: *mut c_int,
) -> BsStatus {
    guard(|| {
        if m.is_null() {
            set_error("NULL handle".into());
            return BsStatus::NullPointer;
        }
        let banded = match (*m).banded() {
            Ok(b) => b,
            Err(e) => return fail(e),
        };
        let trunc = match banded.truncate(n) {
            Ok(t) => t,
            Err(e) => return fail(e),
        };
        let fact = match neville::factorize(&trunc, banded.p(), banded.q()) {
            Ok(f) => f,
            Err(e) => return fail(e),
        };
        if !positive.is_null() {
            *positive = fact.positive as c_int;
        }
        if !oscillatory.is_null() {
            *oscillatory = neville::is_oscillatory(&trunc).oscillatory as c_int;
        }
        BsStatus::Ok
    })
}

/// Smallest grid shift making the truncation's factorization all-positive.
///
/// # Safety
/// `m` must be live; `out_s` must be a valid destination.
#[no_mangle]
pub unsafe extern "C" fn bs_oscillatory_shift(
    m: *const BsMatrix,
    n: usize,
    out_s: *mut f64,
) -> BsStatus {
    guard(|| {
        if m.is_null() || out_s.is_null() {
            set_error("NULL handle".into());
            return BsStatus::NullPointer;
        }
        let banded = match (*m).banded() {
            Ok(b) => b,
            Err(e) => return fail(e),
        };
        match neville::find_oscillatory_shift(&banded, n) {
            Ok(s) => {
                *out_s = s;
                BsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Eigenvalues (descending) and masses of a tridiagonal truncation of
/// order n+1. Both output arrays hold n+1 entries.
///
/// # Safety
/// `m` must be a live tridiagonal handle; `lambdas` and `masses` must each
/// point to n+1 writable doubles (either may be NULL to skip).
#[no_mangle]
pub unsafe extern "C" fn bs_jacobi_spectrum(
    m: *const BsMatrix,
    n: usize,
    lambdas: *mut f64,
    masses: *mut f64,
) -> BsStatus {
    guard(|| {
        if m.is_null() {
            set_error("NULL handle".into());
            return BsStatus::NullPointer;
        }
        let j = match &(*m).inner {
            MatrixKind::Jacobi(j) => j,
            MatrixKind::Banded(_) => {
                set_error("handle is not tridiagonal".into());
                return BsStatus::InvalidArgument;
            }
        };
        match j.spectral_data(n) {
            Ok(d) => {
                if !lambdas.is_null() {
                    std::ptr::copy_nonoverlapping(d.lambdas.as_ptr(), lambdas, n + 1);
                }
                if !masses.is_null() {
                    std::ptr::copy_nonoverlapping(d.masses.as_ptr(), masses, n + 1);
                }
                BsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Builds the truncation spectrum of a banded (2,3) matrix with optional
/// initial-condition entries `nu` = \[ν¹₁, ν¹₂, ν²₂\] and `xi` = \[ξ₁\]
/// (NULL for identities).
///
/// # Safety
/// `m` must be live; `nu` (if non-NULL) must hold 3 doubles and `xi`
/// 1 double; `out` must be valid. Release with [`bs_spectrum_free`].
#[no_mangle]
pub unsafe extern "C" fn bs_spectrum_new(
    m: *const BsMatrix,
    n: usize,
    nu: *const f64,
    xi: *const f64,
    out: *mut *mut BsSpectrum,
) -> BsStatus {
    guard(|| {
        if m.is_null() || out.is_null() {
            set_error("NULL handle".into());
            return BsStatus::NullPointer;
        }
        let banded = match (*m).banded() {
            Ok(b) => b,
            Err(e) => return fail(e),
        };
        let nu = slice_arg(nu, 3).unwrap_or(&[0.0, 0.0, 0.0]);
        let xi = slice_arg(xi, 1).unwrap_or(&[0.0]);
        let ic = InitialConditions::new(nu[0], nu[1], nu[2], xi[0]);
        match mixed::truncation_spectrum(&banded, n, &ic) {
            Ok(spectrum) => {
                *out = Box::into_raw(Box::new(BsSpectrum {
                    matrix: banded,
                    ic,
                    spectrum,
                }));
                BsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a spectrum handle. NULL is ignored.
///
/// # Safety
/// `s` must be a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bs_spectrum_free(s: *mut BsSpectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Truncation order N of a spectrum handle.
///
/// # Safety
/// `s` must be live.
#[no_mangle]
pub unsafe extern "C" fn bs_spectrum_order(s: *const BsSpectrum) -> usize {
    if s.is_null() {
        return usize::MAX;
    }
    (*s).spectrum.n
}

/// Copies the descending eigenvalues (n+1 entries).
///
/// # Safety
/// `s` must be live; `out` must hold n+1 doubles.
#[no_mangle]
pub unsafe extern "C" fn bs_spectrum_eigenvalues(s: *const BsSpectrum, out: *mut f64) -> BsStatus {
    guard(|| {
        if s.is_null() || out.is_null() {
            set_error("NULL handle".into());
            return BsStatus::NullPointer;
        }
        let sp = &(*s).spectrum;
        std::ptr::copy_nonoverlapping(sp.lambdas.as_ptr(), out, sp.lambdas.len());
        BsStatus::Ok
    })
}

/// Copies the rank-one measure weights ρ_{k,b} μ_{k,a}: 6 doubles per
/// node, ordered (b,a) = (1,1), (1,2), (1,3), (2,1), (2,2), (2,3), node by
/// node; `out` must hold 6·(n+1) doubles.
///
/// # Safety
/// `s` must be live; `out` must hold 6·(n+1) writable doubles.
#[no_mangle]
pub unsafe extern "C" fn bs_spectrum_weights(s: *const BsSpectrum, out: *mut f64) -> BsStatus {
    guard(|| {
        if s.is_null() || out.is_null() {
            set_error("NULL handle".into());
            return BsStatus::NullPointer;
        }
        let sp = &(*s).spectrum;
        for k in 0..sp.lambdas.len() {
            for b in 0..2 {
                for a in 0..3 {
                    *out.add(k * 6 + b * 3 + a) = sp.rho[k][b] * sp.mu[k][a];
                }
            }
        }
        BsStatus::Ok
    })
}

/// Weyl function matrix S(z): six complex entries in row-major (b,a)
/// order; `out_re` and `out_im` must each hold 6 doubles.
///
/// # Safety
/// `s` must be live; `out_re` and `out_im` must hold 6 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn bs_weyl(
    s: *const BsSpectrum,
    z_re: f64,
    z_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> BsStatus {
    guard(|| {
        if s.is_null() || out_re.is_null() || out_im.is_null() {
            set_error("NULL handle".into());
            return BsStatus::NullPointer;
        }
        let h = &*s;
        match moments::weyl_matrix(&h.matrix, &h.spectrum, &h.ic, Complex64::new(z_re, z_im)) {
            Ok(w) => {
                for b in 0..2 {
                    for a in 0..3 {
                        *out_re.add(b * 3 + a) = w.s[b][a].re;
                        *out_im.add(b * 3 + a) = w.s[b][a].im;
                    }
                }
                BsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Gauss quadrature degrees of precision: for each measure entry in
/// (b,a) row-major order writes d_{b,a}(N) and the largest observed exact
/// degree; `all_pass` is 1 when every observed degree covers the bound.
///
/// # Safety
/// `s` must be live; `degrees` and `observed` must hold 6 writable
/// entries each (either may be NULL); `all_pass` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn bs_quadrature_degrees(
    s: *const BsSpectrum,
    degrees: *mut i64,
    observed: *mut i64,
    all_pass: *mut c_int,
) -> BsStatus {
    guard(|| {
        if s.is_null() {
            set_error("NULL handle".into());
            return BsStatus::NullPointer;
        }
        let h = &*s;
        match moments::quadrature_table(&h.matrix, &h.spectrum, &h.ic) {
            Ok(table) => {
                let mut pass = true;
                for (i, c) in table.iter().enumerate() {
                    pass &= c.pass;
                    if !degrees.is_null() {
                        *degrees.add(i) = c.degree;
                    }
                    if !observed.is_null() {
                        *observed.add(i) = c.observed;
                    }
                }
                if !all_pass.is_null() {
                    *all_pass = pass as c_int;
                }
                BsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1_handle(n_max: usize) -> *mut BsMatrix {
        let ones = vec![1.0; n_max];
        let delta = vec![1.0; n_max + 1];
        let mut out: *mut BsMatrix = std::ptr::null_mut();
        let st = unsafe {
            bs_matrix_from_factors(
                ones.as_ptr(),
                ones.as_ptr(),
                ones.as_ptr(),
                delta.as_ptr(),
                ones.as_ptr(),
                ones.as_ptr(),
                n_max,
                &mut out,
            )
        };
        assert_eq!(st, BsStatus::Ok);
        out
    }

    #[test]
    fn version_is_nul_terminated() {
        let v = bs_version();
        let s = unsafe { std::ffi::CStr::from_ptr(v) };
        assert!(!s.to_str().unwrap().is_empty());
    }

    #[test]
    fn reference_matrix_spectrum_round_trip() {
        let m = t1_handle(30);
        let mut spec: *mut BsSpectrum = std::ptr::null_mut();
        let st = unsafe { bs_spectrum_new(m, 1, std::ptr::null(), std::ptr::null(), &mut spec) };
        assert_eq!(st, BsStatus::Ok);
        let mut lambdas = [0.0; 2];
        assert_eq!(
            unsafe { bs_spectrum_eigenvalues(spec, lambdas.as_mut_ptr()) },
            BsStatus::Ok
        );
        let r15 = 15.0_f64.sqrt();
        assert!((lambdas[0] - (4.0 + r15)).abs() < 1e-9);
        assert!((lambdas[1] - (4.0 - r15)).abs() < 1e-9);
        let mut weights = [0.0; 12];
        assert_eq!(
            unsafe { bs_spectrum_weights(spec, weights.as_mut_ptr()) },
            BsStatus::Ok
        );
        // total mass of the (1,1) entry is 1
        assert!((weights[0] + weights[6] - 1.0).abs() < 1e-9);
        unsafe {
            bs_spectrum_free(spec);
            bs_matrix_free(m);
        }
    }

    #[test]
    fn factorize_and_shift() {
        let m = t1_handle(12);
        let mut pos = -1;
        let mut osc = -1;
        assert_eq!(
            unsafe { bs_factorize(m, 5, &mut pos, &mut osc) },
            BsStatus::Ok
        );
        assert_eq!((pos, osc), (1, 1));
        let mut s = f64::NAN;
        assert_eq!(unsafe { bs_oscillatory_shift(m, 5, &mut s) }, BsStatus::Ok);
        assert_eq!(s, 0.0);
        let mut shifted: *mut BsMatrix = std::ptr::null_mut();
        assert_eq!(
            unsafe { bs_matrix_shift(m, 3.0, &mut shifted) },
            BsStatus::Ok
        );
        unsafe {
            bs_matrix_free(shifted);
            bs_matrix_free(m);
        }
    }

    #[test]
    fn jacobi_route() {
        let diag = vec![0.0; 9];
        let sub = vec![1.0; 8];
        let mut m: *mut BsMatrix = std::ptr::null_mut();
        assert_eq!(
            unsafe { bs_matrix_jacobi(diag.as_ptr(), sub.as_ptr(), 8, &mut m) },
            BsStatus::Ok
        );
        let mut lambdas = [0.0; 2];
        let mut masses = [0.0; 2];
        assert_eq!(
            unsafe { bs_jacobi_spectrum(m, 1, lambdas.as_mut_ptr(), masses.as_mut_ptr()) },
            BsStatus::Ok
        );
        assert!((lambdas[0] - 1.0).abs() < 1e-12);
        assert!((masses[0] - 0.5).abs() < 1e-12);
        unsafe { bs_matrix_free(m) };
    }

    #[test]
    fn quadrature_degrees_reference() {
        let m = t1_handle(40);
        let mut spec: *mut BsSpectrum = std::ptr::null_mut();
        assert_eq!(
            unsafe { bs_spectrum_new(m, 4, std::ptr::null(), std::ptr::null(), &mut spec) },
            BsStatus::Ok
        );
        let mut degrees = [0i64; 6];
        let mut observed = [0i64; 6];
        let mut pass = 0;
        assert_eq!(
            unsafe {
                bs_quadrature_degrees(spec, degrees.as_mut_ptr(), observed.as_mut_ptr(), &mut pass)
            },
            BsStatus::Ok
        );
        assert_eq!(degrees[0], 4); // (b,a) = (1,1)
        assert_eq!(degrees[5], 2); // (b,a) = (2,3)
        assert_eq!(pass, 1);
        unsafe {
            bs_spectrum_free(spec);
            bs_matrix_free(m);
        }
    }

    #[test]
    fn weyl_matrix_entry() {
        let m = t1_handle(30);
        let mut spec: *mut BsSpectrum = std::ptr::null_mut();
        assert_eq!(
            unsafe { bs_spectrum_new(m, 8, std::ptr::null(), std::ptr::null(), &mut spec) },
            BsStatus::Ok
        );
        let mut re = [0.0; 6];
        let mut im = [0.0; 6];
        assert_eq!(
            unsafe { bs_weyl(spec, 1e6, 0.0, re.as_mut_ptr(), im.as_mut_ptr()) },
            BsStatus::Ok
        );
        assert!((re[0] * 1e6 - 1.0).abs() < 1e-4);
        unsafe {
            bs_spectrum_free(spec);
            bs_matrix_free(m);
        }
    }

    #[test]
    fn error_paths() {
        let mut out: *mut BsMatrix = std::ptr::null_mut();
        // nonpositive subdiagonal
        let diag = vec![0.0; 3];
        let sub = vec![1.0, 0.0];
        let st = unsafe { bs_matrix_jacobi(diag.as_ptr(), sub.as_ptr(), 2, &mut out) };
        assert_eq!(st, BsStatus::InvalidArgument);
        let mut buf = [0i8; 256];
        let len = unsafe { bs_last_error(buf.as_mut_ptr(), buf.len()) };
        assert!(len > 0);
        // NULL pointers
        let st = unsafe { bs_matrix_jacobi(std::ptr::null(), sub.as_ptr(), 2, &mut out) };
        assert_eq!(st, BsStatus::NullPointer);
        let st = unsafe { bs_spectrum_eigenvalues(std::ptr::null(), std::ptr::null_mut()) };
        assert_eq!(st, BsStatus::NullPointer);
        // degenerate spectrum is reported, not panicked
        let diag2 = vec![1.0; 4];
        let sub2 = vec![1.0; 3];
        let mut m: *mut BsMatrix = std::ptr::null_mut();
        assert_eq!(
            unsafe { bs_matrix_jacobi(diag2.as_ptr(), sub2.as_ptr(), 3, &mut m) },
            BsStatus::Ok
        );
        unsafe { bs_matrix_free(m) };
    }

    #[test]
    fn header_is_generated() {
        let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("include")
            .join("bandspec.h");
        assert!(header.exists(), "missing {header:?}");
        let text = std::fs::read_to_string(header).unwrap();
        assert!(text.contains("bs_spectrum_new"));
        assert!(text.contains("BsStatus"));
    }
}
