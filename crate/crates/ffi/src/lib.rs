//! C ABI for `qskew`.
//!
//! Matrices cross the boundary as opaque handles created by `*_new` and
//! released by `*_free`. Every function returns a [`QskStatus`]; on failure
//! [`qsk_last_error_message`] describes the error for the calling thread.
//! Quaternion entries are packed row-major as `w, x, y, z`; complex entries
//! as `re, im`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qskew::complex_linalg::ComplexMatrix;
use qskew::num_complex::Complex64;
use qskew::skew::{inverse_skew_report, is_solid, verify_classification};
use qskew::spectra::{gram_product, right_eigenvalues_hermitian};
use qskew::{hua, Error, QuatMatrix, Quaternion, SkewCase, SkewTriple};

/// Opaque quaternion matrix.
pub struct QskQuatMatrix(QuatMatrix);

/// Opaque complex matrix.
pub struct QskComplexMatrix(ComplexMatrix);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QskStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    BufferTooSmall = 4,
    NotHermitian = 5,
    NotSkewSymmetric = 6,
    Singular = 7,
    NoConvergence = 8,
    /// Spectral structure check failed (pairing, cluster parity, adjoint form).
    Structure = 9,
    ZeroMatrix = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QskSkewCase {
    Degenerate = 0,
    Solid = 1,
}

/// Classification of a 3×3 skew-symmetric matrix with its verified spectrum.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct QskSpectrumReport {
    pub case_label: QskSkewCase,
    /// `(0, s, s)` when degenerate, zeros when solid.
    pub predicted_values: [f64; 3],
    /// Ascending right eigenvalues of `Z Z*`.
    pub computed_values: [f64; 3],
    pub max_deviation: f64,
    pub condition_gap: f64,
    pub agrees: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QskStatus {
    match e {
        Error::ZeroQuaternion | Error::ZeroTriple => QskStatus::ZeroMatrix,
        Error::NotUnit { .. } | Error::InvalidArgument(_) | Error::Parse(_) => QskStatus::InvalidArgument,
        Error::DimensionMismatch(_) | Error::NotSquare { .. } => QskStatus::DimensionMismatch,
        Error::NotHermitian { .. } => QskStatus::NotHermitian,
        Error::NotSkewSymmetric { .. } => QskStatus::NotSkewSymmetric,
        Error::Singular { .. } => QskStatus::Singular,
        Error::NoConvergence { .. } => QskStatus::NoConvergence,
        Error::AdjointStructure { .. } | Error::PairingGap { .. } | Error::OddCluster { .. } => QskStatus::Structure,
    }
}

struct Fail(QskStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn fail(status: QskStatus, message: &str) -> Fail {
    Fail(status, message.to_string())
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QskStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            QskStatus::Ok
        }
        Ok(Err(Fail(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            QskStatus::Panic
        }
    }
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| fail(QskStatus::NullPointer, "null matrix handle"))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| fail(QskStatus::NullPointer, "null output pointer"))
}

unsafe fn input<'a>(p: *const f64, len: usize) -> Result<&'a [f64], Fail> {
    if p.is_null() {
        return Err(fail(QskStatus::NullPointer, "null input buffer"));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn element_count(rows: usize, cols: usize, width: usize) -> Result<usize, Fail> {
    rows.checked_mul(cols)
        .and_then(|n| n.checked_mul(width))
        .ok_or_else(|| fail(QskStatus::InvalidArgument, "matrix dimensions overflow"))
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qsk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the calling thread's last error message into `buf` (truncated,
/// always NUL-terminated when `len > 0`). Returns the full message length
/// excluding the terminator, or 0 if the last call succeeded.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn qsk_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else {
            if !buf.is_null() && len > 0 {
                *buf = 0;
            }
            return 0;
        };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Creates a `rows×cols` quaternion matrix from `4·rows·cols` doubles.
///
/// # Safety
/// `data` must point to `4·rows·cols` doubles; `out_matrix` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsk_quat_matrix_new(
    rows: usize,
    cols: usize,
    data: *const f64,
    out_matrix: *mut *mut QskQuatMatrix,
) -> QskStatus {
    guard(|| {
        let slot = out(out_matrix)?;
        let values = input(data, element_count(rows, cols, 4)?)?;
        if values.iter().any(|x| !x.is_finite()) {
            return Err(fail(QskStatus::InvalidArgument, "matrix entries must be finite"));
        }
        let entries = values.chunks_exact(4).map(|c| Quaternion::new(c[0], c[1], c[2], c[3])).collect();
        *slot = boxed(QskQuatMatrix(QuatMatrix::new(rows, cols, entries)?));
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qsk_quat_matrix_free(m: *mut QskQuatMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle; `rows` and `cols` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsk_quat_matrix_shape(
    m: *const QskQuatMatrix,
    rows: *mut usize,
    cols: *mut usize,
) -> QskStatus {
    guard(|| {
        let m = &handle(m)?.0;
        *out(rows)? = m.rows();
        *out(cols)? = m.cols();
        Ok(())
    })
}

/// Copies all entries (`4·rows·cols` doubles, row-major) into `buf`.
///
/// # Safety
/// `m` must be a live handle; `buf` must be valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn qsk_quat_matrix_entries(m: *const QskQuatMatrix, buf: *mut f64, len: usize) -> QskStatus {
    guard(|| {
        let m = &handle(m)?.0;
        let need = 4 * m.entries().len();
        if len < need {
            return Err(Fail(QskStatus::BufferTooSmall, format!("need {need} doubles, got {len}")));
        }
        let dst = std::slice::from_raw_parts_mut(out(buf)?, need);
        for (c, q) in dst.chunks_exact_mut(4).zip(m.entries()) {
            c.copy_from_slice(&[q.w, q.x, q.y, q.z]);
        }
        Ok(())
    })
}

/// Creates a `rows×cols` complex matrix from `2·rows·cols` doubles.
///
/// # Safety
/// `data` must point to `2·rows·cols` doubles; `out_matrix` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsk_complex_matrix_new(
    rows: usize,
    cols: usize,
    data: *const f64,
    out_matrix: *mut *mut QskComplexMatrix,
) -> QskStatus {
    guard(|| {
        let slot = out(out_matrix)?;
        let values = input(data, element_count(rows, cols, 2)?)?;
        if values.iter().any(|x| !x.is_finite()) {
            return Err(fail(QskStatus::InvalidArgument, "matrix entries must be finite"));
        }
        let entries = values.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])).collect();
        *slot = boxed(QskComplexMatrix(ComplexMatrix::new(rows, cols, entries)?));
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qsk_complex_matrix_free(m: *mut QskComplexMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle; `rows` and `cols` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsk_complex_matrix_shape(
    m: *const QskComplexMatrix,
    rows: *mut usize,
    cols: *mut usize,
) -> QskStatus {
    guard(|| {
        let m = &handle(m)?.0;
        *out(rows)? = m.rows();
        *out(cols)? = m.cols();
        Ok(())
    })
}

/// Copies all entries (`2·rows·cols` doubles, row-major) into `buf`.
///
/// # Safety
/// `m` must be a live handle; `buf` must be valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn qsk_complex_matrix_entries(
    m: *const QskComplexMatrix,
    buf: *mut f64,
    len: usize,
) -> QskStatus {
    guard(|| {
        let m = &handle(m)?.0;
        let need = 2 * m.entries().len();
        if len < need {
            return Err(Fail(QskStatus::BufferTooSmall, format!("need {need} doubles, got {len}")));
        }
        let dst = std::slice::from_raw_parts_mut(out(buf)?, need);
        for (c, z) in dst.chunks_exact_mut(2).zip(m.entries()) {
            c.copy_from_slice(&[z.re, z.im]);
        }
        Ok(())
    })
}

/// `W = Z Z*` for a skew-symmetric `Z`.
///
/// # Safety
/// `z` must be a live handle; `out_w` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsk_gram_product(
    z: *const QskQuatMatrix,
    tol: f64,
    out_w: *mut *mut QskQuatMatrix,
) -> QskStatus {
    guard(|| {
        let z = &handle(z)?.0;
        let slot = out(out_w)?;
        *slot = boxed(QskQuatMatrix(gram_product(z, tol)?));
        Ok(())
    })
}

/// Ascending right eigenvalues of a Hermitian quaternion matrix, written to
/// `values[0..n]`.
///
/// # Safety
/// `a` must be a live handle; `values` must be valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn qsk_right_eigenvalues(
    a: *const QskQuatMatrix,
    tol: f64,
    values: *mut f64,
    len: usize,
) -> QskStatus {
    guard(|| {
        let a = &handle(a)?.0;
        if len < a.rows() {
            return Err(Fail(QskStatus::BufferTooSmall, format!("need {} doubles, got {len}", a.rows())));
        }
        let spectrum = right_eigenvalues_hermitian(a, tol)?;
        let dst = std::slice::from_raw_parts_mut(out(values)?, spectrum.values.len());
        dst.copy_from_slice(&spectrum.values);
        Ok(())
    })
}

/// Whether `Z Z*` is positive definite.
///
/// # Safety
/// `z` must be a live handle; `result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsk_is_solid(z: *const QskQuatMatrix, tol: f64, result: *mut bool) -> QskStatus {
    guard(|| {
        let z = &handle(z)?.0;
        *out(result)? = is_solid(z, tol)?;
        Ok(())
    })
}

/// Classifies a nonzero 3×3 skew-symmetric matrix and verifies the predicted
/// spectrum.
///
/// # Safety
/// `z` must be a live handle; `report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsk_classify_3x3(
    z: *const QskQuatMatrix,
    tol: f64,
    report: *mut QskSpectrumReport,
) -> QskStatus {
    guard(|| {
        let z = &handle(z)?.0;
        let slot = out(report)?;
        let dev = z.skew_deviation()?;
        if dev > tol * z.frobenius_norm().max(1.0) {
            return Err(Error::NotSkewSymmetric { deviation: dev }.into());
        }
        let r = verify_classification(&SkewTriple::from_matrix(z)?, tol)?;
        let mut predicted = [0.0; 3];
        if r.case_label == SkewCase::Degenerate {
            predicted.copy_from_slice(&r.predicted_values);
        }
        let mut computed = [0.0; 3];
        computed.copy_from_slice(&r.computed_values);
        *slot = QskSpectrumReport {
            case_label: match r.case_label {
                SkewCase::Degenerate => QskSkewCase::Degenerate,
                SkewCase::Solid => QskSkewCase::Solid,
            },
            predicted_values: predicted,
            computed_values: computed,
            max_deviation: r.max_deviation,
            condition_gap: r.condition_lhs_rhs_gap,
            agrees: r.agrees == Some(true),
        };
        Ok(())
    })
}

/// Inverts a skew-symmetric quaternion matrix. When singular, `invertible` is
/// false, `*out_inverse` is null and `skew_deviation` is NaN. Otherwise
/// `skew_deviation` is `max |X + Xᵀ|` of the inverse `X`. `out_inverse` may be
/// null when the inverse itself is not needed.
///
/// # Safety
/// `z` must be a live handle; `invertible` and `skew_deviation` must be
/// writable; `out_inverse` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn qsk_inverse_skew_report(
    z: *const QskQuatMatrix,
    tol: f64,
    invertible: *mut bool,
    skew_deviation: *mut f64,
    out_inverse: *mut *mut QskQuatMatrix,
) -> QskStatus {
    guard(|| {
        let z = &handle(z)?.0;
        let (inv_slot, dev_slot) = (out(invertible)?, out(skew_deviation)?);
        let r = inverse_skew_report(z, tol)?;
        *inv_slot = r.invertible;
        *dev_slot = r.skew_deviation.unwrap_or(f64::NAN);
        if let Some(slot) = out_inverse.as_mut() {
            *slot = r.inverse.map_or(ptr::null_mut(), |m| boxed(QskQuatMatrix(m)));
        }
        Ok(())
    })
}

/// Canonical form `U Z Uᵀ = Σ` of a complex skew-symmetric `Z`. Writes the
/// descending `σ` values to `sigmas` (needs `n/2` slots), their count to
/// `sigma_count`, the kernel dimension to `zero_dim`, the reconstruction
/// residual to `residual`, and the unitary `U` to `*out_u`.
///
/// # Safety
/// `z` must be a live handle; `sigmas` must be valid for `len` doubles; the
/// remaining output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsk_hua_decompose(
    z: *const QskComplexMatrix,
    tol: f64,
    sigmas: *mut f64,
    len: usize,
    sigma_count: *mut usize,
    zero_dim: *mut usize,
    residual: *mut f64,
    out_u: *mut *mut QskComplexMatrix,
) -> QskStatus {
    guard(|| {
        let z = &handle(z)?.0;
        let (count_slot, zero_slot, res_slot, u_slot) =
            (out(sigma_count)?, out(zero_dim)?, out(residual)?, out(out_u)?);
        let need = z.rows() / 2;
        if len < need {
            return Err(Fail(QskStatus::BufferTooSmall, format!("need {need} doubles, got {len}")));
        }
        let f = hua::hua_decompose(z, tol)?;
        if !f.sigmas.is_empty() {
            std::slice::from_raw_parts_mut(out(sigmas)?, f.sigmas.len()).copy_from_slice(&f.sigmas);
        }
        *count_slot = f.sigmas.len();
        *zero_slot = f.zero_dim;
        *res_slot = f.residual;
        *u_slot = boxed(QskComplexMatrix(f.u));
        Ok(())
    })
}
