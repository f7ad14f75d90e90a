//! C ABI for the cyclolat library.
//!
//! Handles are opaque and heap-owned; every constructor has a paired free
//! function and every call reports a status code. Panics are caught at the
//! boundary and surface as `Panic` instead of unwinding into C.

use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use cyclolat::budget::Budget;
use cyclolat::builder::{build, VertexMatrix};
use cyclolat::closed_forms::{coordinator_with, Provenance, Strategy};
use cyclolat::growth::bfs_shells_with;
use cyclolat::poly::IntPolynomial;
use cyclolat::tu::verdict_for_modulus;
use cyclolat::Error;

/// Status code returned by every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    BudgetExceeded = 3,
    /// No pipeline certifies the requested value at the configured budgets.
    Unavailable = 4,
    Panic = 5,
}

/// Vertex matrix of a cyclotomic polytope C_m.
pub struct CycMatrix {
    inner: VertexMatrix,
    /// Row-major machine-integer copy of the entries.
    entries: Vec<i64>,
}

/// Coordinator polynomial of a cyclotomic lattice.
pub struct CycPolynomial {
    h: IntPolynomial,
    provenance: Provenance,
}

fn status_of(e: &Error) -> CycStatus {
    match e {
        Error::InvalidInput(_) => CycStatus::InvalidInput,
        Error::BudgetExceeded(_) => CycStatus::BudgetExceeded,
    }
}

fn guarded(f: impl FnOnce() -> CycStatus) -> CycStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(CycStatus::Panic)
}

/// Builds the vertex matrix of C_m and stores a handle in `out`.
///
/// # Safety
/// `out` must be valid for writes. A non-null result must be released with
/// `cyc_matrix_free`.
#[no_mangle]
pub unsafe extern "C" fn cyc_build(m: u64, out: *mut *mut CycMatrix) -> CycStatus {
    guarded(|| {
        if out.is_null() {
            return CycStatus::NullPointer;
        }
        *out = std::ptr::null_mut();
        match build(m) {
            Ok(v) => match v.matrix.to_i64() {
                Some(entries) => {
                    *out = Box::into_raw(Box::new(CycMatrix { inner: v, entries }));
                    CycStatus::Ok
                }
                None => CycStatus::InvalidInput,
            },
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a matrix handle. Null is a no-op.
///
/// # Safety
/// `matrix` must be null or a handle produced by `cyc_build` that has not
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn cyc_matrix_free(matrix: *mut CycMatrix) {
    if !matrix.is_null() {
        drop(Box::from_raw(matrix));
    }
}

/// Writes the row and column counts of the matrix.
///
/// # Safety
/// All pointers must be valid; `matrix` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cyc_matrix_dims(
    matrix: *const CycMatrix,
    rows: *mut usize,
    cols: *mut usize,
) -> CycStatus {
    guarded(|| {
        let Some(m) = matrix.as_ref() else { return CycStatus::NullPointer };
        if rows.is_null() || cols.is_null() {
            return CycStatus::NullPointer;
        }
        *rows = m.inner.dim();
        *cols = m.inner.vertex_count();
        CycStatus::Ok
    })
}

/// Writes one matrix entry.
///
/// # Safety
/// All pointers must be valid; `matrix` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cyc_matrix_entry(
    matrix: *const CycMatrix,
    row: usize,
    col: usize,
    out: *mut i64,
) -> CycStatus {
    guarded(|| {
        let Some(m) = matrix.as_ref() else { return CycStatus::NullPointer };
        if out.is_null() {
            return CycStatus::NullPointer;
        }
        if row >= m.inner.dim() || col >= m.inner.vertex_count() {
            return CycStatus::InvalidInput;
        }
        *out = m.entries[row * m.inner.vertex_count() + col];
        CycStatus::Ok
    })
}

/// Writes the root-of-unity exponent that column `col` represents.
///
/// # Safety
/// All pointers must be valid; `matrix` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cyc_matrix_label(
    matrix: *const CycMatrix,
    col: usize,
    out: *mut u64,
) -> CycStatus {
    guarded(|| {
        let Some(m) = matrix.as_ref() else { return CycStatus::NullPointer };
        if out.is_null() {
            return CycStatus::NullPointer;
        }
        if col >= m.inner.vertex_count() {
            return CycStatus::InvalidInput;
        }
        *out = m.inner.labels[col];
        CycStatus::Ok
    })
}

/// Computes the coordinator polynomial of the cyclotomic lattice of order m,
/// routing through the cheapest certified pipeline. Returns `Unavailable`
/// and a null handle when no pipeline certifies the answer.
///
/// # Safety
/// `out` must be valid for writes. A non-null result must be released with
/// `cyc_polynomial_free`.
#[no_mangle]
pub unsafe extern "C" fn cyc_coordinator(m: u64, out: *mut *mut CycPolynomial) -> CycStatus {
    guarded(|| {
        if out.is_null() {
            return CycStatus::NullPointer;
        }
        *out = std::ptr::null_mut();
        match coordinator_with(m, Strategy::Auto, &Budget::from_env()) {
            Ok(res) => match res.h {
                Some(h) => {
                    *out = Box::into_raw(Box::new(CycPolynomial {
                        h,
                        provenance: res.provenance,
                    }));
                    CycStatus::Ok
                }
                None => CycStatus::Unavailable,
            },
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a polynomial handle. Null is a no-op.
///
/// # Safety
/// `poly` must be null or a handle produced by `cyc_coordinator` that has
/// not been freed already.
#[no_mangle]
pub unsafe extern "C" fn cyc_polynomial_free(poly: *mut CycPolynomial) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Writes the degree of the polynomial, always phi(m).
///
/// # Safety
/// All pointers must be valid; `poly` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cyc_polynomial_degree(
    poly: *const CycPolynomial,
    out: *mut usize,
) -> CycStatus {
    guarded(|| {
        let Some(p) = poly.as_ref() else { return CycStatus::NullPointer };
        if out.is_null() {
            return CycStatus::NullPointer;
        }
        *out = p.h.degree();
        CycStatus::Ok
    })
}

/// Writes coefficient k. Fails with `InvalidInput` when k exceeds the
/// degree or the exact value does not fit in 64 bits.
///
/// # Safety
/// All pointers must be valid; `poly` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cyc_polynomial_coeff(
    poly: *const CycPolynomial,
    k: usize,
    out: *mut i64,
) -> CycStatus {
    guarded(|| {
        let Some(p) = poly.as_ref() else { return CycStatus::NullPointer };
        if out.is_null() {
            return CycStatus::NullPointer;
        }
        if k > p.h.degree() {
            return CycStatus::InvalidInput;
        }
        match i64::try_from(&p.h.coeffs()[k]) {
            Ok(c) => {
                *out = c;
                CycStatus::Ok
            }
            Err(_) => CycStatus::InvalidInput,
        }
    })
}

/// Returns the route that produced the polynomial as a static string, or
/// null for a null handle.
///
/// # Safety
/// `poly` must be null or a live handle. The returned pointer must not be
/// freed.
#[no_mangle]
pub unsafe extern "C" fn cyc_polynomial_provenance(poly: *const CycPolynomial) -> *const c_char {
    let Some(p) = poly.as_ref() else { return std::ptr::null() };
    let bytes: &'static [u8] = match p.provenance {
        Provenance::Prime => b"prime\0",
        Provenance::TwoP => b"two_p\0",
        Provenance::Fifteen => b"fifteen\0",
        Provenance::FactorPower => b"factor_power\0",
        Provenance::Triangulation => b"triangulation\0",
        Provenance::Bfs => b"bfs\0",
        Provenance::Table => b"table\0",
        Provenance::Unavailable => b"unavailable\0",
    };
    bytes.as_ptr() as *const c_char
}

/// Counts lattice points by word length under the m vertex generators and
/// writes shells 0..=max_n into `counts`. `len` must be exactly max_n + 1.
///
/// # Safety
/// `counts` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn cyc_growth(
    m: u64,
    max_n: usize,
    counts: *mut u64,
    len: usize,
) -> CycStatus {
    guarded(|| {
        if counts.is_null() {
            return CycStatus::NullPointer;
        }
        if len != max_n + 1 {
            return CycStatus::InvalidInput;
        }
        let v = match build(m) {
            Ok(v) => v,
            Err(e) => return status_of(&e),
        };
        match bfs_shells_with(&v, max_n, &Budget::from_env()) {
            Ok(shells) => {
                let slice = std::slice::from_raw_parts_mut(counts, len);
                slice.copy_from_slice(&shells.counts);
                CycStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Writes 1 when the vertex matrix of C_m is totally unimodular, else 0.
///
/// # Safety
/// `verdict` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cyc_tu(m: u64, verdict: *mut i32) -> CycStatus {
    guarded(|| {
        if verdict.is_null() {
            return CycStatus::NullPointer;
        }
        match verdict_for_modulus(m, &Budget::from_env()) {
            Ok(v) => {
                *verdict = i32::from(v.is_tu);
                CycStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}
