//! Exercises the C entry points from Rust: handle lifecycle, status codes
//! and value round-trips.

use std::ffi::CStr;
use std::ptr;

use cyclolat_ffi::*;

#[test]
fn build_exposes_dims_entries_and_labels() {
    unsafe {
        let mut matrix: *mut CycMatrix = ptr::null_mut();
        assert_eq!(cyc_build(15, &mut matrix), CycStatus::Ok);
        assert!(!matrix.is_null());

        let (mut rows, mut cols) = (0usize, 0usize);
        assert_eq!(cyc_matrix_dims(matrix, &mut rows, &mut cols), CycStatus::Ok);
        assert_eq!((rows, cols), (8, 15));

        let mut label = 0u64;
        for col in 0..15 {
            assert_eq!(cyc_matrix_label(matrix, col, &mut label), CycStatus::Ok);
            assert!(label < 15);
        }

        let mut e = 0i64;
        assert_eq!(cyc_matrix_entry(matrix, 0, 0, &mut e), CycStatus::Ok);
        assert!((-1..=1).contains(&e));
        assert_eq!(cyc_matrix_entry(matrix, 8, 0, &mut e), CycStatus::InvalidInput);
        assert_eq!(cyc_matrix_entry(matrix, 0, 15, &mut e), CycStatus::InvalidInput);

        cyc_matrix_free(matrix);
    }
}

#[test]
fn build_rejects_bad_m_and_null_out() {
    unsafe {
        let mut matrix: *mut CycMatrix = ptr::null_mut();
        assert_eq!(cyc_build(1, &mut matrix), CycStatus::InvalidInput);
        assert!(matrix.is_null());
        assert_eq!(cyc_build(6, ptr::null_mut()), CycStatus::NullPointer);
        cyc_matrix_free(ptr::null_mut());
    }
}

#[test]
fn coordinator_round_trips_the_m20_row() {
    unsafe {
        let mut poly: *mut CycPolynomial = ptr::null_mut();
        assert_eq!(cyc_coordinator(20, &mut poly), CycStatus::Ok);

        let mut degree = 0usize;
        assert_eq!(cyc_polynomial_degree(poly, &mut degree), CycStatus::Ok);
        assert_eq!(degree, 8);

        let expected = [1i64, 12, 68, 204, 330, 204, 68, 12, 1];
        let mut c = 0i64;
        for (k, &want) in expected.iter().enumerate() {
            assert_eq!(cyc_polynomial_coeff(poly, k, &mut c), CycStatus::Ok);
            assert_eq!(c, want, "coefficient {k}");
        }
        assert_eq!(cyc_polynomial_coeff(poly, 9, &mut c), CycStatus::InvalidInput);

        let provenance = CStr::from_ptr(cyc_polynomial_provenance(poly));
        assert_eq!(provenance.to_str().unwrap(), "factor_power");

        cyc_polynomial_free(poly);
    }
}

#[test]
fn coordinator_reports_unavailable() {
    unsafe {
        let mut poly: *mut CycPolynomial = ptr::null_mut();
        assert_eq!(cyc_coordinator(105, &mut poly), CycStatus::Unavailable);
        assert!(poly.is_null());
        assert!(cyc_polynomial_provenance(poly).is_null());
        cyc_polynomial_free(poly);
    }
}

#[test]
fn growth_fills_the_caller_buffer() {
    unsafe {
        let mut counts = [0u64; 4];
        assert_eq!(cyc_growth(6, 3, counts.as_mut_ptr(), counts.len()), CycStatus::Ok);
        assert_eq!(counts, [1, 6, 12, 18]);

        assert_eq!(cyc_growth(6, 3, counts.as_mut_ptr(), 3), CycStatus::InvalidInput);
        assert_eq!(cyc_growth(6, 3, ptr::null_mut(), 4), CycStatus::NullPointer);
    }
}

#[test]
fn tu_writes_the_verdict() {
    unsafe {
        let mut verdict = -1i32;
        assert_eq!(cyc_tu(6, &mut verdict), CycStatus::Ok);
        assert_eq!(verdict, 1);
        assert_eq!(cyc_tu(105, &mut verdict), CycStatus::Ok);
        assert_eq!(verdict, 0);
        assert_eq!(cyc_tu(6, ptr::null_mut()), CycStatus::NullPointer);
    }
}

#[test]
fn header_is_generated_with_the_api() {
    let header = include_str!("../include/cyclolat.h");
    for symbol in [
        "cyc_build",
        "cyc_matrix_free",
        "cyc_matrix_dims",
        "cyc_matrix_entry",
        "cyc_matrix_label",
        "cyc_coordinator",
        "cyc_polynomial_free",
        "cyc_polynomial_degree",
        "cyc_polynomial_coeff",
        "cyc_polynomial_provenance",
        "cyc_growth",
        "cyc_tu",
        "CycStatus",
        "CycMatrix",
        "CycPolynomial",
    ] {
        assert!(header.contains(symbol), "header misses {symbol}");
    }
}
