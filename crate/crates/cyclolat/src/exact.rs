//! Exact integer and rational linear algebra.
//!
//! Everything downstream (facet normals, triangulation volumes, TU scans)
//! reduces to determinants and linear solves over the integers. Determinants
//! use fraction-free Bareiss elimination with arbitrary-precision entries, so
//! intermediate growth can never overflow and no rounding exists anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Lattice vector with arbitrary-precision entries.
pub type IntVector = Vec<BigInt>;

/// Exact dot product. Panics if the lengths differ, which is always a bug.
pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    assert_eq!(a.len(), b.len(), "dot product of mismatched lengths");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Binomial coefficient C(n, k), exact; 0 when k > n.
pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        // multiply before dividing: C(n-k+i+1, i+1) is an integer at each step
        c = c * BigInt::from(n - k + i + 1) / BigInt::from(i + 1);
    }
    c
}

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// Build from a row-major entry list; the length must be rows * cols.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::invalid(format!(
                "matrix of shape {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    /// Convenience constructor from machine-integer rows.
    ///
    /// Panics on ragged input; intended for literals and construction code
    /// where the shape is static.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows in matrix literal");
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: r, cols: c, entries }
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        IntMatrix { rows: n, cols: n, entries }
    }

    /// The 0x0 matrix, the identity element of the direct sum.
    pub fn empty() -> Self {
        IntMatrix { rows: 0, cols: 0, entries: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> IntVector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Row-major entries as i64, or None if any entry does not fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.entries.iter().map(|e| i64::try_from(e).ok()).collect()
    }

    /// Text form shared with the CLI: a "rows cols" header line, then one
    /// line of space-separated entries per row.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    out.push(' ');
                }
                write!(out, "{}", self.get(r, c)).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::invalid(format!(
                "determinant requires a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> =
            (0..n).map(|r| self.entries[r * n..(r + 1) * n].to_vec()).collect();
        let mut negated = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negated = !negated;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = t / &prev; // exact by Sylvester's identity
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negated { -d } else { d })
    }
}

/// Rational vector held as integer numerators over one positive denominator,
/// normalized so the gcd of all numerators and the denominator is 1.
///
/// The normalization makes the representation canonical, which is what lets
/// facet normals be deduplicated by hashing and sorted deterministically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVector {
    numerators: Vec<BigInt>,
    denominator: BigInt,
}

impl RatVector {
    pub fn new(numerators: Vec<BigInt>, denominator: BigInt) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::invalid("rational vector with zero denominator"));
        }
        let mut v = RatVector { numerators, denominator };
        v.normalize();
        Ok(v)
    }

    pub fn from_i64(numerators: &[i64], denominator: i64) -> Result<Self> {
        RatVector::new(
            numerators.iter().map(|&x| BigInt::from(x)).collect(),
            BigInt::from(denominator),
        )
    }

    fn normalize(&mut self) {
        if self.denominator.is_negative() {
            self.denominator = -std::mem::take(&mut self.denominator);
            for n in &mut self.numerators {
                *n = -std::mem::take(n);
            }
        }
        let mut g = self.denominator.clone();
        for n in &self.numerators {
            g = g.gcd(n);
            if g.is_one() {
                return;
            }
        }
        self.denominator = &self.denominator / &g;
        for n in &mut self.numerators {
            *n = &*n / &g;
        }
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.numerators
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// True when the vector is integral (denominator 1).
    pub fn is_integral(&self) -> bool {
        self.denominator.is_one()
    }

    /// Numerator of the dot product with an integer vector; the caller
    /// compares against multiples of the denominator.
    pub fn dot_numerator(&self, x: &[BigInt]) -> BigInt {
        dot(&self.numerators, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Cofactor-expansion determinant, the independent oracle for sizes <= 5.
    fn det_cofactor(a: &[Vec<i64>]) -> i64 {
        let n = a.len();
        if n == 0 {
            return 1;
        }
        if n == 1 {
            return a[0][0];
        }
        let mut acc = 0i64;
        for (j, &pivot) in a[0].iter().enumerate() {
            if pivot == 0 {
                continue;
            }
            let minor: Vec<Vec<i64>> = a[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let term = pivot * det_cofactor(&minor);
            acc += if j % 2 == 0 { term } else { -term };
        }
        acc
    }

    #[test]
    fn det_identity() {
        assert_eq!(IntMatrix::identity(3).det().unwrap(), BigInt::from(1));
    }

    #[test]
    fn det_2x2_with_negated_column() {
        let m = IntMatrix::from_i64_rows(&[vec![1, -1], vec![0, -1]]);
        assert_eq!(m.det().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn det_simplex_volume_p5() {
        // columns e_i - (-1,...,-1) for the 4-simplex on the fifth roots of unity
        let m = IntMatrix::from_i64_rows(&[
            vec![2, 1, 1, 1],
            vec![1, 2, 1, 1],
            vec![1, 1, 2, 1],
            vec![1, 1, 1, 2],
        ]);
        assert_eq!(m.det().unwrap(), BigInt::from(5));
    }

    #[test]
    fn det_rejects_non_square() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 2, 3], vec![4, 5, 6]]);
        assert!(m.det().is_err());
    }

    #[test]
    fn det_singular_is_zero() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.det().unwrap(), BigInt::zero());
    }

    #[test]
    fn det_needs_row_swap() {
        let m = IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.det().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn binom_small_values() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(7, 0), BigInt::from(1));
        assert_eq!(binom(3, 5), BigInt::zero());
        assert_eq!(binom(30, 8), BigInt::from(5_852_925u64));
    }

    #[test]
    fn ratvector_normalizes_gcd_and_sign() {
        let v = RatVector::from_i64(&[2, 4, 6], 8).unwrap();
        assert_eq!(v.numerators(), &[BigInt::from(1), BigInt::from(2), BigInt::from(3)]);
        assert_eq!(v.denominator(), &BigInt::from(4));

        let w = RatVector::from_i64(&[1, -2], -4).unwrap();
        assert_eq!(w.numerators(), &[BigInt::from(-1), BigInt::from(2)]);
        assert_eq!(w.denominator(), &BigInt::from(4));
    }

    #[test]
    fn ratvector_rejects_zero_denominator() {
        assert!(RatVector::from_i64(&[1], 0).is_err());
    }

    fn small_square() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..=5).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(-1i64..=1, n), n)
        })
    }

    proptest! {
        #[test]
        fn det_matches_cofactor_oracle(rows in small_square()) {
            let m = IntMatrix::from_i64_rows(&rows);
            prop_assert_eq!(m.det().unwrap(), BigInt::from(det_cofactor(&rows)));
        }

        #[test]
        fn det_alternates_under_column_swap(rows in small_square()) {
            let n = rows.len();
            prop_assume!(n >= 2);
            let mut swapped = rows.clone();
            for row in &mut swapped {
                row.swap(0, n - 1);
            }
            let d = IntMatrix::from_i64_rows(&rows).det().unwrap();
            let s = IntMatrix::from_i64_rows(&swapped).det().unwrap();
            prop_assert_eq!(s, -d);
        }
    }

    #[test]
    fn det_of_permutation_matrices_is_unit() {
        use itertools::Itertools;
        for perm in (0..4usize).permutations(4) {
            let rows: Vec<Vec<i64>> = perm
                .iter()
                .map(|&j| (0..4).map(|k| i64::from(k == j)).collect())
                .collect();
            let d = IntMatrix::from_i64_rows(&rows).det().unwrap();
            assert!(d == BigInt::from(1) || d == BigInt::from(-1));
        }
    }
}
