//! Integer polynomials in one variable.
//!
//! Coefficients are stored dense, lowest degree first, with no trailing
//! zeros; the zero polynomial is the single coefficient 0. Keeping the
//! representation canonical makes equality checks meaningful across the
//! three independent pipelines that all produce coordinator polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::binom;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Build from coefficients, lowest degree first; trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![BigInt::zero()] }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![BigInt::one()] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    /// Degree as a coefficient-vector length convention: the zero polynomial
    /// reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients, lowest degree first.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of x^k, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn pow(&self, e: u32) -> IntPolynomial {
        let mut acc = IntPolynomial::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Sum of coefficients, i.e. the value at x = 1.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// x^deg * p(1/x): the coefficient sequence reversed.
    pub fn reversed(&self) -> IntPolynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPolynomial::new(coeffs)
    }

    pub fn is_palindromic(&self) -> bool {
        self == &self.reversed()
    }

    /// First n_max + 1 coefficients of the power series self / (1 - x)^d.
    ///
    /// For a coordinator polynomial in dimension d this is the shell-count
    /// sequence S(0), S(1), ..., S(n_max) of the growth series.
    pub fn series_coeffs(&self, d: usize, n_max: usize) -> Result<Vec<BigInt>> {
        if d == 0 {
            return Err(Error::invalid("series expansion requires dimension d >= 1"));
        }
        let d = d as u64;
        let mut out = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max as u64 {
            let mut s = BigInt::zero();
            for (j, h) in self.coeffs.iter().enumerate() {
                let j = j as u64;
                if j > n {
                    break;
                }
                s += h * binom(n - j + d - 1, d - 1);
            }
            out.push(s);
        }
        Ok(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude();
            if first {
                if c.sign() == num_bigint::Sign::Minus {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.sign() == num_bigint::Sign::Minus {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn new_trims_trailing_zeros() {
        let p = IntPolynomial::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(p, IntPolynomial::from_i64(&[1, 2]));
        assert!(IntPolynomial::from_i64(&[0, 0]).is_zero());
    }

    #[test]
    fn mul_hand_convolution() {
        // (1 + x)(1 + 2x + x^2) = 1 + 3x + 3x^2 + x^3
        let a = IntPolynomial::from_i64(&[1, 1]);
        let b = IntPolynomial::from_i64(&[1, 2, 1]);
        assert_eq!(a.mul(&b), IntPolynomial::from_i64(&[1, 3, 3, 1]));
    }

    #[test]
    fn pow_binomial_row() {
        let p = IntPolynomial::from_i64(&[1, 1]).pow(4);
        assert_eq!(p, IntPolynomial::from_i64(&[1, 4, 6, 4, 1]));
        assert_eq!(IntPolynomial::from_i64(&[0, 1]).pow(0), IntPolynomial::one());
    }

    #[test]
    fn palindromic_detection() {
        assert!(IntPolynomial::from_i64(&[1, 4, 1]).is_palindromic());
        assert!(IntPolynomial::from_i64(&[1, 7, 28, 79, 130, 79, 28, 7, 1]).is_palindromic());
        assert!(!IntPolynomial::from_i64(&[1, 2]).is_palindromic());
    }

    #[test]
    fn eval_one_sums_coefficients() {
        assert_eq!(IntPolynomial::from_i64(&[1, 4, 1]).eval_one(), BigInt::from(6));
    }

    #[test]
    fn series_all_ones_degree_four() {
        // simplex case: all-ones h of degree 4 in dimension 4 starts 1, 5
        let h = IntPolynomial::from_i64(&[1, 1, 1, 1, 1]);
        let s = h.series_coeffs(4, 1).unwrap();
        assert_eq!(s, vec![BigInt::from(1), BigInt::from(5)]);
    }

    #[test]
    fn series_hexagon_shells() {
        // Eisenstein lattice: 1, 6, 12, 18, ...
        let h = IntPolynomial::from_i64(&[1, 4, 1]);
        let s = h.series_coeffs(2, 4).unwrap();
        let want: Vec<BigInt> = [1, 6, 12, 18, 24].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(s, want);
    }

    #[test]
    fn series_rejects_zero_dimension() {
        assert!(IntPolynomial::one().series_coeffs(0, 3).is_err());
    }

    #[test]
    fn display_formats() {
        assert_eq!(IntPolynomial::from_i64(&[1, 4, 1]).to_string(), "x^2 + 4x + 1");
        assert_eq!(IntPolynomial::from_i64(&[0, -1, 2]).to_string(), "2x^2 - x");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(IntPolynomial::from_i64(&[-3]).to_string(), "-3");
    }

    fn small_poly() -> impl Strategy<Value = IntPolynomial> {
        proptest::collection::vec(-6i64..=6, 1..6).prop_map(|c| IntPolynomial::from_i64(&c))
    }

    proptest! {
        #[test]
        fn mul_commutes(a in small_poly(), b in small_poly()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn mul_degree_adds(a in small_poly(), b in small_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!(a.mul(&b).degree(), a.degree() + b.degree());
        }

        #[test]
        fn eval_one_is_multiplicative(a in small_poly(), b in small_poly()) {
            prop_assert_eq!(a.mul(&b).eval_one(), a.eval_one() * b.eval_one());
        }

        #[test]
        fn palindromic_product_of_palindromics(a in small_poly()) {
            // reversal is only an involution when no trimming occurs
            prop_assume!(!a.coeff(0).is_zero());
            let p = a.mul(&a.reversed());
            prop_assert!(p.is_palindromic());
        }

        #[test]
        fn series_head_is_constant_term(a in small_poly(), d in 1usize..6) {
            let s = a.series_coeffs(d, 0).unwrap();
            prop_assert_eq!(s[0].clone(), a.coeff(0));
        }

        #[test]
        fn series_telescopes(a in small_poly(), d in 1usize..4) {
            // multiplying by (1 - x) drops the series dimension by one
            let one_minus_x = IntPolynomial::from_i64(&[1, -1]);
            let lower = a.series_coeffs(d, 5).unwrap();
            let higher = a.mul(&one_minus_x).series_coeffs(d + 1, 5).unwrap();
            prop_assert_eq!(lower, higher);
        }
    }
}
