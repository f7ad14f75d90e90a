//! Construction of the vertex matrices A_m of the cyclotomic polytopes C_m.
//!
//! The vertices of C_m are the m-th roots of unity written in the power basis
//! of Z[zeta_m]. For a prime p the matrix is [I_{p-1} | -1]; for coprime
//! factors the vertex set is a tensor product; and going from the squarefree
//! kernel s to m = s*t stacks t shifted copies as a direct sum, because
//! Z[zeta_m] splits as the sum of zeta_m^r * Z[zeta_s] over r < t.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::IntMatrix;

/// Vertex matrix of C_m together with the root-of-unity exponent each
/// column represents.
#[derive(Debug, Clone)]
pub struct VertexMatrix {
    pub m: u64,
    pub matrix: IntMatrix,
    /// labels[j] = exponent a such that column j is the vertex zeta_m^a.
    pub labels: Vec<u64>,
}

impl VertexMatrix {
    /// Ambient dimension, always phi(m).
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of vertices, always m.
    pub fn vertex_count(&self) -> usize {
        self.matrix.cols()
    }

    /// Column j as a lattice point.
    pub fn vertex(&self, j: usize) -> Vec<BigInt> {
        self.matrix.column(j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub m: u64,
    /// Product of the distinct primes dividing m.
    pub sqrt_m: u64,
    /// m / sqrt_m.
    pub power: u64,
    pub prime_factors: Vec<(u64, u32)>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn squarefree_decompose(m: u64) -> Result<SquarefreeDecomposition> {
    if m < 2 {
        return Err(Error::invalid(format!("m must be at least 2, got {m}")));
    }
    let mut prime_factors = Vec::new();
    let mut rest = m;
    let mut d = 2;
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            let mut e = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            prime_factors.push((d, e));
        }
        d += 1;
    }
    if rest > 1 {
        prime_factors.push((rest, 1));
    }
    let sqrt_m = prime_factors.iter().map(|&(p, _)| p).product::<u64>();
    Ok(SquarefreeDecomposition { m, sqrt_m, power: m / sqrt_m, prime_factors })
}

pub fn euler_phi(m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    squarefree_decompose(m)
        .expect("m >= 2")
        .prime_factors
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product()
}

/// A_p = [I_{p-1} | -1]: the unit vectors e_0..e_{p-2} and the all-minus-ones
/// column, which is zeta_p^{p-1} in the power basis.
pub fn build_prime(p: u64) -> Result<VertexMatrix> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let d = (p - 1) as usize;
    let mut matrix = IntMatrix::new(d, p as usize, vec![BigInt::zero(); d * p as usize])?;
    for i in 0..d {
        matrix.set(i, i, BigInt::from(1));
        matrix.set(i, d, BigInt::from(-1));
    }
    Ok(VertexMatrix { m: p, matrix, labels: (0..p).collect() })
}

/// Block-diagonal arrangement [[A, 0], [0, B]]. The empty matrix is the
/// identity element.
pub fn direct_sum(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let rows = a.rows() + b.rows();
    let cols = a.cols() + b.cols();
    let mut out = IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
        .expect("shape is consistent by construction");
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            out.set(r, c, a.get(r, c).clone());
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            out.set(a.rows() + r, a.cols() + c, b.get(r, c).clone());
        }
    }
    out
}

/// Kronecker product: column (i, j) of the result is column i of A tensored
/// with column j of B, ordered lexicographically by (i, j).
pub fn tensor(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let rows = a.rows() * b.rows();
    let cols = a.cols() * b.cols();
    let mut entries = vec![BigInt::zero(); rows * cols];
    for i1 in 0..a.rows() {
        for j1 in 0..a.cols() {
            let x = a.get(i1, j1);
            if x.is_zero() {
                continue;
            }
            for i2 in 0..b.rows() {
                for j2 in 0..b.cols() {
                    entries[(i1 * b.rows() + i2) * cols + (j1 * b.cols() + j2)] =
                        x * b.get(i2, j2);
                }
            }
        }
    }
    IntMatrix::new(rows, cols, entries).expect("shape is consistent by construction")
}

/// Vertex matrix of C_m for any m >= 2.
///
/// Tensor A_p over the distinct primes p | m in ascending order, then stack
/// m / sqrt(m) copies as a direct sum. Labels track exponents through both
/// steps: zeta_{m1}^a * zeta_{m2}^b = zeta_{m1 m2}^{a m2 + b m1} for coprime
/// m1, m2, and block r of the direct sum holds zeta_m^{r + a t} for t = m/s.
pub fn build(m: u64) -> Result<VertexMatrix> {
    let dec = squarefree_decompose(m)?;

    let mut kernel = IntMatrix::from_i64_rows(&[vec![1]]);
    let mut kernel_labels: Vec<u64> = vec![0];
    let mut kernel_mod: u64 = 1;
    for &(p, _) in &dec.prime_factors {
        let block = build_prime(p)?;
        let mut labels = Vec::with_capacity(kernel_labels.len() * block.labels.len());
        for &a in &kernel_labels {
            for &b in &block.labels {
                labels.push((a * p + b * kernel_mod) % (kernel_mod * p));
            }
        }
        kernel = tensor(&kernel, &block.matrix);
        kernel_labels = labels;
        kernel_mod *= p;
    }

    let t = dec.power;
    let mut matrix = IntMatrix::empty();
    let mut labels = Vec::with_capacity(m as usize);
    for r in 0..t {
        matrix = direct_sum(&matrix, &kernel);
        labels.extend(kernel_labels.iter().map(|&a| r + a * t));
    }
    Ok(VertexMatrix { m, matrix, labels })
}
