//! Exact convex-hull machinery for cyclotomic polytopes.
//!
//! The polytopes in scope are full-dimensional with the origin in the
//! interior (the vertex barycenter), so every facet hyperplane can be written
//! normal . x = 1 with a rational normal. Facets are enumerated by scanning
//! dim-subsets of vertices, solving the square system exactly, and keeping
//! hyperplanes that support the whole vertex set. At dimension <= 12 and
//! <= 35 vertices this is a few million small integer eliminations.

mod lattice;
mod pulling;

pub use lattice::{
    build_face_lattice, build_face_lattice_with, f_vector, fh_vectors, h_from_f, Face,
    FaceLattice, FHVectors,
};
pub use pulling::{
    boundary_h_polynomial, boundary_h_polynomial_with, pulling_triangulation, BoundaryH,
    Triangulation,
};

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::budget::Budget;
use crate::builder::VertexMatrix;
use crate::error::{Error, Result};
use crate::exact::{IntVector, RatVector};

/// A facet hyperplane normal . x = 1 together with the vertices lying on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: RatVector,
    /// Ascending indices of the vertices with normal . v = 1.
    pub incident: Vec<usize>,
}

impl Facet {
    /// One-line text form: "denominator ; numerators ; incident indices".
    pub fn to_text(&self) -> String {
        let nums = self
            .normal
            .numerators()
            .iter()
            .map(BigInt::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        let inc = self.incident.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        format!("{} ; {} ; {}", self.normal.denominator(), nums, inc)
    }
}

/// Row-major i64 copy of the vertex matrix, columns are vertices.
pub(crate) struct VGrid {
    pub dim: usize,
    pub n: usize,
    pub e: Vec<i64>,
}

impl VGrid {
    pub fn new(v: &VertexMatrix) -> Result<Self> {
        let e = v
            .matrix
            .to_i64()
            .ok_or_else(|| Error::invalid("vertex coordinates exceed machine integers"))?;
        Ok(VGrid { dim: v.dim(), n: v.vertex_count(), e })
    }

    pub fn coord(&self, axis: usize, vertex: usize) -> i64 {
        self.e[axis * self.n + vertex]
    }
}

/// Fraction-free elimination of the augmented system [M | 1] where row i of
/// M is a vertex. Returns the Cramer numerators y and the signed determinant
/// so that the hyperplane through the vertices is (y / det) . x = 1, or None
/// when the rows are linearly dependent.
pub(crate) fn solve_ones(buf: &mut [i64], d: usize) -> Option<(Vec<i64>, i64)> {
    let w = d + 1;
    let mut sign = 1i64;
    let mut prev = 1i64;
    for k in 0..d {
        if buf[k * w + k] == 0 {
            let pivot_row = (k + 1..d).find(|&i| buf[i * w + k] != 0)?;
            for j in 0..w {
                buf.swap(k * w + j, pivot_row * w + j);
            }
            sign = -sign;
        }
        let pivot = buf[k * w + k];
        for i in k + 1..d {
            let head = buf[i * w + k];
            for j in k + 1..w {
                buf[i * w + j] = (pivot * buf[i * w + j] - head * buf[k * w + j]) / prev;
            }
            buf[i * w + k] = 0;
        }
        prev = pivot;
    }
    let det = sign * buf[(d - 1) * w + (d - 1)];

    // back-substitute for y = det * a, which is integral by Cramer's rule;
    // every division below is exact because both sides of u_ii y_i =
    // det c_i - sum u_ij y_j are integers
    let mut y = vec![0i64; d];
    for i in (0..d).rev() {
        let mut acc = i128::from(buf[i * w + d]) * i128::from(det);
        for j in i + 1..d {
            acc -= i128::from(buf[i * w + j]) * i128::from(y[j]);
        }
        y[i] = i64::try_from(acc / i128::from(buf[i * w + i])).expect("Cramer numerator fits i64");
    }
    Some((y, det))
}

/// Canonical integer form of the hyperplane y . x = det: positive
/// denominator first, then the numerators, with the common gcd removed.
fn canonical_key(y: &[i64], det: i64) -> Vec<i64> {
    let flip = det < 0;
    let mut g = det.abs();
    for &v in y {
        g = g.gcd(&v);
    }
    let mut key = Vec::with_capacity(y.len() + 1);
    key.push(det.abs() / g);
    key.extend(y.iter().map(|&v| if flip { -v / g } else { v / g }));
    key
}

fn advance_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] + k - i < n {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn linear_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> =
        rows.iter().map(|r| r.iter().map(|&v| i128::from(v)).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev: i128 = 1;
    for c in 0..cols {
        let Some(pivot_row) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, pivot_row);
        let (upper, lower) = a.split_at_mut(rank + 1);
        let pivot_row = &upper[rank];
        let pivot = pivot_row[c];
        for row in lower.iter_mut() {
            let head = row[c];
            for (v, &pv) in row[c + 1..].iter_mut().zip(&pivot_row[c + 1..]) {
                *v = (pivot * *v - head * pv) / prev;
            }
            row[c] = 0;
        }
        prev = pivot;
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

pub fn enumerate_facets(v: &VertexMatrix) -> Result<Vec<Facet>> {
    enumerate_facets_with(v, &Budget::default())
}

pub fn enumerate_facets_with(v: &VertexMatrix, budget: &Budget) -> Result<Vec<Facet>> {
    let d = v.dim();
    let n = v.vertex_count();
    if d > budget.hull_max_dim || n > budget.hull_max_vertices {
        return Err(Error::budget(format!(
            "facet enumeration of a {d}-dimensional hull on {n} vertices exceeds the budget \
             ({} dims, {} vertices)",
            budget.hull_max_dim, budget.hull_max_vertices
        )));
    }
    let g = VGrid::new(v)?;
    let vertex_rows: Vec<Vec<i64>> =
        (0..n).map(|j| (0..d).map(|r| g.coord(r, j)).collect()).collect();
    if linear_rank(&vertex_rows) != d {
        return Err(Error::invalid("vertex set is not full-dimensional"));
    }

    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut facets: Vec<Facet> = Vec::new();
    let mut idx: Vec<usize> = (0..d).collect();
    let mut buf = vec![0i64; d * (d + 1)];
    loop {
        for (i, &vert) in idx.iter().enumerate() {
            for k in 0..d {
                buf[i * (d + 1) + k] = g.coord(k, vert);
            }
            buf[i * (d + 1) + d] = 1;
        }
        if let Some((y, det)) = solve_ones(&mut buf, d) {
            let key = canonical_key(&y, det);
            if seen.insert(key.clone()) {
                let den = key[0];
                let nums = &key[1..];
                let mut incident = Vec::new();
                let mut supported = true;
                for j in 0..n {
                    let dot: i64 = (0..d).map(|k| nums[k] * g.coord(k, j)).sum();
                    if dot > den {
                        supported = false;
                        break;
                    }
                    if dot == den {
                        incident.push(j);
                    }
                }
                if supported {
                    let normal = RatVector::new(
                        nums.iter().map(|&x| BigInt::from(x)).collect(),
                        BigInt::from(den),
                    )?;
                    facets.push(Facet { normal, incident });
                }
            }
        }
        if !advance_combination(&mut idx, n) {
            break;
        }
    }
    facets.sort_by(|a, b| a.normal.cmp(&b.normal));
    Ok(facets)
}

/// Membership of x in the dilation dilate * P described by the facet list.
pub fn contains_point(facets: &[Facet], x: &IntVector, dilate: u64) -> bool {
    facets.iter().all(|f| f.normal.dot_numerator(x) <= f.normal.denominator() * dilate)
}

pub fn verify_lattice_points(v: &VertexMatrix, facets: &[Facet]) -> Result<bool> {
    verify_lattice_points_with(v, facets, &Budget::default())
}

/// Checks that the {-1,0,+1}-vectors inside the polytope are exactly the
/// vertices and the origin. The polytope sits in [-1,1]^dim, so these 3^dim
/// vectors are the only candidate lattice points.
pub fn verify_lattice_points_with(
    v: &VertexMatrix,
    facets: &[Facet],
    budget: &Budget,
) -> Result<bool> {
    let d = v.dim();
    if d > budget.lattice_points_max_dim {
        return Err(Error::budget(format!(
            "lattice-point scan over 3^{d} candidates exceeds the budget (max dimension {})",
            budget.lattice_points_max_dim
        )));
    }
    let g = VGrid::new(v)?;
    let normals: Vec<(Vec<i64>, i64)> = facets
        .iter()
        .map(|f| {
            let nums = f
                .normal
                .numerators()
                .iter()
                .map(i64::try_from)
                .collect::<std::result::Result<Vec<i64>, _>>()
                .map_err(|_| Error::invalid("facet normal exceeds machine integers"))?;
            let den = i64::try_from(f.normal.denominator())
                .map_err(|_| Error::invalid("facet denominator exceeds machine integers"))?;
            Ok((nums, den))
        })
        .collect::<Result<_>>()?;

    let expected: HashSet<Vec<i64>> = (0..g.n)
        .map(|j| (0..d).map(|k| g.coord(k, j)).collect())
        .chain(std::iter::once(vec![0i64; d]))
        .collect();

    let mut point = vec![-1i64; d];
    let mut inside_count = 0usize;
    loop {
        let inside = normals
            .iter()
            .all(|(nums, den)| (0..d).map(|k| nums[k] * point[k]).sum::<i64>() <= *den);
        if inside {
            inside_count += 1;
            if !expected.contains(&point) {
                return Ok(false);
            }
        }
        let Some(axis) = (0..d).rev().find(|&k| point[k] < 1) else {
            break;
        };
        point[axis] += 1;
        for p in point.iter_mut().skip(axis + 1) {
            *p = -1;
        }
    }
    Ok(inside_count == expected.len())
}

pub fn is_simplicial(facets: &[Facet], dim: usize) -> bool {
    facets.iter().all(|f| f.incident.len() == dim)
}

pub fn is_reflexive(facets: &[Facet]) -> bool {
    facets.iter().all(|f| f.normal.is_integral())
}

/// Affine dimension of a set of vertices of the polytope. All proper faces
/// lie on a hyperplane missing the origin, where affine independence and
/// linear independence of vertex vectors coincide.
pub(crate) fn face_dim(g: &VGrid, mask: u64) -> usize {
    let rows: Vec<Vec<i64>> = (0..g.n)
        .filter(|&j| mask & (1 << j) != 0)
        .map(|j| (0..g.dim).map(|k| g.coord(k, j)).collect())
        .collect();
    linear_rank(&rows) - 1
}

pub(crate) fn facet_masks(facets: &[Facet]) -> Vec<u64> {
    facets
        .iter()
        .map(|f| f.incident.iter().fold(0u64, |m, &j| m | (1 << j)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::build;
    use crate::exact::IntMatrix;

    fn incidence_by_bigint(v: &VertexMatrix, f: &Facet) -> Vec<usize> {
        (0..v.vertex_count())
            .filter(|&j| f.normal.dot_numerator(&v.vertex(j)) == *f.normal.denominator())
            .collect()
    }

    #[test]
    fn hexagon_facets() {
        let v = build(6).unwrap();
        let facets = enumerate_facets(&v).unwrap();
        assert_eq!(facets.len(), 6);
        assert!(is_simplicial(&facets, 2));
        assert!(is_reflexive(&facets));
    }

    #[test]
    fn simplex_facets_of_c5() {
        let v = build(5).unwrap();
        let facets = enumerate_facets(&v).unwrap();
        assert_eq!(facets.len(), 5);
        assert!(is_simplicial(&facets, 4));
        assert!(is_reflexive(&facets));
        // the facet on the four unit vectors has the all-ones normal
        let all_ones = RatVector::from_i64(&[1, 1, 1, 1], 1).unwrap();
        assert!(facets.iter().any(|f| f.normal == all_ones && f.incident == vec![0, 1, 2, 3]));
    }

    #[test]
    fn square_c4() {
        let v = build(4).unwrap();
        let facets = enumerate_facets(&v).unwrap();
        assert_eq!(facets.len(), 4);
        for f in &facets {
            assert_eq!(f.incident.len(), 2);
            assert!(f.normal.is_integral());
        }
    }

    #[test]
    fn incidence_is_exact_for_small_m() {
        for m in 2..=16u64 {
            let v = build(m).unwrap();
            let facets = enumerate_facets(&v).unwrap();
            for f in &facets {
                assert_eq!(f.incident, incidence_by_bigint(&v, f), "m={m}");
                assert!(f.incident.len() >= v.dim(), "m={m}");
                for j in 0..v.vertex_count() {
                    let dot = f.normal.dot_numerator(&v.vertex(j));
                    assert!(dot <= *f.normal.denominator(), "m={m} vertex {j} outside");
                }
            }
        }
    }

    #[test]
    fn facet_counts_match_growth_series_for_simplicial_cases() {
        for (m, count) in [(6u64, 6), (10, 30), (14, 140), (15, 360)] {
            let v = build(m).unwrap();
            assert_eq!(enumerate_facets(&v).unwrap().len(), count, "m={m}");
        }
    }

    #[test]
    fn membership_examples() {
        let v = build(6).unwrap();
        let facets = enumerate_facets(&v).unwrap();
        let origin: IntVector = vec![BigInt::from(0), BigInt::from(0)];
        assert!(contains_point(&facets, &origin, 1));
        let vertex = v.vertex(0);
        assert!(contains_point(&facets, &vertex, 1));
        let doubled: IntVector = vertex.iter().map(|x| x * 2).collect();
        assert!(!contains_point(&facets, &doubled, 1));
        assert!(contains_point(&facets, &doubled, 2));
    }

    #[test]
    fn lattice_points_small_cases() {
        for m in [2u64, 4, 6, 9, 15] {
            let v = build(m).unwrap();
            let facets = enumerate_facets(&v).unwrap();
            assert!(verify_lattice_points(&v, &facets).unwrap(), "m={m}");
        }
    }

    #[test]
    fn lattice_point_scan_rejects_high_dimension() {
        let v = build(21).unwrap();
        assert!(matches!(
            verify_lattice_points(&v, &[]),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn non_reflexive_quadrilateral() {
        let v = VertexMatrix {
            m: 4,
            matrix: IntMatrix::from_i64_rows(&[vec![2, 0, -1, 0], vec![0, 1, 0, -1]]),
            labels: vec![0, 1, 2, 3],
        };
        let facets = enumerate_facets(&v).unwrap();
        assert_eq!(facets.len(), 4);
        assert!(!is_reflexive(&facets));
    }

    #[test]
    fn degenerate_input_rejected() {
        let v = VertexMatrix {
            m: 3,
            matrix: IntMatrix::from_i64_rows(&[vec![1, -1, 0], vec![0, 0, 0]]),
            labels: vec![0, 1, 2],
        };
        assert!(matches!(enumerate_facets(&v), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn hull_budget_guard() {
        let v = build(13).unwrap();
        let tight = Budget { hull_max_dim: 10, ..Budget::default() };
        assert!(matches!(
            enumerate_facets_with(&v, &tight),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn facet_text_round_trip_shape() {
        let v = build(4).unwrap();
        let facets = enumerate_facets(&v).unwrap();
        let line = facets[0].to_text();
        let parts: Vec<&str> = line.split(" ; ").collect();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], "1");
    }
}
