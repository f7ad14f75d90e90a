//! Pulling triangulation of the boundary and its h-polynomial.
//!
//! Pulling a face: a simplex face is kept as is; any other face is coned
//! from its lowest vertex in the pulling order over the pulled
//! triangulations of its facets that miss that vertex. Applying this to
//! every facet of the polytope triangulates the boundary sphere without new
//! vertices, and coning the result at the origin triangulates the polytope.
//! When all cone simplices have determinant +-1 the triangulation is
//! unimodular and the h-polynomial of the boundary complex equals the
//! numerator of the growth series.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::budget::Budget;
use crate::builder::VertexMatrix;
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

use super::lattice::{h_from_f, FaceLattice};
use super::VGrid;

#[derive(Debug, Clone)]
pub struct Triangulation {
    /// Sorted vertex-index sets of size dim+1, each including the apex.
    pub simplices: Vec<Vec<usize>>,
    /// Index of the origin apex, one past the last vertex index.
    pub apex: usize,
    pub unimodular: bool,
}

pub fn pulling_triangulation(
    v: &VertexMatrix,
    lattice: &FaceLattice,
    order: &[usize],
) -> Result<Triangulation> {
    let d = v.dim();
    let n = v.vertex_count();
    {
        let mut check: Vec<usize> = order.to_vec();
        check.sort_unstable();
        if check != (0..n).collect::<Vec<_>>() {
            return Err(Error::invalid("pulling order must be a permutation of the vertices"));
        }
    }
    let mut position = vec![0usize; n];
    for (rank, &vertex) in order.iter().enumerate() {
        position[vertex] = rank;
    }

    let by_mask: HashMap<u64, (usize, Vec<usize>)> = lattice
        .faces
        .iter()
        .map(|f| (f.mask, (f.dim, f.vertices.clone())))
        .collect();

    struct Puller<'a> {
        by_mask: &'a HashMap<u64, (usize, Vec<usize>)>,
        faces_by_dim: Vec<Vec<u64>>,
        position: &'a [usize],
        memo: HashMap<u64, Vec<u64>>,
    }

    impl Puller<'_> {
        fn pull(&mut self, mask: u64) -> Vec<u64> {
            if let Some(cells) = self.memo.get(&mask) {
                return cells.clone();
            }
            let (dim, vertices) = &self.by_mask[&mask];
            let cells = if vertices.len() == dim + 1 {
                vec![mask]
            } else {
                let lowest = *vertices
                    .iter()
                    .min_by_key(|&&j| self.position[j])
                    .expect("faces are nonempty");
                let bit = 1u64 << lowest;
                let mut cells = Vec::new();
                let children: Vec<u64> = if *dim == 0 {
                    Vec::new()
                } else {
                    self.faces_by_dim[dim - 1]
                        .iter()
                        .copied()
                        .filter(|&c| c & mask == c && c & bit == 0)
                        .collect()
                };
                for child in children {
                    for cell in self.pull(child) {
                        cells.push(cell | bit);
                    }
                }
                cells
            };
            self.memo.insert(mask, cells.clone());
            cells
        }
    }

    let mut faces_by_dim: Vec<Vec<u64>> = vec![Vec::new(); d];
    for f in &lattice.faces {
        faces_by_dim[f.dim].push(f.mask);
    }
    let top: Vec<u64> = faces_by_dim[d - 1].clone();
    let mut puller = Puller { by_mask: &by_mask, faces_by_dim, position: &position, memo: HashMap::new() };

    let mut cell_masks: Vec<u64> = Vec::new();
    for facet in top {
        cell_masks.extend(puller.pull(facet));
    }

    let g = VGrid::new(v)?;
    let mut unimodular = true;
    let mut simplices: Vec<Vec<usize>> = Vec::with_capacity(cell_masks.len());
    for mask in cell_masks {
        let verts: Vec<usize> = (0..n).filter(|&j| mask & (1 << j) != 0).collect();
        if det_i64(&g, &verts).abs() != 1 {
            unimodular = false;
        }
        let mut simplex = verts;
        simplex.push(n);
        simplices.push(simplex);
    }
    simplices.sort();
    Ok(Triangulation { simplices, apex: n, unimodular })
}

/// Determinant of the square matrix whose columns are the given vertices.
fn det_i64(g: &VGrid, verts: &[usize]) -> i64 {
    let d = verts.len();
    let mut a = vec![0i64; d * d];
    for (c, &j) in verts.iter().enumerate() {
        for r in 0..d {
            a[r * d + c] = g.coord(r, j);
        }
    }
    let mut sign = 1i64;
    let mut prev = 1i64;
    for k in 0..d {
        if a[k * d + k] == 0 {
            let Some(swap) = (k + 1..d).find(|&i| a[i * d + k] != 0) else {
                return 0;
            };
            for j in 0..d {
                a.swap(k * d + j, swap * d + j);
            }
            sign = -sign;
        }
        let pivot = a[k * d + k];
        for i in k + 1..d {
            let head = a[i * d + k];
            for j in k + 1..d {
                a[i * d + j] = (pivot * a[i * d + j] - head * a[k * d + j]) / prev;
            }
            a[i * d + k] = 0;
        }
        prev = pivot;
    }
    sign * a[(d - 1) * d + (d - 1)]
}

#[derive(Debug, Clone)]
pub struct BoundaryH {
    pub h: IntPolynomial,
    /// True when the triangulation was unimodular, in which case h is the
    /// coordinator polynomial and not merely the h-polynomial of one
    /// particular triangulation.
    pub certified: bool,
}

pub fn boundary_h_polynomial(tri: &Triangulation, dim: usize) -> Result<BoundaryH> {
    boundary_h_polynomial_with(tri, dim, &Budget::default())
}

/// f-vector of the boundary complex (all faces of all cells, deduplicated),
/// converted to the h-polynomial.
pub fn boundary_h_polynomial_with(
    tri: &Triangulation,
    dim: usize,
    budget: &Budget,
) -> Result<BoundaryH> {
    let apex_bit = 1u64 << tri.apex;
    let mut faces: HashSet<u64> = HashSet::new();
    for simplex in &tri.simplices {
        let mask = simplex.iter().fold(0u64, |m, &j| m | (1 << j)) & !apex_bit;
        let mut s = mask;
        loop {
            faces.insert(s);
            if faces.len() > budget.face_count {
                return Err(Error::budget(format!(
                    "boundary complex exceeds {} faces",
                    budget.face_count
                )));
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & mask;
        }
    }
    faces.remove(&0);

    let mut f = vec![BigInt::zero(); dim + 1];
    f[0] = BigInt::from(1);
    for mask in faces {
        f[mask.count_ones() as usize] += 1;
    }
    Ok(BoundaryH { h: h_from_f(&f, dim)?, certified: tri.unimodular })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::build;
    use crate::exact::IntMatrix;
    use crate::hull::{build_face_lattice, enumerate_facets};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pulled(m: u64, order: &[usize]) -> (Triangulation, usize) {
        let v = build(m).unwrap();
        let facets = enumerate_facets(&v).unwrap();
        let lattice = build_face_lattice(&v, &facets).unwrap();
        let tri = pulling_triangulation(&v, &lattice, order).unwrap();
        (tri, v.dim())
    }

    #[test]
    fn hexagon_pulls_to_six_triangles() {
        let (tri, dim) = pulled(6, &[0, 1, 2, 3, 4, 5]);
        assert_eq!(tri.simplices.len(), 6);
        assert!(tri.unimodular);
        assert!(tri.simplices.iter().all(|s| s.contains(&6) && s.len() == 3));
        let bh = boundary_h_polynomial(&tri, dim).unwrap();
        assert!(bh.certified);
        assert_eq!(bh.h, IntPolynomial::from_i64(&[1, 4, 1]));
    }

    #[test]
    fn simplex_boundary_is_identity() {
        let (tri, dim) = pulled(5, &[0, 1, 2, 3, 4]);
        assert_eq!(tri.simplices.len(), 5);
        assert!(tri.unimodular);
        let bh = boundary_h_polynomial(&tri, dim).unwrap();
        assert_eq!(bh.h, IntPolynomial::from_i64(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn c15_pulling_has_facet_many_cells() {
        let order: Vec<usize> = (0..15).collect();
        let (tri, dim) = pulled(15, &order);
        assert_eq!(tri.simplices.len(), 360);
        assert!(tri.unimodular);
        let bh = boundary_h_polynomial(&tri, dim).unwrap();
        assert_eq!(
            bh.h,
            IntPolynomial::from_i64(&[1, 7, 28, 79, 130, 79, 28, 7, 1])
        );
        assert_eq!(bh.h.eval_one(), BigInt::from(360));
    }

    #[test]
    fn c10_cell_count_is_h_at_one() {
        let order: Vec<usize> = (0..10).collect();
        let (tri, dim) = pulled(10, &order);
        assert_eq!(tri.simplices.len(), 30);
        let bh = boundary_h_polynomial(&tri, dim).unwrap();
        assert_eq!(bh.h, IntPolynomial::from_i64(&[1, 6, 16, 6, 1]));
    }

    #[test]
    fn pulling_order_does_not_change_h() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in [6u64, 10, 15] {
            let base: Vec<usize> = (0..m as usize).collect();
            let (tri, dim) = pulled(m, &base);
            let reference = boundary_h_polynomial(&tri, dim).unwrap().h;
            for _ in 0..5 {
                let mut order = base.clone();
                order.shuffle(&mut rng);
                let (tri, dim) = pulled(m, &order);
                assert!(tri.unimodular, "m={m}");
                let bh = boundary_h_polynomial(&tri, dim).unwrap();
                assert_eq!(bh.h, reference, "m={m} order {order:?}");
            }
        }
    }

    #[test]
    fn lattice_square_is_flagged_non_unimodular() {
        let v = VertexMatrix {
            m: 4,
            matrix: IntMatrix::from_i64_rows(&[vec![1, 1, -1, -1], vec![1, -1, 1, -1]]),
            labels: vec![0, 1, 2, 3],
        };
        let facets = enumerate_facets(&v).unwrap();
        let lattice = build_face_lattice(&v, &facets).unwrap();
        let tri = pulling_triangulation(&v, &lattice, &[0, 1, 2, 3]).unwrap();
        assert_eq!(tri.simplices.len(), 4);
        assert!(!tri.unimodular);
        let bh = boundary_h_polynomial(&tri, 2).unwrap();
        assert!(!bh.certified);
        assert_eq!(bh.h, IntPolynomial::from_i64(&[1, 2, 1]));
    }

    #[test]
    fn pulling_rejects_bad_orders() {
        let v = build(6).unwrap();
        let facets = enumerate_facets(&v).unwrap();
        let lattice = build_face_lattice(&v, &facets).unwrap();
        assert!(pulling_triangulation(&v, &lattice, &[0, 1, 2]).is_err());
        assert!(pulling_triangulation(&v, &lattice, &[0, 1, 2, 3, 4, 4]).is_err());
    }
}
