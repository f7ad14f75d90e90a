//! Face lattice, f-vectors and h-vectors.
//!
//! Every proper face of a polytope is the intersection of the facets
//! containing it, and its vertex set is the intersection of their incident
//! sets, so closing the incident sets under pairwise intersection builds the
//! whole proper face poset. For simplicial polytopes the closure is simply
//! all nonempty subsets of the facet sets, which is much cheaper to produce
//! directly.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exact::binom;
use crate::poly::IntPolynomial;

use super::{face_dim, facet_masks, is_simplicial, Facet, VGrid};
use crate::builder::VertexMatrix;

#[derive(Debug, Clone)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: usize,
    pub(crate) mask: u64,
}

/// All proper nonempty faces, sorted by dimension then vertex set. The empty
/// face and the polytope itself are not stored.
#[derive(Debug, Clone)]
pub struct FaceLattice {
    pub faces: Vec<Face>,
}

impl FaceLattice {
    pub fn count_by_dim(&self, dim: usize) -> usize {
        self.faces.iter().filter(|f| f.dim == dim).count()
    }
}

pub fn build_face_lattice(v: &VertexMatrix, facets: &[Facet]) -> Result<FaceLattice> {
    build_face_lattice_with(v, facets, &Budget::default())
}

pub fn build_face_lattice_with(
    v: &VertexMatrix,
    facets: &[Facet],
    budget: &Budget,
) -> Result<FaceLattice> {
    if facets.is_empty() {
        return Err(Error::invalid("cannot build a face lattice from no facets"));
    }
    let d = v.dim();
    let g = VGrid::new(v)?;
    let seeds = facet_masks(facets);
    let simplicial = is_simplicial(facets, d);

    let mut masks: HashSet<u64> = HashSet::new();
    if simplicial {
        for &f in &seeds {
            // all nonempty submasks of a simplex are faces of it
            let mut s = f;
            loop {
                masks.insert(s);
                if masks.len() > budget.face_count {
                    return Err(Error::budget(format!(
                        "face lattice exceeds {} faces",
                        budget.face_count
                    )));
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & f;
            }
            masks.remove(&0);
        }
    } else {
        let mut queue: Vec<u64> = Vec::new();
        for &f in &seeds {
            if masks.insert(f) {
                queue.push(f);
            }
        }
        while let Some(q) = queue.pop() {
            for &f in &seeds {
                let meet = q & f;
                if meet != 0 && masks.insert(meet) {
                    if masks.len() > budget.face_count {
                        return Err(Error::budget(format!(
                            "face lattice exceeds {} faces",
                            budget.face_count
                        )));
                    }
                    queue.push(meet);
                }
            }
        }
    }

    let mut faces: Vec<Face> = masks
        .into_iter()
        .map(|mask| {
            let vertices: Vec<usize> = (0..g.n).filter(|&j| mask & (1 << j) != 0).collect();
            let dim = if simplicial { vertices.len() - 1 } else { face_dim(&g, mask) };
            Face { vertices, dim, mask }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
    Ok(FaceLattice { faces })
}

/// (f_{-1}, f_0, ..., f_{d-1}) of the boundary complex; f_{-1} = 1 counts
/// the empty face.
pub fn f_vector(lattice: &FaceLattice, dim: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::zero(); dim + 1];
    f[0] = BigInt::from(1);
    for face in &lattice.faces {
        f[face.dim + 1] += 1;
    }
    f
}

/// h_j = sum_{k <= j} (-1)^{j-k} C(d-k, j-k) f_{k-1}.
pub fn h_from_f(f: &[BigInt], d: usize) -> Result<IntPolynomial> {
    if f.len() != d + 1 {
        return Err(Error::invalid(format!(
            "f-vector must have d+1 = {} entries, got {}",
            d + 1,
            f.len()
        )));
    }
    let mut h = Vec::with_capacity(d + 1);
    for j in 0..=d {
        let mut acc = BigInt::zero();
        for (k, fk) in f.iter().enumerate().take(j + 1) {
            let term = binom((d - k) as u64, (j - k) as u64) * fk;
            if (j - k) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        h.push(acc);
    }
    Ok(IntPolynomial::new(h))
}

#[derive(Debug, Clone)]
pub struct FHVectors {
    pub f: Vec<BigInt>,
    pub h: IntPolynomial,
}

pub fn fh_vectors(lattice: &FaceLattice, dim: usize) -> Result<FHVectors> {
    let f = f_vector(lattice, dim);
    let h = h_from_f(&f, dim)?;
    Ok(FHVectors { f, h })
}
