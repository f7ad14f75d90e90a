//! Ground truth for coordination sequences by breadth-first search.
//!
//! Word length of a lattice element is the minimal number of m-th roots of
//! unity summing to it, so the shells are exactly the BFS layers from the
//! origin under the vertex columns as generators. The routines here count
//! shells, compare them against series expansions, count lattice points of
//! dilates, and fit a numerator polynomial back out of shell data. BFS and
//! dilation counts share no code with the series expansion, which is what
//! makes the cross-checks meaningful.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::budget::Budget;
use crate::builder::VertexMatrix;
use crate::error::{Error, Result};
use crate::exact::binom;
use crate::hull::Facet;
use crate::poly::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellCounts {
    pub m: u64,
    /// counts[n] is the number of lattice elements of word length exactly n.
    pub counts: Vec<u64>,
}

impl ShellCounts {
    pub fn max_n(&self) -> usize {
        self.counts.len() - 1
    }

    /// CSV form with an "n,count" header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (n, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{n},{c}\n"));
        }
        out
    }
}

/// Coordinates after n steps lie in [-max_n, max_n], so each one packs into a
/// fixed-width field and a whole point into one u128 visited-set key.
struct Packer {
    bits: u32,
    offset: i64,
}

impl Packer {
    fn new(dim: usize, max_n: usize) -> Result<Packer> {
        let span = 2 * max_n as u64 + 1;
        let bits = 64 - span.leading_zeros();
        if dim as u32 * bits > 127 {
            return Err(Error::budget(format!(
                "packing {dim} coordinates of {bits} bits each into a visited key"
            )));
        }
        Ok(Packer { bits, offset: max_n as i64 })
    }

    fn pack(&self, point: &[i64]) -> u128 {
        point.iter().fold(0u128, |acc, &c| (acc << self.bits) | (c + self.offset) as u128)
    }
}

/// Runs the BFS and hands each completed shell (n >= 1) to the callback.
/// Memory holds only the visited keys and the current frontier.
fn bfs_layers(
    v: &VertexMatrix,
    max_n: usize,
    budget: &Budget,
    mut on_layer: impl FnMut(usize, &[Vec<i64>]),
) -> Result<()> {
    let d = v.dim();
    let packer = Packer::new(d, max_n)?;
    let generators: Vec<Vec<i64>> = {
        let cols = v
            .matrix
            .to_i64()
            .ok_or_else(|| Error::invalid("generator coordinates exceed machine integers"))?;
        (0..v.vertex_count())
            .map(|j| (0..d).map(|r| cols[r * v.vertex_count() + j]).collect())
            .collect()
    };

    let mut visited: HashSet<u128> = HashSet::new();
    let origin = vec![0i64; d];
    visited.insert(packer.pack(&origin));
    let mut frontier = vec![origin];
    for n in 1..=max_n {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for point in &frontier {
            for g in &generators {
                let candidate: Vec<i64> = point.iter().zip(g).map(|(a, b)| a + b).collect();
                if visited.insert(packer.pack(&candidate)) {
                    if visited.len() > budget.bfs_points {
                        return Err(Error::budget(format!(
                            "BFS ball exceeds {} points; last completed shell is n={}",
                            budget.bfs_points,
                            n - 1
                        )));
                    }
                    next.push(candidate);
                }
            }
        }
        on_layer(n, &next);
        frontier = next;
    }
    Ok(())
}

pub fn bfs_shells(v: &VertexMatrix, max_n: usize) -> Result<ShellCounts> {
    bfs_shells_with(v, max_n, &Budget::default())
}

pub fn bfs_shells_with(v: &VertexMatrix, max_n: usize, budget: &Budget) -> Result<ShellCounts> {
    let mut counts = vec![1u64];
    bfs_layers(v, max_n, budget, |_, layer| counts.push(layer.len() as u64))?;
    Ok(ShellCounts { m: v.m, counts })
}

/// True iff the shell counts agree with the expansion of h / (1-x)^d.
pub fn shells_match_polynomial(shells: &ShellCounts, h: &IntPolynomial, d: usize) -> bool {
    let Ok(expected) = h.series_coeffs(d, shells.max_n()) else {
        return false;
    };
    shells.counts.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>() == expected
}

pub fn dilate_point_count(facets: &[Facet], dim: usize, k: u64) -> Result<u64> {
    dilate_point_count_with(facets, dim, k, &Budget::default())
}

/// Number of integer vectors in the k-th dilate. Candidates are the cube
/// [-k, k]^dim since the polytope sits inside [-1, 1]^dim.
pub fn dilate_point_count_with(
    facets: &[Facet],
    dim: usize,
    k: u64,
    budget: &Budget,
) -> Result<u64> {
    if facets.is_empty() {
        return Err(Error::invalid("dilation needs a nonempty facet list"));
    }
    let side = 2 * k + 1;
    let candidates = (0..dim).try_fold(1u64, |acc, _| acc.checked_mul(side));
    if candidates.is_none_or(|c| c > budget.dilate_points) {
        return Err(Error::budget(format!(
            "dilate scan over {side}^{dim} candidates exceeds {} points",
            budget.dilate_points
        )));
    }
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

    let k = k as i64;
    let mut point = vec![-k; dim];
    let mut count = 0u64;
    loop {
        let inside = normals
            .iter()
            .all(|(nums, den)| (0..dim).map(|i| nums[i] * point[i]).sum::<i64>() <= k * den);
        if inside {
            count += 1;
        }
        let Some(axis) = (0..dim).rev().find(|&i| point[i] < k) else {
            break;
        };
        point[axis] += 1;
        for p in point.iter_mut().skip(axis + 1) {
            *p = -k;
        }
    }
    Ok(count)
}

pub fn normality_check(v: &VertexMatrix, facets: &[Facet], max_k: usize) -> Result<bool> {
    normality_check_with(v, facets, max_k, &Budget::default())
}

/// The observable consequence of normality: the word-length ball of radius k
/// equals the lattice points of the k-th dilate, for every k up to max_k.
pub fn normality_check_with(
    v: &VertexMatrix,
    facets: &[Facet],
    max_k: usize,
    budget: &Budget,
) -> Result<bool> {
    let shells = bfs_shells_with(v, max_k, budget)?;
    let mut ball = 0u64;
    for (k, &count) in shells.counts.iter().enumerate() {
        ball += count;
        if k >= 1 && dilate_point_count_with(facets, v.dim(), k as u64, budget)? != ball {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Recovers h of degree <= d from shell values via h(x) = (1-x)^d G(x):
/// h_j = sum_i (-1)^i C(d,i) S(j-i). Needs at least d+1 shells; any surplus
/// shells must produce vanishing higher coefficients or the data is
/// inconsistent with degree d.
pub fn fit_polynomial(shells: &ShellCounts, d: usize) -> Result<IntPolynomial> {
    let max_n = shells.max_n();
    if max_n < d {
        return Err(Error::invalid(format!(
            "fitting a degree-{d} numerator needs {} shells, have {}",
            d + 1,
            max_n + 1
        )));
    }
    let signed_binom: Vec<BigInt> = (0..=d)
        .map(|i| {
            let b = binom(d as u64, i as u64);
            if i % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .collect();
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(d + 1);
    for j in 0..=max_n {
        let mut h_j = BigInt::zero();
        for (i, b) in signed_binom.iter().enumerate().take(j + 1) {
            h_j += b * BigInt::from(shells.counts[j - i]);
        }
        if j <= d {
            coeffs.push(h_j);
        } else if !h_j.is_zero() {
            return Err(Error::invalid(format!(
                "shell data is not a degree-{d} quasipolynomial: coefficient {j} is {h_j}"
            )));
        }
    }
    Ok(IntPolynomial::new(coeffs))
}
