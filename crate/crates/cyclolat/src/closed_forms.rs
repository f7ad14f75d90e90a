//! Closed-form coordinator polynomials and the dispatch that routes each m
//! through the cheapest certified pipeline.
//!
//! Every m reduces to its squarefree part s: the coordinator polynomial of m
//! is the one of s raised to the power m/s, because the lattice splits as a
//! direct sum of m/s copies of the squarefree lattice. For squarefree s the
//! closed forms cover s prime, s = 2p and s = 15; everything else falls to
//! the pulling-triangulation pipeline and, failing that, to a BFS fit.

use num_bigint::BigInt;

use crate::budget::Budget;
use crate::builder::{build, euler_phi, is_prime, squarefree_decompose};
use crate::error::{Error, Result};
use crate::exact::binom;
use crate::growth::{bfs_shells_with, fit_polynomial};
use crate::hull::{
    boundary_h_polynomial_with, build_face_lattice_with, enumerate_facets_with,
    pulling_triangulation,
};
use crate::poly::IntPolynomial;
use crate::tu::tu_failure_certificate_3pq;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Closed,
    Triangulation,
    Bfs,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Prime,
    TwoP,
    Fifteen,
    FactorPower,
    Triangulation,
    Bfs,
    Table,
    Unavailable,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Prime => "prime",
            Provenance::TwoP => "two_p",
            Provenance::Fifteen => "fifteen",
            Provenance::FactorPower => "factor_power",
            Provenance::Triangulation => "triangulation",
            Provenance::Bfs => "bfs",
            Provenance::Table => "table",
            Provenance::Unavailable => "unavailable",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClosedFormResult {
    pub m: u64,
    /// Absent exactly when provenance is Unavailable.
    pub h: Option<IntPolynomial>,
    pub provenance: Provenance,
    pub note: Option<String>,
}

/// All-ones polynomial of degree p-1.
pub fn h_prime(p: u64) -> Result<IntPolynomial> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    Ok(IntPolynomial::new(vec![BigInt::from(1); p as usize]))
}

/// Coordinator polynomial of the 2p-th cyclotomic lattice for odd prime p:
/// palindromic with h_j the j-th partial sum of the binomial row of p.
pub fn h_two_p(p: u64) -> Result<IntPolynomial> {
    if !is_prime(p) || p == 2 {
        return Err(Error::invalid(format!("{p} is not an odd prime")));
    }
    let half = ((p - 1) / 2) as usize;
    let mut partial = Vec::with_capacity(half + 1);
    let mut acc = BigInt::from(0);
    for k in 0..=half {
        acc += binom(p, k as u64);
        partial.push(acc.clone());
    }
    let degree = (p - 1) as usize;
    let coeffs: Vec<BigInt> =
        (0..=degree).map(|j| partial[j.min(degree - j)].clone()).collect();
    Ok(IntPolynomial::new(coeffs))
}

pub fn h_fifteen() -> IntPolynomial {
    IntPolynomial::from_i64(&[1, 7, 28, 79, 130, 79, 28, 7, 1])
}

/// Number of (k-1)-faces of C_2p, valid for 1 <= k <= (p-1)/2.
pub fn face_count_2p(p: u64, k: u64) -> Result<BigInt> {
    if !is_prime(p) || p == 2 {
        return Err(Error::invalid(format!("{p} is not an odd prime")));
    }
    if k < 1 || k > (p - 1) / 2 {
        return Err(Error::invalid(format!(
            "face formula for C_{} holds for 1 <= k <= {}, got {k}",
            2 * p,
            (p - 1) / 2
        )));
    }
    Ok(binom(p, k) * BigInt::from(2u64).pow(k as u32))
}

pub fn facet_count_2p(p: u64) -> Result<BigInt> {
    if !is_prime(p) || p == 2 {
        return Err(Error::invalid(format!("{p} is not an odd prime")));
    }
    Ok(BigInt::from(p) * binom(p - 1, (p - 1) / 2))
}

fn closed_core(s: u64) -> Option<(IntPolynomial, Provenance)> {
    if is_prime(s) {
        return Some((h_prime(s).expect("prime"), Provenance::Prime));
    }
    if s.is_multiple_of(2) && is_prime(s / 2) && s / 2 != 2 {
        return Some((h_two_p(s / 2).expect("odd prime"), Provenance::TwoP));
    }
    if s == 15 {
        return Some((h_fifteen(), Provenance::Fifteen));
    }
    None
}

fn triangulation_core(s: u64, budget: &Budget) -> Result<(IntPolynomial, usize)> {
    let v = build(s)?;
    let facets = enumerate_facets_with(&v, budget)?;
    let lattice = build_face_lattice_with(&v, &facets, budget)?;
    let order: Vec<usize> = (0..v.vertex_count()).collect();
    let tri = pulling_triangulation(&v, &lattice, &order)?;
    let bh = boundary_h_polynomial_with(&tri, v.dim(), budget)?;
    if !bh.certified {
        return Err(Error::invalid(format!(
            "the pulling triangulation of C_{s} is not unimodular, so its h-polynomial does \
             not certify the growth series"
        )));
    }
    Ok((bh.h, tri.simplices.len()))
}

fn bfs_core(s: u64, budget: &Budget) -> Result<IntPolynomial> {
    let v = build(s)?;
    let d = euler_phi(s) as usize;
    let shells = bfs_shells_with(&v, d, budget)?;
    fit_polynomial(&shells, d)
}

fn unavailable_note(s: u64, tried_pipelines: bool) -> String {
    let dec = squarefree_decompose(s).expect("s >= 2");
    let odd: Vec<u64> = dec.prime_factors.iter().map(|&(p, _)| p).filter(|p| p % 2 == 1).collect();
    if odd.len() == 3 && odd[0] == 3 && s == odd.iter().product::<u64>() {
        if let Ok(cert) = tu_failure_certificate_3pq(odd[1], odd[2]) {
            return format!(
                "A_{s} is not totally unimodular: columns {cert:?} admit no equitable signing, \
                 so neither a unimodular triangulation nor a feasible BFS certifies the \
                 coordinator polynomial at this scale"
            );
        }
    }
    if tried_pipelines {
        format!(
            "no closed form is known for the squarefree part {s}, and the triangulation and BFS \
             pipelines exceed their budgets"
        )
    } else {
        format!("no closed form applies to the squarefree part {s}")
    }
}

pub fn coordinator(m: u64, strategy: Strategy) -> Result<ClosedFormResult> {
    coordinator_with(m, strategy, &Budget::default())
}

pub fn coordinator_with(m: u64, strategy: Strategy, budget: &Budget) -> Result<ClosedFormResult> {
    let dec = squarefree_decompose(m)?;
    let s = dec.sqrt_m;
    let t = dec.power as usize;

    let core: Option<(IntPolynomial, Provenance, Option<String>)> = match strategy {
        Strategy::Closed => closed_core(s).map(|(h, p)| (h, p, None)),
        Strategy::Triangulation => {
            let (h, cells) = triangulation_core(s, budget)?;
            let note = format!("pulling triangulation of C_{s} with {cells} unimodular cells");
            Some((h, Provenance::Triangulation, Some(note)))
        }
        Strategy::Bfs => {
            let h = bfs_core(s, budget)?;
            let note = format!("fitted from the first {} shells of C_{s}", euler_phi(s) + 1);
            Some((h, Provenance::Bfs, Some(note)))
        }
        Strategy::Auto => closed_core(s)
            .map(|(h, p)| (h, p, None))
            .or_else(|| {
                triangulation_core(s, budget).ok().map(|(h, cells)| {
                    let note =
                        format!("pulling triangulation of C_{s} with {cells} unimodular cells");
                    (h, Provenance::Triangulation, Some(note))
                })
            })
            .or_else(|| {
                bfs_core(s, budget).ok().map(|h| {
                    let note = format!("fitted from the first {} shells of C_{s}", euler_phi(s) + 1);
                    (h, Provenance::Bfs, Some(note))
                })
            }),
    };

    match core {
        Some((h, core_provenance, core_note)) => {
            let provenance = if t == 1 || core_provenance == Provenance::Prime {
                core_provenance
            } else {
                Provenance::FactorPower
            };
            let note = if t == 1 {
                core_note
            } else {
                let route = core_note
                    .unwrap_or_else(|| format!("h_{s} ({})", core_provenance.as_str()));
                Some(format!("{route}, raised to the power {t}"))
            };
            let h = if t == 1 { h } else { h.pow(t as u32) };
            Ok(ClosedFormResult { m, h: Some(h), provenance, note })
        }
        None => Ok(ClosedFormResult {
            m,
            h: None,
            provenance: Provenance::Unavailable,
            note: Some(unavailable_note(s, matches!(strategy, Strategy::Auto))),
        }),
    }
}
