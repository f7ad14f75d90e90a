//! Acceptance gate: one test per criterion, each printing a single
//! pass line. Every expected value is a frozen literal or a fixture row;
//! nothing is recomputed from the code under test.

use std::sync::OnceLock;

use num_bigint::BigInt;

use cyclolat::budget::Budget;
use cyclolat::builder::{build, euler_phi};
use cyclolat::closed_forms::{
    coordinator, face_count_2p, facet_count_2p, h_prime, Provenance, Strategy,
};
use cyclolat::fixtures::{facet_count, fixtures, table_row};
use cyclolat::growth::{bfs_shells, normality_check};
use cyclolat::hull::{
    boundary_h_polynomial, build_face_lattice, enumerate_facets, fh_vectors, is_reflexive,
    is_simplicial, pulling_triangulation, verify_lattice_points, Facet,
};
use cyclolat::poly::IntPolynomial;
use cyclolat::transport::{enumerate_vertices_2d, verify_duality};
use cyclolat::tu::{tu_failure_certificate_3pq, verdict_for_modulus};

struct Pipeline {
    facets: Vec<Facet>,
    cells: usize,
    h: IntPolynomial,
    certified: bool,
}

fn run_pipeline(m: u64) -> Pipeline {
    let v = build(m).unwrap();
    let facets = enumerate_facets(&v).unwrap();
    let lattice = build_face_lattice(&v, &facets).unwrap();
    let order: Vec<usize> = (0..v.vertex_count()).collect();
    let tri = pulling_triangulation(&v, &lattice, &order).unwrap();
    let bh = boundary_h_polynomial(&tri, v.dim()).unwrap();
    Pipeline { facets, cells: tri.simplices.len(), h: bh.h, certified: bh.certified }
}

fn c30() -> &'static Pipeline {
    static C30: OnceLock<Pipeline> = OnceLock::new();
    C30.get_or_init(|| run_pipeline(30))
}

#[test]
fn criterion_1_coordinator_matches_table() {
    for m in [6u64, 10, 12, 14, 15, 18, 20, 21, 22, 24, 28, 30, 36, 40] {
        let row = table_row(m).unwrap();
        let res = coordinator(m, Strategy::Auto).unwrap();
        assert_eq!(res.h, Some(row.polynomial()), "table row mismatch at m={m}");
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let res = coordinator(p, Strategy::Auto).unwrap();
        assert_eq!(res.h, Some(h_prime(p).unwrap()), "prime row mismatch at p={p}");
        assert_eq!(res.provenance, Provenance::Prime);
    }
    for (m, p) in [(4u64, 2u64), (8, 2), (9, 3), (16, 2), (25, 5), (27, 3), (32, 2)] {
        let res = coordinator(m, Strategy::Auto).unwrap();
        let expected = h_prime(p).unwrap().pow((m / p) as u32);
        assert_eq!(res.h, Some(expected), "prime power row mismatch at m={m}");
        assert_eq!(res.provenance, Provenance::Prime);
    }
    println!("criterion 1 (coordinator polynomials match the table): pass");
}

#[test]
fn criterion_2_pipelines_agree() {
    for m in [6u64, 10, 12, 14, 15] {
        let closed = coordinator(m, Strategy::Closed).unwrap().h;
        let tri = coordinator(m, Strategy::Triangulation).unwrap().h;
        let bfs = coordinator(m, Strategy::Bfs).unwrap().h;
        assert!(closed.is_some(), "closed form missing at m={m}");
        assert_eq!(closed, tri, "closed and triangulation disagree at m={m}");
        assert_eq!(tri, bfs, "triangulation and bfs disagree at m={m}");
    }
    println!("criterion 2 (closed, triangulation and bfs pipelines agree): pass");
}

#[test]
fn criterion_3_bfs_shells_match_series() {
    for (m, max_n) in [(6u64, 8usize), (10, 6), (12, 5), (15, 4), (30, 3)] {
        let d = euler_phi(m) as usize;
        let series = table_row(m).unwrap().polynomial().series_coeffs(d, max_n).unwrap();
        let shells = bfs_shells(&build(m).unwrap(), max_n).unwrap();
        let counts: Vec<BigInt> = shells.counts.iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(counts, series, "shell counts disagree with the series at m={m}");
    }
    println!("criterion 3 (bfs shells match the series expansion): pass");
}

#[test]
fn criterion_4_facet_censuses() {
    for m in [10u64, 14, 15] {
        let expected = facet_count(m).unwrap().count as usize;
        let facets = enumerate_facets(&build(m).unwrap()).unwrap();
        assert_eq!(facets.len(), expected, "facet count mismatch at m={m}");
    }
    let c30 = c30();
    assert_eq!(c30.facets.len(), 810, "C_30 facet count");
    let simplicial = c30.facets.iter().filter(|f| f.incident.len() == 8).count();
    let ten = c30.facets.iter().filter(|f| f.incident.len() == 10).count();
    let split = &fixtures().c30_facet_split;
    assert_eq!(simplicial as u64, split.simplicial, "C_30 simplicial facets");
    assert_eq!(ten as u64, split.ten_vertex, "C_30 ten-vertex facets");
    for p in [3u64, 5, 7] {
        let expected = facet_count_2p(p).unwrap();
        let facets = enumerate_facets(&build(2 * p).unwrap()).unwrap();
        assert_eq!(BigInt::from(facets.len()), expected, "2p facet formula at p={p}");
    }
    println!("criterion 4 (facet censuses match the known counts): pass");
}

#[test]
fn criterion_5_face_counts_2p() {
    for p in [3u64, 5, 7] {
        let v = build(2 * p).unwrap();
        let facets = enumerate_facets(&v).unwrap();
        let lattice = build_face_lattice(&v, &facets).unwrap();
        let fh = fh_vectors(&lattice, v.dim()).unwrap();
        for k in 1..=(p - 1) / 2 {
            assert_eq!(
                fh.f[k as usize],
                face_count_2p(p, k).unwrap(),
                "face count mismatch at p={p}, k={k}"
            );
        }
    }
    println!("criterion 5 (low faces of C_2p follow the binomial formula): pass");
}

#[test]
fn criterion_6_total_unimodularity() {
    let budget = Budget::default();
    for m in [6u64, 10, 12, 15, 20, 30] {
        let verdict = verdict_for_modulus(m, &budget).unwrap();
        assert!(verdict.is_tu, "A_{m} should be totally unimodular");
    }
    let cert = tu_failure_certificate_3pq(5, 7).unwrap();
    assert_eq!(cert, [69, 76, 98], "certificate columns for m=105");
    for m in [6u64, 10, 12, 15, 20] {
        assert!(run_pipeline(m).certified, "pulling triangulation of C_{m} not unimodular");
    }
    assert!(c30().certified, "pulling triangulation of C_30 not unimodular");
    println!("criterion 6 (total unimodularity and unimodular triangulations): pass");
}

#[test]
fn criterion_7_structure() {
    for m in [6u64, 10, 12, 15, 20] {
        let v = build(m).unwrap();
        let facets = enumerate_facets(&v).unwrap();
        let lattice = build_face_lattice(&v, &facets).unwrap();
        let fh = fh_vectors(&lattice, v.dim()).unwrap();
        assert!(is_simplicial(&facets, v.dim()), "C_{m} should be simplicial");
        assert!(fh.h.is_palindromic(), "h of C_{m} should be palindromic");
        assert!(is_reflexive(&facets), "C_{m} should be reflexive");
        assert_eq!(fh.h.eval_one(), BigInt::from(facets.len()), "h(1) vs facets at m={m}");
    }
    let c30 = c30();
    assert!(c30.h.is_palindromic(), "h of C_30 should be palindromic");
    assert!(is_reflexive(&c30.facets), "C_30 should be reflexive");
    assert_eq!(c30.h.eval_one(), BigInt::from(3690), "h_30(1)");
    assert_eq!(c30.cells, 3690, "C_30 triangulation cell count");
    for m in [2u64, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 14, 15, 16, 18, 20] {
        let v = build(m).unwrap();
        let facets = enumerate_facets(&v).unwrap();
        assert!(
            verify_lattice_points(&v, &facets).unwrap(),
            "C_{m} should contain only its vertices and the origin"
        );
    }
    println!("criterion 7 (palindromy, reflexivity and lattice point censuses): pass");
}

#[test]
fn criterion_8_transport_duality() {
    for (p, q) in [(2u64, 3u64), (2, 5), (2, 7), (3, 5)] {
        assert!(verify_duality(p, q).unwrap(), "duality fails for P({p},{q})");
    }
    let e = enumerate_vertices_2d(3, 5).unwrap();
    assert_eq!(e.vertices.len(), 360, "P(3,5) vertex count");
    assert_eq!(e.tree_count, 2025, "spanning trees of K_{{3,5}}");
    println!("criterion 8 (transportation polytopes are dual to C_pq): pass");
}

#[test]
fn criterion_9_normality() {
    for m in [6u64, 10, 12] {
        let v = build(m).unwrap();
        let facets = enumerate_facets(&v).unwrap();
        assert!(normality_check(&v, &facets, 3).unwrap(), "normality fails at m={m}");
    }
    println!("criterion 9 (dilates are covered by ball prefixes up to k=3): pass");
}
