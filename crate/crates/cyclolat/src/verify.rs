//! One-shot verification suite replaying the known values end to end.
//!
//! Every check records what it expected (with the fixture source id), what
//! the pipelines computed, and how long it took. Fast scope runs in seconds;
//! full scope adds the C_21 and C_30 hull pipelines.

use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;

use crate::budget::Budget;
use crate::builder::{build, euler_phi};
use crate::closed_forms::{coordinator_with, face_count_2p, h_prime, Strategy};
use crate::error::Result;
use crate::fixtures::{facet_count, table_row};
use crate::growth::{bfs_shells_with, normality_check_with};
use crate::hull::{
    boundary_h_polynomial_with, build_face_lattice_with, enumerate_facets_with, fh_vectors,
    is_reflexive, is_simplicial, pulling_triangulation, verify_lattice_points_with, Facet,
};
use crate::poly::IntPolynomial;
use crate::transport::{enumerate_vertices_2d_with, verify_duality_with};
use crate::tu::{tu_failure_certificate_3pq, verdict_for_modulus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Fast,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub m: Option<u64>,
    pub expected: String,
    pub computed: String,
    pub status: CheckStatus,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub scope: Scope,
    pub records: Vec<CheckRecord>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let status = match r.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
            };
            out.push_str(&format!(
                "{status} {:<28} expected {} | computed {} | {} ms\n",
                r.id, r.expected, r.computed, r.elapsed_ms
            ));
        }
        let overall = if self.pass { "pass" } else { "FAIL" };
        out.push_str(&format!(
            "{} checks, {} failed: {overall}\n",
            self.records.len(),
            self.records.iter().filter(|r| r.status == CheckStatus::Fail).count()
        ));
        out
    }
}

struct Runner {
    budget: Budget,
    records: Vec<CheckRecord>,
}

impl Runner {
    /// Runs one check: computed must equal `expected` exactly. The stored
    /// expectation is annotated with the fixture source when one applies.
    fn check(
        &mut self,
        id: &str,
        m: Option<u64>,
        expected: &str,
        source: Option<&str>,
        compute: impl FnOnce(&Budget) -> Result<String>,
    ) {
        let start = Instant::now();
        let computed = compute(&self.budget).unwrap_or_else(|e| format!("error: {e}"));
        let status = if computed == expected { CheckStatus::Pass } else { CheckStatus::Fail };
        let expected = match source {
            Some(s) => format!("{expected} ({s})"),
            None => expected.to_string(),
        };
        self.records.push(CheckRecord {
            id: id.to_string(),
            m,
            expected,
            computed,
            status,
            elapsed_ms: start.elapsed().as_millis(),
        });
    }
}

fn poly_str(h: &IntPolynomial) -> String {
    format!("{:?}", h.coeffs())
}

fn table_checks(r: &mut Runner, scope: Scope) {
    let mut rows: Vec<u64> = vec![6, 10, 12, 14, 15, 18, 20, 22, 24, 28, 36, 40];
    if scope == Scope::Full {
        rows.push(21);
        rows.push(30);
    }
    rows.sort_unstable();
    for m in rows {
        let row = table_row(m).expect("fixture row");
        let expected = poly_str(&row.polynomial());
        r.check(&format!("table:m={m}"), Some(m), &expected, Some(&row.source), |b| {
            let res = coordinator_with(m, Strategy::Auto, b)?;
            Ok(res.h.map_or_else(|| "unavailable".to_string(), |h| poly_str(&h)))
        });
    }

    let primes: Vec<u64> = (2..=41).filter(|&n| crate::builder::is_prime(n)).collect();
    let expected = format!("{} all-ones rows", primes.len());
    r.check("table:primes<=41", None, &expected, None, |b| {
        let mut good = 0;
        for &p in &primes {
            let res = coordinator_with(p, Strategy::Auto, b)?;
            if res.h.as_ref() == Some(&h_prime(p)?) {
                good += 1;
            }
        }
        Ok(format!("{good} all-ones rows"))
    });

    let prime_powers: Vec<(u64, u64, u32)> =
        vec![(4, 2, 2), (8, 2, 4), (16, 2, 8), (32, 2, 16), (9, 3, 3), (27, 3, 9), (25, 5, 5)];
    let expected = format!("{} prime-power rows", prime_powers.len());
    r.check("table:prime-powers<=41", None, &expected, None, |b| {
        let mut good = 0;
        for &(m, p, t) in &prime_powers {
            let res = coordinator_with(m, Strategy::Auto, b)?;
            if res.h.as_ref() == Some(&h_prime(p)?.pow(t)) {
                good += 1;
            }
        }
        Ok(format!("{good} prime-power rows"))
    });
}

fn pipeline_checks(r: &mut Runner) {
    for m in [6u64, 10, 12, 14, 15] {
        r.check(&format!("pipelines:m={m}"), Some(m), "three identical polynomials", None, |b| {
            let closed = coordinator_with(m, Strategy::Closed, b)?.h;
            let tri = coordinator_with(m, Strategy::Triangulation, b)?.h;
            let bfs = coordinator_with(m, Strategy::Bfs, b)?.h;
            if closed.is_some() && closed == tri && tri == bfs {
                Ok("three identical polynomials".to_string())
            } else {
                Ok(format!("closed {closed:?}, triangulation {tri:?}, bfs {bfs:?}"))
            }
        });
    }
}

fn shell_checks(r: &mut Runner) {
    for (m, max_n) in [(6u64, 8usize), (10, 6), (12, 5), (15, 4), (30, 3)] {
        let row = table_row(m).expect("fixture row");
        let d = euler_phi(m) as usize;
        let series = row.polynomial().series_coeffs(d, max_n).expect("series");
        let expected = format!("{series:?}");
        r.check(&format!("shells:m={m}"), Some(m), &expected, Some(&row.source), |b| {
            let shells = bfs_shells_with(&build(m)?, max_n, b)?;
            Ok(format!("{:?}", shells.counts))
        });
    }
}

fn facet_checks(r: &mut Runner, scope: Scope) {
    let mut cases: Vec<u64> = vec![6, 10, 14, 15];
    if scope == Scope::Full {
        cases.push(21);
        cases.push(30);
    }
    for m in cases {
        let fixture = facet_count(m).expect("facet fixture");
        let expected = fixture.count.to_string();
        r.check(&format!("facets:m={m}"), Some(m), &expected, Some(&fixture.source), |b| {
            Ok(enumerate_facets_with(&build(m)?, b)?.len().to_string())
        });
    }
    if scope == Scope::Full {
        let split = &crate::fixtures::fixtures().c30_facet_split;
        let expected = format!("{} simplicial + {} ten-vertex", split.simplicial, split.ten_vertex);
        r.check("facets:m=30-split", Some(30), &expected, Some(&split.source), |b| {
            let facets = enumerate_facets_with(&build(30)?, b)?;
            let simplicial = facets.iter().filter(|f| f.incident.len() == 8).count();
            let ten = facets.iter().filter(|f| f.incident.len() == 10).count();
            Ok(format!("{simplicial} simplicial + {ten} ten-vertex"))
        });
    }
}

fn face_formula_checks(r: &mut Runner) {
    for p in [3u64, 5, 7] {
        let half = (p - 1) / 2;
        let expected: Vec<BigInt> =
            (1..=half).map(|k| face_count_2p(p, k).expect("in range")).collect();
        let expected = format!("{expected:?}");
        r.check(
            &format!("faces2p:p={p}"),
            Some(2 * p),
            &expected,
            Some("two-p-face-formula"),
            |b| {
                let v = build(2 * p)?;
                let facets = enumerate_facets_with(&v, b)?;
                let lattice = build_face_lattice_with(&v, &facets, b)?;
                let fh = fh_vectors(&lattice, v.dim())?;
                let got: Vec<BigInt> = (1..=half as usize).map(|k| fh.f[k].clone()).collect();
                Ok(format!("{got:?}"))
            },
        );
    }
}

fn tu_checks(r: &mut Runner) {
    for m in [6u64, 10, 12, 15, 20, 30] {
        r.check(&format!("tu:m={m}"), Some(m), "totally unimodular", None, |b| {
            let verdict = verdict_for_modulus(m, b)?;
            Ok(if verdict.is_tu {
                "totally unimodular".to_string()
            } else {
                format!("witness {:?}", verdict.witness)
            })
        });
    }
    r.check(
        "tu:certificate-105",
        Some(105),
        "columns [69, 76, 98] admit no split",
        None,
        |_| {
            let cert = tu_failure_certificate_3pq(5, 7)?;
            Ok(format!("columns {cert:?} admit no split"))
        },
    );
}

fn triangulation_pipeline(
    m: u64,
    budget: &Budget,
) -> Result<(Vec<Facet>, usize, IntPolynomial, bool)> {
    let v = build(m)?;
    let facets = enumerate_facets_with(&v, budget)?;
    let lattice = build_face_lattice_with(&v, &facets, budget)?;
    let order: Vec<usize> = (0..v.vertex_count()).collect();
    let tri = pulling_triangulation(&v, &lattice, &order)?;
    let bh = boundary_h_polynomial_with(&tri, v.dim(), budget)?;
    Ok((facets, tri.simplices.len(), bh.h, bh.certified))
}

fn unimodularity_checks(r: &mut Runner, scope: Scope) {
    let mut cases: Vec<u64> = vec![6, 10, 12, 15, 20];
    if scope == Scope::Full {
        cases.push(30);
    }
    for m in cases {
        r.check(&format!("unimodular:m={m}"), Some(m), "all cone simplices have det +-1", None, |b| {
            let (_, _, _, certified) = triangulation_pipeline(m, b)?;
            Ok(if certified {
                "all cone simplices have det +-1".to_string()
            } else {
                "non-unimodular cell found".to_string()
            })
        });
    }
}

fn structure_checks(r: &mut Runner, scope: Scope) {
    for m in [6u64, 10, 12, 15, 20] {
        let row = table_row(m).expect("fixture row");
        let facets_expected = row.polynomial().eval_one();
        let expected = format!("simplicial, palindromic, reflexive, h(1) = {facets_expected}");
        r.check(&format!("structure:m={m}"), Some(m), &expected, Some(&row.source), |b| {
            let v = build(m)?;
            let facets = enumerate_facets_with(&v, b)?;
            let lattice = build_face_lattice_with(&v, &facets, b)?;
            let fh = fh_vectors(&lattice, v.dim())?;
            let simplicial = is_simplicial(&facets, v.dim());
            let palindromic = fh.h.is_palindromic();
            let reflexive = is_reflexive(&facets);
            let h_one = fh.h.eval_one();
            if simplicial && palindromic && reflexive && h_one == BigInt::from(facets.len()) {
                Ok(format!("simplicial, palindromic, reflexive, h(1) = {h_one}"))
            } else {
                Ok(format!(
                    "simplicial={simplicial}, palindromic={palindromic}, \
                     reflexive={reflexive}, h(1)={h_one}, facets={}",
                    facets.len()
                ))
            }
        });
    }
    if scope == Scope::Full {
        let row = table_row(30).expect("fixture row");
        let expected = "palindromic, reflexive, h(1) = 3690 = cells".to_string();
        r.check("structure:m=30", Some(30), &expected, Some(&row.source), |b| {
            let (facets, cells, h, _) = triangulation_pipeline(30, b)?;
            let ok = h.is_palindromic()
                && is_reflexive(&facets)
                && h.eval_one() == BigInt::from(3690)
                && cells == 3690;
            Ok(if ok {
                expected_structure_30()
            } else {
                format!(
                    "palindromic={}, reflexive={}, h(1)={}, cells={cells}",
                    h.is_palindromic(),
                    is_reflexive(&facets),
                    h.eval_one()
                )
            })
        });
    }

    let lattice_point_cases: Vec<u64> = vec![2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 14, 15, 16, 18, 20];
    let expected = format!("{} polytopes contain only their vertices and 0", lattice_point_cases.len());
    r.check("lattice-points:phi<=10", None, &expected, None, |b| {
        let mut good = 0;
        for &m in &lattice_point_cases {
            let v = build(m)?;
            let facets = enumerate_facets_with(&v, b)?;
            if verify_lattice_points_with(&v, &facets, b)? {
                good += 1;
            }
        }
        Ok(format!("{good} polytopes contain only their vertices and 0"))
    });
}

fn expected_structure_30() -> String {
    "palindromic, reflexive, h(1) = 3690 = cells".to_string()
}

fn duality_checks(r: &mut Runner) {
    for (p, q) in [(2u64, 3u64), (2, 5), (2, 7), (3, 5)] {
        let incident = (p - 1) * (q - 1);
        let expected = format!("bijection, every facet on {incident} vertices");
        r.check(&format!("dual:{p}x{q}"), Some(p * q), &expected, None, |b| {
            Ok(if verify_duality_with(p, q, b)? {
                format!("bijection, every facet on {incident} vertices")
            } else {
                "mismatch".to_string()
            })
        });
    }
    r.check("dual:3x5-census", Some(15), "360 vertices from 2025 trees", None, |b| {
        let e = enumerate_vertices_2d_with(3, 5, b)?;
        Ok(format!("{} vertices from {} trees", e.vertices.len(), e.tree_count))
    });
}

fn normality_checks(r: &mut Runner) {
    for m in [6u64, 10, 12] {
        r.check(&format!("normality:m={m}"), Some(m), "balls match dilates up to k=3", None, |b| {
            let v = build(m)?;
            let facets = enumerate_facets_with(&v, b)?;
            Ok(if normality_check_with(&v, &facets, 3, b)? {
                "balls match dilates up to k=3".to_string()
            } else {
                "mismatch".to_string()
            })
        });
    }
}

pub fn run(scope: Scope) -> VerificationReport {
    run_with(scope, Budget::default())
}

pub fn run_with(scope: Scope, budget: Budget) -> VerificationReport {
    let mut r = Runner { budget, records: Vec::new() };
    table_checks(&mut r, scope);
    pipeline_checks(&mut r);
    shell_checks(&mut r);
    facet_checks(&mut r, scope);
    face_formula_checks(&mut r);
    tu_checks(&mut r);
    unimodularity_checks(&mut r, scope);
    structure_checks(&mut r, scope);
    duality_checks(&mut r);
    normality_checks(&mut r);
    let pass = r.records.iter().all(|rec| rec.status == CheckStatus::Pass);
    VerificationReport { scope, records: r.records, pass }
}
