//! Golden fixtures: the published coordinator polynomials for m <= 41 and
//! the known facet counts. These are reference data for verification only;
//! no computing pipeline reads them, which keeps the cross-checks
//! non-circular. Every entry carries a source id so a failing check can name
//! the fixture it disagreed with.

use std::sync::OnceLock;

use serde::Deserialize;

use crate::poly::IntPolynomial;

#[derive(Debug, Clone, Deserialize)]
pub struct CoordinatorRow {
    pub m: u64,
    pub coefficients: Vec<i64>,
    pub source: String,
}

impl CoordinatorRow {
    pub fn polynomial(&self) -> IntPolynomial {
        IntPolynomial::from_i64(&self.coefficients)
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct FacetCount {
    pub m: u64,
    pub count: u64,
    pub source: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct C30FacetSplit {
    pub simplicial: u64,
    pub ten_vertex: u64,
    pub source: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Fixtures {
    pub coordinator_rows: Vec<CoordinatorRow>,
    pub facet_counts: Vec<FacetCount>,
    pub c30_facet_split: C30FacetSplit,
}

const FIXTURE_DATA: &str = include_str!("../data/fixtures.json");

pub fn fixtures() -> &'static Fixtures {
    static CELL: OnceLock<Fixtures> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str(FIXTURE_DATA).expect("fixture data parses"))
}

pub fn table_row(m: u64) -> Option<&'static CoordinatorRow> {
    fixtures().coordinator_rows.iter().find(|r| r.m == m)
}

pub fn facet_count(m: u64) -> Option<&'static FacetCount> {
    fixtures().facet_counts.iter().find(|r| r.m == m)
}
