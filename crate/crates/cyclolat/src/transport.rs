//! Transportation polytopes P(p,q) and their duality with C_pq.
//!
//! P(p,q) is the polytope of nonnegative p x q matrices with row sums q and
//! column sums p. Its vertices correspond to spanning trees of K_{p,q} whose
//! unique margin-satisfying edge flows are positive, and each vertex is dual
//! to a facet of C_pq: the zero entries (i,j) mark exactly the vertices
//! zeta_p^i zeta_q^j lying on the facet. Enumerating the trees therefore
//! gives an independent route to the facets found by the hull scan.

use std::collections::HashSet;

use num_bigint::BigInt;

use crate::budget::Budget;
use crate::builder::{build, is_prime, VertexMatrix};
use crate::error::{Error, Result};
use crate::exact::RatVector;
use crate::hull::{enumerate_facets_with, solve_ones, Facet};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransportVertex {
    pub p: usize,
    pub q: usize,
    /// Row-major p x q table.
    pub table: Vec<u64>,
}

impl TransportVertex {
    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.table[i * self.q + j]
    }

    pub fn support(&self) -> Vec<(usize, usize)> {
        self.cells(|v| v > 0)
    }

    pub fn zeros(&self) -> Vec<(usize, usize)> {
        self.cells(|v| v == 0)
    }

    fn cells(&self, keep: impl Fn(u64) -> bool) -> Vec<(usize, usize)> {
        (0..self.p)
            .flat_map(|i| (0..self.q).map(move |j| (i, j)))
            .filter(|&(i, j)| keep(self.entry(i, j)))
            .collect()
    }

    /// Flattened row-major entries, comma separated.
    pub fn to_csv_row(&self) -> String {
        self.table.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
    }
}

#[derive(Debug, Clone)]
pub struct TransportEnumeration {
    pub vertices: Vec<TransportVertex>,
    /// Spanning trees of K_{p,q} visited, including those whose flows go
    /// negative; always p^(q-1) * q^(p-1).
    pub tree_count: u64,
}

/// Union-find over the p+q tree nodes, with a trail for backtracking.
struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    trail: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n).collect(), size: vec![1; n], trail: Vec::new() }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.trail.push(small);
        true
    }

    fn mark(&self) -> usize {
        self.trail.len()
    }

    fn rollback(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let small = self.trail.pop().expect("trail entry");
            let big = self.parent[small];
            self.size[big] -= self.size[small];
            self.parent[small] = small;
        }
    }
}

/// Solves the unique edge flows of a spanning tree by leaf elimination and
/// returns the table when all flows are positive.
fn tree_flows(p: usize, q: usize, edges: &[(usize, usize)]) -> Option<Vec<u64>> {
    let n = p + q;
    let mut degree = vec![0usize; n];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(a, b)) in edges.iter().enumerate() {
        degree[a] += 1;
        degree[b] += 1;
        incident[a].push(e);
        incident[b].push(e);
    }
    // margins: row nodes emit q, column nodes emit p
    let mut margin: Vec<i64> = (0..n).map(|v| if v < p { q as i64 } else { p as i64 }).collect();
    let mut used = vec![false; edges.len()];
    let mut flow = vec![0i64; edges.len()];
    let mut leaves: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = edges.len();
    while remaining > 0 {
        let v = leaves.pop().expect("a tree always has a leaf");
        let Some(&e) = incident[v].iter().find(|&&e| !used[e]) else {
            continue;
        };
        used[e] = true;
        remaining -= 1;
        flow[e] = margin[v];
        let (a, b) = edges[e];
        let u = if a == v { b } else { a };
        margin[u] -= margin[v];
        margin[v] = 0;
        degree[u] -= 1;
        degree[v] -= 1;
        if degree[u] == 1 {
            leaves.push(u);
        }
    }
    if flow.iter().any(|&f| f <= 0) {
        return None;
    }
    let mut table = vec![0u64; p * q];
    for (e, &(a, b)) in edges.iter().enumerate() {
        let (i, j) = (a.min(b), a.max(b) - p);
        table[i * q + j] = flow[e] as u64;
    }
    Some(table)
}

pub fn enumerate_vertices_2d(p: u64, q: u64) -> Result<TransportEnumeration> {
    enumerate_vertices_2d_with(p, q, &Budget::default())
}

pub fn enumerate_vertices_2d_with(p: u64, q: u64, budget: &Budget) -> Result<TransportEnumeration> {
    if !is_prime(p) || !is_prime(q) || p == q {
        return Err(Error::invalid(format!("{p} and {q} must be distinct primes")));
    }
    let expected_trees = (p as u128)
        .checked_pow(q as u32 - 1)
        .and_then(|a| a.checked_mul((q as u128).pow(p as u32 - 1)));
    if expected_trees.is_none_or(|t| t > budget.transport_trees as u128) {
        return Err(Error::budget(format!(
            "K_{{{p},{q}}} has {}^{}*{}^{} spanning trees, beyond the budget of {}",
            p,
            q - 1,
            q,
            p - 1,
            budget.transport_trees
        )));
    }

    let (p, q) = (p as usize, q as usize);
    // nodes 0..p are rows, p..p+q are columns; edges in row-major order
    let edges: Vec<(usize, usize)> =
        (0..p).flat_map(|i| (0..q).map(move |j| (i, p + j))).collect();
    let needed = p + q - 1;

    struct TreeWalk<'a> {
        edges: &'a [(usize, usize)],
        needed: usize,
        p: usize,
        q: usize,
        dsu: Dsu,
        chosen: Vec<(usize, usize)>,
        tree_count: u64,
        tables: Vec<Vec<u64>>,
    }

    impl TreeWalk<'_> {
        fn walk(&mut self, idx: usize) {
            if self.chosen.len() == self.needed {
                self.tree_count += 1;
                if let Some(table) = tree_flows(self.p, self.q, &self.chosen) {
                    self.tables.push(table);
                }
                return;
            }
            if self.edges.len() - idx < self.needed - self.chosen.len() {
                return;
            }
            let (a, b) = self.edges[idx];
            let mark = self.dsu.mark();
            if self.dsu.union(a, b) {
                self.chosen.push((a, b));
                self.walk(idx + 1);
                self.chosen.pop();
                self.dsu.rollback(mark);
            }
            self.walk(idx + 1);
        }
    }

    let mut walk = TreeWalk {
        edges: &edges,
        needed,
        p,
        q,
        dsu: Dsu::new(p + q),
        chosen: Vec::with_capacity(needed),
        tree_count: 0,
        tables: Vec::new(),
    };
    walk.walk(0);
    let (tree_count, mut tables) = (walk.tree_count, walk.tables);

    let distinct: HashSet<&Vec<u64>> = tables.iter().collect();
    debug_assert_eq!(distinct.len(), tables.len(), "tree-to-vertex map must be injective");
    tables.sort();
    let vertices =
        tables.into_iter().map(|table| TransportVertex { p, q, table }).collect();
    Ok(TransportEnumeration { vertices, tree_count })
}

/// Dual facet of C_pq for a vertex of P(p,q): the zero entries (i,j) name
/// the incident vertices column(vp, i) (x) column(vq, j) in the Kronecker
/// column order i*q + j, and the facet normal is the solution of
/// normal . v = 1 over those vertices.
pub fn facet_from_vertex(
    v: &TransportVertex,
    vp: &VertexMatrix,
    vq: &VertexMatrix,
) -> Result<Facet> {
    let (d1, d2) = (vp.dim(), vq.dim());
    let dim = d1 * d2;
    let zeros = v.zeros();
    if zeros.len() != dim {
        return Err(Error::invalid(format!(
            "table has {} zeros but the dual facet needs {dim}; not a vertex",
            zeros.len()
        )));
    }
    let ep = vp.matrix.to_i64().ok_or_else(|| Error::invalid("vertex entries exceed i64"))?;
    let eq = vq.matrix.to_i64().ok_or_else(|| Error::invalid("vertex entries exceed i64"))?;
    let (np, nq) = (vp.vertex_count(), vq.vertex_count());

    let w = dim + 1;
    let mut buf = vec![0i64; dim * w];
    for (row, &(i, j)) in zeros.iter().enumerate() {
        for r1 in 0..d1 {
            for r2 in 0..d2 {
                buf[row * w + r1 * d2 + r2] = ep[r1 * np + i] * eq[r2 * nq + j];
            }
        }
        buf[row * w + dim] = 1;
    }
    let Some((y, det)) = solve_ones(&mut buf, dim) else {
        return Err(Error::invalid(
            "incident set does not span a hyperplane; not a vertex table",
        ));
    };
    let normal =
        RatVector::new(y.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(det))?;
    let incident: Vec<usize> = zeros.iter().map(|&(i, j)| i * nq + j).collect();
    Ok(Facet { normal, incident })
}

pub fn verify_duality(p: u64, q: u64) -> Result<bool> {
    verify_duality_with(p, q, &Budget::default())
}

/// True iff the vertices of P(p,q) map bijectively onto the facets of C_pq
/// with matching incident sets of size (p-1)(q-1).
pub fn verify_duality_with(p: u64, q: u64, budget: &Budget) -> Result<bool> {
    let (p, q) = (p.min(q), p.max(q));
    let enumeration = enumerate_vertices_2d_with(p, q, budget)?;
    let vp = build(p)?;
    let vq = build(q)?;
    let vpq = build(p * q)?;
    let reference = enumerate_facets_with(&vpq, budget)?;

    let expected_incident = ((p - 1) * (q - 1)) as usize;
    let mut mapped = Vec::with_capacity(enumeration.vertices.len());
    for vertex in &enumeration.vertices {
        let facet = facet_from_vertex(vertex, &vp, &vq)?;
        if facet.incident.len() != expected_incident {
            return Ok(false);
        }
        mapped.push(facet);
    }
    if mapped.len() != reference.len() {
        return Ok(false);
    }
    mapped.sort_by(|a, b| a.normal.cmp(&b.normal));
    let mut mapped_sorted = mapped;
    for (a, b) in mapped_sorted.iter_mut().zip(&reference) {
        a.incident.sort_unstable();
        if a != b {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::enumerate_facets;

    #[test]
    fn tree_counts_match_the_bipartite_cayley_formula() {
        for (p, q) in [(2u64, 3u64), (2, 5), (2, 7), (3, 5)] {
            let e = enumerate_vertices_2d(p, q).unwrap();
            let expected = p.pow(q as u32 - 1) * q.pow(p as u32 - 1);
            assert_eq!(e.tree_count, expected, "K_{{{p},{q}}}");
        }
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(enumerate_vertices_2d(2, 3).unwrap().vertices.len(), 6);
        assert_eq!(enumerate_vertices_2d(2, 5).unwrap().vertices.len(), 30);
        assert_eq!(enumerate_vertices_2d(2, 7).unwrap().vertices.len(), 140);
        assert_eq!(enumerate_vertices_2d(3, 5).unwrap().vertices.len(), 360);
    }

    #[test]
    fn vertices_have_tree_supports_and_exact_margins() {
        let e = enumerate_vertices_2d(3, 5).unwrap();
        for v in &e.vertices {
            assert_eq!(v.support().len(), 3 + 5 - 1);
            assert_eq!(v.zeros().len(), 2 * 4);
            for i in 0..3 {
                assert_eq!((0..5).map(|j| v.entry(i, j)).sum::<u64>(), 5);
            }
            for j in 0..5 {
                assert_eq!((0..3).map(|i| v.entry(i, j)).sum::<u64>(), 3);
            }
            assert!(v.table.iter().all(|&x| x <= 3));
        }
    }

    #[test]
    fn vertices_are_distinct_and_sorted() {
        let e = enumerate_vertices_2d(2, 5).unwrap();
        let tables: Vec<&Vec<u64>> = e.vertices.iter().map(|v| &v.table).collect();
        let mut sorted = tables.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(tables, sorted);
    }

    #[test]
    fn every_hexagon_vertex_maps_onto_a_real_facet() {
        let e = enumerate_vertices_2d(2, 3).unwrap();
        let vp = build(2).unwrap();
        let vq = build(3).unwrap();
        let reference = enumerate_facets(&build(6).unwrap()).unwrap();
        for v in &e.vertices {
            let facet = facet_from_vertex(v, &vp, &vq).unwrap();
            assert!(reference.contains(&facet), "mapped facet missing: {facet:?}");
        }
    }

    #[test]
    fn hexagon_facets_close_under_negation() {
        let facets = enumerate_facets(&build(6).unwrap()).unwrap();
        for f in &facets {
            let negated = RatVector::new(
                f.normal.numerators().iter().map(|x| -x).collect(),
                f.normal.denominator().clone(),
            )
            .unwrap();
            assert!(facets.iter().any(|g| g.normal == negated));
        }
    }

    #[test]
    fn duality_holds_for_small_products() {
        assert!(verify_duality(2, 3).unwrap());
        assert!(verify_duality(2, 5).unwrap());
        assert!(verify_duality(3, 5).unwrap());
        assert!(verify_duality(5, 3).unwrap());
    }

    #[test]
    fn non_vertex_tables_are_rejected() {
        let vp = build(2).unwrap();
        let vq = build(3).unwrap();
        let flat = TransportVertex { p: 2, q: 3, table: vec![1, 1, 1, 1, 1, 1] };
        assert!(facet_from_vertex(&flat, &vp, &vq).is_err());
    }

    #[test]
    fn oversized_tree_enumerations_are_rejected() {
        assert!(matches!(
            enumerate_vertices_2d(5, 7),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(enumerate_vertices_2d(4, 5).is_err());
        assert!(enumerate_vertices_2d(3, 3).is_err());
    }
}
