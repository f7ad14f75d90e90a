//! Resource budgets for the expensive pipelines.
//!
//! The point-like budgets (visited BFS points, face-lattice size, dilate grid
//! size, spanning-tree count) can be overridden in one go through the
//! `CYCLOLAT_BUDGET` environment variable or per command with
//! `--budget-points`. The dimensional guards are fixed: they bound subset-scan
//! cost and keep every internal i64 determinant inside the Hadamard overflow
//! margin.

/// Budgets enforced before and during the expensive computations.
#[derive(Debug, Clone)]
pub struct Budget {
    /// Maximum number of distinct lattice points the BFS may visit.
    pub bfs_points: usize,
    /// Maximum number of faces the intersection closure may produce.
    pub face_count: usize,
    /// Maximum number of grid points a dilate count may scan.
    pub dilate_points: u64,
    /// Maximum number of spanning trees a transportation enumeration may visit.
    pub transport_trees: u64,
    /// Total unimodularity scan: largest submatrix order checked.
    pub tu_max_rank: usize,
    /// Total unimodularity scan: widest matrix accepted.
    pub tu_max_cols: usize,
    /// Facet enumeration: largest ambient dimension accepted.
    pub hull_max_dim: usize,
    /// Facet enumeration: largest vertex count accepted.
    pub hull_max_vertices: usize,
    /// Lattice-point verification enumerates 3^dim candidates; cap on dim.
    pub lattice_points_max_dim: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            bfs_points: 20_000_000,
            face_count: 10_000_000,
            dilate_points: 20_000_000,
            transport_trees: 10_000_000,
            tu_max_rank: 8,
            tu_max_cols: 30,
            hull_max_dim: 12,
            hull_max_vertices: 35,
            lattice_points_max_dim: 10,
        }
    }
}

/// Name of the environment variable holding a global point-budget override.
pub const BUDGET_ENV: &str = "CYCLOLAT_BUDGET";

impl Budget {
    /// Default budget with the point-like limits replaced by `points`.
    pub fn with_points(points: u64) -> Self {
        Budget {
            bfs_points: points as usize,
            face_count: points as usize,
            dilate_points: points,
            transport_trees: points,
            ..Budget::default()
        }
    }

    /// Default budget, honoring a `CYCLOLAT_BUDGET` override when present.
    ///
    /// A malformed value is ignored rather than fatal: budgets guard
    /// resources, they do not gate correctness.
    pub fn from_env() -> Self {
        match std::env::var(BUDGET_ENV).ok().and_then(|s| s.parse::<u64>().ok()) {
            Some(points) => Budget::with_points(points),
            None => Budget::default(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn with_points_overrides_point_budgets_only() {
        let b = Budget::with_points(1000);
        assert_eq!(b.bfs_points, 1000);
        assert_eq!(b.face_count, 1000);
        assert_eq!(b.dilate_points, 1000);
        assert_eq!(b.transport_trees, 1000);
        assert_eq!(b.tu_max_rank, Budget::default().tu_max_rank);
        assert_eq!(b.hull_max_dim, Budget::default().hull_max_dim);
    }
}
