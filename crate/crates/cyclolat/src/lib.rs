//! Exact arithmetic for cyclotomic polytopes and the growth series of
//! cyclotomic lattices.
//!
//! The lattice Z[zeta_m] of integer linear combinations of m-th roots of
//! unity has a rational growth series whose numerator, the coordinator
//! polynomial, this crate computes along three mutually independent routes:
//! closed forms for the known families, the h-polynomial of a pulling
//! triangulation of the boundary of the cyclotomic polytope C_m, and a
//! breadth-first walk of the lattice itself. Everything is integer-exact;
//! there is no floating point anywhere.

pub mod budget;
pub mod builder;
pub mod closed_forms;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod growth;
pub mod hull;
pub mod transport;
pub mod poly;
pub mod tu;
pub mod verify;

pub use error::{Error, Result};
