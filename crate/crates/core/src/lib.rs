//! Exact-arithmetic certificates for log canonical thresholds of monomial
//! ideals, lattice-point minima in rational simplices, dimension thresholds
//! for Fano complete intersections and beta-invariant volume inequalities.
//!
//! No floating point is used on any decision path.

pub mod arith;
pub mod cache;
pub mod certificates;
pub mod cli;
pub mod kstability;
pub mod lattice;
pub mod lp;
pub mod monomial;
pub mod replication;
pub mod surface;
pub mod thresholds;
