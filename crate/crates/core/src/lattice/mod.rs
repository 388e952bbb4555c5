//! Lattice points in simplices, Pick certificates and σ minima.

pub mod pick;
pub mod sigma;
pub mod simplex;

use thiserror::Error;

pub use pick::{pick_certificate, LatticePolygon, PickCertificate};
pub use sigma::{
    best_lower_bound, pick2d_polygon_family_min, sigma_exact_2d, sigma_lower_bound, sigma_upper_search, BoundMethod,
    Exactness, SigmaBound, SigmaRecord, SigmaResult, Witness,
};
pub use simplex::{count_simplex, scan_simplex, SimplexScan, SimplexSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("covector must have at least one entry")]
    EmptyDimension,
    #[error("entry {coordinate} of the covector is not positive; the simplex is unbounded")]
    Unbounded { coordinate: usize },
    #[error("a lattice point on the hyperplane has a coordinate beyond u64")]
    CoordinateOverflow,
    #[error("a polygon needs at least three vertices")]
    TooFewVertices,
    #[error("polygon is not simple")]
    NotSimple,
    #[error(
        "Pick count disagrees with scan: interior {pick_interior} vs {scanned_interior}, boundary {pick_boundary} vs {scanned_boundary}"
    )]
    PickMismatch { pick_interior: u64, scanned_interior: u64, pick_boundary: u64, scanned_boundary: u64 },
    #[error("method inapplicable: {0}")]
    MethodInapplicable(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("bad argument: {0}")]
    BadArgument(String),
}
