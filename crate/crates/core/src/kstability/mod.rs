//! Volume curves, restricted-volume profiles and the barycenter bound.
//!
//! Curves are supplied as exact piecewise polynomials; nothing here derives
//! them from a variety.

mod poly;
mod volume;

pub use poly::{CurveFile, PieceRecord, PiecewisePolynomial, Polynomial};
pub use volume::{
    barycenter, beta, check_barycenter_bound, extremal_profile, logconcave_check, random_profile, tau_of,
    vol_from_restricted, BarycenterCheck, RestrictedVolumeProfile, VolumeCurve,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KError {
    #[error("malformed piecewise polynomial: {0}")]
    Malformed(String),
    #[error("pieces disagree at x = {at}")]
    Discontinuous { at: String },
    #[error("volume never reaches zero on the supplied domain")]
    NeverZero,
    #[error("profile has zero mass")]
    ZeroMass,
    #[error("need 0 < eta <= tau")]
    BadRange,
    #[error("invalid volume curve: {0}")]
    InvalidCurve(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("could not certify {0} within the subdivision budget")]
    Inconclusive(String),
}
