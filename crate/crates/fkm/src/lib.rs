//! Clifford systems, the quartic polynomials they induce, and the geometry
//! of the resulting isoparametric families: exact construction and
//! verification of the algebra, focal points with their second fundamental
//! forms, curvature spectra of the intermediate levels, and the rank
//! invariants that distinguish congruence classes.
//!
//! Everything that can be checked in rational arithmetic is; floating point
//! appears only where eigenvalues of the shape operator are genuinely
//! transcendental, and every float tolerance lives in [`tol`].

pub mod error;
pub mod exact;
pub mod focal;
pub mod pipeline;
pub mod poly;
pub mod rep;
pub mod report;
pub mod sample;
pub mod scenario;
pub mod system;

pub use error::{FkmError, Result};

/// Numeric tolerances, pinned in one place.
pub mod tol {
    /// Width for grouping shape-operator eigenvalues into clusters.
    pub const EIGEN_CLUSTER: f64 = 1e-6;
    /// Agreement of clustered eigenvalues with the closed-form curvatures.
    pub const SPECTRUM_VALUE: f64 = 1e-6;
    /// Bound for float identities evaluated at double precision.
    pub const FLOAT_IDENTITY: f64 = 1e-12;
    /// Relative agreement required from finite-difference cross-checks.
    pub const FINITE_DIFF_REL: f64 = 1e-6;
    /// Levels within this distance of ±1 count as focal and are rejected
    /// by the spectrum path.
    pub const NEAR_FOCAL: f64 = 1e-6;
    /// Interval width at which the minimal-level bisection stops.
    pub const BISECTION: f64 = 1e-13;
    /// Default bound for residuals reported by the verification pipeline.
    pub const VERIFY_DEFAULT: f64 = 1e-9;
}
