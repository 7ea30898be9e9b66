//! Frames built from operator orbits.
//!
//! The crate computes with finite truncations of structured frames: orbits
//! `{A_1^{n_1} ... A_k^{n_k} xi}` of commuting operator tuples, truncated left
//! regular representations of finitely generated commutative semigroups, and
//! the compressions that tie the two together. On top of that sit intertwiner
//! construction through commutant bases, co-invariance diagnostics for
//! analysis-operator ranges, and the space-time sampling loop that recovers a
//! state from sensor observations of its evolution.
//!
//! Modules:
//! - [`linalg`]: dense complex substrate (SVD, nullspaces, least squares,
//!   Hermitian eigensolves) shared by everything else.
//! - [`semigroup`]: semigroup descriptors, lower-set index windows, truncated
//!   shift matrices.
//! - [`frame`]: analysis/synthesis/frame operators, bounds, duals,
//!   reconstruction, range projectors, frame equivalence.
//! - [`dynamical`]: operator tuples, orbit frames, tail certificates, orbit
//!   classification, random commuting tuples.
//! - [`commutant`]: commutant bases, intertwiners, generator-equivalence
//!   experiments.
//! - [`model_space`]: compressions of the left regular representation,
//!   co-invariance and co-hyperinvariance checks, truncated convolutions,
//!   polynomial symbols and their Fejér averages.
//! - [`sampling`]: evolve-sample-recover pipeline with noise diagnostics.

use thiserror::Error;

pub mod commutant;
pub mod dynamical;
pub mod frame;
pub mod linalg;
pub mod model_space;
pub mod sampling;
pub mod semigroup;

/// Crate version string embedded in machine-readable reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An iterative kernel (SVD, eigensolver, Richardson loop) failed to
    /// converge; signals numerically pathological input.
    #[error("iterative kernel failed to converge: {0}")]
    NonConvergence(String),

    /// Input expected Hermitian deviated beyond tolerance.
    #[error("matrix is not Hermitian: relative deviation {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    /// Row/column/length mismatch between operands.
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    /// Two frames were expected to share their index window.
    #[error("frames are indexed by different windows")]
    IndexMismatch,

    /// Lower frame bound vanishes at the working tolerance.
    #[error("vector family is not a frame (bounds {lower:.3e}, {upper:.3e})")]
    NotAFrame { lower: f64, upper: f64 },

    /// Commuting-tuple invariant failed at construction.
    #[error("generators {i} and {j} do not commute: relative residual {residual:.3e}")]
    CommutationViolated { i: usize, j: usize, residual: f64 },

    /// A declared finite-order generator is not of that order.
    #[error("generator {index} is not of order {order}: residual {residual:.3e}")]
    OrderViolated { index: usize, order: u32, residual: f64 },

    /// No commutant element maps the source vector onto the target at the
    /// accepted residual.
    #[error("no intertwiner found: best residual {residual:.3e} exceeds {tolerance:.3e}")]
    IntertwinerNotFound { residual: f64, tolerance: f64 },

    /// The intertwiner route and the range-projector route disagreed; this is
    /// surfaced rather than hidden because it indicates a tolerance pathology.
    #[error("equivalence verdicts disagree: {0}")]
    InconsistentVerdicts(String),

    /// An orbit had to be certified as a frame before the operation applies.
    #[error("orbit of {which} is not a certified frame: {class}")]
    NotCertified { which: String, class: String },

    /// Malformed input: non-finite entries, bad dimensions, invalid JSON, ...
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
