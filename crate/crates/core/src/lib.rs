//! Ground-state entanglement induced between two pseudospins by a common
//! bosonic bath.
//!
//! The crate computes the two-tangle (squared Wootters concurrence) that a
//! scalar bath imprints on two spatially separated two-level systems, both
//! from finite mode sums (second-order dressed-state perturbation theory,
//! cross-checked against exact diagonalization) and from the continuum mode
//! integrals in one, two and three bath dimensions. A scaling-analysis layer
//! extracts power-law exponents of tangle-vs-separation scans.
//!
//! Modules:
//! - [`model`]: bath configurations, discretized plane-wave baths
//! - [`numerics`]: special functions and quadrature kernels
//! - [`entangle`]: concurrence and tangle measures on two-qubit states
//! - [`perturb`]: dressed ground state, discrete amplitudes and tangles
//! - [`ed`]: exact diagonalization oracle on truncated Fock spaces
//! - [`continuum`]: continuum-limit amplitudes per bath dimension
//! - [`analysis`]: log-log power-law fitting and claim reports
//! - [`scan`]: separation scans (parallel by default, sequential fallback)

pub mod analysis;
pub mod continuum;
pub mod ed;
pub mod entangle;
pub mod linalg;
pub mod model;
pub mod numerics;
pub mod perturb;
pub mod scan;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A bath or run configuration violates an invariant.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    /// An argument lies outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A quadrature or extrapolation failed to reach its tolerance;
    /// carries the best estimate obtained.
    #[error("{what}: no convergence (best estimate {best_re}{best_im:+}i, error ~{abs_error_estimate:.3e}, {evaluations} evaluations)")]
    NonConvergence {
        what: String,
        best_re: f64,
        best_im: f64,
        abs_error_estimate: f64,
        evaluations: usize,
    },
    /// A density matrix failed a state invariant (hermiticity, trace,
    /// positivity) beyond tolerance.
    #[error("invalid state: {0}")]
    InvalidState(String),
    /// Requested Hilbert-space dimension exceeds the configured cap.
    #[error("Hilbert dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    /// The eigensolver did not converge.
    #[error("eigensolver: {0}")]
    Eigensolver(String),
}

pub type Result<T> = std::result::Result<T, Error>;
