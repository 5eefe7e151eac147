//! Special functions and quadrature kernels for the continuum mode integrals:
//! J₀, Si, Ci, adaptive Gauss–Kronrod quadrature, lobe-partitioned oscillatory
//! quadrature with series acceleration, and regulated principal-value
//! integrals on the half line.

mod oscillatory;
mod pv;
mod quad;
mod special;

pub use oscillatory::integrate_oscillatory;
pub use pv::integrate_pv_regulated;
pub use quad::{
    gauss_legendre, integrate_adaptive, integrate_adaptive_complex, integrate_piecewise,
};
pub use special::{bessel_j0, cos_integral, j0_zero, sin_integral, EULER_GAMMA};

use num_complex::Complex64;

/// Outcome of a quadrature: the value, a conservative absolute error
/// estimate, and the number of integrand evaluations spent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

/// Complex-valued quadrature outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CQuadResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}
