//! Bath configurations and discretized baths.
//!
//! Units: ħ = 1 and unit propagation velocity, so the spin splitting ω₀
//! equals the resonance wavenumber k₀ and mode frequencies equal |k|.
//! Quadrature weights are folded into the couplings as √weight, so every
//! discrete sum over modes is already a Riemann approximation of the
//! corresponding continuum integral with no extra bookkeeping.

use num_complex::Complex64;

use crate::{Error, Result};

/// Continuum bath description: dimension, coupling dispersion ε ∝ ω^ν,
/// resonance and cutoff wavenumbers, and overall coupling scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathConfig {
    /// Spatial dimension of the reservoir, 1, 2 or 3.
    pub dimension: u8,
    /// Dispersion exponent ν ≥ 0; in d = 1 the treatment requires 2ν integer.
    pub nu: f64,
    /// Resonance wavenumber; equals the spin splitting ω₀.
    pub k0: f64,
    /// Cutoff wavenumber, > k0. May be infinite where an op allows it.
    pub kc: f64,
    /// Coupling prefactor multiplying ω^ν.
    pub g: f64,
}

impl BathConfig {
    pub fn new(dimension: u8, nu: f64, k0: f64, kc: f64, g: f64) -> Result<Self> {
        let c = BathConfig {
            dimension,
            nu,
            k0,
            kc,
            g,
        };
        c.validate()?;
        Ok(c)
    }

    /// Checks every field invariant, reporting the first violation.
    pub fn validate(&self) -> Result<()> {
        if !(self.dimension >= 1 && self.dimension <= 3) {
            return Err(Error::InvalidConfig(format!(
                "dimension out of range: {} (must be 1, 2 or 3)",
                self.dimension
            )));
        }
        if !(self.nu >= 0.0) || !self.nu.is_finite() {
            return Err(Error::InvalidConfig(format!("nu must be >= 0, got {}", self.nu)));
        }
        if !(self.k0 > 0.0) || !self.k0.is_finite() {
            return Err(Error::InvalidConfig(format!("k0 must be > 0, got {}", self.k0)));
        }
        if !(self.kc > self.k0) {
            return Err(Error::InvalidConfig(format!(
                "kc <= k0 ({} <= {})",
                self.kc, self.k0
            )));
        }
        // zero coupling is allowed: it simply decouples the spins
        if !(self.g >= 0.0) || !self.g.is_finite() {
            return Err(Error::InvalidConfig(format!("g must be >= 0, got {}", self.g)));
        }
        if self.dimension == 1 {
            let two_nu = 2.0 * self.nu;
            if (two_nu - two_nu.round()).abs() > 1e-12 {
                return Err(Error::InvalidConfig(format!(
                    "2ν must be integer in d=1, got 2ν = {two_nu}"
                )));
            }
        }
        Ok(())
    }

    /// 2ν as the integer n used by the one-dimensional treatment.
    pub fn n_1d(&self) -> Result<u32> {
        let two_nu = 2.0 * self.nu;
        if (two_nu - two_nu.round()).abs() > 1e-12 || two_nu < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "2ν must be a nonnegative integer in d=1, got {two_nu}"
            )));
        }
        Ok(two_nu.round() as u32)
    }
}

/// One bath mode: frequency and the (complex) couplings at the two sites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub omega: f64,
    pub lambda_alpha: Complex64,
    pub lambda_beta: Complex64,
}

/// A finite list of modes together with the spin splitting ω₀. Immutable
/// after construction; shared freely across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteBath {
    pub omega0: f64,
    pub modes: Vec<Mode>,
}

impl DiscreteBath {
    pub fn new(omega0: f64, modes: Vec<Mode>) -> Result<Self> {
        if !(omega0 > 0.0) || !omega0.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "omega0 must be > 0, got {omega0}"
            )));
        }
        if modes.is_empty() {
            return Err(Error::InvalidConfig("bath needs at least one mode".into()));
        }
        for (i, m) in modes.iter().enumerate() {
            if !(m.omega > 0.0) || !m.omega.is_finite() {
                return Err(Error::InvalidConfig(format!(
                    "mode {i} has non-positive frequency {}",
                    m.omega
                )));
            }
        }
        Ok(DiscreteBath { omega0, modes })
    }
}

/// One point of a wave-vector quadrature grid. Only the frequency |k| and
/// the component of k along the separation axis matter for scalar couplings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    /// |k|; equals the mode frequency under unit velocity.
    pub omega: f64,
    /// k · r̂, the wave-vector component along the spin separation.
    pub k_along: f64,
    /// Quadrature weight, including all (2π)^d factors.
    pub weight: f64,
}

/// Builds the discretized plane-wave bath for spins separated by `r`:
/// λ_α = g ω^ν √w and λ_β = g ω^ν e^{i k·r} √w, so λ_α λ_β* carries the
/// phase e^{-i k·r} and weighted mode sums approximate continuum integrals.
/// ω₀ is set to k₀.
pub fn plane_wave_bath(config: &BathConfig, r: f64, k_grid: &[GridPoint]) -> Result<DiscreteBath> {
    config.validate()?;
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("separation must be >= 0, got {r}")));
    }
    if k_grid.is_empty() {
        return Err(Error::InvalidConfig("empty wave-vector grid".into()));
    }
    let mut modes = Vec::with_capacity(k_grid.len());
    for (i, p) in k_grid.iter().enumerate() {
        if !(p.omega > 0.0 && p.omega <= config.kc) {
            return Err(Error::InvalidConfig(format!(
                "grid point {i}: frequency {} outside (0, kc]",
                p.omega
            )));
        }
        if !(p.weight > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "grid point {i}: weight {} must be positive",
                p.weight
            )));
        }
        let eps = config.g * p.omega.powf(config.nu) * p.weight.sqrt();
        let phase = Complex64::new(0.0, p.k_along * r).exp();
        modes.push(Mode {
            omega: p.omega,
            lambda_alpha: Complex64::new(eps, 0.0),
            lambda_beta: eps * phase,
        });
    }
    DiscreteBath::new(config.k0, modes)
}

/// Uniform positive-k grid on [Δk, kc] with Riemann weight Δk/(2π).
pub fn uniform_grid_1d(dk: f64, kc: f64) -> Vec<GridPoint> {
    assert!(dk > 0.0 && kc > dk);
    let m = (kc / dk).floor() as usize;
    (1..=m)
        .map(|i| {
            let k = i as f64 * dk;
            GridPoint {
                omega: k,
                k_along: k,
                weight: dk / (2.0 * std::f64::consts::PI),
            }
        })
        .collect()
}

/// Symmetric ±k grid on [-kc, -Δk] ∪ [Δk, kc]; frequencies are |k|.
pub fn symmetric_grid_1d(dk: f64, kc: f64) -> Vec<GridPoint> {
    assert!(dk > 0.0 && kc > dk);
    let m = (kc / dk).floor() as usize;
    let mut grid = Vec::with_capacity(2 * m);
    for i in 1..=m {
        let k = i as f64 * dk;
        for sign in [-1.0, 1.0] {
            grid.push(GridPoint {
                omega: k,
                k_along: sign * k,
                weight: dk / (2.0 * std::f64::consts::PI),
            });
        }
    }
    grid
}

/// Spherical product grid in d = 3: uniform radial shells × Gauss–Legendre
/// nodes in cos θ (the azimuthal integral is exact for scalar couplings and
/// contributes its 2π to the weight). Radial convergence is first order in
/// Δk, which is what discrete-to-continuum ratio tests measure.
pub fn spherical_grid_3d(dk: f64, kc: f64, n_angles: usize) -> Vec<GridPoint> {
    assert!(dk > 0.0 && kc > dk && n_angles >= 2);
    let (mu, w) = crate::numerics::gauss_legendre(n_angles);
    let m = (kc / dk).floor() as usize;
    let mut grid = Vec::with_capacity(m * n_angles);
    // k² dk dμ dφ/(2π)³ with the azimuthal integral done: 2π/(2π)³ = 1/(4π²)
    let norm = 1.0 / (2.0 * std::f64::consts::PI).powi(2);
    for i in 1..=m {
        let k = i as f64 * dk;
        for (mu_j, w_j) in mu.iter().zip(w.iter()) {
            grid.push(GridPoint {
                omega: k,
                k_along: k * mu_j,
                weight: k * k * dk * w_j * norm,
            });
        }
    }
    grid
}
