//! Second-order dressed-state perturbation theory for a discrete bath.
//!
//! The unperturbed ground state |gg, 0⟩ has energy E₀ = −ω₀. Expanding the
//! closed-form recursion for the dressed state to second order gives, with
//! D_k = ω₀ + ω_k and raw coefficients relative to a unit |gg, 0⟩ amplitude:
//!
//!   c_eg,k  = −λ_k*(r_α) / D_k
//!   c_ge,k  = −λ_k*(r_β) / D_k
//!   c_ee    = Σ_k Re[λ_k(r_α) λ_k*(r_β)] / (ω₀ D_k)
//!   c_xx,kk' (two-photon pairs) from one more application of the recursion
//!
//! The normalization coefficient c_gg is chosen real positive. Pair
//! coefficients are stored once per ordered pair k ≤ k' in the symmetric
//! ½-double-count convention, whose squared-norm contribution is
//! Σ_{k<k'} |c|² + ½ Σ_k |c_kk|².

use num_complex::Complex64;

use crate::entangle::DensityMatrix4;
use crate::model::DiscreteBath;
use crate::{Error, Result};

/// Dressed ground state to second order. `c_eg`, `c_ge`, `c_ee`, `c_gg2`,
/// `c_ee2` are raw expansion coefficients relative to the bare |gg, 0⟩
/// amplitude; `norm2` is the squared norm of that expansion and
/// `c_gg = 1/√norm2` normalizes it.
#[derive(Debug, Clone)]
pub struct DressedState2 {
    pub c_gg: f64,
    pub c_ee: Complex64,
    pub c_eg: Vec<Complex64>,
    pub c_ge: Vec<Complex64>,
    /// Symmetric pair coefficients for |gg⟩|1_k 1_k'⟩, ordered pairs k ≤ k'.
    pub c_gg2: PairCoefficients,
    /// Symmetric pair coefficients for |ee⟩|1_k 1_k'⟩, ordered pairs k ≤ k'.
    pub c_ee2: PairCoefficients,
    pub norm2: f64,
}

/// Upper-triangle storage for symmetric mode-pair coefficients.
#[derive(Debug, Clone)]
pub struct PairCoefficients {
    n: usize,
    data: Vec<Complex64>,
}

impl PairCoefficients {
    fn zeros(n: usize) -> Self {
        PairCoefficients {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * (n + 1) / 2],
        }
    }

    fn idx(&self, k: usize, kp: usize) -> usize {
        debug_assert!(k <= kp && kp < self.n);
        k * self.n - k * (k + 1) / 2 + kp
    }

    /// Coefficient for the unordered pair {k, k'}.
    pub fn get(&self, k: usize, kp: usize) -> Complex64 {
        let (a, b) = if k <= kp { (k, kp) } else { (kp, k) };
        self.data[self.idx(a, b)]
    }

    fn set(&mut self, k: usize, kp: usize, v: Complex64) {
        let i = self.idx(k, kp);
        self.data[i] = v;
    }

    /// Squared-norm contribution in the ½-double-count convention:
    /// Σ_{k<k'} |c|² + ½ Σ_k |c_kk|².
    pub fn norm_sq(&self) -> f64 {
        let mut s = 0.0;
        for k in 0..self.n {
            for kp in k..self.n {
                let w = if k == kp { 0.5 } else { 1.0 };
                s += w * self.data[self.idx(k, kp)].norm_sqr();
            }
        }
        s
    }

    /// Pair-weighted inner product Σ_{k<k'} a b* + ½ Σ_k a_kk b_kk*.
    fn dot(&self, other: &PairCoefficients) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for k in 0..self.n {
            for kp in k..self.n {
                let w = if k == kp { 0.5 } else { 1.0 };
                let i = self.idx(k, kp);
                s += w * self.data[i] * other.data[i].conj();
            }
        }
        s
    }
}

/// Expands the dressed-state recursion to second order.
pub fn dressed_state(bath: &DiscreteBath) -> Result<DressedState2> {
    let n = bath.modes.len();
    let omega0 = bath.omega0;
    let mut c_eg = Vec::with_capacity(n);
    let mut c_ge = Vec::with_capacity(n);
    for m in &bath.modes {
        let d = omega0 + m.omega;
        c_eg.push(-m.lambda_alpha.conj() / d);
        c_ge.push(-m.lambda_beta.conj() / d);
    }

    // c_ee = Re(A)/ω₀ with A the mode sum of λ_α λ_β*/D
    let c_ee = Complex64::new(discrete_amplitude(bath).re / omega0, 0.0);

    let mut c_gg2 = PairCoefficients::zeros(n);
    let mut c_ee2 = PairCoefficients::zeros(n);
    for k in 0..n {
        let mk = &bath.modes[k];
        let dk = omega0 + mk.omega;
        for kp in k..n {
            let mkp = &bath.modes[kp];
            let dkp = omega0 + mkp.omega;
            let dsum = 1.0 / dk + 1.0 / dkp;
            let la_k = mk.lambda_alpha.conj();
            let lb_k = mk.lambda_beta.conj();
            let la_kp = mkp.lambda_alpha.conj();
            let lb_kp = mkp.lambda_beta.conj();
            // |gg⟩|1_k 1_k'⟩: intermediate one-photon states, energy ω_k + ω_k'
            let gg = dsum * (la_k * la_kp + lb_k * lb_kp) / (mk.omega + mkp.omega);
            // |ee⟩|1_k 1_k'⟩: energy 2ω₀ + ω_k + ω_k'
            let ee = dsum * (la_k * lb_kp + la_kp * lb_k) / (2.0 * omega0 + mk.omega + mkp.omega);
            c_gg2.set(k, kp, gg);
            c_ee2.set(k, kp, ee);
        }
    }

    let mut norm2 = 1.0 + c_ee.norm_sqr() + c_gg2.norm_sq() + c_ee2.norm_sq();
    for (a, b) in c_eg.iter().zip(c_ge.iter()) {
        norm2 += a.norm_sqr() + b.norm_sqr();
    }
    if !norm2.is_finite() {
        return Err(Error::Domain(
            "dressed-state norm overflowed; couplings too large".into(),
        ));
    }
    Ok(DressedState2 {
        c_gg: 1.0 / norm2.sqrt(),
        c_ee,
        c_eg,
        c_ge,
        c_gg2,
        c_ee2,
        norm2,
    })
}

/// The exact finite mode sum A = Σ_k λ_k(r_α) λ_k*(r_β) / (ω₀ + ω_k).
pub fn discrete_amplitude(bath: &DiscreteBath) -> Complex64 {
    let mut a = Complex64::new(0.0, 0.0);
    for m in &bath.modes {
        a += m.lambda_alpha * m.lambda_beta.conj() / (bath.omega0 + m.omega);
    }
    a
}

/// Discrete two-tangle τ = (4/ω₀²) |A|² with A the discrete amplitude.
pub fn discrete_tangle(bath: &DiscreteBath) -> f64 {
    let a = discrete_amplitude(bath);
    4.0 * a.norm_sqr() / (bath.omega0 * bath.omega0)
}

/// Second-order interaction energy
/// Δ⁽²⁾ = −Σ_k (|λ_k(r_α)|² + |λ_k(r_β)|²) / (ω₀ + ω_k) ≤ 0.
pub fn energy_shift2(bath: &DiscreteBath) -> f64 {
    let mut s = 0.0;
    for m in &bath.modes {
        s -= (m.lambda_alpha.norm_sqr() + m.lambda_beta.norm_sqr()) / (bath.omega0 + m.omega);
    }
    s
}

/// Two-qubit reduced density matrix of the normalized dressed state, traced
/// over all bosons. X-structured by construction: populations from each
/// photon sector, the |gg⟩⟨ee| coherence from the vacuum and two-photon
/// sectors, and the |eg⟩⟨ge| coherence from the one-photon sector.
pub fn reduced_state(state: &DressedState2) -> Result<DensityMatrix4> {
    let w = state.c_gg * state.c_gg; // 1/norm2
    let p_eg: f64 = state.c_eg.iter().map(|z| z.norm_sqr()).sum::<f64>() * w;
    let p_ge: f64 = state.c_ge.iter().map(|z| z.norm_sqr()).sum::<f64>() * w;
    let p_ee = (state.c_ee.norm_sqr() + state.c_ee2.norm_sq()) * w;
    let p_gg = (1.0 + state.c_gg2.norm_sq()) * w;

    // ⟨ee|ρ|gg⟩: vacuum sector c_ee·1* plus the two-photon overlap
    let coh_ee_gg = (state.c_ee + state.c_ee2.dot(&state.c_gg2)) * w;
    // ⟨eg|ρ|ge⟩: one-photon sector
    let coh_eg_ge: Complex64 = state
        .c_eg
        .iter()
        .zip(state.c_ge.iter())
        .map(|(a, b)| a * b.conj())
        .sum::<Complex64>()
        * w;

    let z = Complex64::new(0.0, 0.0);
    let r = |x: f64| Complex64::new(x, 0.0);
    DensityMatrix4::new([
        r(p_ee),
        z,
        z,
        coh_ee_gg,
        z,
        r(p_eg),
        coh_eg_ge,
        z,
        z,
        coh_eg_ge.conj(),
        r(p_ge),
        z,
        coh_ee_gg.conj(),
        z,
        z,
        r(p_gg),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Mode;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn single_mode(la: Complex64, lb: Complex64, omega0: f64, omega: f64) -> DiscreteBath {
        DiscreteBath::new(
            omega0,
            vec![Mode {
                omega,
                lambda_alpha: la,
                lambda_beta: lb,
            }],
        )
        .unwrap()
    }

    #[test]
    fn zero_couplings_are_trivial() {
        let bath = single_mode(c(0.0, 0.0), c(0.0, 0.0), 1.0, 1.0);
        let st = dressed_state(&bath).unwrap();
        assert_eq!(st.c_gg, 1.0);
        assert_eq!(st.c_ee, c(0.0, 0.0));
        assert_eq!(st.c_eg[0], c(0.0, 0.0));
        assert_eq!(discrete_tangle(&bath), 0.0);
        assert_eq!(energy_shift2(&bath), 0.0);
        let rho = reduced_state(&st).unwrap();
        assert_eq!(rho.entry(3, 3), c(1.0, 0.0));
        assert_eq!(rho.entry(0, 0), c(0.0, 0.0));
    }

    #[test]
    fn single_mode_amplitude_and_shift() {
        let bath = single_mode(c(1.0, 0.0), c(1.0, 0.0), 1.0, 1.0);
        assert_eq!(discrete_amplitude(&bath), c(0.5, 0.0));
        let bath = single_mode(c(1.0, 0.0), c(0.0, 0.0), 1.0, 1.0);
        assert_eq!(energy_shift2(&bath), -0.5);
    }

    #[test]
    fn single_mode_tangle_formula() {
        // λ_α = λ_β = g: τ = 4 g⁴ / (ω₀² (ω₀+ω)²)
        let g = 0.3;
        let (omega0, omega) = (1.0, 1.7);
        let bath = single_mode(c(g, 0.0), c(g, 0.0), omega0, omega);
        let expect = 4.0 * g.powi(4) / (omega0 * omega0 * (omega0 + omega).powi(2));
        assert!((discrete_tangle(&bath) - expect).abs() < 1e-15);
    }

    #[test]
    fn site_exchange_symmetry_single_mode() {
        let bath = single_mode(c(0.4, 0.0), c(0.4, 0.0), 1.0, 2.0);
        let st = dressed_state(&bath).unwrap();
        assert_eq!(st.c_eg[0], st.c_ge[0]);
    }

    #[test]
    fn reduced_state_traces_to_one() {
        let bath = DiscreteBath::new(
            1.0,
            vec![
                Mode {
                    omega: 0.8,
                    lambda_alpha: c(0.05, 0.02),
                    lambda_beta: c(0.04, -0.03),
                },
                Mode {
                    omega: 1.3,
                    lambda_alpha: c(-0.06, 0.01),
                    lambda_beta: c(0.02, 0.05),
                },
            ],
        )
        .unwrap();
        let st = dressed_state(&bath).unwrap();
        let rho = reduced_state(&st).unwrap();
        let tr: Complex64 = (0..4).map(|i| rho.entry(i, i)).sum();
        assert!((tr.re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn norm2_matches_definition() {
        let bath = DiscreteBath::new(
            2.0,
            vec![
                Mode {
                    omega: 1.0,
                    lambda_alpha: c(0.1, 0.0),
                    lambda_beta: c(0.1, 0.05),
                },
                Mode {
                    omega: 3.0,
                    lambda_alpha: c(0.0, 0.2),
                    lambda_beta: c(-0.1, 0.0),
                },
            ],
        )
        .unwrap();
        let st = dressed_state(&bath).unwrap();
        let manual = 1.0
            + st.c_ee.norm_sqr()
            + st.c_eg.iter().map(|z| z.norm_sqr()).sum::<f64>()
            + st.c_ge.iter().map(|z| z.norm_sqr()).sum::<f64>()
            + st.c_gg2.norm_sq()
            + st.c_ee2.norm_sq();
        assert!((st.norm2 - manual).abs() < 1e-12 * manual);
        assert!((st.c_gg * st.c_gg * st.norm2 - 1.0).abs() < 1e-12);
    }
}
