//! Two-qubit entanglement measures: Wootters concurrence for arbitrary mixed
//! states, the two-tangle, the X-state closed form, and the pure-projection
//! shortcut for dressed ground states.
//!
//! Basis order everywhere: (|ee⟩, |eg⟩, |ge⟩, |gg⟩).

use num_complex::Complex64;

use crate::linalg::{eigh_jacobi, CMatrix};
use crate::{Error, Result};

const HERM_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues this far below zero are treated as round-off from partial
/// traces and clamped; anything lower is a genuine positivity violation.
const PSD_TOL: f64 = 1e-10;

/// 4×4 two-qubit density matrix in basis (|ee⟩, |eg⟩, |ge⟩, |gg⟩).
///
/// Construction checks hermiticity and unit trace to 1e-12 and positive
/// semidefiniteness to -1e-10.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix4 {
    m: [Complex64; 16],
}

impl DensityMatrix4 {
    pub fn new(entries: [Complex64; 16]) -> Result<Self> {
        let rho = DensityMatrix4 { m: entries };
        rho.check()?;
        Ok(rho)
    }

    /// ρ = |ψ⟩⟨ψ| from amplitudes (a, b, c, d) on (|ee⟩, |eg⟩, |ge⟩, |gg⟩);
    /// the amplitudes are normalized internally.
    pub fn from_pure(amps: [Complex64; 4]) -> Result<Self> {
        let n2: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if n2 <= 0.0 {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let mut m = [Complex64::new(0.0, 0.0); 16];
        for i in 0..4 {
            for j in 0..4 {
                m[4 * i + j] = amps[i] * amps[j].conj() / n2;
            }
        }
        DensityMatrix4::new(m)
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.m[4 * i + j]
    }

    pub fn entries(&self) -> &[Complex64; 16] {
        &self.m
    }

    fn check(&self) -> Result<()> {
        let mut herm = 0.0f64;
        for i in 0..4 {
            for j in i..4 {
                herm = herm.max((self.m[4 * i + j] - self.m[4 * j + i].conj()).norm());
            }
        }
        if herm > HERM_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian: residual {herm:.3e} > {HERM_TOL:.0e}"
            )));
        }
        let trace: Complex64 = (0..4).map(|i| self.m[4 * i + i]).sum();
        if (trace - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::InvalidState(format!(
                "trace {} differs from 1 beyond {TRACE_TOL:.0e}",
                trace.re
            )));
        }
        let evals = self.eigenvalues()?;
        if evals[0] < -PSD_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {:.3e} below -{PSD_TOL:.0e}",
                evals[0]
            )));
        }
        Ok(())
    }

    fn to_cmatrix(&self) -> CMatrix {
        let mut c = CMatrix::zeros(4);
        for i in 0..4 {
            for j in 0..4 {
                c[(i, j)] = self.m[4 * i + j];
            }
        }
        c
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let (vals, _) = eigh_jacobi(&self.to_cmatrix())?;
        Ok(vals)
    }
}

/// (σ_y ⊗ σ_y) in the (|ee⟩, |eg⟩, |ge⟩, |gg⟩) basis: antidiagonal
/// (-1, 1, 1, -1).
fn sigma_yy() -> CMatrix {
    let mut y = CMatrix::zeros(4);
    y[(0, 3)] = Complex64::new(-1.0, 0.0);
    y[(1, 2)] = Complex64::new(1.0, 0.0);
    y[(2, 1)] = Complex64::new(1.0, 0.0);
    y[(3, 0)] = Complex64::new(-1.0, 0.0);
    y
}

fn mat_mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let n = a.dim();
    let mut c = CMatrix::zeros(n);
    for i in 0..n {
        for k in 0..n {
            let aik = a[(i, k)];
            if aik.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..n {
                let add = aik * b[(k, j)];
                c[(i, j)] += add;
            }
        }
    }
    c
}

/// Wootters concurrence C ∈ [0, 1].
///
/// Uses the Hermitian similarity √ρ ρ̃ √ρ (ρ̃ the spin-flipped conjugate);
/// its eigenvalues equal those of ρ ρ̃ and are nonnegative, so a Hermitian
/// eigensolver suffices. C = max{0, ξ₁ − ξ₂ − ξ₃ − ξ₄} with ξᵢ the square
/// roots in non-increasing order.
pub fn concurrence(rho: &DensityMatrix4) -> Result<f64> {
    rho.check()?;
    let r = rho.to_cmatrix();

    // √ρ via eigendecomposition. Round-off noise around zero eigenvalues
    // would be amplified to √ε ≈ 1e-8 by the square root, so anything below
    // 1e-14 of the largest eigenvalue is treated as exactly zero.
    let (vals, vecs) = eigh_jacobi(&r)?;
    let floor = 1e-14 * vals[3].max(0.0);
    let mut sqrt_r = CMatrix::zeros(4);
    for k in 0..4 {
        let lam = if vals[k] <= floor { 0.0 } else { vals[k].sqrt() };
        if lam == 0.0 {
            continue;
        }
        for i in 0..4 {
            for j in 0..4 {
                let add = lam * vecs[(i, k)] * vecs[(j, k)].conj();
                sqrt_r[(i, j)] += add;
            }
        }
    }

    // ρ̃ = (σy⊗σy) ρ* (σy⊗σy)
    let y = sigma_yy();
    let mut r_conj = CMatrix::zeros(4);
    for i in 0..4 {
        for j in 0..4 {
            r_conj[(i, j)] = r[(i, j)].conj();
        }
    }
    let rho_tilde = mat_mul(&mat_mul(&y, &r_conj), &y);

    let mut m = mat_mul(&mat_mul(&sqrt_r, &rho_tilde), &sqrt_r);
    // hermitize against round-off before the eigensolve
    for i in 0..4 {
        for j in (i + 1)..4 {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)].conj());
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
        m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
    }
    let (mvals, _) = eigh_jacobi(&m)?;
    let mfloor = 1e-14 * mvals[3].max(0.0);
    let mut xi: Vec<f64> = mvals
        .iter()
        .map(|&v| if v <= mfloor { 0.0 } else { v.sqrt() })
        .collect();
    xi.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((xi[0] - xi[1] - xi[2] - xi[3]).clamp(0.0, 1.0))
}

/// Two-tangle τ = C².
pub fn two_tangle(rho: &DensityMatrix4) -> Result<f64> {
    let c = concurrence(rho)?;
    Ok(c * c)
}

/// Closed-form concurrence of an X state with populations
/// (p_ee, p_eg, p_ge, p_gg), coherence ⟨ee|ρ|gg⟩ and coherence ⟨eg|ρ|ge⟩:
/// C = 2 max{0, |ρ_ee,gg| − √(p_eg p_ge), |ρ_eg,ge| − √(p_ee p_gg)}.
pub fn x_state_concurrence(
    p_ee: f64,
    p_eg: f64,
    p_ge: f64,
    p_gg: f64,
    coh_ee_gg: Complex64,
    coh_eg_ge: Complex64,
) -> Result<f64> {
    let ps = [p_ee, p_eg, p_ge, p_gg];
    if ps.iter().any(|&p| p < -1e-14) {
        return Err(Error::InvalidState("negative population".into()));
    }
    let sum: f64 = ps.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidState(format!(
            "populations sum to {sum}, expected 1"
        )));
    }
    let tol = 1e-12;
    if coh_ee_gg.norm_sqr() > p_ee * p_gg + tol {
        return Err(Error::InvalidState(
            "|coh_ee_gg|² exceeds p_ee·p_gg".into(),
        ));
    }
    if coh_eg_ge.norm_sqr() > p_eg * p_ge + tol {
        return Err(Error::InvalidState(
            "|coh_eg_ge|² exceeds p_eg·p_ge".into(),
        ));
    }
    let b1 = coh_ee_gg.norm() - (p_eg * p_ge).max(0.0).sqrt();
    let b2 = coh_eg_ge.norm() - (p_ee * p_gg).max(0.0).sqrt();
    Ok((2.0 * b1.max(b2)).clamp(0.0, 1.0))
}

/// Pure-projection tangle τ = 4 |c_ee|² / norm², with `c_ee` the |e e, 0⟩
/// coefficient of the dressed expansion and `norm` the norm of the expanded
/// (unnormalized) state.
pub fn projection_tangle(c_ee: Complex64, norm: f64) -> Result<f64> {
    if !(norm > 0.0) {
        return Err(Error::Domain(format!("norm must be positive, got {norm}")));
    }
    Ok(4.0 * c_ee.norm_sqr() / (norm * norm))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bell_phi_plus() -> DensityMatrix4 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        DensityMatrix4::from_pure([c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]).unwrap()
    }

    fn werner(p: f64) -> DensityMatrix4 {
        let bell = bell_phi_plus();
        let mut m = [c(0.0, 0.0); 16];
        for i in 0..4 {
            for j in 0..4 {
                m[4 * i + j] = p * bell.entry(i, j);
            }
            m[4 * i + i] += c((1.0 - p) / 4.0, 0.0);
        }
        DensityMatrix4::new(m).unwrap()
    }

    #[test]
    fn bell_state_is_maximally_entangled() {
        assert!((concurrence(&bell_phi_plus()).unwrap() - 1.0).abs() < 1e-12);
        assert!((two_tangle(&bell_phi_plus()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn product_state_is_separable() {
        let gg =
            DensityMatrix4::from_pure([c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
                .unwrap();
        assert_eq!(concurrence(&gg).unwrap(), 0.0);
        assert_eq!(two_tangle(&gg).unwrap(), 0.0);
    }

    #[test]
    fn werner_half() {
        // C = max(0, (3p-1)/2) -> 0.25 at p = 0.5
        let w = werner(0.5);
        assert!((concurrence(&w).unwrap() - 0.25).abs() < 1e-10);
        assert!((two_tangle(&w).unwrap() - 0.0625).abs() < 1e-10);
    }

    #[test]
    fn x_state_matches_bell_and_mixture() {
        let v = x_state_concurrence(0.5, 0.0, 0.0, 0.5, c(0.5, 0.0), c(0.0, 0.0)).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
        let v = x_state_concurrence(0.0, 0.5, 0.5, 0.0, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(v, 0.0);
        assert!(x_state_concurrence(0.5, 0.0, 0.0, 0.5, c(0.9, 0.0), c(0.0, 0.0)).is_err());
        assert!(x_state_concurrence(0.7, 0.0, 0.0, 0.7, c(0.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn projection_tangle_examples() {
        assert_eq!(projection_tangle(c(0.0, 0.0), 1.0).unwrap(), 0.0);
        assert!((projection_tangle(c(0.1, 0.0), 1.0).unwrap() - 0.04).abs() < 1e-15);
        assert!(projection_tangle(c(0.1, 0.0), 0.0).is_err());
    }

    #[test]
    fn invalid_states_rejected() {
        // trace 2
        let mut m = [c(0.0, 0.0); 16];
        for i in 0..4 {
            m[4 * i + i] = c(0.5, 0.0);
        }
        m[0] = c(1.25, 0.0);
        assert!(DensityMatrix4::new(m).is_err());
        // non-Hermitian
        let mut m = [c(0.0, 0.0); 16];
        for i in 0..4 {
            m[4 * i + i] = c(0.25, 0.0);
        }
        m[1] = c(0.1, 0.0);
        m[4] = c(0.2, 0.0);
        assert!(DensityMatrix4::new(m).is_err());
    }
}
