//! Continuum-limit amplitudes A(r) per bath dimension and the tangle
//! τ = (4/ω₀²) g⁴ |A|² they imply.
//!
//! Normalization: amplitudes are the bare mode integrals after angular
//! reduction, with the coupling prefactor g² and all (2π)^d factors kept
//! outside (the tangle restores g⁴; scaling exponents do not depend on
//! either choice):
//!
//!   d = 3: A = ∫₀^kc dk k^{1+2ν} sin(kr)/(k₀+k)         (×1/r from the
//!          angular average handled by the caller where needed)
//!   d = 2: A = ∫₀^kc dk k^{1+2ν} J₀(kr)/(k₀+k)
//!   d = 1: A = ∫_{-∞}^{∞} dk k^n e^{ikr}/(k₀+k), 2ν = n, whose
//!          principal-value evaluation is (−1)ⁿ iπ k₀ⁿ e^{−ik₀r}
//!
//! The hard-cutoff d = 3 integral has the closed form in terms of Si and Ci;
//! "smoothed" drops its fast-oscillating cos(kc r), sin(kc r) terms. The
//! d = 2 quadrature accelerates the lobe tail, which plays the same
//! smoothing role there.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::model::BathConfig;
use crate::numerics::{
    bessel_j0, cos_integral, integrate_oscillatory, integrate_pv_regulated, j0_zero, sin_integral,
};
use crate::numerics::{integrate_adaptive_complex, integrate_piecewise};
use crate::{Error, Result};

/// How an amplitude value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
    Smoothed,
    Residue,
    PvNumeric,
}

impl Method {
    /// Token used in CSV output and on the command line.
    pub fn token(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed",
            Method::Quadrature => "quad",
            Method::Smoothed => "smoothed",
            Method::Residue => "residue",
            Method::PvNumeric => "pv",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Method::ClosedForm),
            "quad" => Ok(Method::Quadrature),
            "smoothed" => Ok(Method::Smoothed),
            "residue" => Ok(Method::Residue),
            "pv" => Ok(Method::PvNumeric),
            other => Err(Error::InvalidConfig(format!(
                "unknown method '{other}' (expected closed|quad|smoothed|residue|pv)"
            ))),
        }
    }
}

/// 1D treatment of the mode integral: `FullLine` keeps ω_k = k over the whole
/// line (pole at k = k₀, the distance-independent result); `AbsK` uses
/// ω_k = |k|, which has no pole and decays with r.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    #[default]
    FullLine,
    AbsK,
}

impl std::str::FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full-line" => Ok(Convention::FullLine),
            "abs-k" => Ok(Convention::AbsK),
            other => Err(Error::InvalidConfig(format!(
                "unknown convention '{other}' (expected full-line|abs-k)"
            ))),
        }
    }
}

/// A continuum amplitude with its provenance and error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitude {
    pub value: Complex64,
    pub method: Method,
    pub abs_error_estimate: f64,
}

/// Angular average f(x) of the plane-wave phase: 4π sinc(x) in d = 3,
/// 2π J₀(x) in d = 2. d = 1 has no angular integral and is rejected.
pub fn angular_factor(d: u8, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("angular factor needs x >= 0, got {x}")));
    }
    match d {
        3 => Ok(4.0 * PI * sinc(x)),
        2 => Ok(2.0 * PI * bessel_j0(x)),
        _ => Err(Error::Domain(format!(
            "no angular factor in d = {d}; d = 1 uses the full-line treatment"
        ))),
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

fn check_3d_args(r: f64, k0: f64, kc: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("r must be > 0, got {r}")));
    }
    if !(k0 > 0.0) || !k0.is_finite() {
        return Err(Error::Domain(format!("k0 must be > 0, got {k0}")));
    }
    if !(kc > k0) {
        return Err(Error::Domain(format!("kc must exceed k0 ({kc} <= {k0})")));
    }
    Ok(())
}

/// Closed form of ∫₀^kc k² sin(kr)/(k₀+k) dk (the ν = ½ bare integral):
///
/// sin(kc r)/r² + (k₀−kc) cos(kc r)/r − k₀/r
///   + k₀² [cos(k₀r)(Si((k₀+kc)r) − Si(k₀r)) + sin(k₀r)(Ci(k₀r) − Ci((k₀+kc)r))]
pub fn amplitude_3d_closed(r: f64, k0: f64, kc: f64) -> Result<Amplitude> {
    check_3d_args(r, k0, kc)?;
    if !kc.is_finite() {
        return Err(Error::Domain("closed form needs a finite cutoff".into()));
    }
    let x = k0 * r;
    let y = kc * r;
    let big = x + y;
    let t1 = y.sin() / (r * r);
    let t2 = (k0 - kc) * y.cos() / r;
    let t3 = -k0 / r;
    let t4 = k0 * k0
        * (x.cos() * (sin_integral(big)? - sin_integral(x)?)
            + x.sin() * (cos_integral(x)? - cos_integral(big)?));
    let value = t1 + t2 + t3 + t4;
    // round-off bound from the cancelling terms plus the 1e-12 Si/Ci accuracy
    let scale = t1.abs() + t2.abs() + t3.abs() + t4.abs();
    let err = 1e-14 * scale + 2e-12 * k0 * k0 * (1.0 + x);
    Ok(Amplitude {
        value: Complex64::new(value, 0.0),
        method: Method::ClosedForm,
        abs_error_estimate: err,
    })
}

/// The closed form with the fast-oscillating sin(kc r), cos(kc r) terms
/// dropped; `kc = f64::INFINITY` additionally sends Si((k₀+kc)r) → π/2 and
/// Ci((k₀+kc)r) → 0.
pub fn amplitude_3d_smoothed(r: f64, k0: f64, kc: f64) -> Result<Amplitude> {
    if !(kc > k0) {
        return Err(Error::Domain(format!("kc must exceed k0 ({kc} <= {k0})")));
    }
    check_3d_args(r, k0, if kc.is_finite() { kc } else { 2.0 * k0 })?;
    let x = k0 * r;
    let (si_big, ci_big) = if kc.is_finite() {
        let big = (k0 + kc) * r;
        (sin_integral(big)?, cos_integral(big)?)
    } else {
        (FRAC_PI_2, 0.0)
    };
    let value = -k0 / r
        + k0 * k0 * (x.cos() * (si_big - sin_integral(x)?) + x.sin() * (cos_integral(x)? - ci_big));
    Ok(Amplitude {
        value: Complex64::new(value, 0.0),
        method: Method::Smoothed,
        abs_error_estimate: 1e-14 * (k0 / r).abs() + 2e-12 * k0 * k0 * (1.0 + x),
    })
}

/// Direct quadrature of the hard-cutoff d = 3 integral
/// ∫₀^kc k^{1+2ν} sin(kr)/(k₀+k) dk with panel boundaries at kr = mπ.
/// For ν = ½ this reproduces [`amplitude_3d_closed`].
pub fn amplitude_3d_quad(r: f64, nu: f64, k0: f64, kc: f64) -> Result<Amplitude> {
    check_3d_args(r, k0, kc)?;
    if !(nu >= 0.0) {
        return Err(Error::Domain(format!("nu must be >= 0, got {nu}")));
    }
    if !kc.is_finite() {
        return Err(Error::Domain("quadrature needs a finite cutoff".into()));
    }
    let p = 1.0 + 2.0 * nu;
    let f = move |k: f64| Complex64::new(k.powf(p) * (k * r).sin() / (k0 + k), 0.0);
    let breakpoints = sine_breakpoints(r, kc);
    // two passes: a scale-finding pass, then a tight relative tolerance
    let rough = integrate_piecewise(f, &breakpoints, 1e-4 * (1.0 + kc.powf(p)))?;
    let tol = (1e-10 * rough.value.norm()).max(1e-13 * (1.0 + kc.powf(p) / (k0 + kc)));
    let fine = integrate_piecewise(f, &breakpoints, tol)?;
    Ok(Amplitude {
        value: Complex64::new(fine.value.re, 0.0),
        method: Method::Quadrature,
        abs_error_estimate: fine.abs_error_estimate,
    })
}

fn sine_breakpoints(r: f64, kc: f64) -> Vec<f64> {
    let mut pts = vec![0.0];
    let period = PI / r;
    let mut m = 1usize;
    while (m as f64) * period < kc && m < 4_000_000 {
        pts.push(m as f64 * period);
        m += 1;
    }
    pts.push(kc);
    pts
}

/// d = 2 amplitude ∫₀^kc k^{1+2ν} J₀(kr)/(k₀+k) dk with lobe boundaries at
/// the J₀ zeros scaled by 1/r. When the cutoff admits enough lobes the
/// alternating partial sums are accelerated, smoothing the cutoff
/// oscillation; with only a few lobes the hard integral is taken as is.
pub fn amplitude_2d(r: f64, nu: f64, k0: f64, kc: f64) -> Result<Amplitude> {
    check_3d_args(r, k0, kc)?;
    if !(nu >= 0.0) {
        return Err(Error::Domain(format!("nu must be >= 0, got {nu}")));
    }
    if !kc.is_finite() {
        return Err(Error::Domain("d=2 quadrature needs a finite cutoff".into()));
    }
    let p = 1.0 + 2.0 * nu;
    let f = move |k: f64| k.powf(p) * bessel_j0(k * r) / (k0 + k);

    let mut zeros = vec![0.0];
    let mut m = 1usize;
    while m < 4_000_000 {
        let z = j0_zero(m) / r;
        if z >= kc {
            break;
        }
        zeros.push(z);
        m += 1;
    }

    const MIN_ACCEL_LOBES: usize = 16;
    if zeros.len() >= MIN_ACCEL_LOBES + 1 {
        // first-lobe magnitude bound sets the absolute tolerance
        let z1 = zeros[1];
        let bound = z1.powf(p) / (k0 + z1) * z1;
        let tol = (1e-6 * bound).max(1e-300);
        let q = integrate_oscillatory(f, &zeros, tol)?;
        Ok(Amplitude {
            value: Complex64::new(q.value, 0.0),
            method: Method::Quadrature,
            abs_error_estimate: q.abs_error_estimate,
        })
    } else {
        zeros.push(kc);
        let bound = kc.powf(p) / (k0 + kc) * kc;
        let q = integrate_piecewise(
            |k| Complex64::new(f(k), 0.0),
            &zeros,
            (1e-10 * bound).max(1e-300),
        )?;
        Ok(Amplitude {
            value: Complex64::new(q.value.re, 0.0),
            method: Method::Quadrature,
            abs_error_estimate: q.abs_error_estimate,
        })
    }
}

/// The d = 1 full-line principal value in closed form:
/// (−1)ⁿ iπ k₀ⁿ e^{−i k₀ r}, independent of r in modulus.
pub fn amplitude_1d_residue(r: f64, n: u32, k0: f64) -> Result<Amplitude> {
    if !(r > 0.0) || !(k0 > 0.0) {
        return Err(Error::Domain(format!(
            "r and k0 must be positive (r = {r}, k0 = {k0})"
        )));
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let modulus = PI * k0.powi(n as i32);
    let phase = Complex64::new(0.0, -k0 * r).exp();
    Ok(Amplitude {
        value: Complex64::new(0.0, sign * modulus) * phase,
        method: Method::Residue,
        abs_error_estimate: 0.0,
    })
}

/// Numerical evaluation of the d = 1 amplitude.
///
/// `FullLine` reproduces the split
/// ∫₀^∞ kⁿ e^{ikr}/(k₀+k) dk − (−1)ⁿ ∫₀^∞ kⁿ e^{−ikr}/(k−k₀) dk
/// with the second integral taken as a regulated principal value; it should
/// match [`amplitude_1d_residue`]. `AbsK` evaluates
/// ∫₀^∞ kⁿ (e^{ikr} + (−1)ⁿ e^{−ikr})/(k₀+k) dk, which has no pole.
pub fn amplitude_1d_numeric(r: f64, n: u32, k0: f64, convention: Convention) -> Result<Amplitude> {
    if !(r > 0.0) || !(k0 > 0.0) {
        return Err(Error::Domain(format!(
            "r and k0 must be positive (r = {r}, k0 = {k0})"
        )));
    }
    match convention {
        Convention::FullLine => amplitude_1d_full_line(r, n, k0),
        Convention::AbsK => amplitude_1d_abs_k(r, n, k0),
    }
}

fn amplitude_1d_full_line(r: f64, n: u32, k0: f64) -> Result<Amplitude> {
    // the regulator enters as e^{-ηk}: η is a length and the extrapolation
    // behaves polynomially only for η well below both r and 1/k0
    let scale = 0.5 * r.min(1.0 / k0);
    let etas: Vec<f64> = [0.64, 0.32, 0.16, 0.08, 0.04, 0.02]
        .iter()
        .map(|c| c * scale)
        .collect();
    let eta_min = etas[etas.len() - 1];
    let upper = (45.0 / eta_min).max(8.0 * k0);
    let tol = 5e-4 * PI * k0.powi(n as i32);

    let ni = n as i32;
    let plus = integrate_pv_regulated(
        move |k: f64| k.powi(ni) * Complex64::new(0.0, k * r).exp(),
        -k0,
        n,
        r,
        &etas,
        upper,
        tol,
    )?;
    let minus = integrate_pv_regulated(
        move |k: f64| k.powi(ni) * Complex64::new(0.0, -k * r).exp(),
        k0,
        n,
        r,
        &etas,
        upper,
        tol,
    )?;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(Amplitude {
        value: plus.value - sign * minus.value,
        method: Method::PvNumeric,
        abs_error_estimate: plus.abs_error_estimate + minus.abs_error_estimate,
    })
}

fn amplitude_1d_abs_k(r: f64, n: u32, k0: f64) -> Result<Amplitude> {
    // even n: 2 ∫ kⁿ cos(kr)/(k₀+k); odd n: 2i ∫ kⁿ sin(kr)/(k₀+k)
    let even = n % 2 == 0;
    let ni = n as i32;
    let f = move |k: f64| {
        let osc = if even { (k * r).cos() } else { (k * r).sin() };
        k.powi(ni) * osc / (k0 + k)
    };
    let period = PI / r;
    let offset = if even { 0.5 * period } else { 0.0 };
    let mut zeros = vec![0.0];
    for m in 0..220 {
        zeros.push(offset + (m as f64 + if even { 0.0 } else { 1.0 }) * period);
    }
    let z1 = zeros[1];
    let bound = (z1.powi(ni) / (k0 + z1)) * z1.max(period);
    let q = integrate_oscillatory(f, &zeros, (1e-7 * bound).max(1e-300))?;
    let value = if even {
        Complex64::new(2.0 * q.value, 0.0)
    } else {
        Complex64::new(0.0, 2.0 * q.value)
    };
    Ok(Amplitude {
        value,
        method: Method::PvNumeric,
        abs_error_estimate: 2.0 * q.abs_error_estimate,
    })
}

/// Default amplitude route for a configuration: closed form in d = 3 at
/// ν = ½, quadrature otherwise; quadrature in d = 2; the residue result in
/// d = 1 (full line) or the oscillatory quadrature (abs-k).
pub fn default_method(config: &BathConfig, convention: Convention) -> Method {
    match config.dimension {
        3 => {
            if (config.nu - 0.5).abs() < 1e-12 {
                Method::ClosedForm
            } else {
                Method::Quadrature
            }
        }
        2 => Method::Quadrature,
        _ => match convention {
            Convention::FullLine => Method::Residue,
            Convention::AbsK => Method::PvNumeric,
        },
    }
}

/// Computes the amplitude for `config` at separation `r` with an explicit
/// method, checking method/dimension compatibility.
pub fn amplitude(
    config: &BathConfig,
    r: f64,
    method: Method,
    convention: Convention,
) -> Result<Amplitude> {
    config.validate()?;
    match (config.dimension, method) {
        (3, Method::ClosedForm) => {
            if (config.nu - 0.5).abs() > 1e-12 {
                return Err(Error::InvalidConfig(
                    "the closed form covers ν = 1/2 only; use method 'quad'".into(),
                ));
            }
            amplitude_3d_closed(r, config.k0, config.kc)
        }
        (3, Method::Smoothed) => {
            if (config.nu - 0.5).abs() > 1e-12 {
                return Err(Error::InvalidConfig(
                    "the smoothed form covers ν = 1/2 only; use method 'quad'".into(),
                ));
            }
            amplitude_3d_smoothed(r, config.k0, config.kc)
        }
        (3, Method::Quadrature) => amplitude_3d_quad(r, config.nu, config.k0, config.kc),
        (2, Method::Quadrature) => amplitude_2d(r, config.nu, config.k0, config.kc),
        (1, Method::Residue) => amplitude_1d_residue(r, config.n_1d()?, config.k0),
        (1, Method::PvNumeric) => {
            amplitude_1d_numeric(r, config.n_1d()?, config.k0, convention)
        }
        (d, m) => Err(Error::InvalidConfig(format!(
            "method '{}' is not available in d = {d}",
            m.token()
        ))),
    }
}

/// Tangle from an amplitude: τ = (4/k₀²) g⁴ |A|².
pub fn tangle_from_amplitude(config: &BathConfig, amp: &Amplitude) -> f64 {
    4.0 * config.g.powi(4) * amp.value.norm_sqr() / (config.k0 * config.k0)
}

/// Tangle at separation `r` through the default amplitude route.
pub fn tangle_continuum(config: &BathConfig, r: f64) -> Result<f64> {
    let method = default_method(config, Convention::FullLine);
    let amp = amplitude(config, r, method, Convention::FullLine)?;
    Ok(tangle_from_amplitude(config, &amp))
}

/// Direct adaptive evaluation of the d = 3 bare integral, used as an oracle
/// for the closed form in tests and reports.
pub fn amplitude_3d_direct_quadrature(r: f64, k0: f64, kc: f64, tol: f64) -> Result<Amplitude> {
    check_3d_args(r, k0, kc)?;
    let f = move |k: f64| Complex64::new(k * k * (k * r).sin() / (k0 + k), 0.0);
    let q = if kc * r < PI {
        integrate_adaptive_complex(f, 0.0, kc, tol)?
    } else {
        integrate_piecewise(f, &sine_breakpoints(r, kc), tol)?
    };
    Ok(Amplitude {
        value: q.value,
        method: Method::Quadrature,
        abs_error_estimate: q.abs_error_estimate,
    })
}
