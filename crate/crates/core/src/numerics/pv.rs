//! Regulated principal-value integrals on the half line.
//!
//! Computes PV ∫₀^K f(k) e^{-ηk} / (k - pole) dk for a decreasing sequence of
//! regulators η and Richardson-extrapolates η → 0. A pole inside (0, K) is
//! handled by symmetric excision of half-width δ with a two-δ linear
//! extrapolation; the lobe structure of the oscillatory numerator sets the
//! panel boundaries.

use num_complex::Complex64;

use super::quad::integrate_piecewise;
use super::CQuadResult;
use crate::{Error, Result};

/// Relative half-width of the pole excision in units of the oscillation
/// period (and of the pole-to-boundary distance).
const DELTA_FRACTION: f64 = 0.02;

/// PV-regulated integral of `numerator(k) / (k - pole)` over [0, `upper`].
///
/// `n` is the polynomial growth order of the numerator and `r` its
/// oscillation wavenumber (numerators of the form k^n e^{±ikr}); both only
/// steer the internal panel layout. `eta_sequence` must be positive and
/// strictly decreasing; `upper` should satisfy `eta_min * upper ≳ 40` so the
/// truncated tail is negligible.
pub fn integrate_pv_regulated<F: Fn(f64) -> Complex64>(
    numerator: F,
    pole: f64,
    n: u32,
    r: f64,
    eta_sequence: &[f64],
    upper: f64,
    tol: f64,
) -> Result<CQuadResult> {
    if eta_sequence.is_empty() {
        return Err(Error::Domain("empty regulator sequence".into()));
    }
    for w in eta_sequence.windows(2) {
        if !(w[0] > w[1]) {
            return Err(Error::Domain(
                "regulator sequence must be strictly decreasing".into(),
            ));
        }
    }
    if !(eta_sequence[eta_sequence.len() - 1] > 0.0) {
        return Err(Error::Domain("regulators must be positive".into()));
    }
    if !(upper > 0.0) || !(tol > 0.0) {
        return Err(Error::Domain("upper and tol must be positive".into()));
    }
    let _ = n;

    // lobe boundaries of the oscillatory numerator
    let mut lobes: Vec<f64> = vec![0.0];
    if r > 0.0 {
        let period = std::f64::consts::PI / r;
        let count = (upper / period).floor() as usize;
        if count > 2_000_000 {
            return Err(Error::Domain(format!(
                "panel count {count} unreasonably large; reduce upper or r"
            )));
        }
        for m in 1..=count {
            let k = m as f64 * period;
            if k < upper {
                lobes.push(k);
            }
        }
    }
    lobes.push(upper);

    let excise = pole > 0.0 && pole < upper;
    let delta2 = if excise {
        let period_cap = if r > 0.0 {
            std::f64::consts::PI / r
        } else {
            f64::INFINITY
        };
        DELTA_FRACTION * period_cap.min(pole).min(upper - pole)
    } else {
        0.0
    };

    let per_eta_tol = tol / 50.0;
    let mut values = Vec::with_capacity(eta_sequence.len());
    let mut quad_err = 0.0f64;
    let mut evals = 0usize;
    for &eta in eta_sequence {
        let integrand = |k: f64| numerator(k) * (-eta * k).exp() / (k - pole);
        let value = if excise {
            let i_d2 = excised_integral(&integrand, &lobes, pole, delta2, upper, per_eta_tol)?;
            let i_d1 =
                excised_integral(&integrand, &lobes, pole, 2.0 * delta2, upper, per_eta_tol)?;
            quad_err += i_d2.abs_error_estimate * 2.0 + i_d1.abs_error_estimate;
            evals += i_d2.evaluations + i_d1.evaluations;
            2.0 * i_d2.value - i_d1.value
        } else {
            let i = integrate_piecewise(&integrand, &lobes, per_eta_tol)?;
            quad_err += i.abs_error_estimate;
            evals += i.evaluations;
            i.value
        };
        values.push(value);
    }

    let (extrapolated, extrap_err) = neville_at_zero(eta_sequence, &values);
    let err = extrap_err + quad_err;
    if !extrapolated.re.is_finite() || !extrapolated.im.is_finite() || extrap_err > tol {
        return Err(Error::NonConvergence {
            what: format!(
                "regulator extrapolation (pole {pole}, {} etas, last diff {extrap_err:.3e})",
                eta_sequence.len()
            ),
            best_re: extrapolated.re,
            best_im: extrapolated.im,
            abs_error_estimate: err,
            evaluations: evals,
        });
    }
    Ok(CQuadResult {
        value: extrapolated,
        abs_error_estimate: err,
        evaluations: evals,
    })
}

/// Integral over [0, upper] minus the symmetric window (pole-δ, pole+δ).
fn excised_integral<F: Fn(f64) -> Complex64>(
    integrand: &F,
    lobes: &[f64],
    pole: f64,
    delta: f64,
    upper: f64,
    tol: f64,
) -> Result<CQuadResult> {
    let lo = pole - delta;
    let hi = pole + delta;
    let pad = 1e-12 * (1.0 + pole.abs());
    let mut left: Vec<f64> = lobes.iter().copied().filter(|&x| x < lo - pad).collect();
    left.push(lo);
    let mut right: Vec<f64> = vec![hi];
    right.extend(lobes.iter().copied().filter(|&x| x > hi + pad));
    if *right.last().unwrap() < upper {
        right.push(upper);
    }

    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut evals = 0;
    if left.len() >= 2 {
        let r = integrate_piecewise(integrand, &left, tol / 2.0)?;
        value += r.value;
        err += r.abs_error_estimate;
        evals += r.evaluations;
    }
    if right.len() >= 2 {
        let r = integrate_piecewise(integrand, &right, tol / 2.0)?;
        value += r.value;
        err += r.abs_error_estimate;
        evals += r.evaluations;
    }
    Ok(CQuadResult {
        value,
        abs_error_estimate: err,
        evaluations: evals,
    })
}

/// Polynomial extrapolation of (x_i, y_i) to x = 0 by Neville's scheme.
/// Returns the highest-order value and the difference from the previous
/// order as an error estimate.
fn neville_at_zero(xs: &[f64], ys: &[Complex64]) -> (Complex64, f64) {
    let m = xs.len();
    let mut tab: Vec<Complex64> = ys.to_vec();
    let mut current = tab[0];
    let mut previous = current;
    for j in 1..m {
        for i in 0..(m - j) {
            tab[i] = (xs[i + j] * tab[i] - xs[i] * tab[i + 1]) / (xs[i + j] - xs[i]);
        }
        previous = current;
        current = tab[0];
    }
    let err = if m > 1 {
        (current - previous).norm()
    } else {
        f64::INFINITY
    };
    (current, err)
}
