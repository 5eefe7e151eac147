//! J₀, the sine and cosine integrals, and J₀ zeros.
//!
//! J₀ follows the classical Cephes split: rational approximations on [0, 5]
//! and a Hankel asymptotic form beyond. Si and Ci use their power series for
//! x < 6 and, above, the auxiliary functions f, g evaluated through the
//! continued fraction of E₁(ix) by modified Lentz iteration; both branches
//! agree to better than 1e-13 around the switch point.

use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577215664901532860606512090082;

const SQRT_2_OVER_PI: f64 = 0.797884560802865355879892119869;

// Cephes j0 rational-fit coefficients (double precision, |err| < 5e-16).
const DR1: f64 = 5.783185962946784;
const DR2: f64 = 30.471262343662087;

static RP: [f64; 4] = [
    -4.794432209782018e9,
    1.9561749194655657e12,
    -2.4924834436096772e14,
    9.708622510473064e15,
];
static RQ: [f64; 8] = [
    4.99563147152651e2,
    1.737854016763747e5,
    4.844096583399621e7,
    1.1185553704535683e10,
    2.112775201154892e12,
    3.1051822985742256e14,
    3.1812195594320496e16,
    1.7108629408104315e18,
];
static PP: [f64; 7] = [
    7.969367292973471e-4,
    8.283523921074408e-2,
    1.239533716464143,
    5.447250030587687,
    8.74716500199817,
    5.303240382353949,
    1.0,
];
static PQ: [f64; 7] = [
    9.244088105588637e-4,
    8.562884743544745e-2,
    1.2535274390105895,
    5.470977403304171,
    8.761908832370695,
    5.306052882353947,
    1.0,
];
static QP: [f64; 8] = [
    -1.1366383889846916e-2,
    -1.2825271867050931,
    -1.9553954425773597e1,
    -9.320601521237683e1,
    -1.7768116798048806e2,
    -1.4707750515495118e2,
    -5.141053267665993e1,
    -6.050143506007285,
];
static QQ: [f64; 7] = [
    6.43178256118178e1,
    8.564300259769806e2,
    3.8824018360540163e3,
    7.240467741956525e3,
    5.930727011873169e3,
    2.0620933166032783e3,
    2.420057402402914e2,
];

fn eval_polynomial(x: f64, coeffs: &[f64]) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// Same as [`eval_polynomial`] with an implicit leading coefficient of 1.
fn eval_polynomial_1(x: f64, coeffs: &[f64]) -> f64 {
    coeffs.iter().fold(1.0, |acc, &c| acc * x + c)
}

/// Bessel function of the first kind, order zero.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x <= 5.0 {
        let z = x * x;
        if x < 1e-5 {
            return 1.0 - z / 4.0;
        }
        let p = (z - DR1) * (z - DR2);
        return p * eval_polynomial(z, &RP) / eval_polynomial_1(z, &RQ);
    }
    let w = 5.0 / x;
    let q = 25.0 / (x * x);
    let p = eval_polynomial(q, &PP) / eval_polynomial(q, &PQ);
    let qq = eval_polynomial(q, &QP) / eval_polynomial_1(q, &QQ);
    let xn = x - FRAC_PI_4;
    (p * xn.cos() - w * qq * xn.sin()) * SQRT_2_OVER_PI / x.sqrt()
}

// Series/continued-fraction switch for Si and Ci.
const SICI_SWITCH: f64 = 6.0;

/// Si(x) = ∫₀ˣ sin t / t dt for x ≥ 0. Si(x) → π/2 as x → ∞.
pub fn sin_integral(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("Si requires x >= 0, got {x}")));
    }
    if x < SICI_SWITCH {
        return Ok(si_series(x));
    }
    let (si, _) = sici_continued_fraction(x)?;
    Ok(si)
}

/// Ci(x) = γ + ln x + ∫₀ˣ (cos t − 1)/t dt for x > 0. Ci(x) → 0 as x → ∞.
pub fn cos_integral(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!(
            "Ci requires x > 0 (logarithmic singularity at 0), got {x}"
        )));
    }
    if x < SICI_SWITCH {
        return Ok(ci_series(x));
    }
    let (_, ci) = sici_continued_fraction(x)?;
    Ok(ci)
}

fn si_series(x: f64) -> f64 {
    // Σ (-1)^m x^(2m+1) / ((2m+1)(2m+1)!)
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    for m in 1..60 {
        let m = m as f64;
        term *= -x2 * (2.0 * m - 1.0) / ((2.0 * m) * (2.0 * m + 1.0) * (2.0 * m + 1.0));
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1.0) {
            break;
        }
    }
    sum
}

fn ci_series(x: f64) -> f64 {
    // γ + ln x + Σ (-1)^m x^(2m) / ((2m)(2m)!)
    let x2 = x * x;
    let mut term = 1.0f64;
    let mut sum = 0.0;
    for m in 1..60 {
        let m = m as f64;
        term *= -x2 / ((2.0 * m - 1.0) * (2.0 * m));
        let contrib = term / (2.0 * m);
        sum += contrib;
        if contrib.abs() < 1e-18 * sum.abs().max(1.0) {
            break;
        }
    }
    EULER_GAMMA + x.ln() + sum
}

/// Evaluates (Si, Ci) for x ≥ 6 from E₁(ix) = −Ci(x) + i(Si(x) − π/2),
/// with the even continued fraction of E₁ run by modified Lentz.
fn sici_continued_fraction(x: f64) -> Result<(f64, f64)> {
    const FPMIN: f64 = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / FPMIN, 0.0);
    let mut d = b.inv();
    let mut h = d;
    let mut converged = false;
    for i in 2..200u32 {
        let a = -(((i - 1) * (i - 1)) as f64);
        b += Complex64::new(2.0, 0.0);
        d = (a * d + b).inv();
        c = b + a * c.inv();
        let del = c * d;
        h *= del;
        if (del - Complex64::new(1.0, 0.0)).norm() < 1e-16 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            what: format!("Si/Ci continued fraction at x = {x}"),
            best_re: h.re,
            best_im: h.im,
            abs_error_estimate: f64::NAN,
            evaluations: 200,
        });
    }
    let e1 = h * Complex64::new(x.cos(), -x.sin());
    Ok((FRAC_PI_2 + e1.im, -e1.re))
}

// First zeros of J0 to full double precision.
static J0_ZEROS: [f64; 5] = [
    2.4048255576957728,
    5.5200781102863106,
    8.6537279129110122,
    11.791534439014282,
    14.930917708487786,
];

/// m-th positive zero of J₀ (m ≥ 1). Tabulated for m ≤ 5; McMahon expansion
/// plus one difference-Newton polish beyond.
pub fn j0_zero(m: usize) -> f64 {
    assert!(m >= 1, "zeros are indexed from 1");
    if m <= J0_ZEROS.len() {
        return J0_ZEROS[m - 1];
    }
    let beta = (m as f64 - 0.25) * PI;
    let b2 = beta * beta;
    // McMahon: β + 1/(8β) - 124/(3(8β)^3) + 120928/(15(8β)^5) - ...
    let z = beta
        + 1.0 / (8.0 * beta)
            * (1.0
                - 124.0 / (3.0 * 64.0 * b2)
                    * (1.0 - 120928.0 * 3.0 * 64.0 / (15.0 * 124.0 * 4096.0 * b2)));
    let h = 1e-5;
    let slope = (bessel_j0(z + h) - bessel_j0(z - h)) / (2.0 * h);
    z - bessel_j0(z) / slope
}
