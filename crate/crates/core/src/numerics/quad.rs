//! Globally adaptive Gauss–Kronrod quadrature.
//!
//! A 21-point Kronrod rule (10-point Gauss embedded) scores each interval;
//! the interval with the largest error estimate is bisected until the summed
//! estimate meets the tolerance, stagnates at the rounding floor, or the
//! interval budget runs out. The subdivision order is a deterministic
//! function of the integrand, so repeated runs are bit-identical.

use num_complex::Complex64;
use std::collections::BinaryHeap;

use super::{CQuadResult, QuadResult};
use crate::{Error, Result};

// QUADPACK 21-point Kronrod abscissae and weights (positive half).
#[allow(clippy::excessive_precision)]
static XGK21: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
static WG10: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];
#[allow(clippy::excessive_precision)]
static WGK21: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077958109831074,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

/// One Kronrod-21 application on [a, b]: (value, error estimate, ∫|f|).
fn gk21<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut res_kronrod = f_center * WGK21[10];
    let mut res_gauss = Complex64::new(0.0, 0.0);
    let mut res_abs = res_kronrod.norm();

    let mut fv = [Complex64::new(0.0, 0.0); 21];
    fv[10] = f_center;

    for j in 0..10 {
        let x = half * XGK21[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[j] = f1;
        fv[20 - j] = f2;
        let sum = f1 + f2;
        res_kronrod += WGK21[j] * sum;
        res_abs += WGK21[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            res_gauss += WG10[j / 2] * sum;
        }
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK21[10] * (f_center - mean).norm();
    for j in 0..10 {
        res_asc += WGK21[j] * ((fv[j] - mean).norm() + (fv[20 - j] - mean).norm());
    }

    let value = res_kronrod * half;
    res_abs *= half.abs();
    res_asc *= half.abs();

    let mut err = ((res_kronrod - res_gauss) * half).norm();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, err, res_abs)
}

struct Interval {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    resabs: f64,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.a == other.a
    }
}
impl Eq for Interval {}
impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Interval {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // max-heap on error, ties broken by left endpoint for determinism
        self.err
            .partial_cmp(&other.err)
            .unwrap()
            .then(other.a.partial_cmp(&self.a).unwrap())
    }
}

const MAX_INTERVALS: usize = 4000;

/// Adaptive quadrature of a complex-valued integrand over [a, b] to absolute
/// tolerance `tol`. Succeeds when the error estimate reaches `tol` or the
/// rounding floor of the rule, whichever is larger.
pub fn integrate_adaptive_complex<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<CQuadResult> {
    if !(a < b) {
        return Err(Error::Domain(format!("bad interval [{a}, {b}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let (v0, e0, r0) = gk21(&f, a, b);
    let mut evals = 21usize;
    let mut heap = BinaryHeap::new();
    heap.push(Interval {
        a,
        b,
        value: v0,
        err: e0,
        resabs: r0,
    });
    let mut total_err = e0;
    let mut total_resabs = r0;

    loop {
        let floor = 100.0 * f64::EPSILON * total_resabs;
        if total_err <= tol.max(floor) || heap.len() >= MAX_INTERVALS {
            break;
        }
        let worst = heap.pop().expect("heap non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // at floating-point resolution; cannot split further
            heap.push(worst);
            break;
        }
        let (vl, el, rl) = gk21(&f, worst.a, mid);
        let (vr, er, rr) = gk21(&f, mid, worst.b);
        evals += 42;
        // splitting helped nothing and both children sit at the rounding
        // floor: further refinement cannot lower the estimate
        let child_floor = 100.0 * f64::EPSILON * (rl + rr);
        let stagnated = el + er > 0.999 * worst.err && el + er <= 1e3 * child_floor;
        total_err += el + er - worst.err;
        total_resabs += rl + rr - worst.resabs;
        heap.push(Interval {
            a: worst.a,
            b: mid,
            value: vl,
            err: el,
            resabs: rl,
        });
        heap.push(Interval {
            a: mid,
            b: worst.b,
            value: vr,
            err: er,
            resabs: rr,
        });
        if stagnated {
            break;
        }
    }

    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut resabs = 0.0;
    // accumulate in interval order for reproducibility
    let mut parts: Vec<Interval> = heap.into_vec();
    parts.sort_by(|p, q| p.a.partial_cmp(&q.a).unwrap());
    for p in &parts {
        value += p.value;
        err += p.err;
        resabs += p.resabs;
    }

    let ok = value.re.is_finite()
        && value.im.is_finite()
        && err.is_finite()
        && err <= tol.max(200.0 * f64::EPSILON * resabs);
    if !ok {
        return Err(Error::NonConvergence {
            what: format!("adaptive quadrature on [{a}, {b}]"),
            best_re: value.re,
            best_im: value.im,
            abs_error_estimate: err,
            evaluations: evals,
        });
    }
    Ok(CQuadResult {
        value,
        abs_error_estimate: err,
        evaluations: evals,
    })
}

/// Adaptive quadrature of a real integrand over [a, b] to absolute tolerance.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    let r = integrate_adaptive_complex(|x| Complex64::new(f(x), 0.0), a, b, tol)?;
    Ok(QuadResult {
        value: r.value.re,
        abs_error_estimate: r.abs_error_estimate,
        evaluations: r.evaluations,
    })
}

/// Integrates over consecutive panels `[x0,x1], [x1,x2], ...` given by
/// `breakpoints`, splitting the tolerance evenly across panels. Each panel
/// may still settle at its own rounding floor.
pub fn integrate_piecewise<F: Fn(f64) -> Complex64>(
    f: F,
    breakpoints: &[f64],
    tol: f64,
) -> Result<CQuadResult> {
    if breakpoints.len() < 2 {
        return Err(Error::Domain("need at least two breakpoints".into()));
    }
    let panels = breakpoints.len() - 1;
    let per_panel = tol / panels as f64;
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut evals = 0;
    for w in breakpoints.windows(2) {
        let r = integrate_adaptive_complex(&f, w[0], w[1], per_panel)?;
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

/// Gauss–Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / pp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}
