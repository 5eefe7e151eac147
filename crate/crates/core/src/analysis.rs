//! Power-law scaling extraction: ordinary least squares on (ln r, ln y),
//! sliding log-window sweeps, and pass/flag reports against claimed
//! exponents. Reports never assert; disagreement is flagged and both values
//! are carried.

use serde::Serialize;

use crate::{Error, Result};

/// Result of one log-log fit y ≈ e^intercept · r^exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitResult {
    pub exponent: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// (r_min, r_max) of the fitted window.
    pub window: (f64, f64),
    pub n_points: usize,
}

/// OLS fit of ln y on ln r. Requires ≥ 3 points, strictly increasing r and
/// strictly positive y (fit |y| upstream for sign-changing data).
pub fn fit_exponent(points: &[(f64, f64)]) -> Result<FitResult> {
    if points.len() < 3 {
        return Err(Error::Domain(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    for w in points.windows(2) {
        if !(w.first().unwrap().0 < w.last().unwrap().0) {
            return Err(Error::Domain("r values must be strictly increasing".into()));
        }
    }
    for &(r, y) in points {
        if !(r > 0.0) || !(y > 0.0) {
            return Err(Error::Domain(format!(
                "log-log fit needs positive data, got (r = {r}, y = {y}); \
                 fit |y| or an envelope for sign-changing amplitudes"
            )));
        }
    }
    let n = points.len() as f64;
    let logs: Vec<(f64, f64)> = points.iter().map(|&(r, y)| (r.ln(), y.ln())).collect();
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(x, y) in &logs {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    let exponent = sxy / sxx;
    let intercept = mean_y - exponent * mean_x;
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    let mut spread = 0.0f64;
    for &(x, y) in &logs {
        let fit = intercept + exponent * x;
        ss_res += (y - fit) * (y - fit);
        ss_tot += (y - mean_y) * (y - mean_y);
        spread = spread.max((y - mean_y).abs());
    }
    // data constant to round-off: the slope-0 line is exact and the
    // residual quotient would be pure noise
    let r_squared = if spread <= 1e-12 * (1.0 + mean_y.abs()) {
        1.0
    } else if ss_tot > 0.0 {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(FitResult {
        exponent,
        intercept,
        r_squared,
        window: (points[0].0, points[points.len() - 1].0),
        n_points: points.len(),
    })
}

/// Fits over `window_count` sliding log-spaced windows (each two windows
/// overlap by half). Windows with fewer than 3 points are skipped. Results
/// come back sorted by r² descending, ties broken by window start.
pub fn window_sweep(scan: &[(f64, f64)], window_count: usize) -> Result<Vec<FitResult>> {
    if window_count < 1 {
        return Err(Error::Domain("window_count must be >= 1".into()));
    }
    if scan.len() < 3 {
        return Err(Error::Domain("scan too short for any window".into()));
    }
    if window_count == 1 {
        return Ok(vec![fit_exponent(scan)?]);
    }
    let l0 = scan[0].0.ln();
    let l1 = scan[scan.len() - 1].0.ln();
    let total = l1 - l0;
    if !(total > 0.0) {
        return Err(Error::Domain("degenerate scan range".into()));
    }
    let width = 2.0 * total / (window_count as f64 + 1.0);
    let step = (total - width) / (window_count as f64 - 1.0);
    let mut fits = Vec::new();
    for i in 0..window_count {
        let lo = l0 + i as f64 * step;
        let hi = lo + width;
        let pts: Vec<(f64, f64)> = scan
            .iter()
            .copied()
            .filter(|&(r, _)| {
                let lr = r.ln();
                lr >= lo - 1e-12 && lr <= hi + 1e-12
            })
            .collect();
        if pts.len() >= 3 {
            fits.push(fit_exponent(&pts)?);
        }
    }
    if fits.is_empty() {
        return Err(Error::Domain(
            "all windows degenerate (fewer than 3 points each)".into(),
        ));
    }
    fits.sort_by(|a, b| {
        b.r_squared
            .partial_cmp(&a.r_squared)
            .unwrap()
            .then(a.window.0.partial_cmp(&b.window.0).unwrap())
    });
    Ok(fits)
}

/// Outcome of comparing fitted exponents against a claimed one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Pass,
    Flag,
    #[serde(rename = "n/a")]
    NotApplicable,
}

/// Structured comparison report. `pass` means some window matched the claim
/// within tolerance at r² ≥ 0.99; `flag` carries both values for the reader;
/// `n/a` means no claim was supplied.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimReport {
    pub schema_version: u32,
    pub exponent: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub window: (f64, f64),
    pub claimed: Option<f64>,
    pub tolerance: Option<f64>,
    pub status: ClaimStatus,
    pub n_windows: usize,
}

/// Minimum fit quality for a window to support a claim.
pub const CLAIM_R_SQUARED: f64 = 0.99;

/// Builds the report from a set of window fits. With a claim, the
/// best-matching well-fitted window is selected; without one the best-r²
/// window is reported with status n/a.
pub fn claim_report(fits: &[FitResult], claimed: Option<f64>, tolerance: Option<f64>) -> ClaimReport {
    assert!(!fits.is_empty(), "claim_report needs at least one fit");
    let best = match claimed {
        Some(c) => {
            let good: Vec<&FitResult> = fits
                .iter()
                .filter(|f| f.r_squared >= CLAIM_R_SQUARED)
                .collect();
            if good.is_empty() {
                fits.iter()
                    .max_by(|a, b| a.r_squared.partial_cmp(&b.r_squared).unwrap())
                    .unwrap()
            } else {
                good.into_iter()
                    .min_by(|a, b| {
                        (a.exponent - c)
                            .abs()
                            .partial_cmp(&(b.exponent - c).abs())
                            .unwrap()
                    })
                    .unwrap()
            }
        }
        None => fits
            .iter()
            .max_by(|a, b| a.r_squared.partial_cmp(&b.r_squared).unwrap())
            .unwrap(),
    };
    let status = match (claimed, tolerance) {
        (Some(c), Some(t)) => {
            let ok = fits
                .iter()
                .any(|f| f.r_squared >= CLAIM_R_SQUARED && (f.exponent - c).abs() <= t);
            if ok {
                ClaimStatus::Pass
            } else {
                ClaimStatus::Flag
            }
        }
        _ => ClaimStatus::NotApplicable,
    };
    ClaimReport {
        schema_version: 1,
        exponent: best.exponent,
        intercept: best.intercept,
        r_squared: best.r_squared,
        window: best.window,
        claimed,
        tolerance,
        status,
        n_windows: fits.len(),
    }
}

/// Envelope of a sign-changing scan: the strict local maxima of |y|.
/// The log of a sign-changing quantity is undefined; its envelope decays
/// with the same power law.
pub fn envelope_points(scan: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let abs: Vec<(f64, f64)> = scan.iter().map(|&(r, y)| (r, y.abs())).collect();
    let mut out = Vec::new();
    for i in 1..abs.len().saturating_sub(1) {
        if abs[i].1 > abs[i - 1].1 && abs[i].1 > abs[i + 1].1 && abs[i].1 > 0.0 {
            out.push(abs[i]);
        }
    }
    out
}
