//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (run with `-- --nocapture` to see them all).
//!
//! Criteria:
//!  1. concurrence correctness (Bell, product, Werner, local unitaries)
//!  2. d=3 closed form vs quadrature at ν = 1/2 over a parameter grid
//!  3. d=1 distance independence: residue exact, regulated PV within 1e-3
//!  4. ED oracle convergence: O(g²) error ratios in [2, 8]
//!  5. discrete → continuum first-order grid convergence
//!  6. d=2 scaling exponents (soft windows + hard differential)
//!  7. d=3 scaling report emitted; closed vs quad fits agree per window
//!  8. special-function reference points
//!  9. byte-identical scan + fit reruns

use std::time::Instant;

use num_complex::Complex64;

use bathtangle::analysis::{claim_report, envelope_points, fit_exponent, window_sweep, ClaimStatus};
use bathtangle::continuum::{
    amplitude_1d_numeric, amplitude_1d_residue, amplitude_3d_closed, amplitude_3d_quad,
    amplitude_3d_smoothed, Convention,
};
use bathtangle::continuum::amplitude_2d;
use bathtangle::ed::{ed_ground, EdModel};
use bathtangle::entangle::{concurrence, DensityMatrix4};
use bathtangle::model::{
    plane_wave_bath, spherical_grid_3d, symmetric_grid_1d, BathConfig, GridPoint,
};
use bathtangle::numerics::{bessel_j0, cos_integral, integrate_piecewise, j0_zero, sin_integral};
use bathtangle::perturb::{discrete_amplitude, dressed_state, energy_shift2, reduced_state};
use bathtangle::scan::r_grid;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn budget(name: &str, start: Instant, limit_s: f64) {
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        elapsed < limit_s,
        "{name}: runtime {elapsed:.1}s exceeds {limit_s}s budget"
    );
}

#[test]
fn criterion_1_concurrence_correctness() {
    let t0 = Instant::now();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let bell =
        DensityMatrix4::from_pure([c64(s, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(s, 0.0)])
            .unwrap();
    assert!((concurrence(&bell).unwrap() - 1.0).abs() < 1e-12);
    let gg = DensityMatrix4::from_pure([c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0)])
        .unwrap();
    assert_eq!(concurrence(&gg).unwrap(), 0.0);

    // Werner family against the direct eigenvalue oracle
    for i in 0..=5 {
        let p = 0.2 * i as f64;
        let mut m = [c64(0.0, 0.0); 16];
        for a in 0..4 {
            for b in 0..4 {
                m[4 * a + b] = p * bell.entry(a, b);
            }
            m[4 * a + a] += c64((1.0 - p) / 4.0, 0.0);
        }
        let rho = DensityMatrix4::new(m).unwrap();
        let want = (0.0f64).max((3.0 * p - 1.0) / 2.0);
        assert!(
            (concurrence(&rho).unwrap() - want).abs() < 1e-10,
            "Werner p={p}"
        );
        // oracle: Werner states are Bell-diagonal, so the Wootters ξ are the
        // eigenvalues of ρ itself
        let ev = rho.eigenvalues().unwrap();
        let oracle = (ev[3] - ev[0] - ev[1] - ev[2]).max(0.0);
        assert!((concurrence(&rho).unwrap() - oracle).abs() < 1e-12);
    }

    // 200 seeded local-unitary invariance checks at 1e-9
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    for trial in 0..200 {
        // seeded full-rank mixed state: random pure state + white noise
        let amps: Vec<Complex64> = (0..4)
            .map(|_| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let pure = DensityMatrix4::from_pure([amps[0], amps[1], amps[2], amps[3]]).unwrap();
        let w: f64 = rng.gen_range(0.3..0.9);
        let mut m = [c64(0.0, 0.0); 16];
        for i in 0..4 {
            for j in 0..4 {
                m[4 * i + j] = w * pure.entry(i, j);
            }
            m[4 * i + i] += c64((1.0 - w) / 4.0, 0.0);
        }
        let rho = DensityMatrix4::new(m).unwrap();
        let c0 = concurrence(&rho).unwrap();

        let ua = su2(&mut rng);
        let ub = su2(&mut rng);
        let mut u = [[c64(0.0, 0.0); 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        u[2 * i + k][2 * j + l] = ua[i][j] * ub[k][l];
                    }
                }
            }
        }
        let mut rot = [c64(0.0, 0.0); 16];
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = c64(0.0, 0.0);
                for k in 0..4 {
                    for l in 0..4 {
                        acc += u[i][k] * rho.entry(k, l) * u[j][l].conj();
                    }
                }
                rot[4 * i + j] = acc;
            }
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                let avg = 0.5 * (rot[4 * i + j] + rot[4 * j + i].conj());
                rot[4 * i + j] = avg;
                rot[4 * j + i] = avg.conj();
            }
            rot[4 * i + i] = c64(rot[4 * i + i].re, 0.0);
        }
        let c1 = concurrence(&DensityMatrix4::new(rot).unwrap()).unwrap();
        assert!(
            (c1 - c0).abs() <= 1e-9,
            "trial {trial}: |ΔC| = {:.2e}",
            (c1 - c0).abs()
        );
    }
    budget("criterion 1", t0, 1.0);
    println!("criterion 1: PASS — concurrence correctness (Bell, product, Werner, 200 local-unitary checks)");
}

fn su2(rng: &mut rand_chacha::ChaCha8Rng) -> [[Complex64; 2]; 2] {
    use rand::Rng;
    let theta: f64 = rng.gen_range(0.0..std::f64::consts::PI);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let psi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let (ct, st) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    [
        [Complex64::from_polar(ct, phi), Complex64::from_polar(st, psi)],
        [Complex64::from_polar(-st, -psi), Complex64::from_polar(ct, -phi)],
    ]
}

#[test]
fn criterion_2_closed_vs_quadrature_grid() {
    let t0 = Instant::now();
    let mut worst = 0.0f64;
    for &k0 in &[0.1, 1.0] {
        for &ratio in &[10.0, 100.0, 1000.0] {
            let kc = ratio * k0;
            for &x in &[1e-3, 1e-2, 1e-1, 1.0, 10.0] {
                let r = x / k0;
                let closed = amplitude_3d_closed(r, k0, kc).unwrap();
                let quad = amplitude_3d_quad(r, 0.5, k0, kc).unwrap();
                let rel = (closed.value - quad.value).norm() / closed.value.norm();
                worst = worst.max(rel);
                assert!(rel <= 1e-8, "rel {rel:.2e} at k0={k0} kc={kc} r={r}");
            }
        }
    }
    budget("criterion 2", t0, 10.0);
    println!("criterion 2: PASS — d=3 closed form vs quadrature, worst relative {worst:.2e} over 30-point grid");
}

#[test]
fn criterion_3_d1_distance_independence() {
    let t0 = Instant::now();
    let k0 = 1.0;
    // residue path: tangle constant to 1e-12 relative across [0.1, 100]/k0
    for n in [0u32, 1, 2] {
        let g4 = 1.0;
        let tangles: Vec<f64> = r_grid(0.1 / k0, 100.0 / k0, 41, true)
            .unwrap()
            .into_iter()
            .map(|r| {
                let a = amplitude_1d_residue(r, n, k0).unwrap();
                4.0 * g4 * a.value.norm_sqr() / (k0 * k0)
            })
            .collect();
        let t0v = tangles[0];
        for t in &tangles {
            assert!((t - t0v).abs() <= 1e-12 * t0v, "n={n}");
        }
    }
    // regulated PV numeric vs |A| = π k0^n at 5 separations
    for n in [0u32, 1, 2] {
        for &r in &[0.5, 1.0, 2.0, 3.0, 5.0] {
            let num = amplitude_1d_numeric(r, n, k0, Convention::FullLine).unwrap();
            let want = std::f64::consts::PI * k0.powi(n as i32);
            let rel = (num.value.norm() - want).abs() / want;
            assert!(rel <= 1e-3, "n={n} r={r}: |A| rel err {rel:.2e}");
        }
    }
    budget("criterion 3", t0, 30.0);
    println!("criterion 3: PASS — d=1 tangle distance-independent (residue exact, PV numeric ≤ 1e-3)");
}

fn ed_grid(n: usize, k0: f64) -> Vec<GridPoint> {
    (0..n)
        .map(|j| {
            let f = if n == 1 {
                1.0
            } else {
                0.6 + 0.8 * j as f64 / (n - 1) as f64
            };
            GridPoint {
                omega: f * k0,
                k_along: f * k0,
                weight: 1.0 / n as f64,
            }
        })
        .collect()
}

#[test]
fn criterion_4_ed_oracle_convergence() {
    let t0 = Instant::now();
    for (nmodes, nmax) in [(1usize, 3usize), (3, 2), (3, 3)] {
        let mut errs: Vec<(f64, f64)> = Vec::new();
        for &g in &[1e-2, 5e-3, 2.5e-3] {
            let cfg = BathConfig::new(1, 0.0, 1.0, 10.0, g).unwrap();
            let bath = plane_wave_bath(&cfg, 1.0, &ed_grid(nmodes, 1.0)).unwrap();
            let model = EdModel::new(bath.clone(), nmax).unwrap();
            assert!(model.dim().unwrap() <= 1024);
            let ed = ed_ground(&model).unwrap();
            let pert = bathtangle::entangle::two_tangle(
                &reduced_state(&dressed_state(&bath).unwrap()).unwrap(),
            )
            .unwrap();
            let t_rel = ((pert - ed.tangle) / ed.tangle).abs();
            let e_rel = ((energy_shift2(&bath) - ed.energy_shift) / ed.energy_shift).abs();
            errs.push((t_rel, e_rel));
        }
        for w in errs.windows(2) {
            let rt = w[0].0 / w[1].0;
            let re = w[0].1 / w[1].1;
            assert!(
                (2.0..=8.0).contains(&rt),
                "N={nmodes} nmax={nmax}: tangle ratio {rt}"
            );
            assert!(
                (2.0..=8.0).contains(&re),
                "N={nmodes} nmax={nmax}: energy ratio {re}"
            );
        }
    }
    budget("criterion 4", t0, 60.0);
    println!("criterion 4: PASS — ED oracle convergence ratios in [2, 8] for N ∈ {{1, 3}}, n_max ∈ {{2, 3}}");
}

#[test]
fn criterion_5_discrete_to_continuum() {
    let t0 = Instant::now();
    // d = 3, ν = 1/2 against the closed form (full continuum normalization)
    let (k0, kc, r) = (1.0, 10.0, 1.3);
    let cont3 = amplitude_3d_closed(r, k0, kc).unwrap().value.re
        / (2.0 * std::f64::consts::PI.powi(2) * r);
    let cfg3 = BathConfig::new(3, 0.5, k0, kc, 1.0).unwrap();
    let mut errs = Vec::new();
    for &dk in &[0.05, 0.025, 0.0125] {
        let bath = plane_wave_bath(&cfg3, r, &spherical_grid_3d(dk, kc, 64)).unwrap();
        errs.push((discrete_amplitude(&bath).re - cont3).abs());
    }
    for w in errs.windows(2) {
        let ratio = w[0] / w[1];
        assert!((1.7..=2.3).contains(&ratio), "d3 ratio {ratio}");
    }

    // d = 1, abs-k convention with the same finite cutoff
    let cfg1 = BathConfig::new(1, 0.0, k0, kc, 1.0).unwrap();
    let mut pts: Vec<f64> = vec![0.0];
    let mut m = 0usize;
    loop {
        let z = (m as f64 + 0.5) * std::f64::consts::PI / r;
        if z >= kc {
            break;
        }
        pts.push(z);
        m += 1;
    }
    pts.push(kc);
    let cont1 = integrate_piecewise(
        |k: f64| Complex64::new((k * r).cos() / (k0 + k), 0.0),
        &pts,
        1e-13,
    )
    .unwrap()
    .value
    .re
        / std::f64::consts::PI;
    let mut errs = Vec::new();
    for &dk in &[0.02, 0.01, 0.005] {
        let bath = plane_wave_bath(&cfg1, r, &symmetric_grid_1d(dk, kc)).unwrap();
        errs.push((discrete_amplitude(&bath).re - cont1).abs());
    }
    for w in errs.windows(2) {
        let ratio = w[0] / w[1];
        assert!((1.7..=2.3).contains(&ratio), "d1 ratio {ratio}");
    }
    budget("criterion 5", t0, 20.0);
    println!("criterion 5: PASS — plane-wave Riemann sums converge first-order (ratios in [1.7, 2.3])");
}

#[test]
fn criterion_6_d2_exponents() {
    let t0 = Instant::now();
    let (k0, kc) = (1.0, 1000.0);
    let rs = r_grid(2e-3 / k0, 0.3 / k0, 90, true).unwrap();
    let best_fit = |nu: f64| {
        let pts: Vec<(f64, f64)> = rs
            .iter()
            .map(|&r| (r, amplitude_2d(r, nu, k0, kc).unwrap().value.re.abs()))
            .collect();
        let fits = window_sweep(&pts, 9).unwrap();
        fits.into_iter()
            .filter(|f| f.r_squared >= 0.98)
            .max_by(|a, b| a.r_squared.partial_cmp(&b.r_squared).unwrap())
            .expect("at least one well-fitted window")
    };
    let f0 = best_fit(0.0);
    let f_half = best_fit(0.5);
    let f1 = best_fit(1.0);
    assert!(
        (f0.exponent + 1.0).abs() <= 0.5 && f0.r_squared >= 0.98,
        "nu=0: {f0:?}"
    );
    assert!(
        (f_half.exponent + 1.0).abs() <= 0.5 && f_half.r_squared >= 0.98,
        "nu=1/2: {f_half:?}"
    );
    assert!(
        (f1.exponent + 3.0).abs() <= 0.7 && f1.r_squared >= 0.98,
        "nu=1: {f1:?}"
    );
    let differential = f1.exponent - f0.exponent;
    assert!(
        (differential + 2.0).abs() <= 0.3,
        "differential {differential}"
    );
    budget("criterion 6", t0, 60.0);
    println!(
        "criterion 6: PASS — d=2 amplitude exponents ν=0: {:.3}, ν=1/2: {:.3}, ν=1: {:.3}, differential {:.3}",
        f0.exponent, f_half.exponent, f1.exponent, differential
    );
}

#[test]
fn criterion_7_d3_scaling_report() {
    let t0 = Instant::now();
    let k0 = 1.0;
    // the claim report for the smoothed ν = 1/2 tangle against the r^-4
    // claim is always emitted (status may flag; that disagreement is a
    // documented open point of the analysis, not a defect of the artifact)
    let rs = r_grid(1e-3 / k0, 1e-1 / k0, 83, true).unwrap();
    let pts: Vec<(f64, f64)> = rs
        .iter()
        .map(|&r| {
            let a = amplitude_3d_smoothed(r, k0, f64::INFINITY).unwrap();
            (r, (4.0 / (k0 * k0)) * a.value.norm_sqr())
        })
        .collect();
    let fits = window_sweep(&pts, 9).unwrap();
    let report_half = claim_report(&fits, Some(-4.0), Some(0.3));
    assert!(matches!(
        report_half.status,
        ClaimStatus::Pass | ClaimStatus::Flag
    ));

    // ν = 0 via hard-cutoff quadrature, envelope-fitted, against r^-2
    let kc = 1000.0 * k0;
    let rs0 = r_grid(1e-3 / k0, 1e-1 / k0, 160, true).unwrap();
    let tangle0: Vec<(f64, f64)> = rs0
        .iter()
        .map(|&r| {
            let a = amplitude_3d_quad(r, 0.0, k0, kc).unwrap();
            (r, (4.0 / (k0 * k0)) * a.value.norm_sqr())
        })
        .collect();
    let env0 = envelope_points(&tangle0);
    assert!(env0.len() >= 4, "need enough envelope maxima");
    let fits0 = window_sweep(&env0, env0.len().min(5)).unwrap();
    let report_zero = claim_report(&fits0, Some(-2.0), Some(0.3));
    assert!(matches!(
        report_zero.status,
        ClaimStatus::Pass | ClaimStatus::Flag
    ));

    // hard assertion: closed-form- and quadrature-based fitted exponents
    // agree within 0.05 in every window (ν = 1/2, identical grids)
    let rs2 = r_grid(0.02 / k0, 2.0 / k0, 120, true).unwrap();
    let kc2 = 100.0 * k0;
    let closed_pts: Vec<(f64, f64)> = rs2
        .iter()
        .map(|&r| {
            let a = amplitude_3d_closed(r, k0, kc2).unwrap();
            (r, (4.0 / (k0 * k0)) * a.value.norm_sqr())
        })
        .collect();
    let quad_pts: Vec<(f64, f64)> = rs2
        .iter()
        .map(|&r| {
            let a = amplitude_3d_quad(r, 0.5, k0, kc2).unwrap();
            (r, (4.0 / (k0 * k0)) * a.value.norm_sqr())
        })
        .collect();
    let env_c = envelope_points(&closed_pts);
    let env_q = envelope_points(&quad_pts);
    assert_eq!(env_c.len(), env_q.len(), "envelope maxima must coincide");
    let fits_c = window_sweep(&env_c, 5).unwrap();
    let fits_q = window_sweep(&env_q, 5).unwrap();
    assert_eq!(fits_c.len(), fits_q.len());
    for (fc, fq) in fits_c.iter().zip(fits_q.iter()) {
        assert!(
            (fc.exponent - fq.exponent).abs() <= 0.05,
            "window {:?}: {} vs {}",
            fc.window,
            fc.exponent,
            fq.exponent
        );
    }
    budget("criterion 7", t0, 30.0);
    println!(
        "criterion 7: PASS — d=3 reports emitted (ν=1/2 smoothed tangle exponent {:.3} vs claim -4: {:?}; ν=0 envelope exponent {:.3} vs claim -2: {:?}); closed/quad window fits agree ≤ 0.05",
        report_half.exponent, report_half.status, report_zero.exponent, report_zero.status
    );
}

#[test]
fn criterion_8_special_functions() {
    let t0 = Instant::now();
    assert!((sin_integral(std::f64::consts::PI).unwrap() - 1.8519370519824662).abs() < 1e-12);
    assert!((cos_integral(1.0).unwrap() - 0.33740392290096813).abs() < 1e-12);
    assert!((j0_zero(1) - 2.4048255576957728).abs() < 1e-12);
    assert!(bessel_j0(j0_zero(1)).abs() < 1e-12);
    assert!((bessel_j0(1.0) - 0.76519768655796655).abs() < 1e-12);
    budget("criterion 8", t0, 1.0);
    println!("criterion 8: PASS — Si(π), Ci(1), J0 first zero and J0(1) at 1e-12");
}

#[test]
fn criterion_9_byte_identical_reruns() {
    let exe = env!("CARGO_BIN_EXE_bathtangle");
    let dir = tempfile::tempdir().unwrap();
    let scan_a = dir.path().join("scan_a.csv");
    let scan_b = dir.path().join("scan_b.csv");
    let fit_a = dir.path().join("fit_a.json");
    let fit_b = dir.path().join("fit_b.json");

    let scan_args = |out: &std::path::Path| {
        vec![
            "scan".to_string(),
            "--dim".into(),
            "2".into(),
            "--nu".into(),
            "1".into(),
            "--k0".into(),
            "1".into(),
            "--kc".into(),
            "500".into(),
            "--g".into(),
            "1".into(),
            "--rmin".into(),
            "0.06".into(),
            "--rmax".into(),
            "0.4".into(),
            "--points".into(),
            "32".into(),
            "--log".into(),
            "--seed".into(),
            "42".into(),
            "--output".into(),
            out.to_str().unwrap().into(),
        ]
    };
    for (scan_out, fit_out) in [(&scan_a, &fit_a), (&scan_b, &fit_b)] {
        let st = std::process::Command::new(exe)
            .args(scan_args(scan_out))
            .status()
            .unwrap();
        assert!(st.success());
        let st = std::process::Command::new(exe)
            .args([
                "fit",
                scan_out.to_str().unwrap(),
                "--claimed",
                "-6",
                "--tol",
                "0.7",
                "--output",
                fit_out.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(st.success());
    }
    let a = std::fs::read(&scan_a).unwrap();
    let b = std::fs::read(&scan_b).unwrap();
    assert_eq!(a, b, "scan outputs differ between runs");
    let a = std::fs::read(&fit_a).unwrap();
    let b = std::fs::read(&fit_b).unwrap();
    assert_eq!(a, b, "fit outputs differ between runs");
    println!("criterion 9: PASS — repeated scan + fit runs are byte-identical");
}
