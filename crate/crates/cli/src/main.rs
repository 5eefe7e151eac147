//! `bathtangle`: bath-induced two-qubit tangle amplitudes, separation scans,
//! power-law fits, exact-diagonalization cross-checks and special-function
//! evaluation.
//!
//! Exit codes: 0 success, 1 computation/data error, 2 usage error.

mod config;
mod io;

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use bathtangle::analysis::{claim_report, envelope_points, window_sweep};
use bathtangle::continuum::{default_method, Convention, Method};
use bathtangle::ed::{ed_ground, EdModel};
use bathtangle::entangle::{projection_tangle, two_tangle, x_state_concurrence};
use bathtangle::model::{plane_wave_bath, BathConfig, GridPoint};
use bathtangle::numerics::{bessel_j0, cos_integral, sin_integral};
use bathtangle::perturb::{
    discrete_tangle, dressed_state, energy_shift2, reduced_state,
};
use bathtangle::scan::{r_grid, scan_rows};

use config::{pick, pick_opt, FileConfig};
use io::{fmt_f64, FitColumn};

#[derive(Parser)]
#[command(
    name = "bathtangle",
    version,
    about = "Ground-state entanglement induced by a common bosonic bath"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the continuum amplitude at one separation (CSV row)
    Amplitude(PointArgs),
    /// Compute the tangle at one separation (CSV row in scan schema)
    Tangle(PointArgs),
    /// Scan separations and write amplitude + tangle rows
    Scan(ScanArgs),
    /// Fit a power law to a scan CSV and report against a claimed exponent
    Fit(FitArgs),
    /// Compare second-order perturbation theory against exact diagonalization
    EdCheck(EdArgs),
    /// Evaluate J0, Si or Ci at a point
    Specfun(SpecfunArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Bath dimension (1, 2 or 3)
    #[arg(long)]
    dim: Option<u8>,
    /// Coupling dispersion exponent ν (ε ∝ ω^ν)
    #[arg(long)]
    nu: Option<f64>,
    /// Resonance wavenumber (= spin splitting ω0)
    #[arg(long)]
    k0: Option<f64>,
    /// Cutoff wavenumber ('inf' allowed where the method supports it)
    #[arg(long)]
    kc: Option<f64>,
    /// Coupling prefactor
    #[arg(long)]
    g: Option<f64>,
    /// Amplitude method: closed|quad|smoothed|residue|pv
    #[arg(long)]
    method: Option<String>,
    /// 1D mode-integral convention: full-line|abs-k
    #[arg(long)]
    convention: Option<String>,
    /// RNG seed carried in reports (all computations are deterministic)
    #[arg(long)]
    seed: Option<u64>,
    /// JSON config file; keys match flag names, flags win
    #[arg(long)]
    config: Option<String>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Spin separation
    #[arg(long)]
    r: Option<f64>,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Smallest separation
    #[arg(long)]
    rmin: Option<f64>,
    /// Largest separation
    #[arg(long)]
    rmax: Option<f64>,
    /// Number of scan points
    #[arg(long)]
    points: Option<usize>,
    /// Log-spaced grid (default; pass --log=false for linear)
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    log: Option<bool>,
}

#[derive(Args)]
struct FitArgs {
    /// Input scan CSV (scan schema or bare `r,y` rows)
    input: String,
    /// Claimed exponent to compare against
    #[arg(long, allow_hyphen_values = true)]
    claimed: Option<f64>,
    /// Tolerance for the claim (default 0.1 when a claim is given)
    #[arg(long)]
    tol: Option<f64>,
    /// Number of sliding log windows (default: about one decade each)
    #[arg(long)]
    windows: Option<usize>,
    /// Column to fit: tangle|amp
    #[arg(long)]
    column: Option<String>,
    /// Fit the |y| local-maxima envelope (for sign-changing data)
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    envelope: Option<bool>,
    /// JSON config file; keys match flag names, flags win
    #[arg(long)]
    config: Option<String>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct EdArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Spin separation used for the bath phases
    #[arg(long)]
    r: Option<f64>,
    /// Number of bath modes
    #[arg(long)]
    modes: Option<usize>,
    /// Per-mode boson occupation cutoff
    #[arg(long)]
    nmax: Option<usize>,
    /// Comma-separated coupling prefactors, e.g. 1e-2,5e-3,2.5e-3
    #[arg(long)]
    glist: Option<String>,
}

#[derive(Args)]
struct SpecfunArgs {
    /// Function name: j0|si|ci
    name: String,
    /// Evaluation point
    x: f64,
    /// Output path (stdout when omitted)
    #[arg(long)]
    output: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Amplitude(a) => cmd_point(a, false),
        Command::Tangle(a) => cmd_point(a, true),
        Command::Scan(a) => cmd_scan(a),
        Command::Fit(a) => cmd_fit(a),
        Command::EdCheck(a) => cmd_ed_check(a),
        Command::Specfun(a) => cmd_specfun(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CmdError::Computation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

enum CmdError {
    Usage(String),
    Computation(String),
}

impl From<bathtangle::Error> for CmdError {
    fn from(e: bathtangle::Error) -> Self {
        match e {
            bathtangle::Error::InvalidConfig(_) => CmdError::Usage(e.to_string()),
            other => CmdError::Computation(other.to_string()),
        }
    }
}

fn usage<T: Into<String>>(msg: T) -> CmdError {
    CmdError::Usage(msg.into())
}

struct Resolved {
    bath: BathConfig,
    method: Option<Method>,
    convention: Convention,
    output: Option<String>,
    #[allow(dead_code)]
    seed: u64,
    file: FileConfig,
}

fn resolve_common(common: &CommonArgs) -> Result<Resolved, CmdError> {
    let file = FileConfig::load(common.config.as_deref()).map_err(usage)?;
    let bath = BathConfig::new(
        pick(common.dim, file.dim, 3),
        pick(common.nu, file.nu, 0.5),
        pick(common.k0, file.k0, 1.0),
        pick(common.kc, file.kc, 100.0),
        pick(common.g, file.g, 1.0),
    )?;
    let method = pick_opt(common.method.clone(), file.method.clone())
        .map(|s| Method::from_str(&s))
        .transpose()?;
    let convention = pick_opt(common.convention.clone(), file.convention.clone())
        .map(|s| Convention::from_str(&s))
        .transpose()?
        .unwrap_or_default();
    Ok(Resolved {
        bath,
        method,
        convention,
        output: pick_opt(common.output.clone(), file.output.clone()),
        seed: pick(common.seed, file.seed, 42),
        file,
    })
}

fn emit(output: Option<&str>, text: &str) -> Result<(), CmdError> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CmdError::Computation(format!("cannot write {path}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_point(args: PointArgs, tangle_row: bool) -> Result<(), CmdError> {
    let res = resolve_common(&args.common)?;
    let r = pick(args.r, res.file.r, 1.0);
    let method = res.method.unwrap_or(default_method(&res.bath, res.convention));
    let rows = scan_rows(&res.bath, Some(method), res.convention, &[r])?;
    let text = if tangle_row {
        io::scan_csv(&rows)
    } else {
        io::amplitude_csv(res.bath.dimension, res.bath.nu, res.bath.k0, res.bath.kc, &rows)
    };
    emit(res.output.as_deref(), &text)
}

fn cmd_scan(args: ScanArgs) -> Result<(), CmdError> {
    let res = resolve_common(&args.common)?;
    let rmin = pick(args.rmin, res.file.rmin, 0.01);
    let rmax = pick(args.rmax, res.file.rmax, 10.0);
    let points = pick(args.points, res.file.points, 124);
    let log = pick(args.log, res.file.log, true);
    let rs = r_grid(rmin, rmax, points, log)?;
    let rows = scan_rows(&res.bath, res.method, res.convention, &rs)?;
    emit(res.output.as_deref(), &io::scan_csv(&rows))
}

#[derive(Serialize)]
struct FitOutput {
    #[serde(flatten)]
    report: bathtangle::analysis::ClaimReport,
    column: &'static str,
    envelope: bool,
    n_points: usize,
}

fn cmd_fit(args: FitArgs) -> Result<(), CmdError> {
    let file = FileConfig::load(args.config.as_deref()).map_err(usage)?;
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| CmdError::Computation(format!("cannot read {}: {e}", args.input)))?;
    let column = match pick(args.column.clone(), file.column.clone(), "tangle".into()).as_str() {
        "tangle" => FitColumn::Tangle,
        "amp" => FitColumn::AmpModulus,
        other => return Err(usage(format!("unknown column '{other}' (tangle|amp)"))),
    };
    let mut points = io::read_fit_points(&text, column).map_err(CmdError::Computation)?;
    let envelope = pick(args.envelope, file.envelope, false);
    if envelope {
        points = envelope_points(&points);
    } else {
        // log-log fits need positive data either way
        points.iter_mut().for_each(|p| p.1 = p.1.abs());
    }
    if points.len() < 3 {
        return Err(CmdError::Computation(format!(
            "only {} usable points after preprocessing",
            points.len()
        )));
    }
    let claimed = pick_opt(args.claimed, file.claimed);
    let tol = pick_opt(args.tol, file.tol).or(claimed.map(|_| 0.1));
    let windows = pick(args.windows, file.windows, default_windows(&points));
    let fits = window_sweep(&points, windows)?;
    let report = claim_report(&fits, claimed, tol);
    let out = FitOutput {
        report,
        column: match column {
            FitColumn::Tangle => "tangle",
            FitColumn::AmpModulus => "amp",
        },
        envelope,
        n_points: points.len(),
    };
    let mut json = serde_json::to_string_pretty(&out).expect("report serializes");
    json.push('\n');
    let output = pick_opt(args.output, file.output);
    emit(output.as_deref(), &json)
}

/// Enough windows that each spans roughly one decade.
fn default_windows(points: &[(f64, f64)]) -> usize {
    let decades = (points[points.len() - 1].0 / points[0].0).log10().abs();
    ((2.0 * decades - 1.0).round() as isize).max(1) as usize
}

#[derive(Serialize)]
struct EdCheckRow {
    g: f64,
    /// mixed-state two-tangle of the exact reduced ground state
    ed_tangle: f64,
    /// mixed-state two-tangle of the perturbative reduced state
    pert_tangle: f64,
    /// pure-projection tangle 4|⟨ee,0|Ψ⟩|² of the normalized dressed state
    projection_tangle: f64,
    /// (4/ω0²)|Σ λλ*/(ω0+ω)|², the amplitude-formula tangle
    amplitude_tangle: f64,
    /// X-state closed form applied to the perturbative reduced state
    x_state_tangle: f64,
    ed_energy_shift: f64,
    pert_energy_shift: f64,
    tangle_rel_err: f64,
    energy_rel_err: f64,
}

#[derive(Serialize)]
struct EdCheckReport {
    schema_version: u32,
    modes: usize,
    nmax: usize,
    hilbert_dim: usize,
    k0: f64,
    nu: f64,
    r: f64,
    rows: Vec<EdCheckRow>,
    /// rel-err ratios between consecutive g values (≈ 4 for O(g²) errors)
    tangle_ratios: Vec<f64>,
    energy_ratios: Vec<f64>,
}

/// Deterministic N-mode bath: frequencies spread over [0.6, 1.4]·k0 with
/// equal weights 1/N, plane-wave phases at separation r.
fn ed_check_grid(n: usize, k0: f64) -> Vec<GridPoint> {
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

fn cmd_ed_check(args: EdArgs) -> Result<(), CmdError> {
    let res = resolve_common(&args.common)?;
    let r = pick(args.r, res.file.r, 1.0);
    let modes = pick(args.modes, res.file.modes, 3);
    let nmax = pick(args.nmax, res.file.nmax, 2);
    let glist_text = pick(
        args.glist,
        res.file.glist.clone(),
        "1e-2,5e-3,2.5e-3".into(),
    );
    let gs: Vec<f64> = glist_text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| usage(format!("bad --glist: {e}")))?;
    if gs.is_empty() || gs.iter().any(|&g| g < 0.0) {
        return Err(usage("--glist needs nonnegative couplings"));
    }

    let grid = ed_check_grid(modes, res.bath.k0);
    let mut rows = Vec::new();
    let mut dim = 0usize;
    for &g in &gs {
        let cfg = BathConfig { g, ..res.bath };
        let bath = plane_wave_bath(&cfg, r, &grid)?;
        let model = EdModel::new(bath.clone(), nmax)?;
        dim = model.dim()?;
        let ed = ed_ground(&model)?;
        let st = dressed_state(&bath)?;
        let rho = reduced_state(&st)?;
        let pert_tangle = two_tangle(&rho)?;
        let projection = projection_tangle(st.c_ee, st.norm2.sqrt())?;
        let x_c = x_state_concurrence(
            rho.entry(0, 0).re,
            rho.entry(1, 1).re,
            rho.entry(2, 2).re,
            rho.entry(3, 3).re,
            rho.entry(0, 3),
            rho.entry(1, 2),
        )?;
        let tangle_rel_err = if ed.tangle != 0.0 {
            ((pert_tangle - ed.tangle) / ed.tangle).abs()
        } else {
            0.0
        };
        let energy_rel_err = if ed.energy_shift != 0.0 {
            ((energy_shift2(&bath) - ed.energy_shift) / ed.energy_shift).abs()
        } else {
            0.0
        };
        rows.push(EdCheckRow {
            g,
            ed_tangle: ed.tangle,
            pert_tangle,
            projection_tangle: projection,
            amplitude_tangle: discrete_tangle(&bath),
            x_state_tangle: x_c * x_c,
            ed_energy_shift: ed.energy_shift,
            pert_energy_shift: energy_shift2(&bath),
            tangle_rel_err,
            energy_rel_err,
        });
    }
    let ratio = |f: fn(&EdCheckRow) -> f64| -> Vec<f64> {
        rows.windows(2)
            .map(|w| {
                let (a, b) = (f(&w[0]), f(&w[1]));
                if b != 0.0 {
                    a / b
                } else {
                    f64::NAN
                }
            })
            .collect()
    };
    let report = EdCheckReport {
        schema_version: 1,
        modes,
        nmax,
        hilbert_dim: dim,
        k0: res.bath.k0,
        nu: res.bath.nu,
        r,
        tangle_ratios: ratio(|r| r.tangle_rel_err),
        energy_ratios: ratio(|r| r.energy_rel_err),
        rows,
    };
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    emit(res.output.as_deref(), &json)
}

fn cmd_specfun(args: SpecfunArgs) -> Result<(), CmdError> {
    let value = match args.name.as_str() {
        "j0" => bessel_j0(args.x),
        "si" => sin_integral(args.x)?,
        "ci" => cos_integral(args.x)?,
        other => return Err(usage(format!("unknown function '{other}' (j0|si|ci)"))),
    };
    emit(args.output.as_deref(), &format!("{}\n", fmt_f64(value)))
}
