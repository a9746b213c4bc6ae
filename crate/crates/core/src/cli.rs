//! Experiment drivers behind the `fraclap` binary.
//!
//! Each subcommand has a library function returning typed rows, and a CSV
//! writer. The CSV starts with a `#` line recording the configuration, then a
//! header row; reals are printed with 17 significant digits.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::basis::ProblemParams;
use crate::diffusion::{
    assemble, convergence_study, evolve, init_state, linear_fit, loglog_slope, profile,
    weight_initial, DEFAULT_MODES, REFERENCE_DT,
};
use crate::operators::{analytic_pair, poisson_error, power_weight_error, PairId, TABLE_REFERENCE_N};
use crate::quadrature::{build_radial_rule, radial_moment, DEFAULT_FINE_N};
use crate::transform::{
    analyze_radial_f, analyze_radial_u_with, sup_error, synth_u, EvalGrid,
};
use crate::{BasisIndex, Error, Result};

/// Reference truncation for the oscillatory right-hand side.
pub const OSCILLATORY_REFERENCE_N: usize = 40;

/// Radial nodes for the coefficient-decay experiment; `u/w` is only Hölder
/// continuous at the boundary, so the default rule size is far too small.
pub const DECAY_RADIAL_NODES: usize = 400;

#[derive(Debug, Parser)]
#[command(name = "fraclap", version, about = "Spectral fractional Laplacian experiments on the unit ball")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gauss rule for the weight (1-r²)^{α/2} on [0,1]
    Quadrature(QuadratureArgs),
    /// Forward-operator errors for u = (1-|x|²)^{α/2+s}
    TableS(TableSArgs),
    /// Poisson-solve errors for the closed-form pairs eq1-eq4
    PoissonTable(PoissonArgs),
    /// Poisson solve for f = |x|² cos(16|x|) against a high-degree reference
    Oscillatory(OscillatoryArgs),
    /// Implicit Euler for the radial 3D fractional heat equation
    Diffusion(DiffusionArgs),
    /// Coefficients of u = 1 - |x|² in the weighted basis
    CoeffDecay(DecayArgs),
}

#[derive(Debug, Args)]
pub struct QuadratureArgs {
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 8)]
    pub k: usize,
    #[arg(long, default_value_t = DEFAULT_FINE_N)]
    pub fine_n: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableSArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [0.5, 1.0, 1.5])]
    pub alpha: Vec<f64>,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [0, 1, 2, 3])]
    pub s: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [0, 1, 2, 3])]
    pub n: Vec<usize>,
    /// Reference truncation
    #[arg(long, default_value_t = TABLE_REFERENCE_N)]
    pub n_max: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PoissonArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [0.5, 1.0, 1.5])]
    pub alpha: Vec<f64>,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [0, 1, 2])]
    pub n: Vec<usize>,
    /// Harmonic truncation; defaults to the smallest that represents each pair
    #[arg(long)]
    pub l_max: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OscillatoryArgs {
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [5, 10, 15, 20, 25, 30, 35, 40])]
    pub n: Vec<usize>,
    /// Reference truncation
    #[arg(long, default_value_t = OSCILLATORY_REFERENCE_N)]
    pub n_max: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiffusionArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [0.5, 1.0, 1.5])]
    pub alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = default_dts())]
    pub dt: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub t_final: f64,
    /// Number of radial modes
    #[arg(long, default_value_t = DEFAULT_MODES)]
    pub n_max: usize,
    /// Radial samples of the printed profile
    #[arg(long, default_value_t = 101)]
    pub radii: usize,
    /// Errors go to this file, the profile to `<stem>_profile.csv` beside it
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecayArgs {
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value_t = 30)]
    pub n_max: usize,
    /// Radial quadrature nodes
    #[arg(long, default_value_t = DECAY_RADIAL_NODES)]
    pub k: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// `2^-4, ..., 2^-9`.
pub fn default_dts() -> Vec<f64> {
    (4..=9).map(|k| 0.5f64.powi(k)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// One CSV document.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub config: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl CsvTable {
    pub fn render(&self) -> String {
        let mut s = format!("# {}\n{}\n", self.config, self.header.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Int(v) => v.to_string(),
                    Cell::Real(v) => format!("{:.16e}", v + 0.0),
                    Cell::Text(t) => t.clone(),
                })
                .collect();
            let _ = writeln!(s, "{}", cells.join(","));
        }
        s
    }
}

/// Tables plus human-readable summary lines and failed checks.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    /// `(file suffix, table)`; the first table has an empty suffix.
    pub tables: Vec<(&'static str, CsvTable)>,
    pub summary: Vec<String>,
    pub failures: Vec<String>,
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

// ---------------------------------------------------------------- quadrature

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSummary {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub weight_sum: f64,
    /// Relative moment error for degrees `0..2K`.
    pub residuals: Vec<f64>,
}

pub fn quadrature_check(alpha: f64, k: usize, fine_n: usize) -> Result<QuadratureSummary> {
    let rule = build_radial_rule(alpha, k, fine_n)?;
    let residuals = (0..2 * k)
        .map(|p| {
            let exact = radial_moment(alpha, p)?;
            Ok((rule.integrate(|r| r.powi(p as i32)) - exact).abs() / exact)
        })
        .collect::<Result<Vec<_>>>()?;
    let weight_sum = rule.weights.iter().sum();
    Ok(QuadratureSummary { nodes: rule.nodes, weights: rule.weights, weight_sum, residuals })
}

pub fn cmd_quadrature(a: &QuadratureArgs) -> Result<Report> {
    let q = quadrature_check(a.alpha, a.k, a.fine_n)?;
    let rows = q
        .nodes
        .iter()
        .zip(&q.weights)
        .enumerate()
        .map(|(i, (x, w))| vec![i.into(), (*x).into(), (*w).into()])
        .collect();
    let worst = q.residuals.iter().cloned().fold(0.0, f64::max);
    let mut report = Report {
        tables: vec![(
            "",
            CsvTable {
                config: format!("fraclap quadrature alpha={} k={} fine_n={}", a.alpha, a.k, a.fine_n),
                header: vec!["i", "node", "weight"],
                rows,
            },
        )],
        summary: vec![
            format!("sum of weights = {:.16e}", q.weight_sum),
            format!("max relative moment residual, degrees 0..{} = {worst:.3e}", 2 * a.k - 1),
        ],
        failures: Vec::new(),
    };
    if !(worst <= 1e-10) {
        report.failures.push(format!("moment residual {worst:.3e} exceeds 1e-10"));
    }
    Ok(report)
}

// ------------------------------------------------------------------ table-s

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableSRow {
    pub alpha: f64,
    pub dim: usize,
    pub s: usize,
    pub n: usize,
    pub error: f64,
}

pub fn table_s(
    alphas: &[f64],
    dim: usize,
    s_list: &[usize],
    n_list: &[usize],
    n_ref: usize,
) -> Result<Vec<TableSRow>> {
    let grid = EvalGrid::default_for(dim)?;
    let mut rows = Vec::new();
    for &alpha in alphas {
        let params = ProblemParams::new(alpha, dim)?;
        for &s in s_list {
            for &n in n_list {
                let error = power_weight_error(params, s, n, n_ref, &grid)?;
                rows.push(TableSRow { alpha, dim, s, n, error });
            }
        }
    }
    Ok(rows)
}

pub fn cmd_table_s(a: &TableSArgs) -> Result<Report> {
    let rows = table_s(&a.alpha, a.dim, &a.s, &a.n, a.n_max)?;
    let mut report = Report::default();
    for r in &rows {
        if r.n >= r.s && r.n <= a.n_max && !(r.error <= 1e-8) {
            report.failures.push(format!(
                "alpha={} s={} n={}: error {:.3e} should vanish for n >= s",
                r.alpha, r.s, r.n, r.error
            ));
        }
    }
    report.tables.push((
        "",
        CsvTable {
            config: format!(
                "fraclap table-s alpha={} dim={} s={} n={} n_ref={}",
                join(&a.alpha),
                a.dim,
                join(&a.s),
                join(&a.n),
                a.n_max
            ),
            header: vec!["alpha", "dim", "s", "n", "error"],
            rows: rows
                .iter()
                .map(|r| vec![r.alpha.into(), r.dim.into(), r.s.into(), r.n.into(), r.error.into()])
                .collect(),
        },
    ));
    Ok(report)
}

// ------------------------------------------------------------ poisson-table

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonRow {
    pub alpha: f64,
    pub eq: PairId,
    pub l: usize,
    pub n: usize,
    /// `max (u_n - u)`.
    pub error: f64,
    /// `max |u_n - u|`.
    pub abs_error: f64,
}

pub fn poisson_table(
    alphas: &[f64],
    dim: usize,
    n_list: &[usize],
    l_max: Option<usize>,
) -> Result<Vec<PoissonRow>> {
    let grid = EvalGrid::default_for(dim)?;
    let mut rows = Vec::new();
    for &alpha in alphas {
        let params = ProblemParams::new(alpha, dim)?;
        for eq in PairId::ALL {
            let pair = analytic_pair(eq, params)?;
            let l = l_max.unwrap_or(eq.l_required());
            for &n in n_list {
                let e = poisson_error(&pair, n, l, &grid)?;
                rows.push(PoissonRow { alpha, eq, l, n, error: e.overshoot, abs_error: e.sup });
            }
        }
    }
    Ok(rows)
}

pub fn cmd_poisson_table(a: &PoissonArgs) -> Result<Report> {
    let rows = poisson_table(&a.alpha, a.dim, &a.n, a.l_max)?;
    let mut report = Report::default();
    for r in &rows {
        let resolved = r.n >= r.eq.extra_power() && r.l >= r.eq.l_required();
        if resolved && !(r.abs_error <= 1e-5) {
            report.failures.push(format!(
                "alpha={} {} L={} n={}: error {:.3e} should vanish",
                r.alpha, r.eq, r.l, r.n, r.abs_error
            ));
        }
    }
    report.tables.push((
        "",
        CsvTable {
            config: format!(
                "fraclap poisson-table alpha={} dim={} n={} l_max={} error=max(u_n-u) abs_error=max|u_n-u|",
                join(&a.alpha),
                a.dim,
                join(&a.n),
                a.l_max.map_or("auto".to_string(), |l| l.to_string())
            ),
            header: vec!["alpha", "eq", "L", "n", "error", "abs_error"],
            rows: rows
                .iter()
                .map(|r| {
                    vec![
                        r.alpha.into(),
                        Cell::Text(r.eq.to_string()),
                        r.l.into(),
                        r.n.into(),
                        r.error.into(),
                        r.abs_error.into(),
                    ]
                })
                .collect(),
        },
    ));
    Ok(report)
}

// -------------------------------------------------------------- oscillatory

/// `|x|² cos(16|x|)` as a function of the radius.
pub fn oscillatory_rhs(r: f64) -> f64 {
    r * r * (16.0 * r).cos()
}

/// `(n, max_r |u_n(r) - u_ref(r)|)` on 1000 uniform radii.
pub fn oscillatory_errors(
    alpha: f64,
    dim: usize,
    n_list: &[usize],
    n_ref: usize,
) -> Result<Vec<(usize, f64)>> {
    let params = ProblemParams::new(alpha, dim)?;
    let radii: Vec<f64> = (0..1000).map(|j| j as f64 / 999.0).collect();
    let grid = EvalGrid::radial_line(dim, radii)?;
    let solve = |n: usize| -> Result<Vec<f64>> {
        synth_u(&analyze_radial_f(params, oscillatory_rhs, n)?, &grid)
    };
    let reference = solve(n_ref)?;
    n_list
        .iter()
        .map(|&n| Ok((n, sup_error(&solve(n)?, &reference)?)))
        .collect()
}

pub fn cmd_oscillatory(a: &OscillatoryArgs) -> Result<Report> {
    let errs = oscillatory_errors(a.alpha, a.dim, &a.n, a.n_max)?;
    let mut report = Report::default();
    for &(n, e) in &errs {
        if n == a.n_max && e != 0.0 {
            report.failures.push(format!("self-reference error {e:.3e} is not zero"));
        }
    }
    // above the roundoff floor the error must drop as n grows
    let mut sorted = errs.clone();
    sorted.sort_by_key(|p| p.0);
    for w in sorted.windows(2) {
        if w[0].1 > 1e-10 && w[1].0 < a.n_max && !(w[1].1 < w[0].1) {
            report.failures.push(format!("error does not decrease from n={} to n={}", w[0].0, w[1].0));
        }
    }
    report.tables.push((
        "",
        CsvTable {
            config: format!(
                "fraclap oscillatory alpha={} dim={} n={} n_ref={} f=|x|^2cos(16|x|)",
                a.alpha,
                a.dim,
                join(&a.n),
                a.n_max
            ),
            header: vec!["n", "error"],
            rows: errs.iter().map(|&(n, e)| vec![n.into(), e.into()]).collect(),
        },
    ));
    Ok(report)
}

// ---------------------------------------------------------------- diffusion

#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionRun {
    pub alpha: f64,
    pub errors: Vec<(f64, f64)>,
    pub slope: Option<f64>,
    /// Profile at `t_final` computed with the reference step.
    pub profile: Vec<(f64, f64)>,
    /// Whether `‖c^k‖` never increased, over every run.
    pub monotone: bool,
}

pub fn diffusion_study(
    alphas: &[f64],
    dts: &[f64],
    t_final: f64,
    n_modes: usize,
    n_radii: usize,
) -> Result<Vec<DiffusionRun>> {
    let radii: Vec<f64> = (0..n_radii.max(2)).map(|j| j as f64 / (n_radii.max(2) - 1) as f64).collect();
    let err_radii: Vec<f64> = (0..1000).map(|j| j as f64 / 999.0).collect();
    alphas
        .iter()
        .map(|&alpha| {
            let params = ProblemParams::new(alpha, 3)?;
            let mut monotone = true;
            for &dt in dts.iter().chain(std::iter::once(&REFERENCE_DT)) {
                let sys = assemble(params, n_modes, dt)?;
                let s0 = init_state(params, n_modes, weight_initial(params))?;
                let traj = evolve(&sys, &s0, t_final)?;
                monotone &= traj.norms.windows(2).all(|w| w[1] <= w[0]);
            }
            let errs = convergence_study(params, n_modes, t_final, dts, REFERENCE_DT, &err_radii)?;
            let fit: Vec<(f64, f64)> =
                dts.iter().cloned().zip(errs.iter().cloned()).filter(|p| p.1 > 0.0).collect();
            let slope = if fit.len() >= 2 {
                let (x, y): (Vec<f64>, Vec<f64>) = fit.into_iter().unzip();
                Some(loglog_slope(&x, &y)?)
            } else {
                None
            };
            let sys = assemble(params, n_modes, REFERENCE_DT)?;
            let s0 = init_state(params, n_modes, weight_initial(params))?;
            let state = evolve(&sys, &s0, t_final)?.state;
            let u = profile(params, &state, &radii)?;
            Ok(DiffusionRun {
                alpha,
                errors: dts.iter().cloned().zip(errs).collect(),
                slope,
                profile: radii.iter().cloned().zip(u).collect(),
                monotone,
            })
        })
        .collect()
}

pub fn cmd_diffusion(a: &DiffusionArgs) -> Result<Report> {
    let runs = diffusion_study(&a.alpha, &a.dt, a.t_final, a.n_max, a.radii)?;
    let config = format!(
        "fraclap diffusion alpha={} dt={} t_final={} n_modes={} dt_ref={}",
        join(&a.alpha),
        join(&a.dt),
        a.t_final,
        a.n_max,
        REFERENCE_DT
    );
    let mut report = Report::default();
    let mut err_rows = Vec::new();
    let mut prof_rows = Vec::new();
    for run in &runs {
        for &(dt, e) in &run.errors {
            err_rows.push(vec![run.alpha.into(), dt.into(), e.into()]);
        }
        for &(r, u) in &run.profile {
            prof_rows.push(vec![run.alpha.into(), r.into(), u.into()]);
        }
        if let Some(s) = run.slope {
            report.summary.push(format!("alpha={}: log-log slope of error vs dt = {s:.4}", run.alpha));
        }
        if !run.monotone {
            report.failures.push(format!("alpha={}: coefficient norm increased", run.alpha));
        }
        if let Some(&(_, u)) = run.profile.last() {
            if u != 0.0 {
                report.failures.push(format!("alpha={}: profile at r=1 is {u:e}", run.alpha));
            }
        }
    }
    report.tables.push((
        "",
        CsvTable { config: config.clone(), header: vec!["alpha", "dt", "error"], rows: err_rows },
    ));
    report.tables.push((
        "_profile",
        CsvTable { config, header: vec!["alpha", "r", "u"], rows: prof_rows },
    ));
    Ok(report)
}

// -------------------------------------------------------------- coeff-decay

#[derive(Debug, Clone, PartialEq)]
pub struct DecayFit {
    /// `|c_00^n|` for `n = 0..=N`.
    pub magnitudes: Vec<f64>,
    /// Slope of `log|c|` against `log n` over `n >= 1`.
    pub power: f64,
    pub loglog_rss: f64,
    pub semilog_rss: f64,
}

pub fn coefficient_decay(alpha: f64, dim: usize, n_max: usize, k: usize) -> Result<DecayFit> {
    if n_max < 2 {
        return Err(Error::Config("coefficient decay needs n_max >= 2".into()));
    }
    let params = ProblemParams::new(alpha, dim)?;
    let c = analyze_radial_u_with(params, |r| 1.0 - r * r, n_max, Some(k))?;
    let magnitudes: Vec<f64> =
        (0..=n_max).map(|n| c.get(BasisIndex::new(0, 0, n)).unwrap_or(0.0).abs()).collect();
    let ns: Vec<f64> = (1..=n_max).map(|n| n as f64).collect();
    let logc: Vec<f64> = magnitudes[1..].iter().map(|v| v.ln()).collect();
    let logn: Vec<f64> = ns.iter().map(|v| v.ln()).collect();
    let (power, _, loglog_rss) = linear_fit(&logn, &logc);
    let (_, _, semilog_rss) = linear_fit(&ns, &logc);
    Ok(DecayFit { magnitudes, power, loglog_rss, semilog_rss })
}

pub fn cmd_coeff_decay(a: &DecayArgs) -> Result<Report> {
    let fit = coefficient_decay(a.alpha, a.dim, a.n_max, a.k)?;
    let mut report = Report::default();
    report.summary.push(format!(
        "power-law exponent = {:.4}; residual log-log = {:.3e}, semilog = {:.3e}",
        fit.power, fit.loglog_rss, fit.semilog_rss
    ));
    let m = &fit.magnitudes;
    if m[1..].windows(2).any(|w| !(w[1] < w[0])) {
        report.failures.push("coefficients do not decrease for n >= 1".into());
    }
    if m[1..].iter().any(|v| !(*v < m[0])) {
        report.failures.push("c_00^0 is not the largest coefficient".into());
    }
    if !(fit.loglog_rss < fit.semilog_rss) {
        report.failures.push("an exponential fits better than a power law".into());
    }
    report.tables.push((
        "",
        CsvTable {
            config: format!(
                "fraclap coeff-decay alpha={} dim={} n_max={} k={} u=1-|x|^2",
                a.alpha, a.dim, a.n_max, a.k
            ),
            header: vec!["n", "abs_c"],
            rows: m.iter().enumerate().map(|(n, v)| vec![n.into(), (*v).into()]).collect(),
        },
    ));
    Ok(report)
}

// ------------------------------------------------------------------ driver

pub fn dispatch(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Quadrature(a) => cmd_quadrature(a),
        Command::TableS(a) => cmd_table_s(a),
        Command::PoissonTable(a) => cmd_poisson_table(a),
        Command::Oscillatory(a) => cmd_oscillatory(a),
        Command::Diffusion(a) => cmd_diffusion(a),
        Command::CoeffDecay(a) => cmd_coeff_decay(a),
    }
}

fn out_path(cmd: &Command) -> Option<&Path> {
    match cmd {
        Command::Quadrature(a) => a.out.as_deref(),
        Command::TableS(a) => a.out.as_deref(),
        Command::PoissonTable(a) => a.out.as_deref(),
        Command::Oscillatory(a) => a.out.as_deref(),
        Command::Diffusion(a) => a.out.as_deref(),
        Command::CoeffDecay(a) => a.out.as_deref(),
    }
}

/// `dir/stem.csv` with suffix `_x` becomes `dir/stem_x.csv`.
pub fn suffixed_path(path: &Path, suffix: &str) -> PathBuf {
    if suffix.is_empty() {
        return path.to_path_buf();
    }
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}{suffix}"),
    };
    path.with_file_name(name)
}

fn error_line(kind: &str, message: &str) -> String {
    format!("error: kind={kind} message={message:?}")
}

/// Runs the parsed command and returns the process exit code: 0 on success,
/// 1 when a validation check fails, 2 on invalid input or I/O failure.
pub fn run(cli: &Cli) -> i32 {
    let report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{}", error_line(e.kind_name(), &e.to_string()));
            return 2;
        }
    };
    match out_path(&cli.command) {
        Some(path) => {
            for (suffix, table) in &report.tables {
                let p = suffixed_path(path, suffix);
                if let Err(e) = std::fs::write(&p, table.render()) {
                    eprintln!("{}", error_line("io", &format!("{}: {e}", p.display())));
                    return 2;
                }
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            for (i, (_, table)) in report.tables.iter().enumerate() {
                if i > 0 {
                    let _ = writeln!(out);
                }
                let _ = out.write_all(table.render().as_bytes());
            }
        }
    }
    for line in &report.summary {
        eprintln!("{line}");
    }
    if report.failures.is_empty() {
        0
    } else {
        for f in &report.failures {
            eprintln!("{}", error_line("validation", f));
        }
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_point_rule() {
        let q = quadrature_check(1.0, 1, 400).unwrap();
        assert!((q.nodes[0] - 4.0 / (3.0 * std::f64::consts::PI)).abs() < 1e-12);
        assert!((q.weights[0] - std::f64::consts::PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn csv_rendering() {
        let t = CsvTable {
            config: "cfg a=1".into(),
            header: vec!["n", "x", "eq"],
            rows: vec![vec![3usize.into(), 0.1f64.into(), "eq2".into()]],
        };
        assert_eq!(t.render(), "# cfg a=1\nn,x,eq\n3,1.0000000000000001e-1,eq2\n");
    }

    #[test]
    fn suffix_paths() {
        assert_eq!(suffixed_path(Path::new("/a/b.csv"), "_p"), PathBuf::from("/a/b_p.csv"));
        assert_eq!(suffixed_path(Path::new("out"), "_p"), PathBuf::from("out_p"));
        assert_eq!(suffixed_path(Path::new("x.csv"), ""), PathBuf::from("x.csv"));
    }

    #[test]
    fn parses_lists_and_defaults() {
        let cli = Cli::try_parse_from(["fraclap", "table-s", "--alpha", "1.0", "--dim", "3", "--s", "1,2"])
            .unwrap();
        match cli.command {
            Command::TableS(a) => {
                assert_eq!(a.alpha, vec![1.0]);
                assert_eq!(a.s, vec![1, 2]);
                assert_eq!(a.n, vec![0, 1, 2, 3]);
                assert_eq!(a.n_max, 5);
            }
            _ => panic!("wrong subcommand"),
        }
        let cli = Cli::try_parse_from(["fraclap", "diffusion", "--dt", "0.5", "--dt", "0.25"]).unwrap();
        match cli.command {
            Command::Diffusion(a) => assert_eq!(a.dt, vec![0.5, 0.25]),
            _ => panic!("wrong subcommand"),
        }
        assert!(Cli::try_parse_from(["fraclap", "table-s", "--dim", "x"]).is_err());
    }

    #[test]
    fn invalid_alpha_is_a_domain_error() {
        let a = QuadratureArgs { alpha: 2.5, k: 3, fine_n: 400, out: None };
        assert_eq!(cmd_quadrature(&a).unwrap_err().kind_name(), "domain");
    }

    #[test]
    fn error_line_is_machine_readable() {
        assert_eq!(error_line("domain", "bad \"x\""), "error: kind=domain message=\"bad \\\"x\\\"\"");
    }
}
