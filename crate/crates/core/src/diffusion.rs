//! Implicit Euler for `∂_t u = -(-Δ)^{α/2} u` on the unit ball in 3D with
//! radial data and `u = 0` outside the ball.
//!
//! With `u^k = Σ_m c^k_m Y_00 (1-r²)^{α/2} P_m(2r²-1)`, testing against
//! `P_n(2r²-1) r²` gives `(I + Δt B⁻¹AD) c^{k+1} = c^k`.

use crate::basis::{eigenvalue, ProblemParams};
use crate::linalg::{DenseMatrix, LuFactors};
use crate::quadrature::{build_radial_rule, gauss_legendre_unit, DEFAULT_FINE_N};
use crate::special_fn::jacobi_sequence;
use crate::transform::{analyze_radial_u, synth_u, CoefficientField, EvalGrid, FieldKind};
use crate::{Error, Result};

/// Mode count used by the published experiment.
pub const DEFAULT_MODES: usize = 10;

/// Time step of the reference solution in convergence studies.
pub const REFERENCE_DT: f64 = 1.0 / 4096.0;

#[derive(Debug, Clone)]
pub struct DiffusionSystem {
    params: ProblemParams,
    n_modes: usize,
    dt: f64,
    /// `∫ P_m P_n r² dr`.
    a: DenseMatrix,
    /// `∫ (1-r²)^{α/2} P_m² r² dr`.
    b: Vec<f64>,
    /// Eigenvalues `d_{m,0}`.
    d: Vec<f64>,
    /// `I + Δt B⁻¹AD`.
    op: DenseMatrix,
    lu: LuFactors,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionState {
    pub c: Vec<f64>,
    pub t: f64,
}

/// Final state plus `‖c^k‖₂` for `k = 0..=steps`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub state: DiffusionState,
    pub norms: Vec<f64>,
}

fn jacobi_rows(params: &ProblemParams, n_modes: usize, nodes: &[f64]) -> Vec<Vec<f64>> {
    let a = params.alpha() / 2.0;
    let b = params.jacobi_b(0);
    nodes
        .iter()
        .map(|&r| {
            let mut p = vec![0.0; n_modes];
            jacobi_sequence(a, b, 2.0 * r * r - 1.0, &mut p);
            p
        })
        .collect()
}

pub fn assemble(params: ProblemParams, n_modes: usize, dt: f64) -> Result<DiffusionSystem> {
    if params.dim() != 3 {
        return Err(Error::Dimension(params.dim()));
    }
    if n_modes == 0 {
        return Err(Error::Config("at least one mode is required".into()));
    }
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::Config(format!("time step must be positive, got {dt}")));
    }

    // integrand of A has degree 4(N-1) + 2 in r
    let (nodes, weights) = gauss_legendre_unit(2 * n_modes + 2)?;
    let rows = jacobi_rows(&params, n_modes, &nodes);
    let mut a = DenseMatrix::zeros(n_modes);
    for i in 0..n_modes {
        for j in 0..=i {
            let v: f64 = rows
                .iter()
                .zip(&nodes)
                .zip(&weights)
                .map(|((p, r), s)| s * p[i] * p[j] * r * r)
                .sum();
            a.set(i, j, v);
            a.set(j, i, v);
        }
    }

    let k = 2 * n_modes + 2;
    let rule = build_radial_rule(params.alpha(), k, DEFAULT_FINE_N.max(2 * k))?;
    let rows = jacobi_rows(&params, n_modes, &rule.nodes);
    let b: Vec<f64> = (0..n_modes)
        .map(|m| {
            rows.iter()
                .zip(&rule.nodes)
                .zip(&rule.weights)
                .map(|((p, r), s)| s * p[m] * p[m] * r * r)
                .sum()
        })
        .collect();
    let d: Vec<f64> = (0..n_modes).map(|m| eigenvalue(&params, m, 0)).collect();

    let mut op = DenseMatrix::identity(n_modes);
    for i in 0..n_modes {
        for j in 0..n_modes {
            op.set(i, j, op.get(i, j) + dt * a.get(i, j) * d[j] / b[i]);
        }
    }
    let lu = LuFactors::factor(&op)?;
    Ok(DiffusionSystem { params, n_modes, dt, a, b, d, op, lu })
}

impl DiffusionSystem {
    pub fn params(&self) -> &ProblemParams {
        &self.params
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn gram(&self) -> &DenseMatrix {
        &self.a
    }

    pub fn mass(&self) -> &[f64] {
        &self.b
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.d
    }

    /// `I + Δt B⁻¹AD`.
    pub fn stepping_operator(&self) -> &DenseMatrix {
        &self.op
    }

    /// `cᵀ D B c`, the quantity the scheme dissipates.
    pub fn energy(&self, c: &[f64]) -> f64 {
        c.iter().zip(&self.b).zip(&self.d).map(|((ci, bi), di)| ci * ci * bi * di).sum()
    }
}

/// Expands the radial initial condition `u0(r)` in `n_modes` modes.
pub fn init_state<F: Fn(f64) -> f64>(
    params: ProblemParams,
    n_modes: usize,
    u0: F,
) -> Result<DiffusionState> {
    if params.dim() != 3 {
        return Err(Error::Dimension(params.dim()));
    }
    if n_modes == 0 {
        return Err(Error::Config("at least one mode is required".into()));
    }
    let field = analyze_radial_u(params, u0, n_modes - 1)?;
    Ok(DiffusionState { c: field.values().to_vec(), t: 0.0 })
}

pub fn step(sys: &DiffusionSystem, s: &DiffusionState) -> Result<DiffusionState> {
    if s.c.len() != sys.n_modes {
        return Err(Error::Shape(sys.n_modes, s.c.len()));
    }
    Ok(DiffusionState { c: sys.lu.solve(&s.c)?, t: s.t + sys.dt })
}

/// Number of steps to reach `t_final`, which must be a whole multiple of `dt`.
pub fn step_count(dt: f64, t_final: f64) -> Result<usize> {
    if !(t_final >= 0.0) || !t_final.is_finite() {
        return Err(Error::Config(format!("final time must be non-negative, got {t_final}")));
    }
    let k = (t_final / dt).round();
    if (k * dt - t_final).abs() > 1e-9 * t_final.max(1.0) {
        return Err(Error::Config(format!(
            "final time {t_final} is not a whole number of steps of {dt}"
        )));
    }
    Ok(k as usize)
}

pub fn evolve(sys: &DiffusionSystem, s0: &DiffusionState, t_final: f64) -> Result<Trajectory> {
    let steps = step_count(sys.dt, t_final)?;
    let mut state = s0.clone();
    let mut norms = Vec::with_capacity(steps + 1);
    norms.push(l2(&state.c));
    for _ in 0..steps {
        state = step(sys, &state)?;
        norms.push(l2(&state.c));
    }
    Ok(Trajectory { state, norms })
}

fn l2(c: &[f64]) -> f64 {
    c.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// `u(r)` at the given radii for the state's coefficients.
pub fn profile(params: ProblemParams, state: &DiffusionState, radii: &[f64]) -> Result<Vec<f64>> {
    if state.c.is_empty() {
        return Err(Error::Config("state has no modes".into()));
    }
    let field = CoefficientField::from_values(
        params,
        state.c.len() - 1,
        0,
        FieldKind::USide,
        state.c.clone(),
    )?;
    synth_u(&field, &EvalGrid::radial_line(3, radii.to_vec())?)
}

/// `(1-r²)^{α/2}`, the published initial condition.
pub fn weight_initial(params: ProblemParams) -> impl Fn(f64) -> f64 {
    let e = params.alpha() / 2.0;
    move |r| if r >= 1.0 { 0.0 } else { (1.0 - r * r).powf(e) }
}

/// Profile at `t_final` for the published initial condition.
pub fn solve_profile(
    params: ProblemParams,
    n_modes: usize,
    dt: f64,
    t_final: f64,
    radii: &[f64],
) -> Result<Vec<f64>> {
    let sys = assemble(params, n_modes, dt)?;
    let s0 = init_state(params, n_modes, weight_initial(params))?;
    let traj = evolve(&sys, &s0, t_final)?;
    profile(params, &traj.state, radii)
}

/// Sup-norm profile error at `t_final` for each `dt` against the `dt_ref` run.
pub fn convergence_study(
    params: ProblemParams,
    n_modes: usize,
    t_final: f64,
    dts: &[f64],
    dt_ref: f64,
    radii: &[f64],
) -> Result<Vec<f64>> {
    let reference = solve_profile(params, n_modes, dt_ref, t_final, radii)?;
    dts.iter()
        .map(|&dt| {
            let u = solve_profile(params, n_modes, dt, t_final, radii)?;
            Ok(u.iter().zip(&reference).fold(0.0f64, |m, (a, b)| m.max((a - b).abs())))
        })
        .collect()
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Shape(x.len(), y.len()));
    }
    if x.len() < 2 || x.iter().chain(y).any(|v| !(*v > 0.0)) {
        return Err(Error::Domain("slope needs at least two positive samples".into()));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    Ok(linear_fit(&lx, &ly).0)
}

/// `(slope, intercept, residual sum of squares)` of a least-squares line.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss = x.iter().zip(y).map(|(a, b)| (b - slope * a - intercept).powi(2)).sum();
    (slope, intercept, rss)
}
