//! Forward operator, Poisson solver and closed-form test pairs.

use std::fmt;
use std::str::FromStr;

use crate::basis::ProblemParams;
use crate::special_fn::ln_gamma;
use crate::transform::{max_overshoot, synth_f, synth_u, sup_error, EvalGrid, Transform};
use crate::{Error, Result};

/// Evaluates `(-Δ)^{α/2} u` on `grid` from a truncated expansion of `u`.
pub fn apply_fractional_laplacian<F: Fn(&[f64]) -> f64>(
    params: ProblemParams,
    u: F,
    n_max: usize,
    l_max: usize,
    grid: &EvalGrid,
) -> Result<Vec<f64>> {
    let c = Transform::new(params, n_max, l_max)?.analyze_u(u)?;
    synth_f(&c, grid)
}

/// Solves `(-Δ)^{α/2} u = f` in the ball with `u = 0` outside and returns `u`
/// on `grid`.
pub fn solve_poisson<F: Fn(&[f64]) -> f64>(
    params: ProblemParams,
    f: F,
    n_max: usize,
    l_max: usize,
    grid: &EvalGrid,
) -> Result<Vec<f64>> {
    let c = Transform::new(params, n_max, l_max)?.analyze_f(f)?;
    synth_u(&c, grid)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairId {
    Eq1,
    Eq2,
    Eq3,
    Eq4,
}

impl PairId {
    pub const ALL: [PairId; 4] = [PairId::Eq1, PairId::Eq2, PairId::Eq3, PairId::Eq4];

    /// Extra power of `1 - |x|²` beyond the weight.
    pub fn extra_power(self) -> usize {
        match self {
            PairId::Eq1 | PairId::Eq3 => 0,
            PairId::Eq2 | PairId::Eq4 => 1,
        }
    }

    /// Whether the pair carries the factor `x_d`.
    pub fn has_coordinate(self) -> bool {
        matches!(self, PairId::Eq3 | PairId::Eq4)
    }

    /// Smallest harmonic truncation that represents the pair.
    pub fn l_required(self) -> usize {
        usize::from(self.has_coordinate())
    }
}

impl fmt::Display for PairId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PairId::Eq1 => "eq1",
            PairId::Eq2 => "eq2",
            PairId::Eq3 => "eq3",
            PairId::Eq4 => "eq4",
        };
        f.write_str(s)
    }
}

impl FromStr for PairId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eq1" => Ok(PairId::Eq1),
            "eq2" => Ok(PairId::Eq2),
            "eq3" => Ok(PairId::Eq3),
            "eq4" => Ok(PairId::Eq4),
            _ => Err(Error::Config(format!("unknown analytic pair '{s}'"))),
        }
    }
}

/// `u = (1-|x|²)^{α/2 + s} · g(x)` with `g ∈ {1, x_d}` and its closed-form
/// image `f = C · [1 - κ|x|²]^s · g(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticPair {
    pub id: PairId,
    pub params: ProblemParams,
    /// Leading constant of `f`.
    pub scale: f64,
    /// Coefficient of `|x|²` inside the bracket of `f` (zero when absent).
    pub kappa: f64,
}

pub fn analytic_pair(id: PairId, params: ProblemParams) -> Result<AnalyticPair> {
    let a = params.alpha();
    let d = params.dim() as f64;
    let s = id.extra_power() as f64;
    let shift = if id.has_coordinate() { 1.0 } else { 0.0 };
    let ln_c = a * std::f64::consts::LN_2 + ln_gamma(a / 2.0 + 1.0 + s)?
        + ln_gamma((d + a) / 2.0 + shift)?
        - ln_gamma(d / 2.0 + shift)?;
    let kappa = if id.extra_power() == 0 { 0.0 } else { 1.0 + a / (d + 2.0 * shift) };
    Ok(AnalyticPair { id, params, scale: ln_c.exp(), kappa })
}

impl AnalyticPair {
    fn factor(&self, x: &[f64]) -> f64 {
        if self.id.has_coordinate() {
            x[x.len() - 1]
        } else {
            1.0
        }
    }

    /// Solution; zero outside the ball.
    pub fn u(&self, x: &[f64]) -> f64 {
        self.u_at_radius(x, x.iter().map(|v| v * v).sum::<f64>().sqrt())
    }

    /// Solution at `x` with `|x| = r` supplied by the caller.
    pub fn u_at_radius(&self, x: &[f64], r: f64) -> f64 {
        if r >= 1.0 {
            return 0.0;
        }
        let e = self.params.alpha() / 2.0 + self.id.extra_power() as f64;
        (1.0 - r * r).powf(e) * self.factor(x)
    }

    /// Right-hand side inside the ball.
    pub fn f(&self, x: &[f64]) -> f64 {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        self.scale * (1.0 - self.kappa * r2) * self.factor(x)
    }
}

/// `u = (1-|x|²)^{α/2 + s}`.
pub fn power_weight(params: ProblemParams, s: usize) -> impl Fn(&[f64]) -> f64 {
    let e = params.alpha() / 2.0 + s as f64;
    move |x: &[f64]| {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        if r2 >= 1.0 {
            0.0
        } else {
            (1.0 - r2).powf(e)
        }
    }
}

/// Reference truncation for the power-weight error tables.
pub const TABLE_REFERENCE_N: usize = 5;

/// Sup-norm gap between the forward operator on `(1-|x|²)^{α/2+s}` truncated
/// at `n` and at `n_ref`, with `L = 0`.
pub fn power_weight_error(
    params: ProblemParams,
    s: usize,
    n: usize,
    n_ref: usize,
    grid: &EvalGrid,
) -> Result<f64> {
    let u = power_weight(params, s);
    let approx = apply_fractional_laplacian(params, &u, n, 0, grid)?;
    let reference = apply_fractional_laplacian(params, &u, n_ref, 0, grid)?;
    sup_error(&approx, &reference)
}

/// Error of the Poisson solve for an analytic pair against its closed-form
/// solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonError {
    /// `max (u_n - u)` over the grid; the quantity the published error table reports.
    pub overshoot: f64,
    /// `max |u_n - u|` over the grid.
    pub sup: f64,
}

pub fn poisson_error(
    pair: &AnalyticPair,
    n: usize,
    l: usize,
    grid: &EvalGrid,
) -> Result<PoissonError> {
    let approx = solve_poisson(pair.params, |x| pair.f(x), n, l, grid)?;
    let exact = grid.sample_with_radius(|x, r| pair.u_at_radius(x, r));
    Ok(PoissonError { overshoot: max_overshoot(&approx, &exact)?, sup: sup_error(&approx, &exact)? })
}
