//! Analysis (point values to coefficients) and synthesis (coefficients to
//! point values) on the unit disk and ball.
//!
//! A [`CoefficientField`] stores the expansion densely over `(l, channel, n)`.
//! Its [`FieldKind`] records what the numbers multiply:
//!
//! * `USide`: `u = Σ c p_{l,m,n}` and hence `(-Δ)^{α/2} u = Σ c d_{n,l} P_{l,m,n}`;
//! * `FSide`: `f = Σ β P_{l,m,n}` with no eigenvalue factor.
//!
//! Conversion between the two is the only place eigenvalues are multiplied
//! or divided.

use std::f64::consts::PI;

use crate::basis::{angular_norm, channels, eigenvalue, multiplicity, radial_norm, ProblemParams};
use crate::basis::BasisIndex;
use crate::quadrature::{
    build_angular_rule, build_radial_rule, build_weighted_rule, AngularKind, QuadratureRule,
    SeedRule, DEFAULT_FINE_N,
};
use crate::special_fn::{jacobi_sequence, sph_harm_real_all};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    USide,
    FSide,
}

/// Truncated expansion over `l <= l_max`, `n <= n_max` and every channel.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientField {
    params: ProblemParams,
    n_max: usize,
    l_max: usize,
    kind: FieldKind,
    coeffs: Vec<f64>,
}

impl CoefficientField {
    pub fn zeros(params: ProblemParams, n_max: usize, l_max: usize, kind: FieldKind) -> Self {
        let len = field_len(params.dim(), n_max, l_max);
        Self { params, n_max, l_max, kind, coeffs: vec![0.0; len] }
    }

    pub fn from_values(
        params: ProblemParams,
        n_max: usize,
        l_max: usize,
        kind: FieldKind,
        coeffs: Vec<f64>,
    ) -> Result<Self> {
        let len = field_len(params.dim(), n_max, l_max);
        if coeffs.len() != len {
            return Err(Error::Shape(len, coeffs.len()));
        }
        if let Some(i) = coeffs.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("coefficient {i} is not finite")));
        }
        Ok(Self { params, n_max, l_max, kind, coeffs })
    }

    pub fn params(&self) -> &ProblemParams {
        &self.params
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Storage position of `idx`, if it lies inside the truncation.
    pub fn position(&self, idx: BasisIndex) -> Option<usize> {
        let dim = self.params.dim();
        if idx.l > self.l_max || idx.n > self.n_max || idx.validate(dim).is_err() {
            return None;
        }
        let slot = channel_slot(dim, idx.l, idx.m);
        Some(l_offset(dim, self.n_max, idx.l) + slot * (self.n_max + 1) + idx.n)
    }

    pub fn get(&self, idx: BasisIndex) -> Option<f64> {
        self.position(idx).map(|i| self.coeffs[i])
    }

    pub fn set(&mut self, idx: BasisIndex, value: f64) -> Result<()> {
        let i = self
            .position(idx)
            .ok_or_else(|| Error::Index(format!("{idx:?} is outside the truncation")))?;
        self.coeffs[i] = value;
        Ok(())
    }

    /// All indices in storage order.
    pub fn indices(&self) -> Vec<BasisIndex> {
        let dim = self.params.dim();
        let mut out = Vec::with_capacity(self.len());
        for l in 0..=self.l_max {
            for m in channels(dim, l) {
                for n in 0..=self.n_max {
                    out.push(BasisIndex::new(l, m, n));
                }
            }
        }
        out
    }

    /// Largest absolute coefficient outside the given predicate.
    pub fn max_abs_where<P: Fn(BasisIndex) -> bool>(&self, pred: P) -> f64 {
        self.indices()
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(idx, _)| pred(*idx))
            .fold(0.0f64, |m, (_, v)| m.max(v.abs()))
    }

    /// Divides by eigenvalues: `FSide -> USide`. No-op on a `USide` field.
    pub fn into_u_side(mut self) -> Self {
        if self.kind == FieldKind::FSide {
            self.scale_by_eigenvalues(false);
            self.kind = FieldKind::USide;
        }
        self
    }

    /// Multiplies by eigenvalues: `USide -> FSide`. No-op on an `FSide` field.
    pub fn into_f_side(mut self) -> Self {
        if self.kind == FieldKind::USide {
            self.scale_by_eigenvalues(true);
            self.kind = FieldKind::FSide;
        }
        self
    }

    fn scale_by_eigenvalues(&mut self, multiply: bool) {
        let dim = self.params.dim();
        let per_l: Vec<Vec<f64>> = (0..=self.l_max)
            .map(|l| (0..=self.n_max).map(|n| eigenvalue(&self.params, n, l)).collect())
            .collect();
        let stride = self.n_max + 1;
        for l in 0..=self.l_max {
            let base = l_offset(dim, self.n_max, l);
            for slot in 0..channels(dim, l).len() {
                for n in 0..=self.n_max {
                    let c = &mut self.coeffs[base + slot * stride + n];
                    if multiply {
                        *c *= per_l[l][n];
                    } else {
                        *c /= per_l[l][n];
                    }
                }
            }
        }
    }

    /// `a·self + b·other` for fields of identical layout and kind.
    pub fn linear_combination(&self, a: f64, other: &CoefficientField, b: f64) -> Result<Self> {
        if self.kind != other.kind {
            return Err(Error::Kind { expected: self.kind, found: other.kind });
        }
        if self.coeffs.len() != other.coeffs.len()
            || self.n_max != other.n_max
            || self.l_max != other.l_max
        {
            return Err(Error::Shape(self.coeffs.len(), other.coeffs.len()));
        }
        let mut out = self.clone();
        for (o, v) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *o = a * *o + b * v;
        }
        Ok(out)
    }
}

fn field_len(dim: usize, n_max: usize, l_max: usize) -> usize {
    l_offset(dim, n_max, l_max + 1)
}

fn l_offset(dim: usize, n_max: usize, l: usize) -> usize {
    (0..l).map(|ll| multiplicity(dim, ll).unwrap_or(0)).sum::<usize>() * (n_max + 1)
}

fn channel_slot(dim: usize, l: usize, m: i64) -> usize {
    if dim == 2 {
        m as usize
    } else {
        (m + l as i64) as usize
    }
}

/// Unit direction. In 2D `theta` is the polar angle and `phi` is unused; in
/// 3D `theta` is the colatitude and `phi` the azimuth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    pub theta: f64,
    pub phi: f64,
}

impl Direction {
    fn cartesian(&self, dim: usize, r: f64, out: &mut [f64]) {
        if dim == 2 {
            out[0] = r * self.theta.cos();
            out[1] = r * self.theta.sin();
        } else {
            let s = self.theta.sin();
            out[0] = r * s * self.phi.cos();
            out[1] = r * s * self.phi.sin();
            out[2] = r * self.theta.cos();
        }
    }
}

/// Real harmonic values for every `(l, channel)` up to `l_max`, in storage order.
fn harmonics_at(dim: usize, l_max: usize, dir: &Direction, out: &mut Vec<f64>) {
    if dim == 2 {
        out.clear();
        out.push(1.0);
        for l in 1..=l_max {
            let t = l as f64 * dir.theta;
            out.push(t.cos());
            out.push(t.sin());
        }
    } else {
        sph_harm_real_all(l_max, dir.theta, dir.phi, out);
    }
}

/// Tensor grid of radii and directions; values are laid out radius-major,
/// `values[j * n_dirs + i]` at radius `j` and direction `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalGrid {
    dim: usize,
    radii: Vec<f64>,
    directions: Vec<Direction>,
}

/// Radial samples of the default error grid.
pub const DEFAULT_GRID_RADII: usize = 1000;

impl EvalGrid {
    pub fn new(dim: usize, radii: Vec<f64>, directions: Vec<Direction>) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::Dimension(dim));
        }
        if radii.iter().any(|r| !(*r >= 0.0) || !r.is_finite()) {
            return Err(Error::Domain("grid radii must be finite and non-negative".into()));
        }
        Ok(Self { dim, radii, directions })
    }

    /// `nr` uniform radii on `[0, 1]` (endpoints included) times `ntheta`
    /// uniform polar angles on `[0, 2π)`.
    pub fn polar(nr: usize, ntheta: usize) -> Self {
        let directions = (0..ntheta)
            .map(|i| Direction { theta: 2.0 * PI * i as f64 / ntheta as f64, phi: 0.0 })
            .collect();
        Self { dim: 2, radii: uniform_radii(nr), directions }
    }

    /// `nr` uniform radii times `ntheta` colatitudes on `[0, π]` (endpoints
    /// included) times `nphi` azimuths on `[0, 2π)`.
    pub fn spherical(nr: usize, ntheta: usize, nphi: usize) -> Self {
        let mut directions = Vec::with_capacity(ntheta * nphi);
        for i in 0..ntheta {
            let theta = if ntheta == 1 { 0.0 } else { PI * i as f64 / (ntheta - 1) as f64 };
            for j in 0..nphi {
                directions.push(Direction { theta, phi: 2.0 * PI * j as f64 / nphi as f64 });
            }
        }
        Self { dim: 3, radii: uniform_radii(nr), directions }
    }

    /// 1000 radii × 32 angles in 2D, × 16×16 angles in 3D.
    pub fn default_for(dim: usize) -> Result<Self> {
        match dim {
            2 => Ok(Self::polar(DEFAULT_GRID_RADII, 32)),
            3 => Ok(Self::spherical(DEFAULT_GRID_RADII, 16, 16)),
            d => Err(Error::Dimension(d)),
        }
    }

    /// Points along the first coordinate axis.
    pub fn radial_line(dim: usize, radii: Vec<f64>) -> Result<Self> {
        let dir = if dim == 3 {
            Direction { theta: PI / 2.0, phi: 0.0 }
        } else {
            Direction { theta: 0.0, phi: 0.0 }
        };
        Self::new(dim, radii, vec![dir])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Cartesian coordinates of every point, in value order.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let mut out = Vec::with_capacity(self.len());
        let mut x = vec![0.0; self.dim];
        for &r in &self.radii {
            for d in &self.directions {
                d.cartesian(self.dim, r, &mut x);
                out.push(x.clone());
            }
        }
        out
    }

    /// Evaluates a closed-form function at every grid point.
    pub fn sample<F: Fn(&[f64]) -> f64>(&self, f: F) -> Vec<f64> {
        self.points().iter().map(|x| f(x)).collect()
    }

    /// As [`sample`](Self::sample), also passing the exact grid radius, which
    /// `|x|` only reproduces up to rounding.
    pub fn sample_with_radius<F: Fn(&[f64], f64) -> f64>(&self, f: F) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.len());
        let mut x = vec![0.0; self.dim];
        for &r in &self.radii {
            for d in &self.directions {
                d.cartesian(self.dim, r, &mut x);
                out.push(f(&x, r));
            }
        }
        out
    }
}

fn uniform_radii(nr: usize) -> Vec<f64> {
    match nr {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..nr).map(|j| j as f64 / (nr - 1) as f64).collect(),
    }
}

/// Radial rule size. `2N + L + 4` integrates `w · P_n · q · r^{l+d-1}`
/// exactly for every `q` in the truncated space; the extra 16 nodes resolve
/// data outside it, e.g. `(1-r²)^{α/2+s}` projected onto few modes.
pub fn default_radial_nodes(n_max: usize, l_max: usize) -> usize {
    2 * n_max + l_max + 20
}

/// Overrides for the quadrature sizes a [`Transform`] uses.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TransformOptions {
    /// Radial Gauss nodes; default `2N + L + 20`.
    pub radial_nodes: Option<usize>,
    /// 2D: polar angles, default `max(64, 4L + 4)`. 3D: Gauss-Legendre nodes
    /// in `cos θ`, default `L + 2`.
    pub angular_nodes: Option<usize>,
    /// 3D azimuths, default `2L + 4`.
    pub azimuth_nodes: Option<usize>,
    /// Seed size for the radial rule; default [`DEFAULT_FINE_N`] or `2K`, whichever is larger.
    pub fine_n: Option<usize>,
}

struct AngularSamples {
    directions: Vec<Direction>,
    weights: Vec<f64>,
    /// Harmonic values per direction, storage order.
    harmonics: Vec<Vec<f64>>,
}

/// Quadrature setup for a fixed `(params, N, L)`; reusable across many
/// analyses.
pub struct Transform {
    params: ProblemParams,
    n_max: usize,
    l_max: usize,
    radial: QuadratureRule,
    angular: AngularSamples,
    /// `∫_B P_{l,m,n}² w dx`, indexed `[l][n]`.
    norms: Vec<Vec<f64>>,
}

impl Transform {
    pub fn new(params: ProblemParams, n_max: usize, l_max: usize) -> Result<Self> {
        Self::with_options(params, n_max, l_max, TransformOptions::default())
    }

    pub fn with_options(
        params: ProblemParams,
        n_max: usize,
        l_max: usize,
        opts: TransformOptions,
    ) -> Result<Self> {
        let dim = params.dim();
        let k = opts.radial_nodes.unwrap_or(default_radial_nodes(n_max, l_max));
        let fine_n = opts.fine_n.unwrap_or(DEFAULT_FINE_N.max(2 * k));
        let radial = build_radial_rule(params.alpha(), k, fine_n)?;

        let mut directions = Vec::new();
        let mut weights = Vec::new();
        if dim == 2 {
            let m = opts.angular_nodes.unwrap_or((4 * l_max + 4).max(64));
            let rule = build_angular_rule(AngularKind::Trapezoid, m)?;
            for (t, w) in rule.nodes.iter().zip(&rule.weights) {
                directions.push(Direction { theta: *t, phi: 0.0 });
                weights.push(*w);
            }
        } else {
            let mu = build_angular_rule(
                AngularKind::GaussLegendreMu,
                opts.angular_nodes.unwrap_or(l_max + 2),
            )?;
            let az = build_angular_rule(
                AngularKind::Trapezoid,
                opts.azimuth_nodes.unwrap_or(2 * l_max + 4),
            )?;
            for (x, wx) in mu.nodes.iter().zip(&mu.weights) {
                let theta = x.clamp(-1.0, 1.0).acos();
                for (p, wp) in az.nodes.iter().zip(&az.weights) {
                    directions.push(Direction { theta, phi: *p });
                    weights.push(wx * wp);
                }
            }
        }
        let mut buf = Vec::new();
        let harmonics = directions
            .iter()
            .map(|d| {
                harmonics_at(dim, l_max, d, &mut buf);
                buf.clone()
            })
            .collect();

        let norms = (0..=l_max)
            .map(|l| {
                (0..=n_max)
                    .map(|n| Ok(angular_norm(dim, l) * radial_norm(&params, l, n)?))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()?;

        Ok(Self {
            params,
            n_max,
            l_max,
            radial,
            angular: AngularSamples { directions, weights, harmonics },
            norms,
        })
    }

    pub fn params(&self) -> &ProblemParams {
        &self.params
    }

    pub fn radial_rule(&self) -> &QuadratureRule {
        &self.radial
    }

    /// Weighted projection of `f` onto `span{P_{l,m,n}}`, F-side.
    pub fn project_f<F: Fn(&[f64]) -> f64>(&self, f: F) -> Result<CoefficientField> {
        self.project(|x, _| f(x), FieldKind::FSide)
    }

    /// Right-hand side to U-side coefficients: the Poisson solve in
    /// coefficient space.
    pub fn analyze_f<F: Fn(&[f64]) -> f64>(&self, f: F) -> Result<CoefficientField> {
        Ok(self.project_f(f)?.into_u_side())
    }

    /// Coefficients of `u` in the weighted basis `p_{l,m,n}`.
    pub fn analyze_u<F: Fn(&[f64]) -> f64>(&self, u: F) -> Result<CoefficientField> {
        let half = self.params.alpha() / 2.0;
        self.project(|x, r| u(x) / (1.0 - r * r).powf(half), FieldKind::USide)
    }

    /// `Σ_k s_k Σ_q v_q g(r_k ω_q) Y(ω_q) P_n(2r_k²-1) r_k^{l+d-1}`, divided by
    /// the basis norms. `g` receives the point and its radius.
    fn project<G: Fn(&[f64], f64) -> f64>(&self, g: G, kind: FieldKind) -> Result<CoefficientField> {
        let dim = self.params.dim();
        let (n_max, l_max) = (self.n_max, self.l_max);
        let stride = n_max + 1;
        let mut field = CoefficientField::zeros(self.params, n_max, l_max, kind);
        let n_harm = self.angular.harmonics.first().map_or(0, Vec::len);
        let mut x = vec![0.0; dim];
        let mut ang = vec![0.0; n_harm];
        let mut jac = vec![0.0; stride];
        let a = self.params.alpha() / 2.0;

        for (&r, &s) in self.radial.nodes.iter().zip(&self.radial.weights) {
            // angular moments at this radius
            ang.iter_mut().for_each(|v| *v = 0.0);
            for ((dir, &wq), harm) in self
                .angular
                .directions
                .iter()
                .zip(&self.angular.weights)
                .zip(&self.angular.harmonics)
            {
                dir.cartesian(dim, r, &mut x);
                let val = g(&x, r);
                if !val.is_finite() {
                    return Err(Error::NonFinite { location: x.clone() });
                }
                for (acc, y) in ang.iter_mut().zip(harm) {
                    *acc += wq * val * y;
                }
            }
            let z = 2.0 * r * r - 1.0;
            let mut slot_base = 0;
            for l in 0..=l_max {
                jacobi_sequence(a, self.params.jacobi_b(l), z, &mut jac);
                let radial_factor = s * r.powi((l + dim - 1) as i32);
                let n_ch = channels(dim, l).len();
                for c in 0..n_ch {
                    let am = ang[slot_base + c] * radial_factor;
                    let base = l_offset(dim, n_max, l) + c * stride;
                    for n in 0..stride {
                        field.coeffs[base + n] += am * jac[n];
                    }
                }
                slot_base += n_ch;
            }
        }

        for l in 0..=l_max {
            let base = l_offset(dim, n_max, l);
            for c in 0..channels(dim, l).len() {
                for n in 0..stride {
                    field.coeffs[base + c * stride + n] /= self.norms[l][n];
                }
            }
        }
        Ok(field)
    }
}

/// Radial-only (`l = 0`) analysis of a right-hand side given as a function of
/// `|x|`. Returns a U-side field with `l_max = 0`.
pub fn analyze_radial_f<F: Fn(f64) -> f64>(
    params: ProblemParams,
    f: F,
    n_max: usize,
) -> Result<CoefficientField> {
    Ok(radial_projection(params, |r| f(r), n_max, None, FieldKind::FSide)?.into_u_side())
}

/// Radial-only analysis of a weighted function of `|x|`.
pub fn analyze_radial_u<F: Fn(f64) -> f64>(
    params: ProblemParams,
    u: F,
    n_max: usize,
) -> Result<CoefficientField> {
    analyze_radial_u_with(params, u, n_max, None)
}

/// As [`analyze_radial_u`] with an explicit radial rule size.
pub fn analyze_radial_u_with<F: Fn(f64) -> f64>(
    params: ProblemParams,
    u: F,
    n_max: usize,
    radial_nodes: Option<usize>,
) -> Result<CoefficientField> {
    let half = params.alpha() / 2.0;
    radial_projection(
        params,
        |r| u(r) / (1.0 - r * r).powf(half),
        n_max,
        radial_nodes,
        FieldKind::USide,
    )
}

fn radial_projection<G: Fn(f64) -> f64>(
    params: ProblemParams,
    g: G,
    n_max: usize,
    radial_nodes: Option<usize>,
    kind: FieldKind,
) -> Result<CoefficientField> {
    let dim = params.dim();
    let k = radial_nodes.unwrap_or(default_radial_nodes(n_max, 0));
    let rule = build_radial_rule(params.alpha(), k, DEFAULT_FINE_N.max(2 * k))?;
    // ∫ Y_00 dS over the sphere, and ∫ Y_00² dS
    let (y_integral, y_norm) = if dim == 2 { (2.0 * PI, 2.0 * PI) } else { ((4.0 * PI).sqrt(), 1.0) };
    let a = params.alpha() / 2.0;
    let b = params.jacobi_b(0);
    let mut field = CoefficientField::zeros(params, n_max, 0, kind);
    let mut jac = vec![0.0; n_max + 1];
    for (&r, &s) in rule.nodes.iter().zip(&rule.weights) {
        let val = g(r);
        if !val.is_finite() {
            let mut loc = vec![0.0; dim];
            loc[0] = r;
            return Err(Error::NonFinite { location: loc });
        }
        jacobi_sequence(a, b, 2.0 * r * r - 1.0, &mut jac);
        let f = s * val * r.powi((dim - 1) as i32) * y_integral;
        for (c, p) in field.coeffs.iter_mut().zip(&jac) {
            *c += f * p;
        }
    }
    for (n, c) in field.coeffs.iter_mut().enumerate() {
        *c /= y_norm * radial_norm(&params, 0, n)?;
    }
    Ok(field)
}

fn require_u_side(c: &CoefficientField) -> Result<()> {
    if c.kind != FieldKind::USide {
        return Err(Error::Kind { expected: FieldKind::USide, found: c.kind });
    }
    Ok(())
}

/// `Σ c P_{l,m,n}` (optionally times eigenvalues) on every grid point.
fn synth_poly(c: &CoefficientField, grid: &EvalGrid, with_eigenvalues: bool) -> Result<Vec<f64>> {
    let dim = c.params.dim();
    if grid.dim != dim {
        return Err(Error::Shape(dim, grid.dim));
    }
    let (n_max, l_max) = (c.n_max, c.l_max);
    let stride = n_max + 1;
    let a = c.params.alpha() / 2.0;
    let eig: Vec<Vec<f64>> = (0..=l_max)
        .map(|l| {
            (0..=n_max)
                .map(|n| if with_eigenvalues { eigenvalue(&c.params, n, l) } else { 1.0 })
                .collect()
        })
        .collect();

    let mut buf = Vec::new();
    let harm: Vec<Vec<f64>> = grid
        .directions
        .iter()
        .map(|d| {
            harmonics_at(dim, l_max, d, &mut buf);
            buf.clone()
        })
        .collect();

    let n_slots = harm.first().map_or(0, Vec::len);
    let mut radial_sums = vec![0.0; n_slots];
    let mut jac = vec![0.0; stride];
    let mut out = Vec::with_capacity(grid.len());
    for &r in &grid.radii {
        let z = 2.0 * r * r - 1.0;
        let mut slot = 0;
        for l in 0..=l_max {
            jacobi_sequence(a, c.params.jacobi_b(l), z, &mut jac);
            let rl = r.powi(l as i32);
            for ch in 0..channels(dim, l).len() {
                let base = l_offset(dim, n_max, l) + ch * stride;
                let s: f64 = (0..stride).map(|n| c.coeffs[base + n] * eig[l][n] * jac[n]).sum();
                radial_sums[slot] = rl * s;
                slot += 1;
            }
        }
        for h in &harm {
            out.push(h.iter().zip(&radial_sums).map(|(y, s)| y * s).sum());
        }
    }
    Ok(out)
}

/// `u = Σ c p_{l,m,n}` on the grid; exactly zero for `r >= 1`.
pub fn synth_u(c: &CoefficientField, grid: &EvalGrid) -> Result<Vec<f64>> {
    require_u_side(c)?;
    let mut vals = synth_poly(c, grid, false)?;
    let half = c.params.alpha() / 2.0;
    let nd = grid.directions.len();
    for (j, &r) in grid.radii.iter().enumerate() {
        let w = if r >= 1.0 { 0.0 } else { (1.0 - r * r).powf(half) };
        for v in &mut vals[j * nd..(j + 1) * nd] {
            *v *= w;
        }
    }
    Ok(vals)
}

/// `(-Δ)^{α/2} u = Σ c d_{n,l} P_{l,m,n}` on the grid. The polynomial is
/// evaluated as is; it represents the operator on the closed ball.
pub fn synth_f(c: &CoefficientField, grid: &EvalGrid) -> Result<Vec<f64>> {
    require_u_side(c)?;
    synth_poly(c, grid, true)
}

/// `max |a - b|`.
pub fn sup_error(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Shape(a.len(), b.len()));
    }
    Ok(a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())))
}

/// `max (a - b)`: the largest overshoot of `a` above `b`, without absolute value.
pub fn max_overshoot(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Shape(a.len(), b.len()));
    }
    Ok(a.iter().zip(b).map(|(x, y)| x - y).fold(f64::NEG_INFINITY, f64::max))
}

/// `analyze_f` with default quadrature sizes.
pub fn analyze_f<F: Fn(&[f64]) -> f64>(
    params: ProblemParams,
    f: F,
    n_max: usize,
    l_max: usize,
) -> Result<CoefficientField> {
    Transform::new(params, n_max, l_max)?.analyze_f(f)
}

/// `analyze_u` with default quadrature sizes.
pub fn analyze_u<F: Fn(&[f64]) -> f64>(
    params: ProblemParams,
    u: F,
    n_max: usize,
    l_max: usize,
) -> Result<CoefficientField> {
    Transform::new(params, n_max, l_max)?.analyze_u(u)
}

/// `‖u‖_{L²(B)}` for the function represented by a U-side field.
pub fn norm_l2_u(c: &CoefficientField) -> Result<f64> {
    require_u_side(c)?;
    // u² = w² (Σ c P)²: integrate with the weight (1-r²)^α
    weighted_square_norm(c, c.params.alpha(), false)
}

/// `‖f‖_{L²(w)}` for `f = (-Δ)^{α/2} u` of a U-side field.
pub fn norm_l2w_f(c: &CoefficientField) -> Result<f64> {
    require_u_side(c)?;
    weighted_square_norm(c, c.params.alpha() / 2.0, true)
}

/// `sqrt(∫_B (1-|x|²)^e (Σ c' P)² dx)`; angular orthogonality reduces the
/// angular integral to closed form, the radial one uses an exact Gauss rule.
fn weighted_square_norm(c: &CoefficientField, exponent: f64, with_eigenvalues: bool) -> Result<f64> {
    let dim = c.params.dim();
    let (n_max, l_max) = (c.n_max, c.l_max);
    let stride = n_max + 1;
    let k = 2 * n_max + l_max + 2;
    let rule = build_weighted_rule(exponent, k, DEFAULT_FINE_N.max(2 * k), SeedRule::GaussJacobi)?;
    let a = c.params.alpha() / 2.0;
    let mut jac = vec![0.0; stride];
    let mut total = 0.0;
    for (&r, &s) in rule.nodes.iter().zip(&rule.weights) {
        let z = 2.0 * r * r - 1.0;
        for l in 0..=l_max {
            jacobi_sequence(a, c.params.jacobi_b(l), z, &mut jac);
            let rfac = r.powi((2 * l + dim - 1) as i32) * angular_norm(dim, l);
            for ch in 0..channels(dim, l).len() {
                let base = l_offset(dim, n_max, l) + ch * stride;
                let q: f64 = (0..stride)
                    .map(|n| {
                        let e = if with_eigenvalues { eigenvalue(&c.params, n, l) } else { 1.0 };
                        c.coeffs[base + n] * e * jac[n]
                    })
                    .sum();
                total += s * rfac * q * q;
            }
        }
    }
    Ok(total.sqrt())
}
