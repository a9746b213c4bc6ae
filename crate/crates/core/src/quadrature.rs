//! Gaussian rules for `∫₀¹ f(r) (1-r²)^{α/2} dr` and the angular rules used
//! by the transforms.
//!
//! A radial rule is built in two stages. A fine seed rule `{x_i, w_i}` with
//! many points discretizes the weighted integral; a `k`-step Lanczos process
//! on `diag(x)` started from `(√w_i)` then compresses it to a `k`-point rule
//! that reproduces the seed exactly on polynomials of degree `2k - 1`.

use std::f64::consts::PI;

use crate::linalg::{tridiag_eig_first_row, SymTridiag};
use crate::special_fn::lgamma;
use crate::{Error, Result};

/// Seed size used when the caller does not pick one.
pub const DEFAULT_FINE_N: usize = 400;

/// Fine rule that the Lanczos process compresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedRule {
    /// `x_i = (i - 1/2)/N`, `w_i = (1 - x_i²)^{α/2}/N`. Converges only
    /// algebraically because of the endpoint behaviour at `r = 1`.
    Midpoint,
    /// Gauss-Jacobi nodes for `(1-r)^{α/2}` with the smooth factor
    /// `(1+r)^{α/2}` folded into the weights. Spectrally accurate.
    GaussJacobi,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Weight exponent `e` in `(1-r²)^e`; `α/2` for the operator weight.
    pub exponent: f64,
    pub fine_n: usize,
    pub seed: SeedRule,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Fractional index `α` whose weight `(1-r²)^{α/2}` this rule integrates.
    pub fn alpha(&self) -> f64 {
        2.0 * self.exponent
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, f: F) -> f64 {
        integrate_radial(self, f)
    }
}

/// `k`-point rule for `(1-r²)^{α/2}` on `[0, 1]`, Gauss-Jacobi seeded.
pub fn build_radial_rule(alpha: f64, k: usize, fine_n: usize) -> Result<QuadratureRule> {
    build_radial_rule_with_seed(alpha, k, fine_n, SeedRule::GaussJacobi)
}

pub fn build_radial_rule_with_seed(
    alpha: f64,
    k: usize,
    fine_n: usize,
    seed: SeedRule,
) -> Result<QuadratureRule> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::Domain(format!("alpha must lie in (0, 2), got {alpha}")));
    }
    build_weighted_rule(alpha / 2.0, k, fine_n, seed)
}

/// `k`-point rule for `(1-r²)^exponent` on `[0, 1]`, `exponent > -1`.
pub fn build_weighted_rule(
    exponent: f64,
    k: usize,
    fine_n: usize,
    seed: SeedRule,
) -> Result<QuadratureRule> {
    if !(exponent > -1.0) {
        return Err(Error::Domain(format!("weight exponent must exceed -1, got {exponent}")));
    }
    if k == 0 {
        return Err(Error::Config("rule size k must be at least 1".into()));
    }
    if k > fine_n {
        return Err(Error::RuleSize { requested: k, achieved: fine_n });
    }
    let (x, w) = match seed {
        SeedRule::Midpoint => midpoint_seed(exponent, fine_n),
        SeedRule::GaussJacobi => gauss_jacobi_seed(exponent, fine_n)?,
    };
    let (nodes, weights) = lanczos_compress(&x, &w, k)?;
    Ok(QuadratureRule { nodes, weights, exponent, fine_n, seed })
}

fn midpoint_seed(exponent: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let h = 1.0 / n as f64;
    let x: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * h).collect();
    let w = x.iter().map(|&r| (1.0 - r * r).powf(exponent) * h).collect();
    (x, w)
}

fn gauss_jacobi_seed(exponent: f64, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let (t, gw) = gauss_jacobi(exponent, 0.0, n)?;
    let scale = 2f64.powf(-exponent - 1.0);
    let x = t.iter().map(|&s| 0.5 * (s + 1.0)).collect();
    let w = t
        .iter()
        .zip(&gw)
        .map(|(&s, &g)| g * scale * (0.5 * (3.0 + s)).powf(exponent))
        .collect();
    Ok((x, w))
}

/// Lanczos on `diag(x)` with start vector `√w`, full reorthogonalization,
/// followed by the tridiagonal eigendecomposition.
fn lanczos_compress(x: &[f64], w: &[f64], k: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let big_n = x.len();
    let b: Vec<f64> = w.iter().map(|v| v.sqrt()).collect();
    let b_norm2: f64 = w.iter().sum();
    let b_norm = b_norm2.sqrt();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(k);
    basis.push(b.iter().map(|v| v / b_norm).collect());
    let mut diag = Vec::with_capacity(k);
    let mut off = Vec::with_capacity(k.saturating_sub(1));

    for j in 0..k {
        let q = &basis[j];
        let mut v: Vec<f64> = q.iter().zip(x).map(|(a, b)| a * b).collect();
        let a_j: f64 = v.iter().zip(q).map(|(a, b)| a * b).sum();
        diag.push(a_j);
        if j + 1 == k {
            break;
        }
        for (vi, qi) in v.iter_mut().zip(q) {
            *vi -= a_j * qi;
        }
        if j > 0 {
            let beta_prev = off[j - 1];
            for (vi, pi) in v.iter_mut().zip(&basis[j - 1]) {
                *vi -= beta_prev * pi;
            }
        }
        // two passes of classical Gram-Schmidt against every previous vector
        for _ in 0..2 {
            for prev in &basis {
                let c: f64 = v.iter().zip(prev).map(|(a, b)| a * b).sum();
                for (vi, pi) in v.iter_mut().zip(prev) {
                    *vi -= c * pi;
                }
            }
        }
        let beta: f64 = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if beta < 1e-14 {
            return Err(Error::RuleSize { requested: k, achieved: j + 1 });
        }
        off.push(beta);
        basis.push(v.into_iter().map(|a| a / beta).collect());
    }
    debug_assert!(basis.iter().all(|q| q.len() == big_n));

    let t = SymTridiag::new(diag, off)?;
    let (nodes, first) = tridiag_eig_first_row(&t)?;
    let weights = first.iter().map(|c| b_norm2 * c * c).collect();
    Ok((nodes, weights))
}

/// Gauss-Jacobi rule on `[-1, 1]` for `(1-x)^a (1+x)^b` via Golub-Welsch.
pub fn gauss_jacobi(a: f64, b: f64, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(a > -1.0 && b > -1.0) {
        return Err(Error::Domain(format!("Jacobi exponents must exceed -1, got {a}, {b}")));
    }
    if n == 0 {
        return Err(Error::Config("rule size must be at least 1".into()));
    }
    let ab = a + b;
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        let s = 2.0 * i as f64 + ab;
        let d = if i == 0 {
            (b - a) / (ab + 2.0)
        } else {
            (b * b - a * a) / (s * (s + 2.0))
        };
        diag.push(d);
    }
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let fi = i as f64;
        let s = 2.0 * fi + ab;
        let v2 = if i == 1 {
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            4.0 * fi * (fi + a) * (fi + b) * (fi + ab) / (s * s * (s - 1.0) * (s + 1.0))
        };
        off.push(v2.sqrt());
    }
    let mu0 = ((ab + 1.0) * 2f64.ln() + lgamma(a + 1.0) + lgamma(b + 1.0) - lgamma(ab + 2.0)).exp();
    let t = SymTridiag::new(diag, off)?;
    let (nodes, first) = tridiag_eig_first_row(&t)?;
    let weights = first.iter().map(|c| mu0 * c * c).collect();
    Ok((nodes, weights))
}

/// Gauss-Legendre rule mapped to `[0, 1]`.
pub fn gauss_legendre_unit(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let (x, w) = gauss_jacobi(0.0, 0.0, n)?;
    Ok((
        x.iter().map(|t| 0.5 * (t + 1.0)).collect(),
        w.iter().map(|v| 0.5 * v).collect(),
    ))
}

/// `Σ f(λ_i) s_i`.
pub fn integrate_radial<F: FnMut(f64) -> f64>(rule: &QuadratureRule, mut f: F) -> f64 {
    rule.nodes.iter().zip(&rule.weights).map(|(&x, &w)| f(x) * w).sum()
}

/// `∫₀¹ (1-r²)^{α/2} dr`, the total mass of a radial rule.
pub fn radial_mass(alpha: f64) -> f64 {
    let e = alpha / 2.0;
    0.5 * (lgamma(0.5) + lgamma(e + 1.0) - lgamma(e + 1.5)).exp()
}

/// `∫₀¹ r^p (1-r²)^{α/2} dr = ½ B((p+1)/2, α/2+1)`.
pub fn radial_moment(alpha: f64, p: usize) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::Domain(format!("alpha must lie in (0,2), got {alpha}")));
    }
    let a = (p as f64 + 1.0) / 2.0;
    let b = alpha / 2.0 + 1.0;
    Ok(0.5 * (lgamma(a) + lgamma(b) - lgamma(a + b)).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngularKind {
    /// Uniform nodes on `[0, 2π)` with equal weights `2π/M`.
    Trapezoid,
    /// Gauss-Legendre in `μ = cos θ` on `(-1, 1)`.
    GaussLegendreMu,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngularRule {
    pub kind: AngularKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

pub fn build_angular_rule(kind: AngularKind, m: usize) -> Result<AngularRule> {
    if m == 0 {
        return Err(Error::Config("angular rule size must be at least 1".into()));
    }
    let (nodes, weights) = match kind {
        AngularKind::Trapezoid => {
            let h = 2.0 * PI / m as f64;
            ((0..m).map(|i| i as f64 * h).collect(), vec![h; m])
        }
        AngularKind::GaussLegendreMu => gauss_jacobi(0.0, 0.0, m)?,
    };
    Ok(AngularRule { kind, nodes, weights })
}
