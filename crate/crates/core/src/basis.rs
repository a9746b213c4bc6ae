//! Basis bookkeeping: eigenvalues, multiplicities, pointwise evaluation of
//! `P_{l,m,n}` and the weighted `p_{l,m,n}`, and their norms.
//!
//! Harmonic channels: in 2D, `m = 0` is `r^l cos(lθ)` and `m = 1` is
//! `r^l sin(lθ)` (only `m = 0` at `l = 0`); in 3D, `m ∈ [-l, l]` indexes the
//! real solid harmonics of [`crate::special_fn::solid_harm`].

use std::f64::consts::PI;

use crate::quadrature::{build_radial_rule, DEFAULT_FINE_N};
use crate::special_fn::{jacobi_eval, lgamma, ln_factorial, ln_pochhammer, solid_harm};
use crate::special_fn::{HarmonicIndex, JacobiParams};
use crate::{Error, Result};

/// Fractional index and dimension, validated on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemParams {
    alpha: f64,
    dim: usize,
}

impl ProblemParams {
    pub fn new(alpha: f64, dim: usize) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(Error::Domain(format!("alpha must lie in (0, 2), got {alpha}")));
        }
        if dim != 2 && dim != 3 {
            return Err(Error::Dimension(dim));
        }
        Ok(Self { alpha, dim })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `w(r) = (1-r²)₊^{α/2}`.
    pub fn weight(&self, r: f64) -> f64 {
        if r >= 1.0 {
            0.0
        } else {
            (1.0 - r * r).powf(self.alpha / 2.0)
        }
    }

    /// Second Jacobi exponent `d/2 + l - 1` of the radial factor at degree `l`.
    pub fn jacobi_b(&self, l: usize) -> f64 {
        self.dim as f64 / 2.0 + l as f64 - 1.0
    }

    /// The constant in front of the singular-integral definition of the
    /// operator, `2^α Γ((d+α)/2) / (π^{d/2} |Γ(-α/2)|)`. The spectral
    /// algorithm never needs it.
    pub fn operator_constant(&self) -> f64 {
        let (a, d) = (self.alpha, self.dim as f64);
        // |Γ(-a/2)| = Γ(1 - a/2) / (a/2) for a in (0, 2)
        let ln_abs_gamma = lgamma(1.0 - a / 2.0) - (a / 2.0).ln();
        (a * 2f64.ln() + lgamma((d + a) / 2.0) - d / 2.0 * PI.ln() - ln_abs_gamma).exp()
    }
}

/// Number of independent harmonics of degree `l` in dimension `dim`.
pub fn multiplicity(dim: usize, l: usize) -> Result<usize> {
    match dim {
        _ if l == 0 && (dim == 2 || dim == 3) => Ok(1),
        2 => Ok(2),
        3 => Ok(2 * l + 1),
        d => Err(Error::Dimension(d)),
    }
}

/// Channel labels at degree `l`, in storage order.
pub fn channels(dim: usize, l: usize) -> Vec<i64> {
    match dim {
        2 if l == 0 => vec![0],
        2 => vec![0, 1],
        _ => (-(l as i64)..=(l as i64)).collect(),
    }
}

/// `d^{α,d}_{n,l} = 2^α Γ(1+α/2+n) Γ((δ+α)/2+n) / (n! Γ(δ/2+n))`, `δ = d+2l`.
pub fn eigenvalue(params: &ProblemParams, n: usize, l: usize) -> f64 {
    let a = params.alpha;
    let delta = (params.dim + 2 * l) as f64;
    let nf = n as f64;
    let ln = a * 2f64.ln() + lgamma(1.0 + a / 2.0 + nf) + lgamma((delta + a) / 2.0 + nf)
        - ln_factorial(n)
        - lgamma(delta / 2.0 + nf);
    ln.exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisIndex {
    pub l: usize,
    pub m: i64,
    pub n: usize,
}

impl BasisIndex {
    pub fn new(l: usize, m: i64, n: usize) -> Self {
        Self { l, m, n }
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        if dim != 2 && dim != 3 {
            return Err(Error::Dimension(dim));
        }
        if !channels(dim, self.l).contains(&self.m) {
            return Err(Error::Index(format!(
                "channel m={} is not valid at l={} in {dim}D",
                self.m, self.l
            )));
        }
        Ok(())
    }
}

/// Unnormalized polynomial `P_{l,m,n}(x) = V_{l,m}(x) P_n^{(α/2, d/2+l-1)}(2|x|²-1)`.
pub fn basis_eval_poly(params: &ProblemParams, idx: BasisIndex, point: &[f64]) -> Result<f64> {
    idx.validate(params.dim)?;
    if point.len() != params.dim {
        return Err(Error::Shape(params.dim, point.len()));
    }
    let r2: f64 = point.iter().map(|v| v * v).sum();
    let v = solid_harm(HarmonicIndex { l: idx.l, m: idx.m }, point)?;
    let jp = JacobiParams::new(params.alpha / 2.0, params.jacobi_b(idx.l), idx.n)?;
    Ok(v * jacobi_eval(jp, 2.0 * r2 - 1.0))
}

/// Weighted basis function `p_{l,m,n} = (1-|x|²)₊^{α/2} P_{l,m,n}`, zero
/// outside the open ball.
pub fn basis_eval_weighted(params: &ProblemParams, idx: BasisIndex, point: &[f64]) -> Result<f64> {
    idx.validate(params.dim)?;
    let r2: f64 = point.iter().map(|v| v * v).sum();
    if r2 >= 1.0 {
        return Ok(0.0);
    }
    let w = (1.0 - r2).powf(params.alpha / 2.0);
    Ok(w * basis_eval_poly(params, idx, point)?)
}

/// `∫_{S^{d-1}} Y² dS` for one channel at degree `l`.
pub fn angular_norm(dim: usize, l: usize) -> f64 {
    match (dim, l) {
        (2, 0) => 2.0 * PI,
        (2, _) => PI,
        _ => 1.0,
    }
}

/// Surface area of the unit sphere `S^{d-1}`.
fn sphere_area(dim: usize) -> f64 {
    if dim == 2 {
        2.0 * PI
    } else {
        4.0 * PI
    }
}

/// `∫₀¹ P_n(2r²-1)² r^{2l+d-1} (1-r²)^{α/2} dr`, by a Gaussian rule that is
/// exact for this integrand.
pub fn radial_norm(params: &ProblemParams, l: usize, n: usize) -> Result<f64> {
    let k = 2 * n + l + 2;
    let rule = build_radial_rule(params.alpha, k, DEFAULT_FINE_N.max(2 * k))?;
    let jp = JacobiParams::new(params.alpha / 2.0, params.jacobi_b(l), n)?;
    let power = (2 * l + params.dim - 1) as i32;
    Ok(rule.integrate(|r| {
        let p = jacobi_eval(jp, 2.0 * r * r - 1.0);
        p * p * r.powi(power)
    }))
}

/// `∫_B P_{l,m,n}² w dx` for any channel at degree `l`.
pub fn norm_squared(params: &ProblemParams, l: usize, n: usize) -> Result<f64> {
    Ok(angular_norm(params.dim, l) * radial_norm(params, l, n)?)
}

/// `[h_{l,n}]²`, the squared normalization under the probability weight
/// on the ball and the normalized surface measure.
pub fn h_squared(params: &ProblemParams, l: usize, n: usize) -> f64 {
    let a2 = params.alpha / 2.0;
    let d2 = params.dim as f64 / 2.0;
    let (lf, nf) = (l as f64, n as f64);
    let ln = ln_pochhammer(a2 + 1.0, n) + ln_pochhammer(d2, l + n) + (lf + nf + a2 + d2).ln()
        - ln_factorial(n)
        - ln_pochhammer(a2 + d2 + 1.0, l + n)
        - (lf + 2.0 * nf + a2 + d2).ln();
    ln.exp()
}

/// `∫_B (1-|x|²)^{α/2} dx = π^{d/2} Γ(α/2+1) / Γ(α/2+d/2+1)`.
pub fn weight_mass(params: &ProblemParams) -> f64 {
    let a2 = params.alpha / 2.0;
    let d2 = params.dim as f64 / 2.0;
    (d2 * PI.ln() + lgamma(a2 + 1.0) - lgamma(a2 + d2 + 1.0)).exp()
}

/// [`norm_squared`] from the closed-form `[h_{l,n}]²`, rescaled to this
/// crate's unnormalized weight and harmonic conventions.
pub fn norm_squared_analytic(params: &ProblemParams, l: usize, n: usize) -> f64 {
    let mean_y2 = angular_norm(params.dim, l) / sphere_area(params.dim);
    mean_y2 * h_squared(params, l, n) * weight_mass(params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::ln_gamma;

    fn p(alpha: f64, dim: usize) -> ProblemParams {
        ProblemParams::new(alpha, dim).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(ProblemParams::new(0.0, 2).is_err());
        assert!(ProblemParams::new(2.0, 2).is_err());
        assert!(matches!(ProblemParams::new(1.0, 4), Err(Error::Dimension(4))));
        assert_eq!(p(1.0, 3).weight(1.0), 0.0);
        assert_eq!(p(1.0, 3).weight(1.5), 0.0);
    }

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity(2, 3).unwrap(), 2);
        assert_eq!(multiplicity(3, 2).unwrap(), 5);
        assert_eq!(multiplicity(2, 0).unwrap(), 1);
        assert_eq!(multiplicity(3, 0).unwrap(), 1);
        assert!(multiplicity(5, 1).is_err());
        for l in 0..6 {
            assert_eq!(channels(2, l).len(), multiplicity(2, l).unwrap());
            assert_eq!(channels(3, l).len(), multiplicity(3, l).unwrap());
        }
    }

    #[test]
    fn eigenvalue_examples() {
        assert!((eigenvalue(&p(1.0, 2), 0, 0) - PI / 2.0).abs() < 1e-14);
        assert!((eigenvalue(&p(1.0, 3), 0, 0) - 2.0).abs() < 1e-14);
        let g = ln_gamma(1.25).unwrap().exp();
        assert!((eigenvalue(&p(0.5, 2), 0, 0) - 2f64.sqrt() * g * g).abs() < 1e-14);
    }

    #[test]
    fn eigenvalue_minimum_and_monotonicity() {
        for &alpha in &[0.1, 0.5, 1.0, 1.5, 1.9] {
            for dim in [2, 3] {
                let pp = p(alpha, dim);
                let min = eigenvalue(&pp, 0, 0);
                for l in 0..=20 {
                    for n in 0..=20 {
                        let d = eigenvalue(&pp, n, l);
                        assert!(d >= min);
                        if n < 20 {
                            assert!(eigenvalue(&pp, n + 1, l) > d);
                        }
                        if l < 20 {
                            assert!(eigenvalue(&pp, n, l + 1) > d);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn smallest_eigenvalue_is_below_two_to_alpha() {
        // The lowest mode sits below 2^α in 2D for every α (Γ(1+α/2)² < 1),
        // and in 3D for α < 1.
        for &alpha in &[0.1, 0.5, 1.0, 1.5, 1.9] {
            let d = eigenvalue(&p(alpha, 2), 0, 0);
            assert!(d < 2f64.powf(alpha), "alpha={alpha}");
        }
        assert!(eigenvalue(&p(0.5, 3), 0, 0) < 2f64.powf(0.5));
        assert!((eigenvalue(&p(1.0, 3), 0, 0) - 2.0).abs() < 1e-14);
        // from n = 1 on the bound does hold
        for &alpha in &[0.1, 0.5, 1.0, 1.5, 1.9] {
            for dim in [2, 3] {
                for l in 0..=20 {
                    for n in 1..=20 {
                        assert!(eigenvalue(&p(alpha, dim), n, l) >= 2f64.powf(alpha));
                    }
                }
            }
        }
    }

    #[test]
    fn operator_constant_value() {
        // α = 1, d = 1 is the Cauchy kernel constant 1/π
        let c = {
            let (a, d) = (1.0f64, 1.0f64);
            let ln_abs_gamma = lgamma(1.0 - a / 2.0) - (a / 2.0).ln();
            (a * 2f64.ln() + lgamma((d + a) / 2.0) - d / 2.0 * PI.ln() - ln_abs_gamma).exp()
        };
        assert!((c - 1.0 / PI).abs() < 1e-14);
        // α = 1, d = 2: 2 Γ(3/2) / (π · 2√π) = 1/(2π)
        assert!((p(1.0, 2).operator_constant() - 1.0 / (2.0 * PI)).abs() < 1e-14);
    }

    #[test]
    fn pointwise_examples() {
        let p2 = p(1.0, 2);
        let one = basis_eval_poly(&p2, BasisIndex::new(0, 0, 0), &[0.3, -0.2]).unwrap();
        assert_eq!(one, 1.0);
        let p3 = p(1.0, 3);
        let c = basis_eval_poly(&p3, BasisIndex::new(0, 0, 0), &[0.3, -0.2, 0.1]).unwrap();
        assert!((c - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-15);
        let v = basis_eval_poly(&p2, BasisIndex::new(1, 0, 0), &[0.5, 0.0]).unwrap();
        assert!((v - 0.5).abs() < 1e-15);
        let r: f64 = 0.7;
        let v = basis_eval_poly(&p2, BasisIndex::new(0, 0, 1), &[r, 0.0]).unwrap();
        let jp = JacobiParams::new(0.5, 0.0, 1).unwrap();
        assert!((v - jacobi_eval(jp, 2.0 * r * r - 1.0)).abs() < 1e-15);
        assert!(basis_eval_poly(&p2, BasisIndex::new(0, 1, 0), &[0.1, 0.1]).is_err());
        assert!(basis_eval_poly(&p3, BasisIndex::new(1, 2, 0), &[0.1, 0.1, 0.1]).is_err());
    }

    #[test]
    fn weighted_examples() {
        let p2 = p(1.0, 2);
        let idx = BasisIndex::new(0, 0, 0);
        assert_eq!(basis_eval_weighted(&p2, idx, &[1.0, 0.0]).unwrap(), 0.0);
        assert_eq!(basis_eval_weighted(&p2, idx, &[1.5, 0.0]).unwrap(), 0.0);
        assert!((basis_eval_weighted(&p2, idx, &[0.6, 0.0]).unwrap() - 0.8).abs() < 1e-15);
        let pp = p(0.7, 3);
        let x = [0.2, 0.3, -0.4];
        let r2: f64 = x.iter().map(|v| v * v).sum();
        for idx in [BasisIndex::new(2, -1, 3), BasisIndex::new(1, 0, 2)] {
            let big = basis_eval_poly(&pp, idx, &x).unwrap();
            let small = basis_eval_weighted(&pp, idx, &x).unwrap();
            assert!((small - big * (1.0 - r2).powf(0.35)).abs() <= 1e-15 * big.abs());
        }
    }

    #[test]
    fn norm_examples() {
        let p2 = p(1.0, 2);
        assert!((norm_squared(&p2, 0, 0).unwrap() - 2.0 * PI / 3.0).abs() < 1e-13);
        assert!((norm_squared(&p2, 1, 0).unwrap() - PI * 2.0 / 15.0).abs() < 1e-13);
    }

    #[test]
    fn norm_quadrature_matches_closed_form() {
        for &alpha in &[0.3, 1.0, 1.7] {
            for dim in [2, 3] {
                let pp = p(alpha, dim);
                for l in 0..=6 {
                    for n in 0..=8 {
                        let q = norm_squared(&pp, l, n).unwrap();
                        let a = norm_squared_analytic(&pp, l, n);
                        assert!((q - a).abs() <= 1e-9 * a, "alpha={alpha} d={dim} l={l} n={n}: {q} vs {a}");
                    }
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn eigenvalues_grow_in_both_indices(
                alpha in 0.05f64..1.95,
                three in any::<bool>(),
                n in 0usize..30,
                l in 0usize..30,
            ) {
                let pp = p(alpha, if three { 3 } else { 2 });
                let d = eigenvalue(&pp, n, l);
                prop_assert!(d > 0.0 && d.is_finite());
                prop_assert!(eigenvalue(&pp, n + 1, l) > d);
                prop_assert!(eigenvalue(&pp, n, l + 1) > d);
                prop_assert!(d >= eigenvalue(&pp, 0, 0));
                if n >= 1 {
                    prop_assert!(d >= 2f64.powf(alpha));
                }
            }

            #[test]
            fn weighted_basis_vanishes_outside(
                alpha in 0.05f64..1.95,
                x in -2.0f64..2.0,
                y in -2.0f64..2.0,
                n in 0usize..5,
                l in 0usize..5,
            ) {
                prop_assume!(x * x + y * y >= 1.0);
                let v = basis_eval_weighted(&p(alpha, 2), BasisIndex::new(l, 0, n), &[x, y]).unwrap();
                prop_assert_eq!(v, 0.0);
            }
        }
    }
}
