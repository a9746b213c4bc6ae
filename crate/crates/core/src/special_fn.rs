//! Scalar special functions.
//!
//! Angle convention used throughout the crate: `theta` is the colatitude in
//! `[0, π]` and `phi` the azimuth in `[0, 2π)`. Some references swap the two
//! letters; the Cartesian forms of the harmonics are what the tests pin down.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

// Lanczos-type approximation, g = 671/128, 14 terms.
const LG_SHIFT: f64 = 5.242_187_5;
const LG_SER0: f64 = 0.999_999_999_999_997_1;
const LG_COEFFS: [f64; 14] = [
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    Ok(lgamma(x))
}

/// Unchecked `ln Γ(x)`; callers guarantee `x > 0`.
pub(crate) fn lgamma(x: f64) -> f64 {
    // The series is least accurate for small x, where the recurrence
    // Γ(x) = Γ(x + 1) / x moves the argument into the well-behaved range.
    if x < 1.5 {
        // Exact zeros at 1 and 2.
        if x == 1.0 {
            return 0.0;
        }
        return lgamma_series(x + 1.0) - x.ln();
    }
    if x == 2.0 {
        return 0.0;
    }
    lgamma_series(x)
}

fn lgamma_series(x: f64) -> f64 {
    let tmp = x + LG_SHIFT;
    let tmp = (x + 0.5) * tmp.ln() - tmp;
    let mut ser = LG_SER0;
    let mut y = x;
    for c in LG_COEFFS {
        y += 1.0;
        ser += c / y;
    }
    tmp + (SQRT_2PI * ser / x).ln()
}

/// `ln((a)_k) = ln Γ(a + k) - ln Γ(a)` for `a > 0`.
pub(crate) fn ln_pochhammer(a: f64, k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    lgamma(a + k as f64) - lgamma(a)
}

/// `ln(n!)`.
pub(crate) fn ln_factorial(n: usize) -> f64 {
    lgamma(n as f64 + 1.0)
}

/// Parameters of the Jacobi polynomial `P_n^{(a,b)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub a: f64,
    pub b: f64,
    pub n: usize,
}

impl JacobiParams {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a > -1.0) || !(b > -1.0) {
            return Err(Error::Domain(format!(
                "Jacobi exponents must exceed -1, got a={a}, b={b}"
            )));
        }
        Ok(Self { a, b, n })
    }
}

/// Evaluates `P_n^{(a,b)}(z)` by the ascending three-term recurrence.
pub fn jacobi_eval(p: JacobiParams, z: f64) -> f64 {
    let mut prev = 1.0;
    if p.n == 0 {
        return prev;
    }
    let (a, b) = (p.a, p.b);
    let mut cur = (a + 1.0) + (a + b + 2.0) * (z - 1.0) / 2.0;
    for k in 1..p.n {
        let next = jacobi_step(a, b, k, z, cur, prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Fills `out[k] = P_k^{(a,b)}(z)` for `k = 0..out.len()`.
pub fn jacobi_sequence(a: f64, b: f64, z: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    if out.len() == 1 {
        return;
    }
    out[1] = (a + 1.0) + (a + b + 2.0) * (z - 1.0) / 2.0;
    for k in 1..out.len() - 1 {
        out[k + 1] = jacobi_step(a, b, k, z, out[k], out[k - 1]);
    }
}

#[inline]
fn jacobi_step(a: f64, b: f64, k: usize, z: f64, pk: f64, pkm1: f64) -> f64 {
    let k = k as f64;
    let s = 2.0 * k + a + b;
    let c0 = 2.0 * (k + 1.0) * (k + a + b + 1.0) * s;
    let c1 = (s + 1.0) * ((s + 2.0) * s * z + a * a - b * b);
    let c2 = 2.0 * (k + a) * (k + b) * (s + 2.0);
    (c1 * pk - c2 * pkm1) / c0
}

/// Degree/order pair of a spherical harmonic, `|m| <= l`.
///
/// In 2D the order only selects the channel: `m = 0` is `cos(lθ)`, `m = 1` is
/// `sin(lθ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HarmonicIndex {
    pub l: usize,
    pub m: i64,
}

impl HarmonicIndex {
    pub fn new(l: usize, m: i64) -> Result<Self> {
        if m.unsigned_abs() as usize > l {
            return Err(Error::Index(format!("|m| = {} exceeds l = {l}", m.abs())));
        }
        Ok(Self { l, m })
    }
}

/// Orthonormalized associated Legendre values
/// `sqrt((2l+1)/(4π) (l-m)!/(l+m)!) P_l^m(x)` without the Condon-Shortley
/// phase, for `0 <= m <= l`.
pub fn legendre_normalized(l: usize, m: usize, x: f64) -> f64 {
    debug_assert!(m <= l);
    let s = (1.0 - x * x).max(0.0).sqrt();
    let mut pmm = 1.0 / (4.0 * PI).sqrt();
    for k in 1..=m {
        let k = k as f64;
        pmm *= ((2.0 * k + 1.0) / (2.0 * k)).sqrt() * s;
    }
    if l == m {
        return pmm;
    }
    let mut p_prev = pmm;
    let mut p_cur = (2.0 * m as f64 + 3.0).sqrt() * x * pmm;
    let mf = m as f64;
    for ll in (m + 2)..=l {
        let lf = ll as f64;
        let a_cur = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let lp = lf - 1.0;
        let a_prev = ((4.0 * lp * lp - 1.0) / (lp * lp - mf * mf)).sqrt();
        let next = a_cur * (x * p_cur - p_prev / a_prev);
        p_prev = p_cur;
        p_cur = next;
    }
    p_cur
}

/// Complex spherical harmonic `Y_l^m(θ, φ)` including the Condon-Shortley
/// factor `(-1)^m`, orthonormal under `sinθ dθ dφ`.
pub fn sph_harm_complex(h: HarmonicIndex, theta: f64, phi: f64) -> Complex64 {
    let ma = h.m.unsigned_abs() as usize;
    let p = legendre_normalized(h.l, ma, theta.cos());
    let phase = Complex64::from_polar(1.0, h.m as f64 * phi);
    if h.m >= 0 && ma % 2 == 1 {
        -p * phase
    } else {
        p * phase
    }
}

/// Real spherical harmonic: `cos(mφ)` combinations for `m > 0`, `sin(|m|φ)`
/// for `m < 0`, without a sign alternation in `m`, so that
/// `Y_{1,1} ∝ x`, `Y_{1,-1} ∝ y`, `Y_{1,0} ∝ z`.
pub fn sph_harm_real(h: HarmonicIndex, theta: f64, phi: f64) -> f64 {
    let ma = h.m.unsigned_abs() as usize;
    let p = legendre_normalized(h.l, ma, theta.cos());
    match h.m {
        0 => p,
        m if m > 0 => std::f64::consts::SQRT_2 * p * (m as f64 * phi).cos(),
        m => std::f64::consts::SQRT_2 * p * ((-m) as f64 * phi).sin(),
    }
}

/// All real harmonics up to degree `l_max` at one direction, ordered by `l`
/// then `m = -l..=l`.
pub fn sph_harm_real_all(l_max: usize, theta: f64, phi: f64, out: &mut Vec<f64>) {
    out.clear();
    let x = theta.cos();
    for l in 0..=l_max {
        for m in -(l as i64)..=(l as i64) {
            let ma = m.unsigned_abs() as usize;
            let p = legendre_normalized(l, ma, x);
            let v = match m {
                0 => p,
                m if m > 0 => std::f64::consts::SQRT_2 * p * (m as f64 * phi).cos(),
                m => std::f64::consts::SQRT_2 * p * ((-m) as f64 * phi).sin(),
            };
            out.push(v);
        }
    }
}

/// Colatitude and azimuth of a nonzero 3-vector.
pub fn cartesian_to_angles(x: &[f64]) -> (f64, f64, f64) {
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    if r == 0.0 {
        return (0.0, 0.0, 0.0);
    }
    let theta = (x[2] / r).clamp(-1.0, 1.0).acos();
    let mut phi = x[1].atan2(x[0]);
    if phi < 0.0 {
        phi += 2.0 * PI;
    }
    (r, theta, phi)
}

/// Solid harmonic `V_{l,m}(x) = |x|^l Y_{l,m}(x/|x|)`.
///
/// In 2D the channels are `r^l cos(lθ)` (`m = 0`) and `r^l sin(lθ)` (`m = 1`);
/// in 3D the real spherical harmonics of [`sph_harm_real`] are used.
pub fn solid_harm(h: HarmonicIndex, x: &[f64]) -> Result<f64> {
    match x.len() {
        2 => {
            if h.m != 0 && h.m != 1 || (h.m == 1 && h.l == 0) {
                return Err(Error::Index(format!(
                    "2D channel must be 0 (cos) or 1 (sin, l >= 1), got l={}, m={}",
                    h.l, h.m
                )));
            }
            let r = x[0].hypot(x[1]);
            if h.l == 0 {
                return Ok(1.0);
            }
            if r == 0.0 {
                return Ok(0.0);
            }
            let theta = x[1].atan2(x[0]);
            let rl = r.powi(h.l as i32);
            let lt = h.l as f64 * theta;
            Ok(if h.m == 0 { rl * lt.cos() } else { rl * lt.sin() })
        }
        3 => {
            let (r, theta, phi) = cartesian_to_angles(x);
            if r == 0.0 {
                return Ok(if h.l == 0 { 1.0 / (4.0 * PI).sqrt() } else { 0.0 });
            }
            Ok(r.powi(h.l as i32) * sph_harm_real(h, theta, phi))
        }
        d => Err(Error::Dimension(d)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Truncated hypergeometric form of `P_n^{(a,b)}(z)`, evaluated in exact
    /// rational arithmetic on the (dyadic) f64 inputs:
    /// `Γ(a+n+1)/n! Σ_k (-n)_k (n+a+b+1)_k / (Γ(a+1+k) k!) ((1-z)/2)^k`.
    fn jacobi_series(a: f64, b: f64, n: usize, z: f64) -> f64 {
        use num::{BigRational, ToPrimitive};
        let q = |x: f64| BigRational::from_float(x).unwrap();
        let int = |k: usize| BigRational::from_integer((k as i64).into());
        let (a, b, z) = (q(a), q(b), q(z));
        let one = int(1);
        let w = (one.clone() - z) / int(2);
        let mut sum = int(0);
        for k in 0..=n {
            let mut term = one.clone();
            for j in 0..k {
                // (-n + j)(n + a + b + 1 + j) / (j + 1)
                let neg = int(j) - int(n);
                term = term * neg * (int(n) + a.clone() + b.clone() + one.clone() + int(j)) / int(j + 1);
            }
            // Γ(a+1+n) / Γ(a+1+k)
            for j in k..n {
                term = term * (a.clone() + one.clone() + int(j));
            }
            for _ in 0..k {
                term = term * w.clone();
            }
            sum = sum + term;
        }
        for j in 1..=n {
            sum = sum / int(j);
        }
        sum.to_f64().unwrap()
    }

    fn binomial(x: f64, n: usize) -> f64 {
        (lgamma(n as f64 + x + 1.0) - lgamma(x + 1.0) - ln_factorial(n)).exp()
    }

    #[test]
    fn ln_gamma_known_values() {
        assert_eq!(ln_gamma(1.0).unwrap(), 0.0);
        assert!((ln_gamma(5.0).unwrap() - 24f64.ln()).abs() < 1e-14);
        let half = (PI.sqrt() / 2.0).ln();
        assert!((ln_gamma(1.5).unwrap() - half).abs() < 1e-14);
        assert!((ln_gamma(1.5).unwrap() + 0.120_782_238).abs() < 1e-9);
        assert!((ln_gamma(0.5).unwrap() - PI.sqrt().ln()).abs() < 1e-14);
    }

    #[test]
    fn ln_gamma_factorials_relative() {
        let mut acc = 0.0f64;
        for n in 2..200usize {
            acc += (n as f64).ln();
            // Γ(n+1) = n!
            let got = ln_gamma(n as f64 + 1.0).unwrap();
            assert!((got - acc).abs() <= 1e-13 * acc.abs(), "n={n}: {got} vs {acc}");
        }
    }

    #[test]
    fn ln_gamma_half_integers_relative() {
        // Γ(k + 1/2) = (2k)! / (4^k k!) √π
        let mut acc = PI.sqrt().ln();
        for k in 1..150usize {
            acc += (k as f64 - 0.5).ln();
            let got = ln_gamma(k as f64 + 0.5).unwrap();
            let tol = 1e-13 * acc.abs().max(1e-3);
            assert!((got - acc).abs() <= tol, "k={k}: {got} vs {acc}");
        }
    }

    #[test]
    fn ln_gamma_functional_equation() {
        let mut x = 0.5;
        while x <= 50.0 {
            let lhs = ln_gamma(x + 1.0).unwrap() - ln_gamma(x).unwrap();
            assert!((lhs - x.ln()).abs() <= 1e-12, "x={x}");
            x += 0.173;
        }
    }

    #[test]
    fn ln_gamma_rejects_nonpositive() {
        assert!(matches!(ln_gamma(0.0), Err(Error::Domain(_))));
        assert!(matches!(ln_gamma(-2.5), Err(Error::Domain(_))));
        assert!(ln_gamma(f64::NAN).is_err());
    }

    #[test]
    fn jacobi_low_degrees() {
        let p = JacobiParams::new(0.25, 0.0, 0).unwrap();
        assert_eq!(jacobi_eval(p, 0.3), 1.0);
        for &(a, b) in &[(0.25, 0.0), (0.5, 1.5), (0.75, 1.0)] {
            for &z in &[-1.0, -0.4, 0.0, 0.7, 1.0] {
                let p1 = jacobi_eval(JacobiParams::new(a, b, 1).unwrap(), z);
                let expected = (a + 1.0) + (a + b + 2.0) * (z - 1.0) / 2.0;
                assert!((p1 - expected).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn jacobi_at_one_is_binomial() {
        for &a in &[0.25, 0.5, 0.75, 1.3] {
            for n in 0..=15usize {
                let got = jacobi_eval(JacobiParams::new(a, 0.7, n).unwrap(), 1.0);
                let series = jacobi_series(a, 0.7, n, 1.0);
                let binom = (lgamma(n as f64 + a + 1.0) - lgamma(a + 1.0) - ln_factorial(n)).exp();
                assert!((got - binom).abs() <= 1e-12 * binom, "a={a} n={n}");
                assert!((series - binom).abs() <= 1e-12 * binom);
            }
        }
    }

    #[test]
    fn jacobi_recurrence_matches_series() {
        for &a in &[0.25, 0.5, 0.75] {
            for &b in &[0.0, 0.5, 1.0, 1.5] {
                for n in 0..=10usize {
                    let p = JacobiParams::new(a, b, n).unwrap();
                    // sup norm on [-1, 1] is attained at an endpoint here
                    let scale = binomial(a, n).max(binomial(b, n));
                    for i in 0..21 {
                        let z = -1.0 + 0.1 * i as f64;
                        let rec = jacobi_eval(p, z);
                        let ser = jacobi_series(a, b, n, z);
                        assert!(
                            (rec - ser).abs() <= 1e-10 * scale,
                            "a={a} b={b} n={n} z={z}: {rec} vs {ser}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_sequence_matches_single_eval() {
        let mut buf = vec![0.0; 12];
        jacobi_sequence(0.6, 2.5, -0.3, &mut buf);
        for (n, v) in buf.iter().enumerate() {
            let single = jacobi_eval(JacobiParams::new(0.6, 2.5, n).unwrap(), -0.3);
            assert!((v - single).abs() < 1e-13 * single.abs().max(1.0));
        }
    }

    #[test]
    fn jacobi_rejects_bad_exponents() {
        assert!(JacobiParams::new(-1.0, 0.0, 2).is_err());
        assert!(JacobiParams::new(0.0, -1.5, 2).is_err());
    }

    #[test]
    fn complex_harmonics_reference_values() {
        let y00 = sph_harm_complex(HarmonicIndex::new(0, 0).unwrap(), 0.7, 2.1);
        assert!((y00.re - 0.282_094_791_8).abs() < 1e-10 && y00.im.abs() < 1e-16);
        let y10 = sph_harm_complex(HarmonicIndex::new(1, 0).unwrap(), 0.0, 0.0);
        assert!((y10.re - 0.488_602_511_9).abs() < 1e-10);
        let y11 = sph_harm_complex(HarmonicIndex::new(1, 1).unwrap(), PI / 2.0, 0.0);
        assert!((y11.re + (3.0 / (8.0 * PI)).sqrt()).abs() < 1e-15);
        assert!(y11.im.abs() < 1e-15);
    }

    #[test]
    fn complex_negative_order_symmetry() {
        for l in 0..5usize {
            for m in 1..=(l as i64) {
                let yp = sph_harm_complex(HarmonicIndex::new(l, m).unwrap(), 1.1, 0.4);
                let yn = sph_harm_complex(HarmonicIndex::new(l, -m).unwrap(), 1.1, 0.4);
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                assert!((yn - sign * yp.conj()).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn real_harmonics_table() {
        let y = |l, m, t, p| sph_harm_real(HarmonicIndex::new(l, m).unwrap(), t, p);
        assert!((y(0, 0, 0.3, 0.2) - (1.0 / (4.0 * PI)).sqrt()).abs() < 1e-15);
        for &t in &[0.0f64, 0.4, 1.2, 2.9] {
            let expected = (5.0 / (16.0 * PI)).sqrt() * (3.0 * t.cos().powi(2) - 1.0);
            assert!((y(2, 0, t, 0.8) - expected).abs() < 1e-14);
        }
        assert!((y(1, -1, PI / 2.0, PI / 2.0) - (3.0 / (4.0 * PI)).sqrt()).abs() < 1e-15);
        assert!((y(1, 1, PI / 2.0, 0.0) - (3.0 / (4.0 * PI)).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn sph_harm_real_all_matches_single() {
        let mut buf = Vec::new();
        sph_harm_real_all(4, 0.9, 4.0, &mut buf);
        let mut i = 0;
        for l in 0..=4usize {
            for m in -(l as i64)..=(l as i64) {
                let v = sph_harm_real(HarmonicIndex::new(l, m).unwrap(), 0.9, 4.0);
                assert_eq!(buf[i], v);
                i += 1;
            }
        }
    }

    #[test]
    fn solid_harmonics_table() {
        let v = |l, m, x: &[f64]| solid_harm(HarmonicIndex::new(l, m).unwrap(), x).unwrap();
        assert!((v(0, 0, &[0.1, 0.2, 0.3]) - (1.0 / (4.0 * PI)).sqrt()).abs() < 1e-15);
        assert!((v(1, 0, &[0.0, 0.0, 0.6]) - (3.0 / (4.0 * PI)).sqrt() * 0.6).abs() < 1e-15);
        let (x, y) = (0.3, -0.5);
        assert!((v(2, -2, &[x, y, 0.0]) - (15.0 / (4.0 * PI)).sqrt() * x * y).abs() < 1e-15);
        let p = [0.2, -0.4, 0.7];
        assert!((v(1, 1, &p) - (3.0 / (4.0 * PI)).sqrt() * p[0]).abs() < 1e-15);
        assert!((v(1, -1, &p) - (3.0 / (4.0 * PI)).sqrt() * p[1]).abs() < 1e-15);
        let expected = (5.0 / (16.0 * PI)).sqrt() * (2.0 * p[2] * p[2] - p[0] * p[0] - p[1] * p[1]);
        assert!((v(2, 0, &p) - expected).abs() < 1e-15);
        // 2D channels
        assert!((v(1, 0, &[0.5, 0.0]) - 0.5).abs() < 1e-15);
        assert!((v(2, 1, &[0.3, 0.4]) - 2.0 * 0.3 * 0.4).abs() < 1e-15);
    }

    #[test]
    fn solid_harm_errors() {
        let h = HarmonicIndex::new(1, 0).unwrap();
        assert_eq!(solid_harm(h, &[0.1; 4]), Err(Error::Dimension(4)));
        let sin0 = HarmonicIndex { l: 0, m: 1 };
        assert!(solid_harm(sin0, &[0.1, 0.2]).is_err());
        assert!(HarmonicIndex::new(2, 3).is_err());
    }

    fn gauss_legendre_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
        crate::quadrature::build_angular_rule(crate::quadrature::AngularKind::GaussLegendreMu, n)
            .map(|r| (r.nodes, r.weights))
            .unwrap()
    }

    #[test]
    fn spherical_harmonics_orthonormal() {
        let (mu, wmu) = gauss_legendre_nodes(16);
        let nphi = 32;
        let mut idx = Vec::new();
        for l in 0..=6usize {
            for m in -(l as i64)..=(l as i64) {
                idx.push(HarmonicIndex::new(l, m).unwrap());
            }
        }
        let mut gram = vec![0.0; idx.len() * idx.len()];
        let mut cgram = vec![Complex64::new(0.0, 0.0); idx.len() * idx.len()];
        for (&x, &w) in mu.iter().zip(&wmu) {
            let theta = x.acos();
            for j in 0..nphi {
                let phi = 2.0 * PI * j as f64 / nphi as f64;
                let wq = w * 2.0 * PI / nphi as f64;
                let vals: Vec<f64> = idx.iter().map(|&h| sph_harm_real(h, theta, phi)).collect();
                let cvals: Vec<Complex64> =
                    idx.iter().map(|&h| sph_harm_complex(h, theta, phi)).collect();
                for a in 0..idx.len() {
                    for b in 0..idx.len() {
                        gram[a * idx.len() + b] += wq * vals[a] * vals[b];
                        cgram[a * idx.len() + b] += wq * cvals[a] * cvals[b].conj();
                    }
                }
            }
        }
        for a in 0..idx.len() {
            for b in 0..idx.len() {
                let delta = if a == b { 1.0 } else { 0.0 };
                assert!((gram[a * idx.len() + b] - delta).abs() <= 1e-10, "{:?} {:?}", idx[a], idx[b]);
                assert!((cgram[a * idx.len() + b] - delta).norm() <= 1e-10);
            }
        }
    }

    #[test]
    fn solid_harmonics_are_harmonic() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let h = 1e-4;
        for _ in 0..20 {
            let p: [f64; 3] = [rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)];
            for l in 0..=4usize {
                for m in -(l as i64)..=(l as i64) {
                    let hi = HarmonicIndex::new(l, m).unwrap();
                    let c = solid_harm(hi, &p).unwrap();
                    let mut lap = 0.0;
                    for k in 0..3 {
                        let mut q = p;
                        q[k] += h;
                        let fp = solid_harm(hi, &q).unwrap();
                        q[k] -= 2.0 * h;
                        let fm = solid_harm(hi, &q).unwrap();
                        lap += (fp - 2.0 * c + fm) / (h * h);
                    }
                    assert!(lap.abs() <= 1e-5, "l={l} m={m} lap={lap}");
                }
            }
            let q = [p[0], p[1]];
            for l in 0..=4usize {
                for m in 0..=(if l == 0 { 0 } else { 1 }) {
                    let hi = HarmonicIndex::new(l, m).unwrap();
                    let c = solid_harm(hi, &q).unwrap();
                    let mut lap = 0.0;
                    for k in 0..2 {
                        let mut s = q;
                        s[k] += h;
                        let fp = solid_harm(hi, &s).unwrap();
                        s[k] -= 2.0 * h;
                        let fm = solid_harm(hi, &s).unwrap();
                        lap += (fp - 2.0 * c + fm) / (h * h);
                    }
                    assert!(lap.abs() <= 1e-5);
                }
            }
        }
    }
}
