//! Rational-exponential integrals over the positive half-line.
//!
//! All closed forms reduce to
//!
//! ```text
//! P(c; p_1..p_n) = ∫₀^∞ e^{-cx} / ∏ (x + p_i) dx,
//! ```
//!
//! which equals `(-1)^{n-1} g[p_1, …, p_n]`, the divided difference of
//! `g(p) = ∫₀^∞ e^{-cx}/(x+p) dx = -e^{cp} Ei(-cp)`. For `c = 0` the same
//! identity holds with `g(p) = -ln p` (for `n ≥ 2`).
//!
//! Well-separated poles use the partial-fraction recursion directly. Poles
//! that sit within a relative distance of each other are handled by a Taylor
//! expansion of `g` around the cluster centre, which also covers repeated
//! poles exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{scaled_ei_unchecked, scaled_expint_en_unchecked};

/// Poles closer than this (relative to the smallest) are treated as a cluster.
const CLUSTER_SPREAD: f64 = 0.25;
const MAX_TAYLOR_TERMS: usize = 80;

/// Constants `(a, b, c)` of the two-pole kernels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl KernelParams {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    fn validate(&self) -> Result<()> {
        check_positive("a", self.a)?;
        check_positive("b", self.b)?;
        check_positive("c", self.c)
    }
}

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("kernel constant must be positive and finite, got {v}")))
    }
}

/// `∫₀^∞ e^{-cx} / ((x+a)(x+b)) dx`.
pub fn kernel_i1(p: KernelParams) -> Result<f64> {
    p.validate()?;
    Ok(pole_integral(&[p.a, p.b], p.c))
}

/// `∫₀^∞ e^{-cx} / ((x+a)(x+b)²) dx`.
pub fn kernel_i2(p: KernelParams) -> Result<f64> {
    p.validate()?;
    Ok(pole_integral(&[p.a, p.b, p.b], p.c))
}

/// `∫₀^∞ b e^{-c₁x} / ((x+1)(x+b)) dx`.
pub fn erg_kernel_i1(b: f64, c1: f64) -> Result<f64> {
    check_positive("b", b)?;
    check_positive("c1", c1)?;
    Ok(b * pole_integral(&[1.0, b], c1))
}

/// `-∫₀^∞ ab e^{-c₂x} / ((x+1)(x+a)(x+b)) dx` (negative by construction).
pub fn erg_kernel_i2(a: f64, b: f64, c2: f64) -> Result<f64> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    check_positive("c2", c2)?;
    Ok(-a * b * pole_integral(&[1.0, a, b], c2))
}

/// `∫₀^∞ e^{-cx} / ∏ (x + p_i) dx` for positive poles and `c ≥ 0`
/// (`c = 0` requires at least two poles).
pub(crate) fn pole_integral(poles: &[f64], c: f64) -> f64 {
    debug_assert!(!poles.is_empty() && poles.len() <= 8);
    debug_assert!(c > 0.0 || poles.len() >= 2);
    let mut pts = poles.to_vec();
    pts.sort_by(f64::total_cmp);
    let dd = divided_difference(&pts, c);
    if pts.len() % 2 == 1 {
        dd
    } else {
        -dd
    }
}

fn base(p: f64, c: f64) -> f64 {
    if c == 0.0 {
        -p.ln()
    } else {
        -scaled_ei_unchecked(c * p)
    }
}

fn divided_difference(pts: &[f64], c: f64) -> f64 {
    let n = pts.len();
    if n == 1 {
        return base(pts[0], c);
    }
    let (lo, hi) = (pts[0], pts[n - 1]);
    if hi - lo <= CLUSTER_SPREAD * lo {
        return clustered_divided_difference(pts, c);
    }
    (divided_difference(&pts[..n - 1], c) - divided_difference(&pts[1..], c)) / (lo - hi)
}

/// Divided difference of `g` over points close to their centre `p0`.
///
/// With `g(p0 + d) = Σ_m g_m d^m`, `g_m = (-1)^m p0^{-m} e^{z} E_{m+1}(z)`
/// (`z = c·p0`), the divided difference of order `n-1` is
/// `Σ_{m≥n-1} g_m h_{m-n+1}(d_1..d_n)` with `h_k` the complete homogeneous
/// symmetric polynomials. Offsets are normalised by `p0` to keep every term
/// in range.
fn clustered_divided_difference(pts: &[f64], c: f64) -> f64 {
    let n = pts.len();
    let p0 = 0.5 * (pts[0] + pts[n - 1]);
    let z = c * p0;
    let offsets: Vec<f64> = pts.iter().map(|p| (p - p0) / p0).collect();
    let r = offsets.iter().fold(0.0f64, |m, d| m.max(d.abs()));

    let mut h = vec![0.0; MAX_TAYLOR_TERMS];
    h[0] = 1.0;
    for &d in &offsets {
        for k in 1..MAX_TAYLOR_TERMS {
            h[k] += d * h[k - 1];
        }
    }

    let mut sum = 0.0;
    let mut r_pow = 1.0;
    let mut multiplicity = 1.0; // C(k+n-1, n-1)
    for (k, hk) in h.iter().enumerate() {
        let m = k + n - 1;
        let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
        let en = scaled_expint_en_unchecked(m as u32 + 1, z);
        sum += sign * en * hk;
        let bound = en * multiplicity * r_pow;
        if bound <= 1e-17 * sum.abs() || r == 0.0 {
            break;
        }
        r_pow *= r;
        multiplicity *= (k + n) as f64 / (k + 1) as f64;
    }
    sum * p0.powi(1 - n as i32)
}
