//! Exponential-integral primitives.
//!
//! Every closed-form secrecy metric reduces to integrals of the form
//! `∫₀^∞ e^{-cx} / (x + p)^m dx`, which are expressed through `Ei(-z)` or,
//! more generally, through the scaled generalized exponential integral
//! `e^z E_m(z)`. The scaled forms never overflow, so callers should prefer
//! [`scaled_ei`] over `exp(z) * exp_int_ei(-z)`.

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Below this argument magnitude the power series is used, above it the
/// continued fraction.
const SERIES_CUTOFF: f64 = 2.0;

/// Above this argument the asymptotic expansion replaces the continued
/// fraction (the Lentz recursion would underflow near `f64::MAX`).
const ASYMPTOTIC_CUTOFF: f64 = 1.0e6;

const MAX_ITER: usize = 500;
const FPMIN: f64 = 1.0e-300;

/// Exponential integral `Ei(x)` for strictly negative `x`.
pub fn exp_int_ei(x: f64) -> Result<f64> {
    if !x.is_finite() || x >= 0.0 {
        return Err(Error::Domain(format!(
            "exp_int_ei requires finite x < 0, got {x}"
        )));
    }
    let z = -x;
    if z < SERIES_CUTOFF {
        Ok(-e1_series(z))
    } else {
        // E1(z) = e^{-z} * [e^z E1(z)]
        Ok(-(-z).exp() * scaled_e1_large(z))
    }
}

/// `e^z · Ei(-z)` for `z > 0`.
///
/// Always negative, bounded in magnitude by `1/z`, and finite for every
/// positive finite `z`.
pub fn scaled_ei(z: f64) -> Result<f64> {
    if !z.is_finite() || z <= 0.0 {
        return Err(Error::Domain(format!(
            "scaled_ei requires finite z > 0, got {z}"
        )));
    }
    Ok(scaled_ei_unchecked(z))
}

pub(crate) fn scaled_ei_unchecked(z: f64) -> f64 {
    if z < SERIES_CUTOFF {
        -z.exp() * e1_series(z)
    } else {
        -scaled_e1_large(z)
    }
}

/// Scaled generalized exponential integral `e^z E_n(z)` for `n ≥ 1`, `z ≥ 0`.
///
/// `z = 0` is accepted for `n ≥ 2`, where `E_n(0) = 1/(n-1)`.
pub fn scaled_expint_en(n: u32, z: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("scaled_expint_en requires n >= 1".into()));
    }
    if !z.is_finite() || z < 0.0 || (z == 0.0 && n == 1) {
        return Err(Error::Domain(format!(
            "scaled_expint_en({n}, z) requires finite z > 0 (z >= 0 for n >= 2), got {z}"
        )));
    }
    Ok(scaled_expint_en_unchecked(n, z))
}

pub(crate) fn scaled_expint_en_unchecked(n: u32, z: f64) -> f64 {
    if z == 0.0 {
        return 1.0 / f64::from(n - 1);
    }
    if n == 1 {
        return -scaled_ei_unchecked(z);
    }
    if z > ASYMPTOTIC_CUTOFF {
        return en_asymptotic(n, z);
    }
    if z > 1.0 {
        return en_continued_fraction(n, z);
    }
    z.exp() * en_series(n, z)
}

/// `E1(z) = -γ - ln z - Σ_{k≥1} (-z)^k / (k·k!)` for small `z`.
fn e1_series(z: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 1..MAX_ITER {
        let kf = k as f64;
        term *= -z / kf;
        let delta = term / kf;
        sum += delta;
        if delta.abs() < f64::EPSILON * sum.abs() {
            break;
        }
    }
    -EULER_GAMMA - z.ln() - sum
}

/// `e^z E1(z)` for `z ≥ 2`.
fn scaled_e1_large(z: f64) -> f64 {
    if z > ASYMPTOTIC_CUTOFF {
        en_asymptotic(1, z)
    } else {
        en_continued_fraction(1, z)
    }
}

/// Modified Lentz evaluation of the continued fraction
/// `e^z E_n(z) = 1/(z+n- 1·n/(z+n+2- 2(n+1)/(z+n+4- …)))`.
fn en_continued_fraction(n: u32, z: f64) -> f64 {
    let nm1 = f64::from(n - 1);
    let mut b = z + f64::from(n);
    let mut c = 1.0 / FPMIN;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        let an = -fi * (nm1 + fi);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < f64::EPSILON {
            break;
        }
    }
    h
}

/// Unscaled power series for `E_n(z)`, `n ≥ 2`, `0 < z ≤ 1`.
fn en_series(n: u32, z: f64) -> f64 {
    let nm1 = (n - 1) as usize;
    let mut ans = 1.0 / nm1 as f64;
    let mut fact = 1.0;
    for i in 1..MAX_ITER {
        fact *= -z / i as f64;
        let del = if i != nm1 {
            -fact / (i as f64 - nm1 as f64)
        } else {
            let psi = -EULER_GAMMA + (1..=nm1).map(|j| 1.0 / j as f64).sum::<f64>();
            fact * (-z.ln() + psi)
        };
        ans += del;
        if del.abs() < ans.abs() * f64::EPSILON {
            break;
        }
    }
    ans
}

/// `e^z E_n(z) ~ (1/z) Σ_k (-1)^k (n)_k / z^k` for very large `z`.
fn en_asymptotic(n: u32, z: f64) -> f64 {
    let mut term = 1.0 / z;
    let mut sum = term;
    for k in 0..30 {
        let next = -term * (f64::from(n) + k as f64) / z;
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < f64::EPSILON * sum.abs() {
            break;
        }
    }
    sum
}
