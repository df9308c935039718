//! Optimal selection: secrecy metrics as double integrals over the shared
//! primary-interference gains `T→D` and `T→E`.
//!
//! Conditioned on those two gains the `K` candidate links are independent,
//! so each metric is the expectation of a `K`-th power.

pub mod quad;

use crate::error::{Error, Result};
use crate::model::{asymptotic_xi, power_budget, PowerBudget, Scheme, SystemConfig};
use quad::{integrate_quadrant, QuadSpec};

fn check_threshold(cfg: &SystemConfig) -> Result<()> {
    if cfg.secrecy_threshold > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "secrecy outage needs a positive threshold, got {}",
            cfg.secrecy_threshold
        )))
    }
}

/// Integrals of probabilities can overshoot [0, 1] by the quadrature error.
fn unit(p: f64) -> f64 {
    p.clamp(0.0, 1.0)
}

/// Probability that a single candidate has zero secrecy capacity, given the
/// interference gains `g_td` and `g_te`.
pub fn os_conditional_zero(cfg: &SystemConfig, g_td: f64, g_te: f64) -> f64 {
    let f = &cfg.fading;
    let d = f.lambda_sd * (cfg.gamma_t * g_td + 1.0);
    let e = f.lambda_se * (cfg.gamma_t * g_te + 1.0);
    d / (d + e)
}

/// Probability that a single candidate falls below the secrecy threshold,
/// given the interference gains.
pub fn os_conditional_outage(cfg: &SystemConfig, budget: &PowerBudget, g_td: f64, g_te: f64) -> f64 {
    let f = &cfg.fading;
    let rho = cfg.rho();
    let a = cfg.gamma_t * g_td + 1.0;
    let b = cfg.gamma_t * g_te + 1.0;
    let e = f.lambda_se * b;
    1.0 - e / (rho * f.lambda_sd * a + e) * (-f.lambda_sd * (rho - 1.0) * a / budget.gamma_s).exp()
}

/// Probability of non-zero secrecy capacity under optimal selection.
pub fn os_prob_nonzero_secrecy(cfg: &SystemConfig, spec: &QuadSpec) -> Result<f64> {
    let budget = power_budget(Scheme::Os, cfg)?;
    if !budget.active {
        return Ok(0.0);
    }
    let f = cfg.fading;
    let k = cfg.k as i32;
    let all_zero = integrate_quadrant(
        |g_te, g_td| {
            let w = f.lambda_td * f.lambda_te * (-f.lambda_td * g_td - f.lambda_te * g_te).exp();
            if w == 0.0 {
                return 0.0;
            }
            os_conditional_zero(cfg, g_td, g_te).powi(k) * w
        },
        spec,
    )?;
    Ok(cfg.backhaul_reliability * (1.0 - unit(all_zero.value)))
}

/// Secrecy outage probability under optimal selection.
pub fn os_secrecy_outage(cfg: &SystemConfig, spec: &QuadSpec) -> Result<f64> {
    check_threshold(cfg)?;
    let budget = power_budget(Scheme::Os, cfg)?;
    if !budget.active {
        return Ok(1.0);
    }
    let f = cfg.fading;
    let k = cfg.k as i32;
    let all_out = integrate_quadrant(
        |g_td, g_te| {
            let w = f.lambda_td * f.lambda_te * (-f.lambda_td * g_td - f.lambda_te * g_te).exp();
            if w == 0.0 {
                return 0.0;
            }
            os_conditional_outage(cfg, &budget, g_td, g_te).powi(k) * w
        },
        spec,
    )?;
    let lam = cfg.backhaul_reliability;
    Ok((1.0 - lam) + lam * unit(all_out.value))
}

/// `Γ_T → ∞` limit of [`os_prob_nonzero_secrecy`].
pub fn os_asymptotic_prob_nonzero(cfg: &SystemConfig, spec: &QuadSpec) -> Result<f64> {
    cfg.validate()?;
    let f = cfg.fading;
    let k = cfg.k as i32;
    let all_zero = integrate_quadrant(
        |g_te, g_td| {
            let w = f.lambda_td * f.lambda_te * (-f.lambda_td * g_td - f.lambda_te * g_te).exp();
            if w == 0.0 {
                return 0.0;
            }
            let d = f.lambda_sd * g_td;
            (d / (d + f.lambda_se * g_te)).powi(k) * w
        },
        spec,
    )?;
    Ok(cfg.backhaul_reliability * (1.0 - unit(all_zero.value)))
}

/// `Γ_T → ∞` limit of [`os_secrecy_outage`].
pub fn os_asymptotic_sop(cfg: &SystemConfig, spec: &QuadSpec) -> Result<f64> {
    cfg.validate()?;
    check_threshold(cfg)?;
    let f = cfg.fading;
    let k = cfg.k as i32;
    let rho = cfg.rho();
    let gain_ratio = f.lambda_sr * asymptotic_xi(Scheme::Os, cfg);
    let all_out = integrate_quadrant(
        |g_td, g_te| {
            let w = f.lambda_td * f.lambda_te * (-f.lambda_td * g_td - f.lambda_te * g_te).exp();
            if w == 0.0 {
                return 0.0;
            }
            let e = f.lambda_se * g_te;
            let p = 1.0 - e / (rho * f.lambda_sd * g_td + e) * (-f.lambda_sd * (rho - 1.0) * g_td / gain_ratio).exp();
            p.powi(k) * w
        },
        spec,
    )?;
    let lam = cfg.backhaul_reliability;
    Ok((1.0 - lam) + lam * unit(all_out.value))
}
