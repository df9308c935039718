//! High-SNR limits (`Γ_T → ∞` with the primary constraint active).
//!
//! As `Γ_T` grows the permitted `Γ_S` grows proportionally, `Γ_S/Γ_T →
//! λ_sr ξ∞`, so every exponential factor tends to one and the kernels reduce
//! to logarithms. OS has no closed form; its limits are the `Γ_T`-free
//! double integrals in [`crate::os_numeric`].

use crate::error::{Error, Result};
use crate::model::{asymptotic_xi, sd_terms, se_law, Scheme, SystemConfig};
use crate::os_numeric::{os_asymptotic_prob_nonzero, os_asymptotic_sop, quad::QuadSpec};
use crate::summation::compensated_sum;

use super::check_threshold;
use super::kernels::pole_integral;

fn limiting_ratio(scheme: Scheme, cfg: &SystemConfig) -> f64 {
    cfg.fading.lambda_sr * asymptotic_xi(scheme, cfg)
}

/// Limit of the non-zero secrecy probability.
pub fn asym_prob_nonzero(scheme: Scheme, cfg: &SystemConfig) -> Result<f64> {
    cfg.validate()?;
    if scheme == Scheme::Os {
        return os_asymptotic_prob_nonzero(cfg, &QuadSpec::default());
    }
    let s = limiting_ratio(scheme, cfg);
    let beta = se_law(scheme, cfg, s).beta;
    let sum = compensated_sum(
        sd_terms(scheme, cfg, s)
            .iter()
            .map(|t| t.weight * t.alpha * beta * pole_integral(&[t.alpha, beta, beta], 0.0)),
    );
    Ok(cfg.backhaul_reliability * sum)
}

/// Limit of the secrecy outage probability.
pub fn asym_sop(scheme: Scheme, cfg: &SystemConfig) -> Result<f64> {
    cfg.validate()?;
    check_threshold(cfg)?;
    if scheme == Scheme::Os {
        return os_asymptotic_sop(cfg, &QuadSpec::default());
    }
    let s = limiting_ratio(scheme, cfg);
    let rho = cfg.rho();
    let beta = se_law(scheme, cfg, s).beta;
    let sum = compensated_sum(sd_terms(scheme, cfg, s).iter().map(|t| {
        let a = (t.alpha + rho - 1.0) / rho;
        t.weight * t.alpha / rho * beta * pole_integral(&[a, beta, beta], 0.0)
    }));
    Ok(1.0 - cfg.backhaul_reliability * sum)
}

/// Limit of the ergodic secrecy capacity (bits/s/Hz).
pub fn asym_ergodic(scheme: Scheme, cfg: &SystemConfig) -> Result<f64> {
    cfg.validate()?;
    if scheme == Scheme::Os {
        return Err(Error::MetricUnavailable { scheme, metric: "ergodic", kind: "asymptotic" });
    }
    let s = limiting_ratio(scheme, cfg);
    let beta = se_law(scheme, cfg, s).beta;
    let sum = compensated_sum(sd_terms(scheme, cfg, s).iter().map(|t| {
        let gain = t.alpha * pole_integral(&[1.0, t.alpha], 0.0);
        let leak = t.alpha * beta * pole_integral(&[1.0, t.alpha, beta], 0.0);
        t.weight * (gain - leak)
    }));
    Ok(cfg.backhaul_reliability * sum / std::f64::consts::LN_2)
}
