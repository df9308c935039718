//! Closed-form secrecy metrics for the sub-optimal selection schemes.
//!
//! Every expression is a finite sum over the terms of the destination SINR
//! law (one term for MIS/MES, `K` alternating binomial terms for STS) of the
//! rational-exponential kernels in [`kernels`].

pub mod asymptotic;
pub mod kernels;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{power_budget, sd_terms, se_law, PowerBudget, Scheme, SdTerm, SeLaw, SystemConfig};
use crate::os_numeric::{os_prob_nonzero_secrecy, os_secrecy_outage, quad::QuadSpec};
use crate::summation::compensated_sum;
use kernels::pole_integral;

pub use asymptotic::{asym_ergodic, asym_prob_nonzero, asym_sop};
pub use kernels::{erg_kernel_i1, erg_kernel_i2, kernel_i1, kernel_i2, KernelParams};

/// All three metrics at one operating point. `ergodic` is `None` where no
/// closed form exists (OS).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecrecyMetrics {
    pub scheme: Scheme,
    pub prob_nonzero: f64,
    pub sop: f64,
    pub ergodic: Option<f64>,
}

struct Laws {
    budget: PowerBudget,
    terms: Vec<SdTerm>,
    se: SeLaw,
}

fn laws(scheme: Scheme, cfg: &SystemConfig, operation: &'static str) -> Result<Laws> {
    if scheme == Scheme::Os {
        return Err(Error::UnsupportedScheme { scheme, operation });
    }
    let budget = power_budget(scheme, cfg)?;
    let ratio = if budget.active { budget.gamma_s / cfg.gamma_t } else { 0.0 };
    Ok(Laws {
        budget,
        terms: sd_terms(scheme, cfg, ratio),
        se: se_law(scheme, cfg, ratio),
    })
}

pub(crate) fn check_threshold(cfg: &SystemConfig) -> Result<()> {
    if cfg.secrecy_threshold > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "secrecy outage needs a positive threshold, got {}",
            cfg.secrecy_threshold
        )))
    }
}

/// `P(C_S > 0)` for STS, MIS or MES.
pub fn prob_nonzero_secrecy(scheme: Scheme, cfg: &SystemConfig) -> Result<f64> {
    let l = laws(scheme, cfg, "prob_nonzero_secrecy")?;
    if !l.budget.active {
        return Ok(0.0);
    }
    let gs = l.budget.gamma_s;
    let SeLaw { beta, nu } = l.se;
    let density_scale = nu * beta / gs;
    let sum = compensated_sum(l.terms.iter().map(|t| {
        let c = (t.mu + nu) / gs;
        t.weight
            * t.alpha
            * (density_scale * pole_integral(&[t.alpha, beta], c) + beta * pole_integral(&[t.alpha, beta, beta], c))
    }));
    Ok(cfg.backhaul_reliability * sum)
}

/// `P(C_S < R_th)` for STS, MIS or MES; requires `R_th > 0`.
pub fn secrecy_outage_prob(scheme: Scheme, cfg: &SystemConfig) -> Result<f64> {
    check_threshold(cfg)?;
    let l = laws(scheme, cfg, "secrecy_outage_prob")?;
    if !l.budget.active {
        return Ok(1.0);
    }
    let gs = l.budget.gamma_s;
    let rho = cfg.rho();
    let SeLaw { beta, nu } = l.se;
    let density_scale = nu * beta / gs;
    let sum = compensated_sum(l.terms.iter().map(|t| {
        let a = (t.alpha + rho - 1.0) / rho;
        let c = (rho * t.mu + nu) / gs;
        let lead = t.weight * t.alpha / rho * (-t.mu * (rho - 1.0) / gs).exp();
        lead * (density_scale * pole_integral(&[a, beta], c) + beta * pole_integral(&[a, beta, beta], c))
    }));
    Ok(1.0 - cfg.backhaul_reliability * sum)
}

/// Ergodic secrecy capacity in bits/s/Hz for STS, MIS or MES.
pub fn ergodic_secrecy_capacity(scheme: Scheme, cfg: &SystemConfig) -> Result<f64> {
    let l = laws(scheme, cfg, "ergodic_secrecy_capacity")?;
    if !l.budget.active {
        return Ok(0.0);
    }
    let gs = l.budget.gamma_s;
    let SeLaw { beta, nu } = l.se;
    let sum = compensated_sum(l.terms.iter().map(|t| {
        let gain = t.alpha * pole_integral(&[1.0, t.alpha], t.mu / gs);
        let leak = t.alpha * beta * pole_integral(&[1.0, t.alpha, beta], (t.mu + nu) / gs);
        t.weight * (gain - leak)
    }));
    Ok(cfg.backhaul_reliability * sum / std::f64::consts::LN_2)
}

/// All metrics for any scheme; OS uses numerical integration and reports no
/// ergodic capacity.
pub fn secrecy_metrics(scheme: Scheme, cfg: &SystemConfig, spec: &QuadSpec) -> Result<SecrecyMetrics> {
    if scheme == Scheme::Os {
        return Ok(SecrecyMetrics {
            scheme,
            prob_nonzero: os_prob_nonzero_secrecy(cfg, spec)?,
            sop: os_secrecy_outage(cfg, spec)?,
            ergodic: None,
        });
    }
    Ok(SecrecyMetrics {
        scheme,
        prob_nonzero: prob_nonzero_secrecy(scheme, cfg)?,
        sop: secrecy_outage_prob(scheme, cfg)?,
        ergodic: Some(ergodic_secrecy_capacity(scheme, cfg)?),
    })
}
