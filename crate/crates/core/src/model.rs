//! System parameters, selection schemes, SINR distributions and the
//! QoS-constrained secondary power budget.
//!
//! All link power gains are exponential. A link with rate `λ` has mean power
//! gain `1/λ`. Decibel inputs always describe the *mean gain*, so a link
//! quoted at `v` dB has `λ = 10^{-v/10}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `10^{dB/10}`.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// `10·log10(linear)`.
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// Exponential rate of a link whose mean power gain is `mean_gain_db` dB.
pub fn rate_from_mean_gain_db(mean_gain_db: f64) -> f64 {
    1.0 / db_to_linear(mean_gain_db)
}

/// Transmitter selection rule at the small cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Scheme {
    /// Largest source-to-destination gain.
    #[serde(rename = "STS")]
    Sts,
    /// Smallest source-to-primary-receiver gain.
    #[serde(rename = "MIS")]
    Mis,
    /// Smallest source-to-eavesdropper gain.
    #[serde(rename = "MES")]
    Mes,
    /// Largest instantaneous secrecy rate.
    #[serde(rename = "OS")]
    Os,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::Sts, Scheme::Mis, Scheme::Mes, Scheme::Os];
    pub const SUBOPTIMAL: [Scheme; 3] = [Scheme::Sts, Scheme::Mis, Scheme::Mes];

    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Sts => "STS",
            Scheme::Mis => "MIS",
            Scheme::Mes => "MES",
            Scheme::Os => "OS",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "STS" => Ok(Scheme::Sts),
            "MIS" => Ok(Scheme::Mis),
            "MES" => Ok(Scheme::Mes),
            "OS" => Ok(Scheme::Os),
            other => Err(Error::invalid(
                "scheme",
                format!("unknown scheme `{other}` (expected STS, MIS, MES or OS)"),
            )),
        }
    }
}

/// Exponential rates of the six link families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FadingParams {
    pub lambda_sd: f64,
    pub lambda_se: f64,
    pub lambda_sr: f64,
    pub lambda_td: f64,
    pub lambda_te: f64,
    pub lambda_tr: f64,
}

impl FadingParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("lambda_sd", self.lambda_sd),
            ("lambda_se", self.lambda_se),
            ("lambda_sr", self.lambda_sr),
            ("lambda_td", self.lambda_td),
            ("lambda_te", self.lambda_te),
            ("lambda_tr", self.lambda_tr),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(name, format!("must be positive and finite, got {v}")));
            }
        }
        Ok(())
    }
}

/// Mean link power gains in dB, the form experiment grids are written in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FadingDb {
    pub sd: f64,
    pub se: f64,
    pub sr: f64,
    pub td: f64,
    pub te: f64,
    pub tr: f64,
}

impl FadingDb {
    /// Reference channel set: `1/λ_tr = 3`, `1/λ_td = -6`, `1/λ_sd = 3`,
    /// `1/λ_sr = -3`, `1/λ_te = 6` dB. The eavesdropper link varies per
    /// experiment; it defaults to 30 dB here.
    pub const BASELINE: FadingDb = FadingDb {
        sd: 3.0,
        se: 30.0,
        sr: -3.0,
        td: -6.0,
        te: 6.0,
        tr: 3.0,
    };

    pub fn with_se(mut self, se_db: f64) -> Self {
        self.se = se_db;
        self
    }

    pub fn rates(&self) -> FadingParams {
        FadingParams {
            lambda_sd: rate_from_mean_gain_db(self.sd),
            lambda_se: rate_from_mean_gain_db(self.se),
            lambda_sr: rate_from_mean_gain_db(self.sr),
            lambda_td: rate_from_mean_gain_db(self.td),
            lambda_te: rate_from_mean_gain_db(self.te),
            lambda_tr: rate_from_mean_gain_db(self.tr),
        }
    }
}

/// Network-wide operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemConfig {
    /// Number of small-cell transmitters.
    pub k: usize,
    /// Backhaul success probability `Λ`.
    pub backhaul_reliability: f64,
    /// Maximum tolerated primary outage probability `Φ`.
    pub primary_qos: f64,
    /// Primary target rate `β` in bits/s/Hz.
    pub primary_rate: f64,
    /// Secrecy threshold `R_th` in bits/s/Hz.
    pub secrecy_threshold: f64,
    /// Primary transmit SNR `Γ_T = P_T/N₀` (linear).
    pub gamma_t: f64,
    pub fading: FadingParams,
}

impl SystemConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::invalid("k", "at least one transmitter is required"));
        }
        let lam = self.backhaul_reliability;
        if !(0.0..=1.0).contains(&lam) {
            return Err(Error::invalid("backhaul_reliability", format!("must lie in [0, 1], got {lam}")));
        }
        let phi = self.primary_qos;
        if !(phi > 0.0 && phi < 1.0) {
            return Err(Error::invalid("primary_qos", format!("must lie in (0, 1), got {phi}")));
        }
        if !(self.primary_rate.is_finite() && self.primary_rate > 0.0) {
            return Err(Error::invalid("primary_rate", format!("must be positive, got {}", self.primary_rate)));
        }
        if !(self.secrecy_threshold.is_finite() && self.secrecy_threshold >= 0.0) {
            return Err(Error::invalid(
                "secrecy_threshold",
                format!("must be non-negative, got {}", self.secrecy_threshold),
            ));
        }
        if !(self.gamma_t.is_finite() && self.gamma_t >= 0.0) {
            return Err(Error::invalid("gamma_t", format!("must be finite and >= 0, got {}", self.gamma_t)));
        }
        self.fading.validate()
    }

    pub fn with_gamma_t_db(mut self, db: f64) -> Self {
        self.gamma_t = db_to_linear(db);
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_backhaul(mut self, lambda: f64) -> Self {
        self.backhaul_reliability = lambda;
        self
    }

    pub fn with_qos(mut self, phi: f64) -> Self {
        self.primary_qos = phi;
        self
    }

    pub fn with_threshold(mut self, r_th: f64) -> Self {
        self.secrecy_threshold = r_th;
        self
    }

    pub fn with_fading(mut self, fading: FadingParams) -> Self {
        self.fading = fading;
        self
    }

    /// Primary SINR threshold `Γ_0 = 2^β - 1`.
    pub fn gamma_0(&self) -> f64 {
        (self.primary_rate * std::f64::consts::LN_2).exp_m1()
    }

    /// `ρ = 2^{R_th}`: the secrecy rate falls below `R_th` exactly when
    /// `Γ_SD < ρ(1 + Γ_SE) - 1`.
    pub fn rho(&self) -> f64 {
        self.secrecy_threshold.exp2()
    }
}

/// Secondary transmit power permitted by the primary outage constraint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerBudget {
    pub xi: f64,
    /// `Γ_S = P_S/N₀`; zero when shut down.
    pub gamma_s: f64,
    pub active: bool,
}

impl PowerBudget {
    fn from_xi(xi: f64, cfg: &SystemConfig) -> Self {
        if xi > 0.0 {
            let gamma_s = cfg.gamma_t * cfg.fading.lambda_sr * xi;
            PowerBudget { xi, gamma_s, active: gamma_s > 0.0 }
        } else {
            PowerBudget { xi, gamma_s: 0.0, active: false }
        }
    }
}

/// `Γ_0 = 2^β - 1`.
pub fn gamma_threshold(beta: f64) -> Result<f64> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::Domain(format!("target rate must be positive, got {beta}")));
    }
    Ok((beta * std::f64::consts::LN_2).exp_m1())
}

/// Number of interference links the selection rule minimises over: `K` for
/// MIS, one otherwise.
fn interference_multiplicity(scheme: Scheme, cfg: &SystemConfig) -> f64 {
    match scheme {
        Scheme::Mis => cfg.k as f64,
        _ => 1.0,
    }
}

/// Largest `P_S` that keeps the primary outage at `Φ`.
///
/// `ξ ≤ 0` means that even without interference the primary link misses its
/// target; the secondary network is then silent.
pub fn power_budget(scheme: Scheme, cfg: &SystemConfig) -> Result<PowerBudget> {
    cfg.validate()?;
    Ok(power_budget_unchecked(scheme, cfg))
}

pub(crate) fn power_budget_unchecked(scheme: Scheme, cfg: &SystemConfig) -> PowerBudget {
    let g0 = cfg.gamma_0();
    let lambda_tr = cfg.fading.lambda_tr;
    let survive = if cfg.gamma_t > 0.0 {
        (-lambda_tr * g0 / cfg.gamma_t).exp()
    } else {
        0.0
    };
    let bracket = survive / (1.0 - cfg.primary_qos) - 1.0;
    let xi = interference_multiplicity(scheme, cfg) * bracket / (lambda_tr * g0);
    PowerBudget::from_xi(xi, cfg)
}

/// High-SNR limit of `ξ`: `κ Φ / ((1-Φ) λ_tr Γ_0)` with `κ = K` for MIS.
pub fn asymptotic_xi(scheme: Scheme, cfg: &SystemConfig) -> f64 {
    let phi = cfg.primary_qos;
    interference_multiplicity(scheme, cfg) * phi / ((1.0 - phi) * cfg.fading.lambda_tr * cfg.gamma_0())
}

/// One exponential-rational term of the destination SINR's complementary
/// CDF (given an active backhaul):
/// `1 - F̃_SD(y) = Σ weight · alpha/(y + alpha) · exp(-mu·y/Γ_S)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct SdTerm {
    pub weight: f64,
    pub alpha: f64,
    pub mu: f64,
}

/// Eavesdropper SINR law: `1 - F_SE(x) = beta/(x + beta) · exp(-nu·x/Γ_S)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct SeLaw {
    pub beta: f64,
    pub nu: f64,
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Terms of `1 - F̃_SD` for the sub-optimal schemes. `alpha` is scaled by
/// `Γ_S/Γ_T`; passing `gain_ratio = Γ_S/Γ_T` keeps the limit `Γ_T → ∞`
/// expressible with the same code.
pub(crate) fn sd_terms(scheme: Scheme, cfg: &SystemConfig, gain_ratio: f64) -> Vec<SdTerm> {
    let f = &cfg.fading;
    match scheme {
        Scheme::Sts => (1..=cfg.k)
            .map(|k| {
                let kf = k as f64;
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                SdTerm {
                    weight: sign * binomial(cfg.k, k),
                    alpha: f.lambda_td * gain_ratio / (kf * f.lambda_sd),
                    mu: kf * f.lambda_sd,
                }
            })
            .collect(),
        Scheme::Mis | Scheme::Mes | Scheme::Os => vec![SdTerm {
            weight: 1.0,
            alpha: f.lambda_td * gain_ratio / f.lambda_sd,
            mu: f.lambda_sd,
        }],
    }
}

pub(crate) fn se_law(scheme: Scheme, cfg: &SystemConfig, gain_ratio: f64) -> SeLaw {
    let f = &cfg.fading;
    let nu = match scheme {
        Scheme::Mes => cfg.k as f64 * f.lambda_se,
        _ => f.lambda_se,
    };
    SeLaw { beta: f.lambda_te * gain_ratio / nu, nu }
}

fn check_x(x: f64) -> Result<()> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::Domain(format!("SINR argument must be >= 0, got {x}")));
    }
    Ok(())
}

/// CDF of `Γ_SD` including the backhaul atom at zero: `(1-Λ) + Λ F̃_SD(x)`.
pub fn cdf_sinr_sd(scheme: Scheme, cfg: &SystemConfig, budget: &PowerBudget, x: f64) -> Result<f64> {
    if scheme == Scheme::Os {
        return Err(Error::UnsupportedScheme { scheme, operation: "cdf_sinr_sd" });
    }
    check_x(x)?;
    let lam = cfg.backhaul_reliability;
    if !budget.active {
        return Ok(1.0);
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    let ratio = budget.gamma_s / cfg.gamma_t;
    let tail: f64 = sd_terms(scheme, cfg, ratio)
        .iter()
        .map(|t| t.weight * t.alpha / (x + t.alpha) * (-t.mu * x / budget.gamma_s).exp())
        .sum();
    Ok((1.0 - lam) + lam * (1.0 - tail))
}

/// CDF of the eavesdropper SINR `Γ_SE`.
pub fn cdf_sinr_se(scheme: Scheme, cfg: &SystemConfig, budget: &PowerBudget, x: f64) -> Result<f64> {
    check_x(x)?;
    if !budget.active {
        return Err(Error::Shutdown("cdf_sinr_se"));
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    let law = se_law(scheme, cfg, budget.gamma_s / cfg.gamma_t);
    Ok(1.0 - law.beta / (x + law.beta) * (-law.nu * x / budget.gamma_s).exp())
}

/// PDF of the eavesdropper SINR `Γ_SE`.
///
/// MES sees the weakest of `K` eavesdropper links (rate `Kλ_se`); every other
/// scheme selects independently of the eavesdropper channel.
pub fn pdf_sinr_se(scheme: Scheme, cfg: &SystemConfig, budget: &PowerBudget, x: f64) -> Result<f64> {
    check_x(x)?;
    if !budget.active {
        return Err(Error::Shutdown("pdf_sinr_se"));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    let gs = budget.gamma_s;
    let law = se_law(scheme, cfg, gs / cfg.gamma_t);
    let decay = (-law.nu * x / gs).exp();
    let shifted = x + law.beta;
    Ok(decay * (law.nu * law.beta / gs / shifted + law.beta / (shifted * shifted)))
}

/// CDF of the primary SINR `Γ_TR` under interference from the selected
/// secondary transmitter. MIS picks the weakest of `K` interference links.
pub fn cdf_sinr_tr(scheme: Scheme, cfg: &SystemConfig, budget: &PowerBudget, x: f64) -> Result<f64> {
    check_x(x)?;
    if x.is_infinite() || cfg.gamma_t == 0.0 {
        return Ok(1.0);
    }
    let f = &cfg.fading;
    let decay = (-f.lambda_tr * x / cfg.gamma_t).exp();
    if !budget.active {
        return Ok(1.0 - decay);
    }
    let theta = interference_multiplicity(scheme, cfg) * f.lambda_sr * cfg.gamma_t / (f.lambda_tr * budget.gamma_s);
    Ok(1.0 - theta / (x + theta) * decay)
}
