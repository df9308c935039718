//! Monte Carlo estimation of the secrecy metrics.
//!
//! Trials are split into fixed-size blocks; block `b` draws from ChaCha8
//! stream `b` of the user seed, so results do not depend on the number of
//! worker threads. All requested schemes see the same channel draws.

use rand::distributions::{Distribution, Open01};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{power_budget, PowerBudget, Scheme, SystemConfig};

/// Trials per independent random stream.
pub const BLOCK_TRIALS: u64 = 16_384;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    pub trials: u64,
    pub seed: u64,
    /// Worker threads; zero uses one per available core.
    pub workers: usize,
}

impl Default for McConfig {
    fn default() -> Self {
        Self { trials: 1_000_000, seed: 2019, workers: 0 }
    }
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McStat {
    pub mean: f64,
    pub stderr: f64,
    pub n: u64,
}

impl McStat {
    fn proportion(hits: u64, n: u64) -> Self {
        let p = hits as f64 / n as f64;
        let stderr = if n > 1 { (p * (1.0 - p) / (n - 1) as f64).sqrt() } else { 0.0 };
        Self { mean: p, stderr, n }
    }

    /// `|mean - value| ≤ sigmas · stderr`, with a floor for zero-variance cells.
    pub fn agrees_with(&self, value: f64, sigmas: f64) -> bool {
        (self.mean - value).abs() <= sigmas * self.stderr + 1e-12
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub scheme: Scheme,
    pub prob_nonzero: McStat,
    pub sop: McStat,
    pub ergodic: McStat,
    pub primary_outage: McStat,
}

/// Channel power gains for one trial (unit-mean scaling already applied).
#[derive(Debug, Clone, PartialEq)]
pub struct TrialDraw {
    pub sd: Vec<f64>,
    pub se: Vec<f64>,
    pub sr: Vec<f64>,
    pub td: f64,
    pub te: f64,
    pub tr: f64,
    /// Uniform on (0, 1); the backhaul succeeds when below `Λ`.
    pub backhaul: f64,
}

impl TrialDraw {
    pub fn sample<R: Rng + ?Sized>(cfg: &SystemConfig, rng: &mut R) -> Self {
        let mut d = Self {
            sd: vec![0.0; cfg.k],
            se: vec![0.0; cfg.k],
            sr: vec![0.0; cfg.k],
            td: 0.0,
            te: 0.0,
            tr: 0.0,
            backhaul: 0.0,
        };
        d.resample(cfg, rng);
        d
    }

    fn resample<R: Rng + ?Sized>(&mut self, cfg: &SystemConfig, rng: &mut R) {
        let f = &cfg.fading;
        let mut exp = |rate: f64| {
            let u: f64 = Open01.sample(rng);
            -u.ln() / rate
        };
        for k in 0..cfg.k {
            self.sd[k] = exp(f.lambda_sd);
            self.se[k] = exp(f.lambda_se);
            self.sr[k] = exp(f.lambda_sr);
        }
        self.td = exp(f.lambda_td);
        self.te = exp(f.lambda_te);
        self.tr = exp(f.lambda_tr);
        self.backhaul = Open01.sample(rng);
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub selected: usize,
    /// Secrecy capacity in bits/s/Hz.
    pub rate: f64,
    pub primary_outage: bool,
}

fn capacity(gamma_sd: f64, gamma_se: f64) -> f64 {
    ((gamma_sd.ln_1p() - gamma_se.ln_1p()) / std::f64::consts::LN_2).max(0.0)
}

fn argmax(v: impl Iterator<Item = f64>) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, x) in v.enumerate() {
        if x > best.1 {
            best = (i, x);
        }
    }
    best.0
}

/// Applies a selection rule to one draw.
pub fn simulate_trial(scheme: Scheme, cfg: &SystemConfig, budget: &PowerBudget, draw: &TrialDraw) -> TrialOutcome {
    let gs = budget.gamma_s;
    let d_den = cfg.gamma_t * draw.td + 1.0;
    let e_den = cfg.gamma_t * draw.te + 1.0;
    let selected = match scheme {
        Scheme::Sts => argmax(draw.sd.iter().copied()),
        Scheme::Mis => argmax(draw.sr.iter().map(|g| -g)),
        Scheme::Mes => argmax(draw.se.iter().map(|g| -g)),
        Scheme::Os => argmax(
            draw.sd
                .iter()
                .zip(&draw.se)
                .map(|(sd, se)| capacity(gs * sd / d_den, gs * se / e_den)),
        ),
    };
    let linked = draw.backhaul < cfg.backhaul_reliability;
    let gamma_sd = if linked { gs * draw.sd[selected] / d_den } else { 0.0 };
    let gamma_se = gs * draw.se[selected] / e_den;
    let gamma_tr = cfg.gamma_t * draw.tr / (gs * draw.sr[selected] + 1.0);
    TrialOutcome {
        selected,
        rate: capacity(gamma_sd, gamma_se),
        primary_outage: gamma_tr < cfg.gamma_0(),
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Accumulator {
    n: u64,
    nonzero: u64,
    outage: u64,
    primary_outage: u64,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    fn push(&mut self, o: &TrialOutcome, threshold: f64) {
        self.n += 1;
        self.nonzero += u64::from(o.rate > 0.0);
        self.outage += u64::from(o.rate < threshold);
        self.primary_outage += u64::from(o.primary_outage);
        let delta = o.rate - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (o.rate - self.mean);
    }

    fn merge(&mut self, other: &Accumulator) {
        if other.n == 0 {
            return;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        self.mean += delta * other.n as f64 / n as f64;
        self.m2 += other.m2 + delta * delta * self.n as f64 * other.n as f64 / n as f64;
        self.n = n;
        self.nonzero += other.nonzero;
        self.outage += other.outage;
        self.primary_outage += other.primary_outage;
    }

    fn finish(&self, scheme: Scheme) -> McEstimate {
        let n = self.n;
        let stderr = if n > 1 { (self.m2 / (n - 1) as f64 / n as f64).sqrt() } else { 0.0 };
        McEstimate {
            scheme,
            prob_nonzero: McStat::proportion(self.nonzero, n),
            sop: McStat::proportion(self.outage, n),
            ergodic: McStat { mean: self.mean, stderr, n },
            primary_outage: McStat::proportion(self.primary_outage, n),
        }
    }
}

fn run_block(
    schemes: &[Scheme],
    budgets: &[PowerBudget],
    cfg: &SystemConfig,
    seed: u64,
    block: u64,
    trials: u64,
) -> Vec<Accumulator> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    let mut acc = vec![Accumulator::default(); schemes.len()];
    let mut draw = TrialDraw::sample(cfg, &mut rng);
    for t in 0..trials {
        if t > 0 {
            draw.resample(cfg, &mut rng);
        }
        for ((scheme, budget), a) in schemes.iter().zip(budgets).zip(acc.iter_mut()) {
            a.push(&simulate_trial(*scheme, cfg, budget, &draw), cfg.secrecy_threshold);
        }
    }
    acc
}

/// Estimates all metrics for several schemes from one shared set of draws.
pub fn estimate_schemes(schemes: &[Scheme], cfg: &SystemConfig, mc: &McConfig) -> Result<Vec<McEstimate>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(mc.workers)
        .build()
        .map_err(|e| Error::invalid("workers", e.to_string()))?;
    pool.install(|| estimate_in_current_pool(schemes, cfg, mc))
}

/// As [`estimate_schemes`], but on whichever rayon pool the caller runs in.
pub(crate) fn estimate_in_current_pool(
    schemes: &[Scheme],
    cfg: &SystemConfig,
    mc: &McConfig,
) -> Result<Vec<McEstimate>> {
    cfg.validate()?;
    if schemes.is_empty() {
        return Err(Error::InvalidSweep("no schemes requested".into()));
    }
    if mc.trials == 0 {
        return Err(Error::invalid("trials", "must be at least 1"));
    }
    let budgets = schemes
        .iter()
        .map(|&s| power_budget(s, cfg))
        .collect::<Result<Vec<_>>>()?;
    let blocks = mc.trials.div_ceil(BLOCK_TRIALS);
    let parts: Vec<Vec<Accumulator>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let n = BLOCK_TRIALS.min(mc.trials - b * BLOCK_TRIALS);
            run_block(schemes, &budgets, cfg, mc.seed, b, n)
        })
        .collect();
    let mut total = vec![Accumulator::default(); schemes.len()];
    for part in &parts {
        for (t, p) in total.iter_mut().zip(part) {
            t.merge(p);
        }
    }
    Ok(schemes.iter().zip(&total).map(|(&s, a)| a.finish(s)).collect())
}

pub fn estimate(scheme: Scheme, cfg: &SystemConfig, mc: &McConfig) -> Result<McEstimate> {
    Ok(estimate_schemes(&[scheme], cfg, mc)?.remove(0))
}
