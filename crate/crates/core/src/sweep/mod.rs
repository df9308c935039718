//! Parameter sweeps over `Γ_T`: analytic, asymptotic and simulated values
//! side by side, one row per (case, scheme, `Γ_T`).

pub mod config;
pub mod output;
pub mod presets;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytics::{self, asymptotic};
use crate::error::{Error, Result};
use crate::model::{Scheme, SystemConfig};
use crate::montecarlo::{self, McConfig, McEstimate, McStat};
use crate::os_numeric::{self, quad::QuadSpec};

pub use config::parse_config;
pub use output::{format_real, read_csv, write_csv, write_json};
pub use presets::{preset, PRESETS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    /// Probability of non-zero secrecy capacity.
    Nonzero,
    /// Secrecy outage probability.
    Sop,
    /// Ergodic secrecy capacity.
    Ergodic,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Nonzero, Metric::Sop, Metric::Ergodic];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Nonzero => "nonzero",
            Metric::Sop => "sop",
            Metric::Ergodic => "ergodic",
        }
    }

    fn pick(self, est: &McEstimate) -> McStat {
        match self {
            Metric::Nonzero => est.prob_nonzero,
            Metric::Sop => est.sop,
            Metric::Ergodic => est.ergodic,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nonzero" => Ok(Metric::Nonzero),
            "sop" => Ok(Metric::Sop),
            "ergodic" => Ok(Metric::Ergodic),
            _ => Err(Error::invalid("metric", format!("unknown metric `{s}` (nonzero, sop, ergodic)"))),
        }
    }
}

/// One fixed parameter set, swept over the `Γ_T` grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCase {
    pub label: String,
    pub config: SystemConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub name: String,
    pub metric: Metric,
    pub schemes: Vec<Scheme>,
    pub gamma_t_db: Vec<f64>,
    pub cases: Vec<SweepCase>,
    /// Monte Carlo trials per cell; zero disables simulation.
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
    pub quad: QuadSpec,
}

/// One output row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub scheme: Scheme,
    pub metric: Metric,
    pub gamma_t_db: f64,
    pub k: usize,
    pub lambda: f64,
    pub phi: f64,
    pub r_th: f64,
    pub analytic: Option<f64>,
    pub asymptotic: Option<f64>,
    pub mc_mean: Option<f64>,
    pub mc_stderr: Option<f64>,
    pub n_trials: Option<u64>,
    pub seed: Option<u64>,
    pub case: String,
}

impl SweepSpec {
    /// Rejects sweeps that cannot produce every requested column.
    pub fn validate(&self) -> Result<()> {
        if self.schemes.is_empty() {
            return Err(Error::InvalidSweep(format!("sweep `{}` lists no schemes", self.name)));
        }
        if self.gamma_t_db.is_empty() || self.gamma_t_db.iter().any(|g| !g.is_finite()) {
            return Err(Error::InvalidSweep(format!("sweep `{}` needs finite Γ_T values", self.name)));
        }
        if self.cases.is_empty() {
            return Err(Error::InvalidSweep(format!("sweep `{}` has no cases", self.name)));
        }
        for case in &self.cases {
            case.config.validate()?;
            if self.metric == Metric::Sop && case.config.secrecy_threshold <= 0.0 {
                return Err(Error::Domain(format!(
                    "case `{}`: secrecy outage needs a positive threshold",
                    case.label
                )));
            }
        }
        if self.metric == Metric::Ergodic && self.trials == 0 && self.schemes.contains(&Scheme::Os) {
            return Err(Error::MetricUnavailable { scheme: Scheme::Os, metric: "ergodic", kind: "analytic" });
        }
        Ok(())
    }
}

fn analytic_value(scheme: Scheme, metric: Metric, cfg: &SystemConfig, quad: &QuadSpec) -> Result<Option<f64>> {
    let v = match (scheme, metric) {
        (Scheme::Os, Metric::Nonzero) => os_numeric::os_prob_nonzero_secrecy(cfg, quad)?,
        (Scheme::Os, Metric::Sop) => os_numeric::os_secrecy_outage(cfg, quad)?,
        (Scheme::Os, Metric::Ergodic) => return Ok(None),
        (_, Metric::Nonzero) => analytics::prob_nonzero_secrecy(scheme, cfg)?,
        (_, Metric::Sop) => analytics::secrecy_outage_prob(scheme, cfg)?,
        (_, Metric::Ergodic) => analytics::ergodic_secrecy_capacity(scheme, cfg)?,
    };
    Ok(Some(v))
}

fn asymptotic_value(scheme: Scheme, metric: Metric, cfg: &SystemConfig, quad: &QuadSpec) -> Result<Option<f64>> {
    let v = match (scheme, metric) {
        (Scheme::Os, Metric::Nonzero) => os_numeric::os_asymptotic_prob_nonzero(cfg, quad)?,
        (Scheme::Os, Metric::Sop) => os_numeric::os_asymptotic_sop(cfg, quad)?,
        (Scheme::Os, Metric::Ergodic) => return Ok(None),
        (_, Metric::Nonzero) => asymptotic::asym_prob_nonzero(scheme, cfg)?,
        (_, Metric::Sop) => asymptotic::asym_sop(scheme, cfg)?,
        (_, Metric::Ergodic) => asymptotic::asym_ergodic(scheme, cfg)?,
    };
    Ok(Some(v))
}

/// Evaluates every (case, `Γ_T`) cell. Rows come out case-major, then by
/// `Γ_T`, then in the order the schemes were listed, whatever the thread
/// count.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<CurvePoint>> {
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers)
        .build()
        .map_err(|e| Error::invalid("workers", e.to_string()))?;
    pool.install(|| {
        let limits: Vec<Vec<Option<f64>>> = spec
            .cases
            .par_iter()
            .map(|case| {
                spec.schemes
                    .iter()
                    .map(|&s| asymptotic_value(s, spec.metric, &case.config, &spec.quad))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;

        let cells: Vec<(usize, f64)> = (0..spec.cases.len())
            .flat_map(|c| spec.gamma_t_db.iter().map(move |&g| (c, g)))
            .collect();
        let rows: Vec<Vec<CurvePoint>> = cells
            .par_iter()
            .map(|&(c, g)| run_cell(spec, &spec.cases[c], &limits[c], g))
            .collect::<Result<_>>()?;
        Ok(rows.into_iter().flatten().collect())
    })
}

fn run_cell(spec: &SweepSpec, case: &SweepCase, limits: &[Option<f64>], gamma_t_db: f64) -> Result<Vec<CurvePoint>> {
    let cfg = case.config.with_gamma_t_db(gamma_t_db);
    let mc = if spec.trials > 0 {
        let mc = McConfig { trials: spec.trials, seed: spec.seed, workers: spec.workers };
        Some(montecarlo::estimate_in_current_pool(&spec.schemes, &cfg, &mc)?)
    } else {
        None
    };
    spec.schemes
        .iter()
        .enumerate()
        .map(|(i, &scheme)| {
            let stat = mc.as_ref().map(|m| spec.metric.pick(&m[i]));
            Ok(CurvePoint {
                scheme,
                metric: spec.metric,
                gamma_t_db,
                k: cfg.k,
                lambda: cfg.backhaul_reliability,
                phi: cfg.primary_qos,
                r_th: cfg.secrecy_threshold,
                analytic: analytic_value(scheme, spec.metric, &cfg, &spec.quad)?,
                asymptotic: limits[i],
                mc_mean: stat.map(|s| s.mean),
                mc_stderr: stat.map(|s| s.stderr),
                n_trials: stat.map(|s| s.n),
                seed: stat.map(|_| spec.seed),
                case: case.label.clone(),
            })
        })
        .collect()
}
