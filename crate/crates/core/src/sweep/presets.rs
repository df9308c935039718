//! Named sweeps reproducing the standard figure set.
//!
//! Non-zero secrecy figures use a strong eavesdropper link
//! (`1/λ_se` = 30 dB); outage and ergodic figures use `1/λ_se` = −3 dB.

use crate::error::{Error, Result};
use crate::model::{db_to_linear, FadingDb, Scheme, SystemConfig};
use crate::os_numeric::quad::QuadSpec;

use super::{Metric, SweepCase, SweepSpec};

pub const NONZERO_SE_DB: f64 = 30.0;
pub const OUTAGE_SE_DB: f64 = -3.0;

#[derive(Debug, Clone, Copy)]
enum Vary {
    Backhaul,
    Transmitters,
    Qos,
    Fading,
}

#[derive(Debug, Clone, Copy)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    metric: Metric,
    vary: Vary,
}

pub const PRESETS: [Preset; 11] = [
    Preset { name: "fig2", description: "non-zero secrecy vs Γ_T, Λ ∈ {0.8, 0.99}", metric: Metric::Nonzero, vary: Vary::Backhaul },
    Preset { name: "fig3", description: "non-zero secrecy vs Γ_T, K ∈ {2, 6}", metric: Metric::Nonzero, vary: Vary::Transmitters },
    Preset { name: "fig4", description: "non-zero secrecy vs Γ_T, Φ ∈ {0.01, 0.1}", metric: Metric::Nonzero, vary: Vary::Qos },
    Preset { name: "fig5", description: "secrecy outage vs Γ_T, Λ ∈ {0.8, 0.99}", metric: Metric::Sop, vary: Vary::Backhaul },
    Preset { name: "fig6", description: "secrecy outage vs Γ_T, K ∈ {2, 6}", metric: Metric::Sop, vary: Vary::Transmitters },
    Preset { name: "fig7", description: "secrecy outage vs Γ_T, Φ ∈ {0.01, 0.1}", metric: Metric::Sop, vary: Vary::Qos },
    Preset { name: "fig8", description: "ergodic secrecy capacity vs Γ_T, Λ ∈ {0.8, 0.99}", metric: Metric::Ergodic, vary: Vary::Backhaul },
    Preset { name: "fig9", description: "ergodic secrecy capacity vs Γ_T, K ∈ {2, 6}", metric: Metric::Ergodic, vary: Vary::Transmitters },
    Preset { name: "fig10", description: "ergodic secrecy capacity vs Γ_T, Φ ∈ {0.01, 0.1}", metric: Metric::Ergodic, vary: Vary::Qos },
    Preset { name: "fig11", description: "OS non-zero secrecy under four fading settings", metric: Metric::Nonzero, vary: Vary::Fading },
    Preset { name: "fig12", description: "OS secrecy outage under four fading settings", metric: Metric::Sop, vary: Vary::Fading },
];

/// Baseline operating point: K = 6, Λ = 0.99, Φ = 0.1, β = R_th = 0.5.
pub fn baseline(se_db: f64) -> SystemConfig {
    SystemConfig {
        k: 6,
        backhaul_reliability: 0.99,
        primary_qos: 0.1,
        primary_rate: 0.5,
        secrecy_threshold: 0.5,
        gamma_t: db_to_linear(0.0),
        fading: FadingDb::BASELINE.with_se(se_db).rates(),
    }
}

/// `Γ_T` grid 0..=40 dB in 5 dB steps.
pub fn default_grid() -> Vec<f64> {
    (0..=8).map(|i| 5.0 * i as f64).collect()
}

fn fmt_num(v: f64) -> String {
    super::format_real(v)
}

impl Preset {
    pub fn build(&self, trials: u64, seed: u64) -> SweepSpec {
        let se_db = match self.metric {
            Metric::Nonzero => NONZERO_SE_DB,
            Metric::Sop | Metric::Ergodic => OUTAGE_SE_DB,
        };
        let base = baseline(se_db);
        let case = |label: String, config: SystemConfig| SweepCase { label, config };
        let cases = match self.vary {
            Vary::Backhaul => [0.8, 0.99]
                .iter()
                .map(|&l| case(format!("Lambda={}", fmt_num(l)), base.with_backhaul(l)))
                .collect(),
            Vary::Transmitters => [2, 6].iter().map(|&k| case(format!("K={k}"), base.with_k(k))).collect(),
            Vary::Qos => [0.01, 0.1]
                .iter()
                .map(|&p| case(format!("Phi={}", fmt_num(p)), base.with_qos(p)))
                .collect(),
            Vary::Fading => {
                let fd = FadingDb::BASELINE.with_se(se_db);
                vec![
                    case("baseline".into(), base),
                    case("td=-3dB".into(), base.with_fading(FadingDb { td: -3.0, ..fd }.rates())),
                    case("te=0dB".into(), base.with_fading(FadingDb { te: 0.0, ..fd }.rates())),
                    case("sr=3dB".into(), base.with_fading(FadingDb { sr: 3.0, ..fd }.rates())),
                ]
            }
        };
        let schemes = match self.vary {
            Vary::Fading => vec![Scheme::Os],
            _ => Scheme::ALL.to_vec(),
        };
        SweepSpec {
            name: self.name.to_string(),
            metric: self.metric,
            schemes,
            gamma_t_db: default_grid(),
            cases,
            trials,
            seed,
            workers: 0,
            quad: QuadSpec::default(),
        }
    }
}

pub fn preset(name: &str, trials: u64, seed: u64) -> Result<SweepSpec> {
    PRESETS
        .iter()
        .find(|p| p.name.eq_ignore_ascii_case(name))
        .map(|p| p.build(trials, seed))
        .ok_or_else(|| {
            let known: Vec<_> = PRESETS.iter().map(|p| p.name).collect();
            Error::InvalidSweep(format!("unknown preset `{name}` (known: {})", known.join(", ")))
        })
}
