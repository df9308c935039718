//! TOML sweep definitions.
//!
//! ```toml
//! [[sweep]]
//! name = "outage-vs-k"
//! metric = "sop"
//! schemes = ["STS", "MIS", "MES", "OS"]
//! gamma_t_db = { start = 0, stop = 40, step = 5 }
//! k = [2, 6]             # scalars or lists; lists expand to cases
//! lambda = 0.99
//! phi = 0.1
//! beta = 0.5
//! r_th = 0.5
//! trials = 1000000
//! seed = 2019
//!
//! [sweep.fading_db]
//! se = -3
//! ```

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::model::{db_to_linear, FadingDb, Scheme, SystemConfig};
use crate::montecarlo::McConfig;
use crate::os_numeric::quad::QuadSpec;

use super::output::format_real;
use super::presets::default_grid;
use super::{Metric, SweepCase, SweepSpec};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct File {
    #[serde(default)]
    sweep: Vec<Table>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v],
            OneOrMany::Many(v) => v,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Grid {
    List(Vec<f64>),
    Range { start: f64, stop: f64, step: f64 },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FadingTable {
    sd: Option<f64>,
    se: Option<f64>,
    sr: Option<f64>,
    td: Option<f64>,
    te: Option<f64>,
    tr: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Table {
    name: String,
    metric: String,
    schemes: Option<Vec<String>>,
    gamma_t_db: Option<Grid>,
    k: Option<OneOrMany<usize>>,
    lambda: Option<OneOrMany<f64>>,
    phi: Option<OneOrMany<f64>>,
    beta: Option<f64>,
    r_th: Option<f64>,
    trials: Option<u64>,
    seed: Option<u64>,
    workers: Option<usize>,
    rel_tol: Option<f64>,
    #[serde(default)]
    fading_db: FadingTable,
}

fn expand_grid(grid: Grid, name: &str) -> Result<Vec<f64>> {
    match grid {
        Grid::List(v) => Ok(v),
        Grid::Range { start, stop, step } => {
            if !(step > 0.0 && stop >= start && ((stop - start) / step) < 1e5) {
                return Err(Error::Config(format!("sweep `{name}`: bad gamma_t_db range")));
            }
            let n = ((stop - start) / step + 1e-9).floor() as usize;
            Ok((0..=n).map(|i| start + step * i as f64).collect())
        }
    }
}

impl Table {
    fn into_spec(self) -> Result<SweepSpec> {
        let name = self.name;
        let ctx = |e: Error| Error::Config(format!("sweep `{name}`: {e}"));
        let metric: Metric = self.metric.parse().map_err(ctx)?;
        let schemes = match self.schemes {
            Some(list) => list.iter().map(|s| s.parse()).collect::<Result<Vec<Scheme>>>().map_err(ctx)?,
            None => Scheme::ALL.to_vec(),
        };
        let gamma_t_db = match self.gamma_t_db {
            Some(g) => expand_grid(g, &name)?,
            None => default_grid(),
        };
        let fd = FadingDb::BASELINE;
        let f = self.fading_db;
        let fading = FadingDb {
            sd: f.sd.unwrap_or(fd.sd),
            se: f.se.unwrap_or(fd.se),
            sr: f.sr.unwrap_or(fd.sr),
            td: f.td.unwrap_or(fd.td),
            te: f.te.unwrap_or(fd.te),
            tr: f.tr.unwrap_or(fd.tr),
        }
        .rates();
        let base = SystemConfig {
            k: 6,
            backhaul_reliability: 0.99,
            primary_qos: 0.1,
            primary_rate: self.beta.unwrap_or(0.5),
            secrecy_threshold: self.r_th.unwrap_or(0.5),
            gamma_t: db_to_linear(0.0),
            fading,
        };
        let ks = self.k.map_or(vec![base.k], OneOrMany::into_vec);
        let lambdas = self.lambda.map_or(vec![base.backhaul_reliability], OneOrMany::into_vec);
        let phis = self.phi.map_or(vec![base.primary_qos], OneOrMany::into_vec);
        let multi = ks.len() * lambdas.len() * phis.len() > 1;
        let mut cases = Vec::new();
        for &k in &ks {
            for &lambda in &lambdas {
                for &phi in &phis {
                    let mut parts = Vec::new();
                    if ks.len() > 1 {
                        parts.push(format!("K={k}"));
                    }
                    if lambdas.len() > 1 {
                        parts.push(format!("Lambda={}", format_real(lambda)));
                    }
                    if phis.len() > 1 {
                        parts.push(format!("Phi={}", format_real(phi)));
                    }
                    let label = if multi { parts.join(",") } else { "base".to_string() };
                    let config = base.with_k(k).with_backhaul(lambda).with_qos(phi);
                    config.validate().map_err(ctx)?;
                    cases.push(SweepCase { label, config });
                }
            }
        }
        let defaults = McConfig::default();
        let mut quad = QuadSpec::default();
        if let Some(tol) = self.rel_tol {
            quad.rel_tol = tol;
        }
        Ok(SweepSpec {
            name: name.clone(),
            metric,
            schemes,
            gamma_t_db,
            cases,
            trials: self.trials.unwrap_or(defaults.trials),
            seed: self.seed.unwrap_or(defaults.seed),
            workers: self.workers.unwrap_or(defaults.workers),
            quad,
        })
    }
}

/// Parses every `[[sweep]]` table. Syntax errors carry line and column.
pub fn parse_config(text: &str) -> Result<Vec<SweepSpec>> {
    let file: File = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    if file.sweep.is_empty() {
        return Err(Error::Config("no [[sweep]] tables found".into()));
    }
    file.sweep.into_iter().map(Table::into_spec).collect()
}
