use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use secrecy_core::model::{db_to_linear, FadingDb};
use secrecy_core::montecarlo::McConfig;
use secrecy_core::sweep::{self, parse_config, preset, presets, CurvePoint, Metric, SweepCase, SweepSpec};
use secrecy_core::{QuadSpec, Scheme, SystemConfig};

#[derive(Parser)]
#[command(name = "secrecy", version, about = "Secrecy metrics for cognitive small-cell networks with unreliable backhaul")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form and asymptotic values (no simulation).
    Analyze(PointArgs),
    /// Closed-form values alongside Monte Carlo estimates.
    Simulate {
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        mc: McArgs,
    },
    /// Run the sweeps defined in a TOML file.
    Sweep {
        config: PathBuf,
        #[command(flatten)]
        mc: McArgs,
        /// Directory for one output file per sweep; stdout when absent.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run a named figure preset (fig2 … fig12).
    Figure {
        /// Preset name; omit with --list to show all.
        name: Option<String>,
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        mc: McArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Relative tolerance of the OS quadrature.
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct McArgs {
    /// Monte Carlo trials per grid point.
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct PointArgs {
    /// Comma-separated schemes.
    #[arg(long, value_delimiter = ',', default_value = "STS,MIS,MES,OS")]
    scheme: Vec<Scheme>,
    /// Comma-separated metrics (nonzero, sop, ergodic).
    #[arg(long, value_delimiter = ',', default_value = "nonzero,sop")]
    metric: Vec<Metric>,
    /// Γ_T in dB: a comma list or start:stop:step.
    #[arg(long, default_value = "20", allow_hyphen_values = true)]
    gamma_t_db: String,
    #[arg(long, default_value_t = 6)]
    k: usize,
    /// Backhaul reliability Λ.
    #[arg(long, default_value_t = 0.99)]
    backhaul: f64,
    /// Primary outage constraint Φ.
    #[arg(long, default_value_t = 0.1)]
    phi: f64,
    /// Primary target rate β (bits/s/Hz).
    #[arg(long, default_value_t = 0.5)]
    beta: f64,
    /// Secrecy threshold R_th (bits/s/Hz).
    #[arg(long, default_value_t = 0.5)]
    rth: f64,
    #[arg(long, allow_hyphen_values = true)]
    sd_db: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    se_db: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    sr_db: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    td_db: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    te_db: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    tr_db: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Relative tolerance of the OS quadrature.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() == 3 {
        let [start, stop, step] = [parts[0], parts[1], parts[2]].map(|p| p.trim().parse::<f64>());
        let (start, stop, step) = (start?, stop?, step?);
        if !(step > 0.0 && stop >= start) {
            bail!("range {s} must have step > 0 and stop >= start");
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        return Ok((0..=n).map(|i| start + step * i as f64).collect());
    }
    s.split(',')
        .map(|v| v.trim().parse::<f64>().with_context(|| format!("bad Γ_T value `{v}`")))
        .collect()
}

impl PointArgs {
    fn config(&self) -> SystemConfig {
        let b = FadingDb::BASELINE;
        let fading = FadingDb {
            sd: self.sd_db.unwrap_or(b.sd),
            se: self.se_db.unwrap_or(b.se),
            sr: self.sr_db.unwrap_or(b.sr),
            td: self.td_db.unwrap_or(b.td),
            te: self.te_db.unwrap_or(b.te),
            tr: self.tr_db.unwrap_or(b.tr),
        };
        SystemConfig {
            k: self.k,
            backhaul_reliability: self.backhaul,
            primary_qos: self.phi,
            primary_rate: self.beta,
            secrecy_threshold: self.rth,
            gamma_t: db_to_linear(0.0),
            fading: fading.rates(),
        }
    }

    fn specs(&self, mc: McConfig) -> Result<Vec<SweepSpec>> {
        let grid = parse_grid(&self.gamma_t_db)?;
        let config = self.config();
        Ok(self
            .metric
            .iter()
            .map(|&metric| SweepSpec {
                name: metric.to_string(),
                metric,
                schemes: self.scheme.clone(),
                gamma_t_db: grid.clone(),
                cases: vec![SweepCase { label: "base".into(), config }],
                trials: mc.trials,
                seed: mc.seed,
                workers: mc.workers,
                quad: QuadSpec { rel_tol: self.tol, ..QuadSpec::default() },
            })
            .collect())
    }
}

impl McArgs {
    fn apply(&self, spec: &mut SweepSpec) {
        if let Some(t) = self.trials {
            spec.trials = t;
        }
        if let Some(s) = self.seed {
            spec.seed = s;
        }
        if let Some(w) = self.workers {
            spec.workers = w;
        }
    }

    fn resolve(&self) -> McConfig {
        let d = McConfig::default();
        McConfig {
            trials: self.trials.unwrap_or(d.trials),
            seed: self.seed.unwrap_or(d.seed),
            workers: self.workers.unwrap_or(d.workers),
        }
    }
}

fn run_all(specs: &[SweepSpec]) -> Result<Vec<CurvePoint>> {
    for spec in specs {
        spec.validate().with_context(|| format!("sweep `{}`", spec.name))?;
    }
    let mut rows = Vec::new();
    for spec in specs {
        rows.extend(sweep::run_sweep(spec).with_context(|| format!("sweep `{}`", spec.name))?);
    }
    Ok(rows)
}

fn emit(rows: &[CurvePoint], out: Option<&Path>, format: Format) -> Result<()> {
    let sink: Box<dyn Write> = match out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            Box::new(File::create(path).with_context(|| format!("cannot create {}", path.display()))?)
        }
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    match format {
        Format::Csv => sweep::write_csv(rows, &mut sink)?,
        Format::Json => sweep::write_json(rows, &mut sink)?,
    }
    sink.flush()?;
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Analyze(point) => {
            let specs = point.specs(McConfig { trials: 0, ..McConfig::default() })?;
            let rows = run_all(&specs)?;
            emit(&rows, point.out.as_deref(), point.format)
        }
        Command::Simulate { point, mc } => {
            let mc = mc.resolve();
            if mc.trials == 0 {
                bail!("simulate needs --trials > 0");
            }
            let specs = point.specs(mc)?;
            let rows = run_all(&specs)?;
            emit(&rows, point.out.as_deref(), point.format)
        }
        Command::Sweep { config, mc, out_dir, format } => {
            let text = fs::read_to_string(&config).with_context(|| format!("cannot read {}", config.display()))?;
            let mut specs = parse_config(&text).with_context(|| format!("in {}", config.display()))?;
            specs.iter_mut().for_each(|s| mc.apply(s));
            match out_dir {
                Some(dir) => {
                    for spec in &specs {
                        spec.validate().with_context(|| format!("sweep `{}`", spec.name))?;
                    }
                    fs::create_dir_all(&dir)?;
                    let ext = match format {
                        Format::Csv => "csv",
                        Format::Json => "json",
                    };
                    for spec in &specs {
                        let rows = run_all(std::slice::from_ref(spec))?;
                        let path = dir.join(format!("{}.{ext}", spec.name));
                        emit(&rows, Some(&path), format)?;
                        eprintln!("wrote {}", path.display());
                    }
                    Ok(())
                }
                None => emit(&run_all(&specs)?, None, format),
            }
        }
        Command::Figure { name, list, mc, out, format, tol } => {
            if list || name.is_none() {
                for p in presets::PRESETS {
                    println!("{:<6} {}", p.name, p.description);
                }
                return Ok(());
            }
            let mc_cfg = mc.resolve();
            let mut spec = preset(name.as_deref().unwrap_or_default(), mc_cfg.trials, mc_cfg.seed)?;
            spec.workers = mc_cfg.workers;
            if let Some(tol) = tol {
                spec.quad.rel_tol = tol;
            }
            let rows = run_all(std::slice::from_ref(&spec))?;
            emit(&rows, out.as_deref(), format)
        }
    }
}
