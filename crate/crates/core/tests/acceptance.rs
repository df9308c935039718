//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use secrecy_core::analytics::{
    asym_ergodic, asym_prob_nonzero, asym_sop, erg_kernel_i1, erg_kernel_i2, ergodic_secrecy_capacity, kernel_i1,
    kernel_i2, prob_nonzero_secrecy, secrecy_outage_prob, KernelParams,
};
use secrecy_core::model::{power_budget, FadingDb, Scheme, SystemConfig};
use secrecy_core::montecarlo::{estimate_schemes, McConfig, McEstimate};
use secrecy_core::os_numeric::quad::{integrate_half_line, QuadSpec};
use secrecy_core::os_numeric::{os_prob_nonzero_secrecy, os_secrecy_outage};
use secrecy_core::sweep::presets::{baseline, NONZERO_SE_DB, OUTAGE_SE_DB};

const SEED: u64 = 2019;
const TRIALS: u64 = 1_000_000;
const SIGMAS: f64 = 3.0;
const GRID_DB: [f64; 5] = [0.0, 10.0, 20.0, 30.0, 40.0];
const FIG_GRID_DB: [f64; 9] = [0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0];
const LAMBDAS: [f64; 2] = [0.8, 0.99];
const KS: [usize; 2] = [2, 6];
const PHIS: [f64; 2] = [0.01, 0.1];

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn mc() -> McConfig {
    McConfig { trials: TRIALS, seed: SEED, workers: 0 }
}

fn quad() -> QuadSpec {
    QuadSpec::default()
}

fn analytic(scheme: Scheme, metric: usize, cfg: &SystemConfig) -> f64 {
    match (scheme, metric) {
        (Scheme::Os, 0) => os_prob_nonzero_secrecy(cfg, &quad()).unwrap(),
        (Scheme::Os, 1) => os_secrecy_outage(cfg, &quad()).unwrap(),
        (_, 0) => prob_nonzero_secrecy(scheme, cfg).unwrap(),
        (_, 1) => secrecy_outage_prob(scheme, cfg).unwrap(),
        (_, _) => ergodic_secrecy_capacity(scheme, cfg).unwrap(),
    }
}

fn asymptote(scheme: Scheme, metric: usize, cfg: &SystemConfig) -> f64 {
    match metric {
        0 => asym_prob_nonzero(scheme, cfg).unwrap(),
        1 => asym_sop(scheme, cfg).unwrap(),
        _ => asym_ergodic(scheme, cfg).unwrap(),
    }
}

const METRIC_NAMES: [&str; 3] = ["nonzero", "sop", "ergodic"];

fn se_for(metric: usize) -> f64 {
    if metric == 0 {
        NONZERO_SE_DB
    } else {
        OUTAGE_SE_DB
    }
}

fn cfg_at(se_db: f64, lambda: f64, k: usize, phi: f64, gamma_db: f64) -> SystemConfig {
    baseline(se_db).with_backhaul(lambda).with_k(k).with_qos(phi).with_gamma_t_db(gamma_db)
}

struct GridCell {
    cfg_outage: SystemConfig,
    nonzero: Vec<McEstimate>,
    outage: Vec<McEstimate>,
}

/// Monte Carlo on the baseline grid: one run at the non-zero setting (three
/// sub-optimal schemes) and one at the outage/ergodic setting (all four).
fn baseline_grid_mc() -> (Vec<GridCell>, Duration) {
    let start = Instant::now();
    let mut cells = Vec::new();
    for &lambda in &LAMBDAS {
        for &k in &KS {
            for &phi in &PHIS {
                for &g in &GRID_DB {
                    let cfg_nz = cfg_at(NONZERO_SE_DB, lambda, k, phi, g);
                    let cfg_outage = cfg_at(OUTAGE_SE_DB, lambda, k, phi, g);
                    cells.push(GridCell {
                        cfg_outage,
                        nonzero: estimate_schemes(&Scheme::SUBOPTIMAL, &cfg_nz, &mc()).unwrap(),
                        outage: estimate_schemes(&Scheme::ALL, &cfg_outage, &mc()).unwrap(),
                    });
                }
            }
        }
    }
    (cells, start.elapsed())
}

fn describe(cfg: &SystemConfig) -> String {
    format!(
        "K={} Λ={} Φ={} Γ_T={:.0}dB",
        cfg.k,
        cfg.backhaul_reliability,
        cfg.primary_qos,
        10.0 * cfg.gamma_t.log10()
    )
}

fn closed_form_vs_mc(cells: &[GridCell], elapsed: Duration) -> Outcome {
    let mut checked = 0;
    let mut worst = 0.0f64;
    let mut misses = Vec::new();
    for cell in cells {
        let cfg_nz = cell.cfg_outage.with_fading(FadingDb::BASELINE.with_se(NONZERO_SE_DB).rates());
        for (i, &scheme) in Scheme::SUBOPTIMAL.iter().enumerate() {
            let checks = [
                (0, analytic(scheme, 0, &cfg_nz), cell.nonzero[i].prob_nonzero),
                (1, analytic(scheme, 1, &cell.cfg_outage), cell.outage[i].sop),
                (2, analytic(scheme, 2, &cell.cfg_outage), cell.outage[i].ergodic),
            ];
            for (m, value, stat) in checks {
                checked += 1;
                if stat.stderr > 0.0 {
                    worst = worst.max((value - stat.mean).abs() / stat.stderr);
                }
                if !stat.agrees_with(value, SIGMAS) {
                    misses.push(format!(
                        "{scheme} {} at {}: analytic {value:.6} vs mc {:.6} ± {:.2e}",
                        METRIC_NAMES[m],
                        describe(&cell.cfg_outage),
                        stat.mean,
                        stat.stderr
                    ));
                }
            }
        }
    }
    let in_time = elapsed < Duration::from_secs(300);
    Outcome {
        name: "closed form vs Monte Carlo (baseline grid, 3σ, n=1e6)",
        pass: misses.is_empty() && in_time,
        detail: format!(
            "{checked} comparisons, {} outside 3σ, worst |z| = {worst:.2}, grid MC time {:.1}s{}{}",
            misses.len(),
            elapsed.as_secs_f64(),
            if in_time { "" } else { " (over 5 min)" },
            if misses.is_empty() { String::new() } else { format!("; {}", misses.join("; ")) }
        ),
    }
}

fn os_vs_mc() -> Outcome {
    let mut checked = 0;
    let mut worst = 0.0f64;
    let mut misses = Vec::new();
    for metric in [0, 1] {
        for &lambda in &LAMBDAS {
            for &g in &FIG_GRID_DB {
                let cfg = cfg_at(se_for(metric), lambda, 6, 0.1, g);
                let est = estimate_schemes(&[Scheme::Os], &cfg, &mc()).unwrap().remove(0);
                let stat = if metric == 0 { est.prob_nonzero } else { est.sop };
                let value = analytic(Scheme::Os, metric, &cfg);
                checked += 1;
                if stat.stderr > 0.0 {
                    worst = worst.max((value - stat.mean).abs() / stat.stderr);
                }
                if !stat.agrees_with(value, SIGMAS) {
                    misses.push(format!(
                        "{} at {}: quadrature {value:.6} vs mc {:.6} ± {:.2e}",
                        METRIC_NAMES[metric],
                        describe(&cfg),
                        stat.mean,
                        stat.stderr
                    ));
                }
            }
        }
    }
    Outcome {
        name: "OS quadrature vs Monte Carlo (non-zero and outage figure settings, 3σ)",
        pass: misses.is_empty(),
        detail: format!(
            "{checked} comparisons, {} outside 3σ, worst |z| = {worst:.2}{}",
            misses.len(),
            if misses.is_empty() { String::new() } else { format!("; {}", misses.join("; ")) }
        ),
    }
}

fn single_transmitter_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    let mut checked = 0;
    for metric in [0, 1] {
        for &lambda in &LAMBDAS {
            for &phi in &PHIS {
                for &g in &GRID_DB {
                    let cfg = cfg_at(se_for(metric), lambda, 1, phi, g);
                    let vals: Vec<f64> = Scheme::ALL.iter().map(|&s| analytic(s, metric, &cfg)).collect();
                    let hi = vals.iter().cloned().fold(f64::MIN, f64::max);
                    let lo = vals.iter().cloned().fold(f64::MAX, f64::min);
                    worst = worst.max(hi - lo);
                    checked += 1;
                }
            }
        }
    }
    Outcome {
        name: "K=1 cross-path equivalence (all four schemes, 1e-6)",
        pass: worst <= 1e-6,
        detail: format!("{checked} grid points, largest spread {worst:.2e}"),
    }
}

fn kernel_grid() -> Outcome {
    let values = [0.01, 0.1, 1.0, 10.0, 100.0];
    let cs = [1e-3, 1e-2, 0.1, 1.0, 10.0];
    let spec = QuadSpec { rel_tol: 1e-11, abs_tol: 1e-300, max_subdivisions: 50_000 };
    let oracle = |f: &dyn Fn(f64) -> f64| integrate_half_line(f, &spec).unwrap().value;
    let mut worst = 0.0f64;
    let mut points = 0;
    for &a in &values {
        for &b in &values {
            for &c in &cs {
                points += 1;
                let p = KernelParams::new(a, b, c);
                let pairs = [
                    (kernel_i1(p).unwrap(), oracle(&|x| (-c * x).exp() / ((x + a) * (x + b)))),
                    (kernel_i2(p).unwrap(), oracle(&|x| (-c * x).exp() / ((x + a) * (x + b) * (x + b)))),
                    (erg_kernel_i1(b, c).unwrap(), oracle(&|x| b * (-c * x).exp() / ((x + 1.0) * (x + b)))),
                    (
                        erg_kernel_i2(a, b, c).unwrap(),
                        -oracle(&|x| a * b * (-c * x).exp() / ((x + 1.0) * (x + a) * (x + b))),
                    ),
                ];
                for (v, o) in pairs {
                    worst = worst.max(((v - o) / o).abs());
                }
            }
        }
    }
    Outcome {
        name: "kernels vs 1-D quadrature (125-point grid, 1e-6 relative)",
        pass: worst <= 1e-6,
        detail: format!("{points} (a,b,c) points x 4 kernels, worst relative error {worst:.2e}"),
    }
}

fn asymptote_convergence() -> Outcome {
    let mut worst = (0.0f64, String::new());
    let mut checked = 0;
    for se in [NONZERO_SE_DB, OUTAGE_SE_DB] {
        let cfg = baseline(se).with_gamma_t_db(60.0);
        for scheme in Scheme::ALL {
            for (metric, metric_name) in METRIC_NAMES.iter().enumerate() {
                if scheme == Scheme::Os && metric == 2 {
                    continue;
                }
                let exact = analytic(scheme, metric, &cfg);
                let limit = asymptote(scheme, metric, &cfg);
                let rel = ((exact - limit) / limit).abs();
                checked += 1;
                if rel > worst.0 {
                    worst = (rel, format!("{scheme} {} at 1/λ_se={se}dB", metric_name));
                }
            }
        }
    }
    Outcome {
        name: "asymptotes vs exact at Γ_T = 60 dB (1% relative)",
        pass: worst.0 <= 0.01,
        detail: format!("{checked} curves, worst relative gap {:.2e} ({})", worst.0, worst.1),
    }
}

fn qos_tightness(cells: &[GridCell]) -> Outcome {
    let mut checked = 0;
    let mut worst = 0.0f64;
    let mut misses = Vec::new();
    for cell in cells {
        let cfg = &cell.cfg_outage;
        for est in &cell.outage {
            if !power_budget(est.scheme, cfg).unwrap().active {
                continue;
            }
            checked += 1;
            let stat = est.primary_outage;
            worst = worst.max((stat.mean - cfg.primary_qos).abs() / stat.stderr);
            if !stat.agrees_with(cfg.primary_qos, SIGMAS) {
                misses.push(format!(
                    "{} at {}: {:.5} ± {:.1e}",
                    est.scheme,
                    describe(cfg),
                    stat.mean,
                    stat.stderr
                ));
            }
        }
    }
    Outcome {
        name: "primary QoS tightness (MC outage = Φ within 3σ)",
        pass: misses.is_empty() && checked > 0,
        detail: format!(
            "{checked} active (scheme, point) pairs, {} outside 3σ, worst |z| = {worst:.2}{}",
            misses.len(),
            if misses.is_empty() { String::new() } else { format!("; {}", misses.join("; ")) }
        ),
    }
}

fn orderings() -> Outcome {
    let mut failures = Vec::new();
    let mut crossings = Vec::new();
    let fig = |metric: usize, lambda: f64, g: f64| cfg_at(se_for(metric), lambda, 6, 0.1, g);
    let active = |cfg: &SystemConfig| power_budget(Scheme::Sts, cfg).unwrap().active;
    for &lambda in &LAMBDAS {
        for &g in &FIG_GRID_DB {
            let cfg = fig(0, lambda, g);
            if active(&cfg) {
                let [sts, mis, mes, os] = Scheme::ALL.map(|s| analytic(s, 0, &cfg));
                if !(os >= mes && mes >= sts && sts >= mis) {
                    failures.push(format!("nonzero Λ={lambda} Γ_T={g}dB: OS {os:.4} MES {mes:.4} STS {sts:.4} MIS {mis:.4}"));
                }
            }
            let cfg = fig(1, lambda, g);
            if active(&cfg) && g >= 30.0 {
                let [sts, mis, mes, os] = Scheme::ALL.map(|s| analytic(s, 1, &cfg));
                if !(os <= sts && sts <= mes && sts <= mis) {
                    failures.push(format!("sop Λ={lambda} Γ_T={g}dB: OS {os:.4} STS {sts:.4} MES {mes:.4} MIS {mis:.4}"));
                }
            }
            let cfg = fig(2, lambda, g);
            if active(&cfg) {
                let [sts, mis, mes] = [Scheme::Sts, Scheme::Mis, Scheme::Mes].map(|s| analytic(s, 2, &cfg));
                if !(sts >= mis && mis >= mes) {
                    failures.push(format!("ergodic Λ={lambda} Γ_T={g}dB: STS {sts:.4} MIS {mis:.4} MES {mes:.4}"));
                }
            }
        }
        let diffs: Vec<(f64, f64)> = FIG_GRID_DB
            .iter()
            .map(|&g| (g, fig(1, lambda, g)))
            .filter(|(_, cfg)| active(cfg))
            .map(|(g, cfg)| (g, analytic(Scheme::Mes, 1, &cfg) - analytic(Scheme::Mis, 1, &cfg)))
            .collect();
        let cross = diffs.windows(2).find(|w| w[0].1 > 0.0 && w[1].1 < 0.0);
        match cross {
            Some(w) => crossings.push(format!("Λ={lambda}: MES/MIS cross between {} and {} dB", w[0].0, w[1].0)),
            None => failures.push(format!("no MES/MIS outage crossover for Λ={lambda}")),
        }
    }
    Outcome {
        name: "orderings: nonzero OS≥MES≥STS≥MIS, SOP OS≤STS≤{MES,MIS} (Γ_T≥30dB), ergodic STS≥MIS≥MES, MES/MIS crossover",
        pass: failures.is_empty(),
        detail: format!(
            "{}{}",
            crossings.join("; "),
            if failures.is_empty() { String::new() } else { format!("; violations: {}", failures.join("; ")) }
        ),
    }
}

fn random_config(rng: &mut ChaCha8Rng) -> SystemConfig {
    let fd = FadingDb {
        sd: rng.gen_range(-10.0..30.0),
        se: rng.gen_range(-10.0..30.0),
        sr: rng.gen_range(-10.0..30.0),
        td: rng.gen_range(-10.0..30.0),
        te: rng.gen_range(-10.0..30.0),
        tr: rng.gen_range(-10.0..30.0),
    };
    SystemConfig {
        k: rng.gen_range(1..=10),
        backhaul_reliability: rng.gen_range(0.0..=1.0),
        primary_qos: rng.gen_range(0.001..0.5),
        primary_rate: rng.gen_range(0.1..3.0),
        secrecy_threshold: rng.gen_range(0.01..3.0),
        gamma_t: 0.0,
        fading: fd.rates(),
    }
    .with_gamma_t_db(rng.gen_range(-10.0..60.0))
}

/// Index of the first grid point at or beyond the asymptote, if any.
fn saturation_index(values: &[f64], limit: f64, increasing: bool) -> Option<usize> {
    values
        .iter()
        .position(|&v| if increasing { v >= limit } else { v <= limit })
}

fn structural() -> Outcome {
    let mut failures = Vec::new();
    let mut notes = Vec::new();

    // Λ-linearity.
    let mut worst_lin = 0.0f64;
    for &k in &KS {
        for &phi in &PHIS {
            for &g in &GRID_DB {
                for scheme in Scheme::ALL {
                    for metric in 0..3 {
                        if scheme == Scheme::Os && metric == 2 {
                            continue;
                        }
                        let full = cfg_at(se_for(metric), 1.0, k, phi, g);
                        let one = analytic(scheme, metric, &full);
                        for lam in [0.0, 0.3, 0.8, 0.99] {
                            let v = analytic(scheme, metric, &full.with_backhaul(lam));
                            let gap = match metric {
                                1 => ((1.0 - v) - lam * (1.0 - one)).abs(),
                                2 => (v - lam * one).abs() / one.max(1.0),
                                _ => (v - lam * one).abs(),
                            };
                            worst_lin = worst_lin.max(gap);
                        }
                    }
                }
            }
        }
    }
    if worst_lin > 1e-12 {
        failures.push(format!("Λ-linearity gap {worst_lin:.2e}"));
    }
    notes.push(format!("Λ-linearity worst gap {worst_lin:.1e}"));

    // Fuzzing.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = Vec::new();
    let cases = 10_000;
    for _ in 0..cases {
        let cfg = random_config(&mut rng);
        for scheme in Scheme::ALL {
            let p = analytic(scheme, 0, &cfg);
            let s = analytic(scheme, 1, &cfg);
            let ok_p = (0.0..=1.0).contains(&p);
            let ok_s = (0.0..=1.0).contains(&s);
            let ok_e = scheme == Scheme::Os || {
                let e = analytic(scheme, 2, &cfg);
                e.is_finite() && e >= 0.0
            };
            if !(ok_p && ok_s && ok_e) && bad.len() < 5 {
                bad.push(format!("{scheme} p={p} sop={s} cfg={cfg:?}"));
            }
        }
    }
    if !bad.is_empty() {
        failures.push(format!("fuzz out of range: {}", bad.join("; ")));
    }
    notes.push(format!("{cases} fuzz cases x 4 schemes"));

    // SOP monotone in R_th.
    let thresholds: Vec<f64> = (1..=60).map(|i| 0.05 * i as f64).collect();
    for &g in &[10.0, 20.0, 40.0] {
        for scheme in Scheme::ALL {
            let cfg = baseline(OUTAGE_SE_DB).with_gamma_t_db(g);
            let vals: Vec<f64> = thresholds.iter().map(|&r| analytic(scheme, 1, &cfg.with_threshold(r))).collect();
            if vals.windows(2).any(|w| w[1] < w[0] - 1e-12) {
                failures.push(format!("{scheme} SOP not monotone in R_th at Γ_T={g}dB"));
            }
        }
    }

    // Γ_T monotonicity until saturation.
    let mut curves = 0;
    let mut post_saturation = Vec::new();
    for &lambda in &LAMBDAS {
        for &k in &KS {
            for &phi in &PHIS {
                for (metric, metric_name) in METRIC_NAMES.iter().enumerate() {
                    for scheme in Scheme::ALL {
                        if scheme == Scheme::Os && metric == 2 {
                            continue;
                        }
                        curves += 1;
                        let cfgs: Vec<_> = GRID_DB.iter().map(|&g| cfg_at(se_for(metric), lambda, k, phi, g)).collect();
                        let vals: Vec<f64> = cfgs.iter().map(|c| analytic(scheme, metric, c)).collect();
                        let increasing = metric != 1;
                        let limit = asymptote(scheme, metric, &cfgs[0]);
                        let violates = |w: &[f64]| {
                            let tol = 1e-12 * w[0].abs().max(1.0);
                            if increasing {
                                w[1] < w[0] - tol
                            } else {
                                w[1] > w[0] + tol
                            }
                        };
                        let sat = saturation_index(&vals, limit, increasing).unwrap_or(vals.len() - 1);
                        let label = format!("{scheme} {} K={k} Λ={lambda} Φ={phi}", metric_name);
                        if vals[..=sat].windows(2).any(violates) {
                            failures.push(format!("{label} not monotone before saturation: {vals:.5?}"));
                        } else if vals.windows(2).any(violates) {
                            post_saturation.push(format!("{label} {vals:.5?} (limit {limit:.5})"));
                        }
                    }
                }
            }
        }
    }
    notes.push(format!(
        "{curves} Γ_T curves monotone until they reach their asymptote; {} dip past the limit and recover: {}",
        post_saturation.len(),
        post_saturation.join("; ")
    ));

    Outcome {
        name: "structural: Λ-linearity 1e-12, 1e4-case fuzz in [0,1], SOP monotone in R_th, Γ_T monotone until saturation",
        pass: failures.is_empty(),
        detail: format!(
            "{}{}",
            notes.join("; "),
            if failures.is_empty() { String::new() } else { format!("; FAILURES: {}", failures.join("; ")) }
        ),
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let (cells, mc_time) = baseline_grid_mc();
    let outcomes = [
        closed_form_vs_mc(&cells, mc_time),
        os_vs_mc(),
        single_transmitter_equivalence(),
        kernel_grid(),
        asymptote_convergence(),
        qos_tightness(&cells),
        orderings(),
        structural(),
    ];
    println!();
    for o in &outcomes {
        println!("{} {}", if o.pass { "PASS" } else { "FAIL" }, o.name);
        println!("     {}", o.detail);
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!(
        "\nacceptance: {} passed, {} failed ({:.1}s)",
        outcomes.len() - failed,
        failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
