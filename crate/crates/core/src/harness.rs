//! Verification sweeps, protocol simulations, and their reports.
//!
//! Each command is a pure function of its [`RunConfig`]; parallel work is
//! indexed by trial or shard and collected in index order, so the numbers in
//! a report never depend on the number of worker threads.

use std::collections::BTreeMap;
use std::f64::consts::{LOG2_E, PI};
use std::io::Write;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coding::elias_delta_len;
use crate::error::{Error, Result};
use crate::geometry::{born_probability, random_unit_vec, Frame, Measurement, UnitVec3};
use crate::info::{
    conditional_entropy_ks, exact_ks_mi, kl_divergence_ks, marginal_entropy_ks, mc_mutual_information, MiEstimate,
    Moments,
};
use crate::model::{ks_density, ks_response, ks_sample, KsModel};
use crate::protocol::{KsChannel, TrialReport};
use crate::quadrature::SphereRule;
use crate::seeding::{derive_seed, stream_rng, Domain};
use crate::stats::{percentile_sorted, plugin_entropy_bits};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Polar angles swept by `verify`.
pub const VERIFY_GRID_ANGLES: usize = 13;

/// `v·m` values swept by `simulate`.
pub const SIMULATE_GRID: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];

/// Absolute Born-conformance tolerance for `simulate`.
pub const SIMULATE_TOLERANCE: f64 = 0.01;

/// Tolerance of the quadrature Born check in `verify`.
pub const QUADRATURE_TOLERANCE: f64 = 1e-6;

/// Tolerance on the first-round acceptance frequency in `cost`.
pub const ROUND_ONE_TOLERANCE: f64 = 0.005;

/// Samples per shard in `verify`.
const VERIFY_SHARD: usize = 1 << 16;

/// Residual used when iterating the exact index law.
const LAW_RESIDUAL: f64 = 1e-13;

/// Upper end of the one-shot cost bound, `I + 2 log₂(I + 1) + 2 log₂ e`.
pub fn one_shot_cost_upper_bound(mi_bits: f64) -> f64 {
    mi_bits + 2.0 * (mi_bits + 1.0).log2() + 2.0 * LOG2_E
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Verify,
    Simulate,
    Mi,
    Cost,
}

impl Command {
    pub fn default_trials(self) -> usize {
        match self {
            Command::Verify | Command::Mi => 1_000_000,
            Command::Simulate | Command::Cost => 100_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub trials: usize,
    pub seed: u64,
    pub bins: usize,
    pub state: Option<UnitVec3>,
    pub meas: Option<UnitVec3>,
    pub output_path: Option<String>,
    pub format: Format,
    /// Thread count; 0 picks the default. Not part of the report.
    #[serde(skip)]
    pub workers: usize,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            trials: command.default_trials(),
            seed: 0,
            bins: crate::protocol::DEFAULT_BINS,
            state: None,
            meas: None,
            output_path: None,
            format: Format::Json,
            workers: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        if self.bins < 2 || !self.bins.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("bins must be even and at least 2, got {}", self.bins)));
        }
        if self.command == Command::Mi && self.trials < crate::info::MC_MIN_SAMPLES {
            return Err(Error::InvalidArgument(format!(
                "mi needs at least {} trials",
                crate::info::MC_MIN_SAMPLES
            )));
        }
        Ok(())
    }
}

/// Parses `x,y,z` and normalizes it.
pub fn parse_vector(s: &str) -> Result<UnitVec3> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::InvalidArgument(format!("bad vector {s:?}: {e}")))?;
    match parts.as_slice() {
        [x, y, z] => UnitVec3::normalized(*x, *y, *z),
        _ => Err(Error::InvalidArgument(format!("expected three components in {s:?}"))),
    }
}

/// A named pass/fail check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self { name: name.to_string(), passed, detail }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyCell {
    pub cos_angle: f64,
    pub state: UnitVec3,
    pub meas: UnitVec3,
    pub born: f64,
    pub empirical: f64,
    pub abs_error: f64,
    pub std_error: f64,
    pub quadrature: f64,
    pub n_samples: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyResults {
    pub cells: Vec<VerifyCell>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeStats {
    pub mean: f64,
    pub std_error: f64,
    pub p50: f64,
    pub p99: f64,
    pub max: f64,
    pub n_samples: usize,
}

impl CodeStats {
    fn from_values(values: &[f64]) -> Self {
        let mut m = Moments::default();
        values.iter().for_each(|&v| m.push(v));
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        Self {
            mean: m.mean,
            std_error: m.std_error(),
            p50: percentile_sorted(&sorted, 0.5),
            p99: percentile_sorted(&sorted, 0.99),
            max: sorted.last().copied().unwrap_or(f64::NAN),
            n_samples: values.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateCell {
    pub cos_angle: f64,
    pub born: f64,
    pub empirical: f64,
    pub abs_error: f64,
    pub n_samples: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostBounds {
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateResults {
    pub cells: Vec<SimulateCell>,
    pub code_bits: CodeStats,
    pub accepted_index: CodeStats,
    pub cost_bounds: CostBounds,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MiResults {
    pub exact_bits: f64,
    pub conditional_entropy_bits: f64,
    pub marginal_entropy_bits: f64,
    pub kl_divergence_bits: f64,
    pub monte_carlo: MiEstimate,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub protocol: String,
    pub bits: f64,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostResults {
    pub index_histogram: BTreeMap<u64, u64>,
    pub code_bits_histogram: BTreeMap<u64, u64>,
    pub code_bits: CodeStats,
    pub index_plugin_entropy_bits: f64,
    pub round_one_frequency: f64,
    pub exact_round_one_probability: f64,
    pub exact_mean_code_bits: f64,
    pub exact_index_entropy_bits: f64,
    pub cost_bounds: CostBounds,
    pub references: Vec<ReferenceRow>,
    pub n_samples: usize,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Results {
    Verify(VerifyResults),
    Simulate(SimulateResults),
    Mi(MiResults),
    Cost(CostResults),
}

impl Results {
    pub fn checks(&self) -> &[Check] {
        match self {
            Results::Verify(r) => &r.checks,
            Results::Simulate(r) => &r.checks,
            Results::Mi(r) => &r.checks,
            Results::Cost(r) => &r.checks,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub results: Results,
    pub runtime_seconds: f64,
    pub version: String,
    /// Per-trial records backing the CSV export of `simulate` and `cost`.
    #[serde(skip)]
    pub trials: Vec<TrialReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.results.checks().iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    /// CSV rendering: per-trial rows for `simulate`/`cost`, per-cell rows for
    /// `verify`, per-quantity rows for `mi`.
    pub fn write_csv<W: Write>(&self, out: W) -> std::result::Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        match &self.results {
            Results::Verify(r) => {
                w.write_record([
                    "cos_angle", "born", "empirical", "abs_error", "std_error", "quadrature", "n_samples", "passed",
                ])?;
                for c in &r.cells {
                    w.write_record([
                        num(c.cos_angle),
                        num(c.born),
                        num(c.empirical),
                        num(c.abs_error),
                        num(c.std_error),
                        num(c.quadrature),
                        c.n_samples.to_string(),
                        c.passed.to_string(),
                    ])?;
                }
            }
            Results::Mi(r) => {
                w.write_record(["quantity", "value", "std_error", "n_samples"])?;
                for (name, v) in [
                    ("exact_bits", r.exact_bits),
                    ("conditional_entropy_bits", r.conditional_entropy_bits),
                    ("marginal_entropy_bits", r.marginal_entropy_bits),
                    ("kl_divergence_bits", r.kl_divergence_bits),
                ] {
                    w.write_record([name.to_string(), num(v), num(0.0), "0".to_string()])?;
                }
                w.write_record([
                    "monte_carlo".to_string(),
                    num(r.monte_carlo.value),
                    num(r.monte_carlo.std_error),
                    r.monte_carlo.n_samples.to_string(),
                ])?;
            }
            Results::Simulate(_) | Results::Cost(_) => {
                w.write_record([
                    "trial", "state_x", "state_y", "state_z", "meas_x", "meas_y", "meas_z", "cos_angle", "born",
                    "accepted_index", "code_bits", "outcome",
                ])?;
                for t in &self.trials {
                    let [sx, sy, sz] = t.state.components();
                    let [mx, my, mz] = t.meas.direction.components();
                    w.write_record([
                        t.trial.to_string(),
                        num(sx),
                        num(sy),
                        num(sz),
                        num(mx),
                        num(my),
                        num(mz),
                        num(t.state.dot(&t.meas.direction)),
                        num(born_probability(&t.state, &t.meas)),
                        t.accepted_index.to_string(),
                        t.code_bits.to_string(),
                        t.outcome.symbol().to_string(),
                    ])?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }
}

fn num(x: f64) -> String {
    // Shortest round-trip representation, as in the JSON output.
    serde_json::to_string(&x).unwrap_or_else(|_| x.to_string())
}

/// Runs the configured command on a thread pool of `config.workers` threads.
pub fn run(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if config.workers > 0 {
        builder = builder.num_threads(config.workers);
    }
    let pool = builder.build().map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| {
        let start = Instant::now();
        let (results, trials) = match config.command {
            Command::Verify => (Results::Verify(cmd_verify(config)?), Vec::new()),
            Command::Simulate => {
                let (r, t) = cmd_simulate(config)?;
                (Results::Simulate(r), t)
            }
            Command::Mi => (Results::Mi(cmd_mi(config)?), Vec::new()),
            Command::Cost => {
                let (r, t) = cmd_cost(config)?;
                (Results::Cost(r), t)
            }
        };
        Ok(Report {
            config: config.clone(),
            results,
            runtime_seconds: start.elapsed().as_secs_f64(),
            version: VERSION.to_string(),
            trials,
        })
    })
}

/// Direction at polar angle `acos(cos_angle)` from `anchor`, azimuth `phi`.
fn at_angle(anchor: &UnitVec3, cos_angle: f64, phi: f64) -> UnitVec3 {
    let theta = cos_angle.clamp(-1.0, 1.0).acos();
    Frame::with_pole(*anchor).to_world(&UnitVec3::from_spherical(theta, phi))
}

/// Probability of `+` by quadrature of `θ(x·m) ρ(x|v)` over the sphere.
pub fn quadrature_born(rule: &SphereRule, v: &UnitVec3, m: &Measurement) -> f64 {
    rule.integrate_with_kinks(&[*v, m.direction], |x| {
        if ks_response(x, m).is_plus() {
            ks_density(x, v)
        } else {
            0.0
        }
    })
}

/// Direct model check: sample `x ~ ρ(·|v)` and answer with the hemisphere
/// rule, no communication involved.
pub fn cmd_verify(config: &RunConfig) -> Result<VerifyResults> {
    let v = config.state.unwrap_or(UnitVec3::Z);
    let pairs: Vec<(UnitVec3, UnitVec3)> = match config.meas {
        Some(m) => vec![(v, m)],
        None => (0..VERIFY_GRID_ANGLES)
            .map(|j| {
                let theta = PI * j as f64 / (VERIFY_GRID_ANGLES - 1) as f64;
                (v, at_angle(&v, theta.cos(), 0.0))
            })
            .collect(),
    };
    let n = config.trials;
    let shards = n.div_ceil(VERIFY_SHARD);
    let rule = SphereRule::default();

    let cells: Vec<VerifyCell> = pairs
        .iter()
        .enumerate()
        .map(|(cell, (v, m))| {
            let meas = Measurement::new(*m);
            let cell_seed = derive_seed(config.seed, Domain::Verify, cell as u64);
            let plus: u64 = (0..shards)
                .into_par_iter()
                .map(|s| {
                    let count = VERIFY_SHARD.min(n - s * VERIFY_SHARD);
                    let mut rng = stream_rng(cell_seed, s as u64);
                    (0..count).filter(|_| ks_response(&ks_sample(v, &mut rng), &meas).is_plus()).count() as u64
                })
                .sum();
            let born = born_probability(v, &meas);
            let empirical = plus as f64 / n as f64;
            let std_error = (born * (1.0 - born) / n as f64).sqrt();
            let abs_error = (empirical - born).abs();
            let quadrature = quadrature_born(&rule, v, &meas);
            VerifyCell {
                cos_angle: v.dot(m),
                state: *v,
                meas: *m,
                born,
                empirical,
                abs_error,
                std_error,
                quadrature,
                n_samples: n,
                passed: abs_error <= 3.0 * std_error + 1e-12
                    && (quadrature - born).abs() <= QUADRATURE_TOLERANCE,
            }
        })
        .collect();

    let failing = cells.iter().filter(|c| !c.passed).count();
    let worst_quad = cells.iter().map(|c| (c.quadrature - c.born).abs()).fold(0.0, f64::max);
    let checks = vec![
        Check::new(
            "born_sampling_3sigma",
            cells.iter().all(|c| c.abs_error <= 3.0 * c.std_error + 1e-12),
            format!("{} of {} cells within 3 sigma", cells.len() - failing, cells.len()),
        ),
        Check::new(
            "born_quadrature",
            worst_quad <= QUADRATURE_TOLERANCE,
            format!("max |quadrature - born| = {worst_quad:e} (tolerance {QUADRATURE_TOLERANCE:e})"),
        ),
    ];
    Ok(VerifyResults { cells, checks })
}

/// Picks `(v, m)` for one simulated trial in a cell with fixed `v·m`.
fn trial_pair(config: &RunConfig, cos_angle: f64, trial: u64) -> (UnitVec3, UnitVec3) {
    let mut rng = stream_rng(derive_seed(config.seed, Domain::TrialSetup, trial), 0);
    let phi = 2.0 * PI * rng.gen::<f64>();
    match (config.state, config.meas) {
        (Some(v), Some(m)) => (v, m),
        (Some(v), None) => (v, at_angle(&v, cos_angle, phi)),
        (None, Some(m)) => (at_angle(&m, cos_angle, phi), m),
        (None, None) => {
            let v = random_unit_vec(&mut rng);
            (v, at_angle(&v, cos_angle, phi))
        }
    }
}

fn run_trials<F>(channel: &KsChannel, config: &RunConfig, total: usize, pair: F) -> Result<Vec<TrialReport>>
where
    F: Fn(u64) -> (UnitVec3, UnitVec3) + Sync,
{
    (0..total as u64)
        .into_par_iter()
        .map(|t| {
            let (v, m) = pair(t);
            channel.run_trial(config.seed, t, v, Measurement::new(m))
        })
        .collect()
}

fn cost_bounds() -> CostBounds {
    let mi = exact_ks_mi();
    CostBounds { lower: mi, upper: one_shot_cost_upper_bound(mi) }
}

fn sandwich_check(stats: &CodeStats, bounds: &CostBounds) -> Check {
    let slack = 3.0 * stats.std_error;
    Check::new(
        "cost_sandwich",
        stats.mean >= bounds.lower - slack && stats.mean <= bounds.upper + slack,
        format!(
            "mean code bits {:.6} vs [{:.6}, {:.6}] +- {:.6}",
            stats.mean, bounds.lower, bounds.upper, slack
        ),
    )
}

/// Full Alice → bits → Bob pipeline.
pub fn cmd_simulate(config: &RunConfig) -> Result<(SimulateResults, Vec<TrialReport>)> {
    let channel = KsChannel::new(config.bins)?;
    let grid: Vec<f64> = match (config.state, config.meas) {
        (Some(v), Some(m)) => vec![v.dot(&m)],
        _ => SIMULATE_GRID.to_vec(),
    };
    let per_cell = config.trials;
    let trials = run_trials(&channel, config, per_cell * grid.len(), |t| {
        trial_pair(config, grid[t as usize / per_cell], t)
    })?;

    let cells: Vec<SimulateCell> = grid
        .iter()
        .zip(trials.chunks(per_cell))
        .map(|(&cos_angle, chunk)| {
            let plus = chunk.iter().filter(|t| t.outcome.is_plus()).count();
            let born = chunk.iter().map(|t| born_probability(&t.state, &t.meas)).sum::<f64>() / chunk.len() as f64;
            let empirical = plus as f64 / chunk.len() as f64;
            let abs_error = (empirical - born).abs();
            SimulateCell {
                cos_angle,
                born,
                empirical,
                abs_error,
                n_samples: chunk.len(),
                passed: abs_error <= SIMULATE_TOLERANCE,
            }
        })
        .collect();

    let bits: Vec<f64> = trials.iter().map(|t| t.code_bits as f64).collect();
    let index: Vec<f64> = trials.iter().map(|t| t.accepted_index as f64).collect();
    let code_bits = CodeStats::from_values(&bits);
    let bounds = cost_bounds();
    let worst = cells.iter().map(|c| c.abs_error).fold(0.0, f64::max);
    let checks = vec![
        Check::new(
            "born_conformance",
            cells.iter().all(|c| c.passed),
            format!("max |empirical - born| = {worst:.6} (tolerance {SIMULATE_TOLERANCE})"),
        ),
        sandwich_check(&code_bits, &bounds),
    ];
    Ok((
        SimulateResults {
            cells,
            code_bits,
            accepted_index: CodeStats::from_values(&index),
            cost_bounds: bounds,
            checks,
        },
        trials,
    ))
}

pub fn cmd_mi(config: &RunConfig) -> Result<MiResults> {
    let exact = exact_ks_mi();
    let monte_carlo = mc_mutual_information(&KsModel, config.trials, derive_seed(config.seed, Domain::MonteCarlo, 0))?;
    let within = monte_carlo.brackets(exact, 3.0);
    Ok(MiResults {
        exact_bits: exact,
        conditional_entropy_bits: conditional_entropy_ks(),
        marginal_entropy_bits: marginal_entropy_ks(),
        kl_divergence_bits: kl_divergence_ks(&config.state.unwrap_or(UnitVec3::Z)),
        monte_carlo,
        checks: vec![Check::new(
            "mc_brackets_exact",
            within,
            format!(
                "|{:.6} - {:.6}| vs 3 x {:.6}",
                monte_carlo.value, exact, monte_carlo.std_error
            ),
        )],
    })
}

/// Quoted costs of other qubit-channel protocols, for comparison only.
pub fn reference_rows() -> Vec<ReferenceRow> {
    let row = |protocol: &str, bits: f64, note: &str| ReferenceRow {
        protocol: protocol.to_string(),
        bits,
        note: note.to_string(),
    };
    vec![
        row("kochen-specker mutual information", exact_ks_mi(), "asymptotic parallel cost, analytic"),
        row("toner-bacon", 2.0, "exactly 2 bits per shot"),
        row("toner-bacon amortized", 1.85, "parallel simulations"),
        row("cerf-gisin-massar", 2.19, "average bits"),
    ]
}

/// Communication-cost accounting over uniformly random states.
pub fn cmd_cost(config: &RunConfig) -> Result<(CostResults, Vec<TrialReport>)> {
    let channel = KsChannel::new(config.bins)?;
    let trials = run_trials(&channel, config, config.trials, |t| {
        let mut rng = stream_rng(derive_seed(config.seed, Domain::TrialSetup, t), 0);
        let v = config.state.unwrap_or_else(|| random_unit_vec(&mut rng));
        let m = config.meas.unwrap_or_else(|| random_unit_vec(&mut rng));
        (v, m)
    })?;

    let mut index_histogram = BTreeMap::new();
    let mut code_bits_histogram = BTreeMap::new();
    for t in &trials {
        *index_histogram.entry(t.accepted_index).or_insert(0u64) += 1;
        *code_bits_histogram.entry(t.code_bits as u64).or_insert(0u64) += 1;
    }
    let bits: Vec<f64> = trials.iter().map(|t| t.code_bits as f64).collect();
    let code_bits = CodeStats::from_values(&bits);
    let index_plugin_entropy_bits = plugin_entropy_bits(&index_histogram);
    let n = trials.len();
    let round_one_frequency = index_histogram.get(&1).copied().unwrap_or(0) as f64 / n as f64;

    let law = channel.index_law(LAW_RESIDUAL);
    let exact_round_one_probability = law.index_pmf.first().copied().unwrap_or(0.0);
    let exact_mean_code_bits = law
        .index_pmf
        .iter()
        .enumerate()
        .map(|(i, p)| p * elias_delta_len(i as u64 + 1) as f64)
        .sum();
    let exact_index_entropy_bits = law.index_pmf.iter().filter(|&&p| p > 0.0).map(|p| -p * p.log2()).sum();

    let bounds = cost_bounds();
    let checks = vec![
        sandwich_check(&code_bits, &bounds),
        Check::new(
            "entropy_below_code_length",
            index_plugin_entropy_bits <= code_bits.mean,
            format!("plug-in entropy {index_plugin_entropy_bits:.6} vs mean code bits {:.6}", code_bits.mean),
        ),
        Check::new(
            "round_one_acceptance",
            (round_one_frequency - exact_round_one_probability).abs() <= ROUND_ONE_TOLERANCE,
            format!(
                "P(index = 1) = {round_one_frequency:.6}, binned exact {exact_round_one_probability:.6}, \
                 continuum 0.4375 (tolerance {ROUND_ONE_TOLERANCE})"
            ),
        ),
    ];

    Ok((
        CostResults {
            index_histogram,
            code_bits_histogram,
            code_bits,
            index_plugin_entropy_bits,
            round_one_frequency,
            exact_round_one_probability,
            exact_mean_code_bits,
            exact_index_entropy_bits,
            cost_bounds: bounds,
            references: reference_rows(),
            n_samples: n,
            checks,
        },
        trials,
    ))
}
