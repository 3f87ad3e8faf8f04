//! One-shot classical simulation of a qubit channel built on the
//! Kochen-Specker model.
//!
//! Alice knows the Bloch vector `v`. She and Bob share a [`Codebook`]: an
//! endless list of uniformly random unit vectors, i.e. i.i.d. draws from the
//! ontic marginal `ρ(x)`. Alice runs greedy rejection sampling with target
//! `ρ(x|v)` over that list and sends the Elias-delta codeword of the
//! accepted position `k`. Bob decodes `k`, looks up `x = entry(k)`, and
//! answers his measurement with the hemisphere rule.
//!
//! Both densities are symmetric about `v`, so the rejection sampler works on
//! the height `z = v·x` only, binned into `K` equal slices of `[-1, 1]`.
//! Uniform `x` makes `z` uniform (proposal mass `1/K` per bin); the target
//! bin mass is `∫ 2z θ(z) dz` over the bin. Within an accepted bin the
//! azimuth stays uniform, so binning is the only approximation.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coding::{elias_delta_decode, elias_delta_encode, Bits};
use crate::error::{Error, Result};
use crate::geometry::{random_unit_vec, Measurement, Outcome, UnitVec3};
use crate::model::ks_response;
use crate::sampler::{greedy_one_shot, DiscreteDistribution, GreedySampler, SamplerLaw, DEFAULT_ROUND_CAP};
use crate::seeding::{derive_seed, stream_rng, Domain};

pub const DEFAULT_BINS: usize = 4096;

/// Shared randomness: entry `i` is a uniform unit vector drawn from ChaCha
/// stream `i` of the generator keyed by `seed`, so either party can compute
/// any entry directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codebook {
    pub seed: u64,
}

impl Codebook {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    /// Entry at 1-based position `i`.
    pub fn entry(&self, i: u64) -> UnitVec3 {
        random_unit_vec(&mut stream_rng(self.seed, i))
    }

    pub fn entries(&self) -> impl Iterator<Item = UnitVec3> + '_ {
        (1..).map(move |i| self.entry(i))
    }
}

/// Maps a unit vector to its slice of `z = pole·x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZBinner {
    pole: UnitVec3,
    bins: usize,
}

impl ZBinner {
    pub fn new(pole: UnitVec3, bins: usize) -> Self {
        Self { pole, bins }
    }

    pub fn bin(&self, x: &UnitVec3) -> usize {
        let z = self.pole.dot(x);
        let k = ((z + 1.0) * 0.5 * self.bins as f64).floor();
        (k.max(0.0) as usize).min(self.bins - 1)
    }

    /// `[lo, hi)` bounds of slice `j`.
    pub fn edges(&self, j: usize) -> (f64, f64) {
        let w = 2.0 / self.bins as f64;
        (-1.0 + j as f64 * w, -1.0 + (j + 1) as f64 * w)
    }
}

fn check_bins(bins: usize) -> Result<()> {
    if bins < 2 || !bins.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("bin count must be even and at least 2, got {bins}")));
    }
    Ok(())
}

/// Binned target `ρ(z|v)`, binned proposal `ρ(z)`, and the binner for `v`.
pub fn discretize_ks(v: &UnitVec3, bins: usize) -> Result<(DiscreteDistribution, DiscreteDistribution, ZBinner)> {
    check_bins(bins)?;
    let half = bins / 2;
    let k2 = (bins * bins) as f64;
    // Slice half + j covers [2j/K, 2(j+1)/K]; its mass is ((j+1)² - j²)·4/K².
    let target: Vec<f64> = (0..bins)
        .map(|j| if j < half { 0.0 } else { 4.0 * (2 * (j - half) + 1) as f64 / k2 })
        .collect();
    Ok((
        DiscreteDistribution::new(target)?,
        DiscreteDistribution::uniform(bins)?,
        ZBinner::new(*v, bins),
    ))
}

/// What Alice transmits, plus her private view of the run.
#[derive(Debug, Clone, PartialEq)]
pub struct AliceMessage {
    pub bits: Bits,
    pub accepted_index: u64,
    pub accepted_bin: usize,
}

/// Per-trial record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub trial: u64,
    pub state: UnitVec3,
    pub meas: Measurement,
    pub accepted_index: u64,
    pub code_bits: u32,
    pub outcome: Outcome,
}

/// Protocol parameters shared by Alice and Bob.
#[derive(Debug, Clone)]
pub struct KsChannel {
    bins: usize,
    sampler: GreedySampler,
    round_cap: u64,
}

impl KsChannel {
    pub fn new(bins: usize) -> Result<Self> {
        // Target and proposal do not depend on v once expressed in z.
        let (target, proposal, _) = discretize_ks(&UnitVec3::Z, bins)?;
        Ok(Self { bins, sampler: GreedySampler::new(target, proposal)?, round_cap: DEFAULT_ROUND_CAP })
    }

    pub fn with_round_cap(mut self, cap: u64) -> Self {
        self.round_cap = cap;
        self
    }

    pub fn bins(&self) -> usize {
        self.bins
    }

    pub fn sampler(&self) -> &GreedySampler {
        &self.sampler
    }

    /// Exact distribution of the transmitted index, independent of `v`.
    pub fn index_law(&self, residual: f64) -> SamplerLaw {
        self.sampler.law(residual, 100_000)
    }

    pub fn alice_send<R: Rng + ?Sized>(&self, v: &UnitVec3, codebook: &Codebook, coins: &mut R) -> Result<AliceMessage> {
        let binner = ZBinner::new(*v, self.bins);
        let stream = codebook.entries().map(|x| binner.bin(&x));
        let acc = greedy_one_shot(&self.sampler, stream, coins, self.round_cap)?;
        Ok(AliceMessage {
            bits: elias_delta_encode(acc.index)?,
            accepted_index: acc.index,
            accepted_bin: acc.symbol,
        })
    }

    /// Bob's reconstruction of the ontic state.
    pub fn bob_ontic(&self, bits: &Bits, codebook: &Codebook) -> Result<UnitVec3> {
        let k = elias_delta_decode(bits)?;
        Ok(codebook.entry(k))
    }

    pub fn bob_receive(&self, bits: &Bits, codebook: &Codebook, meas: &Measurement) -> Result<Outcome> {
        Ok(ks_response(&self.bob_ontic(bits, codebook)?, meas))
    }

    /// One complete trial with a fresh codebook derived from
    /// `(master_seed, trial)`.
    pub fn run_trial(&self, master_seed: u64, trial: u64, state: UnitVec3, meas: Measurement) -> Result<TrialReport> {
        let codebook = trial_codebook(master_seed, trial);
        let mut coins = stream_rng(derive_seed(master_seed, Domain::AliceCoins, trial), 0);
        let msg = self.alice_send(&state, &codebook, &mut coins)?;
        let outcome = self.bob_receive(&msg.bits, &codebook, &meas)?;
        Ok(TrialReport {
            trial,
            state,
            meas,
            accepted_index: msg.accepted_index,
            code_bits: msg.bits.len() as u32,
            outcome,
        })
    }
}

pub fn trial_codebook(master_seed: u64, trial: u64) -> Codebook {
    Codebook::new(derive_seed(master_seed, Domain::Codebook, trial))
}
