//! Entropies and mutual information of ontological models.
//!
//! All entropies are differential entropies in bits. For the Kochen-Specker
//! model the height `z = v·x` has density `2z` on `[0, 1]` and the ontic
//! marginal is uniform, which reduces every quantity to a 1-D integral:
//!
//! ```text
//! h(X|Ψ) = -2 ∫ z log₂(z/π) dz = log₂ π + 1/(2 ln 2)
//! h(X)   = log₂ 4π
//! I(X:Ψ) = h(X) - h(X|Ψ) = 2 - 1/(2 ln 2)
//! ```

use std::f64::consts::{LN_2, PI};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::UnitVec3;
use crate::model::OntologicalModel;
use crate::quadrature::integrate_unit_interval_graded;
use crate::seeding::stream_rng;

/// Samples per Monte Carlo shard. Fixed so results do not depend on the
/// number of worker threads.
pub const MC_SHARD_SIZE: usize = 1 << 15;

/// Smallest sample count accepted by [`mc_mutual_information`].
pub const MC_MIN_SAMPLES: usize = 1000;

/// Monte Carlo mutual-information estimate in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MiEstimate {
    pub value: f64,
    pub std_error: f64,
    pub n_samples: usize,
}

impl MiEstimate {
    /// True iff `reference` lies within `k` standard errors of the estimate.
    pub fn brackets(&self, reference: f64, k: f64) -> bool {
        (self.value - reference).abs() <= k * self.std_error
    }
}

/// `I(X:Ψ) = 2 - 1/(2 ln 2)` bits for the Kochen-Specker model.
pub fn exact_ks_mi() -> f64 {
    2.0 - 1.0 / (2.0 * LN_2)
}

/// `h(X|Ψ)` in bits, by quadrature of `-2 ∫₀¹ z log₂(z/π) dz`.
pub fn conditional_entropy_ks() -> f64 {
    integrate_unit_interval_graded(|z| -2.0 * z * (z / PI).log2())
}

/// `h(X) = log₂ 4π` bits.
pub fn marginal_entropy_ks() -> f64 {
    (4.0 * PI).log2()
}

/// `D(ρ(·|v) ‖ ρ)` in bits. The same for every `v`.
pub fn kl_divergence_ks(_v: &UnitVec3) -> f64 {
    // log₂[(z/π) / (1/4π)] = log₂ 4z, weighted by the height density 2z
    integrate_unit_interval_graded(|z| 2.0 * z * (4.0 * z).log2())
}

/// Running count, mean, and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Moments {
    pub count: usize,
    pub mean: f64,
    pub m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let d = x - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (x - self.mean);
    }

    /// Pairwise combination of two disjoint sample sets.
    pub fn merge(self, other: Moments) -> Moments {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let n = self.count + other.count;
        let d = other.mean - self.mean;
        let mean = self.mean + d * other.count as f64 / n as f64;
        let m2 = self.m2 + other.m2 + d * d * (self.count as f64 * other.count as f64) / n as f64;
        Moments { count: n, mean, m2 }
    }

    pub fn sample_variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn std_error(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.sample_variance() / self.count as f64).sqrt()
        }
    }
}

/// Sample mean of `log₂[ρ(x|ψ) / ρ(x)]` over `ψ ~ ρ(ψ)`, `x ~ ρ(·|ψ)`.
///
/// Work is split into shards of [`MC_SHARD_SIZE`] samples; shard `s` draws
/// from ChaCha stream `s` of `seed` and shards are merged in index order.
pub fn mc_mutual_information<M>(model: &M, n: usize, seed: u64) -> Result<MiEstimate>
where
    M: OntologicalModel + Sync,
{
    if n < MC_MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "mutual-information estimate needs at least {MC_MIN_SAMPLES} samples, got {n}"
        )));
    }
    let shards = n.div_ceil(MC_SHARD_SIZE);
    let partial: Vec<Result<Moments>> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let count = MC_SHARD_SIZE.min(n - s * MC_SHARD_SIZE);
            let mut rng = stream_rng(seed, s as u64);
            shard_moments(model, count, &mut rng)
        })
        .collect();

    let mut total = Moments::default();
    for m in partial {
        total = total.merge(m?);
    }
    if !total.mean.is_finite() {
        return Err(Error::NumericalDomain("non-finite mutual-information estimate".into()));
    }
    Ok(MiEstimate { value: total.mean, std_error: total.std_error(), n_samples: total.count })
}

fn shard_moments<M, R>(model: &M, count: usize, rng: &mut R) -> Result<Moments>
where
    M: OntologicalModel,
    R: Rng,
{
    let mut acc = Moments::default();
    for _ in 0..count {
        let psi = model.sample_state(rng);
        let x = model.sample_ontic(&psi, rng);
        let cond = model.conditional_density(&x, &psi);
        let marg = model.marginal_density(&x);
        if marg <= 0.0 || cond <= 0.0 {
            return Err(Error::NumericalDomain(format!(
                "sampled ontic state has conditional density {cond} and marginal density {marg}"
            )));
        }
        acc.push((cond / marg).log2());
    }
    Ok(acc)
}
