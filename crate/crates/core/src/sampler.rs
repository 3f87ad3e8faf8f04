//! Greedy rejection sampling over a shared proposal stream.
//!
//! Sender and receiver share an i.i.d. stream `a_1, a_2, …` drawn from a
//! proposal `p`. The sender wants the receiver to end up with a symbol
//! distributed as the target `t` and only transmits the index of an accepted
//! draw. Round `i` grants every symbol as much extra mass as possible:
//!
//! ```text
//! s'(a) = s(a) + min((1 - S) p(a), t(a) - s(a)),   S = Σ_a s(a)
//! ```
//!
//! and accepts `a_i` with probability `(s'(a_i) - s(a_i)) / ((1 - S) p(a_i))`.
//! The accepted symbol is distributed exactly as `t`.
//!
//! The recursion has the closed form `s_i(a) = min(t(a), c_i p(a))` with
//! `c_i = c_{i-1} + 1 - S_{i-1}`, so a ledger only needs the scalar level
//! `c_i`. With symbols sorted by likelihood ratio `t/p`, `S(c)` costs a
//! binary search per round instead of a pass over the alphabet.

use rand::Rng;

use crate::error::{Error, Result};

/// Tolerance on `Σ masses = 1`.
pub const MASS_TOLERANCE: f64 = 1e-12;

/// Default cap on the number of rounds before declaring failure.
pub const DEFAULT_ROUND_CAP: u64 = 1 << 32;

/// Probability vector over the alphabet `0..len`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    masses: Vec<f64>,
    cumulative: Vec<f64>,
}

impl DiscreteDistribution {
    pub fn new(masses: Vec<f64>) -> Result<Self> {
        if masses.is_empty() {
            return Err(Error::InvalidArgument("empty alphabet".into()));
        }
        if let Some(bad) = masses.iter().find(|m| !m.is_finite() || **m < 0.0) {
            return Err(Error::InvalidArgument(format!("invalid probability mass {bad}")));
        }
        let sum: f64 = masses.iter().sum();
        if (sum - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidArgument(format!("masses sum to {sum}, not 1")));
        }
        let cumulative = masses
            .iter()
            .scan(0.0, |acc, m| {
                *acc += m;
                Some(*acc)
            })
            .collect();
        Ok(Self { masses, cumulative })
    }

    /// Normalizes nonnegative weights.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        let sum: f64 = weights.iter().sum();
        if !(sum > 0.0 && sum.is_finite()) {
            return Err(Error::InvalidArgument(format!("weights sum to {sum}")));
        }
        Self::new(weights.iter().map(|w| w / sum).collect())
    }

    pub fn uniform(len: usize) -> Result<Self> {
        Self::from_weights(&vec![1.0; len])
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn mass(&self, a: usize) -> f64 {
        self.masses[a]
    }

    /// Inverse-CDF draw.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u = rng.gen::<f64>() * self.cumulative[self.cumulative.len() - 1];
        let k = self.cumulative.partition_point(|&c| c <= u);
        // Skip zero-mass symbols that share a cumulative value.
        let k = k.min(self.masses.len() - 1);
        if self.masses[k] > 0.0 {
            k
        } else {
            self.masses.iter().rposition(|&m| m > 0.0).expect("distribution has mass")
        }
    }

    pub fn total_variation(&self, other: &DiscreteDistribution) -> f64 {
        total_variation(&self.masses, &other.masses)
    }
}

/// Half the L1 distance between two mass vectors of equal length.
pub fn total_variation(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "alphabets differ");
    0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

/// Accepted-mass bookkeeping after some number of rounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerLedger {
    level: f64,
    total: f64,
    step: u64,
}

impl SamplerLedger {
    /// `S = Σ_a s(a)`.
    pub fn total_accepted(&self) -> f64 {
        self.total
    }

    /// Rounds completed so far.
    pub fn step(&self) -> u64 {
        self.step
    }

    /// Scalar `c` with `s(a) = min(t(a), c p(a))`.
    pub fn level(&self) -> f64 {
        self.level
    }

    /// Mass still unaccepted, `1 - S`.
    pub fn remaining(&self) -> f64 {
        (1.0 - self.total).max(0.0)
    }

    /// The per-symbol accepted mass `s(a)`.
    pub fn accepted_mass(&self, sampler: &GreedySampler) -> Vec<f64> {
        (0..sampler.len()).map(|a| sampler.accepted_at(self.level, a)).collect()
    }
}

/// Result of a successful run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Acceptance {
    /// 1-based position of the accepted draw in the shared stream.
    pub index: u64,
    pub symbol: usize,
}

/// Exact laws implied by the ledger recursion.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplerLaw {
    /// `P(output = a)`.
    pub output: Vec<f64>,
    /// `P(index = i)` at position `i - 1`.
    pub index_pmf: Vec<f64>,
    /// Probability mass not yet accepted when the recursion stopped.
    pub unresolved: f64,
}

/// Precomputed `(target, proposal)` pair.
#[derive(Debug, Clone)]
pub struct GreedySampler {
    target: DiscreteDistribution,
    proposal: DiscreteDistribution,
    /// Likelihood ratios `t/p` in ascending order (symbols with `p > 0`).
    ratios: Vec<f64>,
    /// `target_below[k]`: target mass of the first `k` sorted symbols.
    target_below: Vec<f64>,
    /// `proposal_above[k]`: proposal mass of sorted symbols `k..`.
    proposal_above: Vec<f64>,
}

impl GreedySampler {
    pub fn new(target: DiscreteDistribution, proposal: DiscreteDistribution) -> Result<Self> {
        if target.len() != proposal.len() {
            return Err(Error::InvalidArgument(format!(
                "target has {} symbols, proposal has {}",
                target.len(),
                proposal.len()
            )));
        }
        let mut order: Vec<(f64, usize)> = Vec::with_capacity(target.len());
        for a in 0..target.len() {
            let (t, p) = (target.mass(a), proposal.mass(a));
            if p == 0.0 {
                if t > 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "symbol {a} has target mass {t} but zero proposal mass"
                    )));
                }
                continue;
            }
            order.push((t / p, a));
        }
        order.sort_by(|x, y| x.0.total_cmp(&y.0));

        let ratios = order.iter().map(|o| o.0).collect();
        let mut target_below = Vec::with_capacity(order.len() + 1);
        target_below.push(0.0);
        for &(_, a) in &order {
            target_below.push(target_below.last().unwrap() + target.mass(a));
        }
        let mut proposal_above = vec![0.0; order.len() + 1];
        for k in (0..order.len()).rev() {
            proposal_above[k] = proposal_above[k + 1] + proposal.mass(order[k].1);
        }
        Ok(Self { target, proposal, ratios, target_below, proposal_above })
    }

    pub fn len(&self) -> usize {
        self.target.len()
    }

    pub fn is_empty(&self) -> bool {
        self.target.is_empty()
    }

    pub fn target(&self) -> &DiscreteDistribution {
        &self.target
    }

    pub fn proposal(&self) -> &DiscreteDistribution {
        &self.proposal
    }

    /// Empty ledger before round 1.
    pub fn start(&self) -> SamplerLedger {
        SamplerLedger { level: 0.0, total: 0.0, step: 0 }
    }

    fn accepted_at(&self, level: f64, a: usize) -> f64 {
        self.target.mass(a).min(level * self.proposal.mass(a))
    }

    /// `S(c) = Σ_{r ≤ c} t + c Σ_{r > c} p`.
    fn total_at(&self, level: f64) -> f64 {
        let k = self.ratios.partition_point(|&r| r <= level);
        (self.target_below[k] + level * self.proposal_above[k]).min(1.0)
    }

    /// Ledger after one more round.
    pub fn advance(&self, ledger: &SamplerLedger) -> SamplerLedger {
        let level = ledger.level + ledger.remaining();
        let total = self.total_at(level).max(ledger.total);
        SamplerLedger { level, total, step: ledger.step + 1 }
    }

    /// Probability of accepting draw `a` in the round that moves `ledger` to
    /// `next = self.advance(ledger)`.
    pub fn acceptance_probability(&self, ledger: &SamplerLedger, next: &SamplerLedger, a: usize) -> f64 {
        let p = self.proposal.mass(a);
        if p == 0.0 {
            return 0.0;
        }
        let rem = ledger.remaining();
        if rem <= f64::EPSILON {
            // Numerically exhausted: all remaining mass belongs to symbols
            // still below their target, which is every symbol in support.
            return if self.target.mass(a) > 0.0 { 1.0 } else { 0.0 };
        }
        let gain = self.accepted_at(next.level, a) - self.accepted_at(ledger.level, a);
        (gain / (rem * p)).clamp(0.0, 1.0)
    }

    /// Iterates the ledger without randomness until at most `residual` mass
    /// is unaccepted or `max_rounds` rounds have passed.
    pub fn law(&self, residual: f64, max_rounds: u64) -> SamplerLaw {
        let mut output = vec![0.0; self.len()];
        let mut index_pmf = Vec::new();
        let mut ledger = self.start();
        while ledger.remaining() > residual && ledger.step < max_rounds {
            let next = self.advance(&ledger);
            let rem = ledger.remaining();
            let mut round_mass = 0.0;
            for (a, out) in output.iter_mut().enumerate() {
                let mass = rem * self.proposal.mass(a) * self.acceptance_probability(&ledger, &next, a);
                *out += mass;
                round_mass += mass;
            }
            index_pmf.push(round_mass);
            if next.total <= ledger.total && rem > f64::EPSILON {
                break;
            }
            ledger = next;
        }
        SamplerLaw { output, index_pmf, unresolved: ledger.remaining() }
    }
}

/// Runs the protocol against a shared symbol stream. `coins` is the sender's
/// private randomness for the accept/reject decisions.
pub fn greedy_one_shot<I, R>(sampler: &GreedySampler, symbols: I, coins: &mut R, round_cap: u64) -> Result<Acceptance>
where
    I: IntoIterator<Item = usize>,
    R: Rng + ?Sized,
{
    let mut ledger = sampler.start();
    for (symbol, index) in symbols.into_iter().zip(1..=round_cap) {
        if symbol >= sampler.len() {
            return Err(Error::InvalidArgument(format!(
                "stream produced symbol {symbol} outside alphabet of {}",
                sampler.len()
            )));
        }
        let next = sampler.advance(&ledger);
        debug_assert!(next.total >= ledger.total, "accepted mass decreased");
        debug_assert!(
            sampler.accepted_at(next.level, symbol) <= sampler.target.mass(symbol),
            "accepted mass exceeds target"
        );
        let accept = sampler.acceptance_probability(&ledger, &next, symbol);
        if accept >= 1.0 || (accept > 0.0 && coins.gen::<f64>() < accept) {
            return Ok(Acceptance { index, symbol });
        }
        ledger = next;
    }
    Err(Error::ProtocolFailure(format!(
        "no draw accepted within {round_cap} rounds or before the shared stream ended"
    )))
}
