//! Kochen-Specker hidden-variable model for a qubit and the finite
//! communication protocol derived from it.
//!
//! * [`geometry`]: Bloch vectors, measurements, Born probabilities.
//! * [`model`]: ontological-model traits and the Kochen-Specker model.
//! * [`info`]: entropies and mutual information `I(X:Ψ)`.
//! * [`sampler`], [`coding`], [`protocol`]: greedy rejection sampling over
//!   shared randomness, Elias-delta index coding, and the Alice/Bob channel.
//! * [`harness`]: the `verify`, `simulate`, `mi`, and `cost` commands.

pub mod coding;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod info;
pub mod model;
pub mod protocol;
pub mod quadrature;
pub mod sampler;
pub mod seeding;
pub mod stats;

pub use error::{Error, Result};
pub use geometry::{born_probability, random_unit_vec, rotate_to_frame, Measurement, Outcome, UnitVec3};
pub use info::{exact_ks_mi, mc_mutual_information, MiEstimate};
pub use model::{ks_density, ks_marginal, ks_response, ks_sample, KsModel, OntologicalModel, ResponseModel};
pub use protocol::{discretize_ks, Codebook, KsChannel, TrialReport};
pub use sampler::{greedy_one_shot, DiscreteDistribution, GreedySampler, SamplerLedger};
