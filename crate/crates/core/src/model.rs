//! Ontological (hidden-variable) models and the Kochen-Specker qubit model.
//!
//! An ontological model assigns each preparation `ψ` a density `ρ(x|ψ)` over
//! ontic states and each measurement a response `P(E|x, M)`. It reproduces
//! quantum theory when `∫ P(E|x, M) ρ(x|ψ) dx = ⟨ψ|E|ψ⟩`.
//!
//! In the Kochen-Specker model the ontic state is a unit vector `x`, the
//! state `v` is its Bloch vector, and
//!
//! ```text
//! ρ(x|v) = (v·x) θ(v·x) / π
//! ```
//!
//! Outcome `+` of the measurement along `m` occurs iff `x·m ≥ 0`.

use std::f64::consts::PI;

use rand::Rng;

use crate::geometry::{from_polar_z, random_unit_vec, rotate_to_frame, Measurement, Outcome, UnitVec3};

/// Densities and samplers of an ontological model.
///
/// `State` is a preparation drawn from the model's prior `ρ(ψ)`; the ontic
/// marginal `ρ(x) = ∫ ρ(x|ψ) ρ(ψ) dψ` must be supplied in closed form.
pub trait OntologicalModel {
    type State;
    type Ontic;

    /// Density (or mass) of ontic state `x` given preparation `psi`.
    fn conditional_density(&self, x: &Self::Ontic, psi: &Self::State) -> f64;

    /// Draws an ontic state from `ρ(·|psi)`.
    fn sample_ontic<R: Rng + ?Sized>(&self, psi: &Self::State, rng: &mut R) -> Self::Ontic;

    /// Draws a preparation from the prior `ρ(ψ)`.
    fn sample_state<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::State;

    /// Marginal density `ρ(x)` under the prior.
    fn marginal_density(&self, x: &Self::Ontic) -> f64;
}

/// Models whose ontic states answer measurements.
pub trait ResponseModel: OntologicalModel {
    type Measurement;
    type Outcome;

    /// Probability of `outcome` given the ontic state.
    fn response_probability(&self, x: &Self::Ontic, meas: &Self::Measurement, outcome: Self::Outcome) -> f64;
}

/// The Kochen-Specker model. Stateless.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KsModel;

/// `ρ(x|v) = (v·x) θ(v·x) / π`.
pub fn ks_density(x: &UnitVec3, v: &UnitVec3) -> f64 {
    let c = v.dot(x);
    if c > 0.0 {
        c / PI
    } else {
        0.0
    }
}

/// Exact draw from `ρ(·|v)`: the height `z = v·x` has density `2z` on
/// `[0, 1]`, so `z = √u` with `u ~ U(0, 1]`; the azimuth is uniform.
pub fn ks_sample<R: Rng + ?Sized>(v: &UnitVec3, rng: &mut R) -> UnitVec3 {
    let u = 1.0 - rng.gen::<f64>();
    let z = u.sqrt();
    let phi = 2.0 * PI * rng.gen::<f64>();
    rotate_to_frame(&from_polar_z(z, phi), v)
}

/// Deterministic hemisphere response: `+` iff `x·m ≥ 0`.
pub fn ks_response(x: &UnitVec3, meas: &Measurement) -> Outcome {
    if x.dot(&meas.direction) >= 0.0 {
        Outcome::Plus
    } else {
        Outcome::Minus
    }
}

/// `ρ(x) = 1 / 4π` for every `x`.
pub fn ks_marginal(_x: &UnitVec3) -> f64 {
    1.0 / (4.0 * PI)
}

impl OntologicalModel for KsModel {
    type State = UnitVec3;
    type Ontic = UnitVec3;

    fn conditional_density(&self, x: &UnitVec3, psi: &UnitVec3) -> f64 {
        ks_density(x, psi)
    }

    fn sample_ontic<R: Rng + ?Sized>(&self, psi: &UnitVec3, rng: &mut R) -> UnitVec3 {
        ks_sample(psi, rng)
    }

    fn sample_state<R: Rng + ?Sized>(&self, rng: &mut R) -> UnitVec3 {
        random_unit_vec(rng)
    }

    fn marginal_density(&self, x: &UnitVec3) -> f64 {
        ks_marginal(x)
    }
}

impl ResponseModel for KsModel {
    type Measurement = Measurement;
    type Outcome = Outcome;

    fn response_probability(&self, x: &UnitVec3, meas: &Measurement, outcome: Outcome) -> f64 {
        if ks_response(x, meas) == outcome {
            1.0
        } else {
            0.0
        }
    }
}
