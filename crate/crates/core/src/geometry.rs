//! Bloch-sphere geometry for a single qubit.
//!
//! A [`UnitVec3`] plays three roles: the Bloch vector of a pure state, the
//! direction of a rank-1 projective measurement, and the ontic state of the
//! Kochen-Specker model. The Born probability of the `+` outcome for state
//! `v` and measurement direction `m` is `(1 + v·m) / 2`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::Neg;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Allowed deviation of `|v|²` from 1.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Poles closer than this (in |z|) use the x axis to build their frame.
const POLE_GUARD: f64 = 1.0 - 1e-9;

/// Unit vector in R³.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct UnitVec3 {
    x: f64,
    y: f64,
    z: f64,
}

impl UnitVec3 {
    pub const X: UnitVec3 = UnitVec3 { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: UnitVec3 = UnitVec3 { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: UnitVec3 = UnitVec3 { x: 0.0, y: 0.0, z: 1.0 };

    /// Accepts components that already have unit norm.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let n2 = x * x + y * y + z * z;
        if !n2.is_finite() || (n2 - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "vector ({x}, {y}, {z}) is not unit-norm (|v|^2 = {n2})"
            )));
        }
        Ok(Self { x, y, z })
    }

    /// Scales an arbitrary nonzero vector to unit length.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if !n.is_finite() || n == 0.0 {
            return Err(Error::InvalidArgument(format!(
                "cannot normalize vector ({x}, {y}, {z})"
            )));
        }
        Ok(Self::unchecked(x / n, y / n, z / n))
    }

    /// Polar angle `theta` from +z and azimuth `phi`.
    pub fn from_spherical(theta: f64, phi: f64) -> Self {
        let s = theta.sin();
        Self::unchecked(s * phi.cos(), s * phi.sin(), theta.cos())
    }

    pub(crate) fn unchecked(x: f64, y: f64, z: f64) -> Self {
        debug_assert!(
            ((x * x + y * y + z * z) - 1.0).abs() < 1e-9,
            "unit vector drifted: ({x}, {y}, {z})"
        );
        Self { x, y, z }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &UnitVec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    /// Unnormalized cross product.
    pub fn cross(&self, other: &UnitVec3) -> [f64; 3] {
        [
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        ]
    }
}

impl Neg for UnitVec3 {
    type Output = UnitVec3;

    fn neg(self) -> UnitVec3 {
        UnitVec3 { x: -self.x, y: -self.y, z: -self.z }
    }
}

impl TryFrom<[f64; 3]> for UnitVec3 {
    type Error = Error;

    fn try_from(v: [f64; 3]) -> Result<Self> {
        UnitVec3::new(v[0], v[1], v[2])
    }
}

impl From<UnitVec3> for [f64; 3] {
    fn from(v: UnitVec3) -> Self {
        v.components()
    }
}

impl fmt::Display for UnitVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Outcome of a two-outcome qubit measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Outcome {
    pub fn is_plus(self) -> bool {
        matches!(self, Outcome::Plus)
    }

    pub fn symbol(self) -> char {
        match self {
            Outcome::Plus => '+',
            Outcome::Minus => '-',
        }
    }
}

/// Rank-1 projective measurement whose two POVM elements project onto
/// `+direction` and `-direction`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub direction: UnitVec3,
}

impl Measurement {
    pub fn new(direction: UnitVec3) -> Self {
        Self { direction }
    }

    /// The same measurement with the outcome labels swapped.
    pub fn flipped(&self) -> Self {
        Self { direction: -self.direction }
    }
}

/// Born probability of the `+` outcome, `(1 + v·m) / 2`.
pub fn born_probability(state: &UnitVec3, meas: &Measurement) -> f64 {
    (0.5 * (1.0 + state.dot(&meas.direction))).clamp(0.0, 1.0)
}

/// Born probability of an arbitrary outcome.
pub fn born_probability_of(state: &UnitVec3, meas: &Measurement, outcome: Outcome) -> f64 {
    match outcome {
        Outcome::Plus => born_probability(state, meas),
        Outcome::Minus => born_probability(state, &meas.flipped()),
    }
}

/// Uniform point on S²: `z ~ U[-1, 1]`, azimuth `~ U[0, 2π)`.
pub fn random_unit_vec<R: Rng + ?Sized>(rng: &mut R) -> UnitVec3 {
    let z: f64 = 2.0 * rng.gen::<f64>() - 1.0;
    let phi: f64 = 2.0 * PI * rng.gen::<f64>();
    from_polar_z(z, phi)
}

/// Point with height `z` along the local pole and azimuth `phi`.
pub(crate) fn from_polar_z(z: f64, phi: f64) -> UnitVec3 {
    let r = (1.0 - z * z).max(0.0).sqrt();
    UnitVec3::unchecked(r * phi.cos(), r * phi.sin(), z)
}

/// Right-handed orthonormal triad `(e1, e2, pole)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    e1: [f64; 3],
    e2: [f64; 3],
    pole: UnitVec3,
}

impl Frame {
    /// Builds the triad by Gram-Schmidt against +z, or against +x when the
    /// pole is within 1e-9 of ±z. For `pole = +z` the frame is the identity.
    pub fn with_pole(pole: UnitVec3) -> Self {
        let helper = if pole.z.abs() > POLE_GUARD { UnitVec3::X } else { UnitVec3::Z };
        let h = helper.dot(&pole);
        let mut e1 = [helper.x - h * pole.x, helper.y - h * pole.y, helper.z - h * pole.z];
        let n = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
        e1.iter_mut().for_each(|c| *c /= n);
        let e2 = [
            pole.y * e1[2] - pole.z * e1[1],
            pole.z * e1[0] - pole.x * e1[2],
            pole.x * e1[1] - pole.y * e1[0],
        ];
        Self { e1, e2, pole }
    }

    pub fn pole(&self) -> UnitVec3 {
        self.pole
    }

    /// Maps local coordinates (pole = local +z) to world coordinates.
    pub fn to_world(&self, local: &UnitVec3) -> UnitVec3 {
        let p = self.pole.components();
        let mut out = [0.0; 3];
        for (k, o) in out.iter_mut().enumerate() {
            *o = local.x * self.e1[k] + local.y * self.e2[k] + local.z * p[k];
        }
        UnitVec3::unchecked(out[0], out[1], out[2])
    }

    /// Inverse of [`Frame::to_world`].
    pub fn to_local(&self, world: &UnitVec3) -> UnitVec3 {
        let w = world.components();
        let d = |a: &[f64; 3]| a[0] * w[0] + a[1] * w[1] + a[2] * w[2];
        UnitVec3::unchecked(d(&self.e1), d(&self.e2), world.dot(&self.pole))
    }

    /// Azimuth of `world` about the pole, in `[0, 2π)`.
    pub fn azimuth(&self, world: &UnitVec3) -> f64 {
        let l = self.to_local(world);
        l.y.atan2(l.x).rem_euclid(2.0 * PI)
    }
}

/// Rotates a vector expressed around +z into the frame whose pole is `pole`.
pub fn rotate_to_frame(local: &UnitVec3, pole: &UnitVec3) -> UnitVec3 {
    Frame::with_pole(*pole).to_world(local)
}
