//! Drag on a perfectly reflecting plane mirror moving along its normal.
//!
//! In reduced units (`σT⁴/c`):
//!
//! * drag force per area `f̂ = (32/3) β/(1 − β²)`, twice the magnitude of the
//!   photon-gas momentum density seen by the mirror,
//! * blackbody pressure on a mirror at rest `P̂ = 4/3`,
//! * their ratio `f/P = 8β/(1 − β²)`, linear (`8β`) for slow mirrors and
//!   diverging as `4/(1 − β)` when β → 1.
//!
//! [`kinetic_flux_drag`] is an independent cross-check: the net momentum
//! flux delivered by photons reflecting off the front and back faces. It
//! differs from `f̂` by the factor `(3 + β²)/4` and is never substituted
//! for it.

use std::fmt;

use crate::kinematics::{gamma, gamma_sq, Beta};
use crate::photon_gas::{angular_moment, momentum_density_closed, FrequencyIntegration, MomentumDensityParallel};
use crate::quadrature::QuadratureSpec;
use crate::{Error, Result};

/// Below this |β| the mirror is labelled nonrelativistic.
pub const NONRELATIVISTIC_BELOW: f64 = 0.01;
/// Above this |β| the mirror is labelled ultrarelativistic.
pub const ULTRARELATIVISTIC_ABOVE: f64 = 0.9;

/// Retarding force per unit area. Carries the sign of β; the force applied
/// to the mirror is the negative of this.
pub fn drag_force(beta: Beta) -> f64 {
    32.0 / 3.0 * beta.value() * gamma_sq(beta)
}

pub fn radiation_pressure() -> f64 {
    4.0 / 3.0
}

/// `f/P = 8β/(1 − β²)`.
pub fn ratio(beta: Beta) -> f64 {
    8.0 * beta.value() * gamma_sq(beta)
}

/// Slow-mirror limit of [`ratio`]: `8β`.
pub fn asymptote_nonrel(beta: Beta) -> f64 {
    8.0 * beta.value()
}

/// Fast-mirror limit of [`ratio`]: `4/(1 − β)`. Requires β > 0.
pub fn asymptote_ultrarel(beta: Beta) -> Result<f64> {
    if beta.value() <= 0.0 {
        return Err(Error::usage(format!(
            "ultrarelativistic asymptote needs beta > 0, got {}",
            beta.value()
        )));
    }
    Ok(4.0 / (1.0 - beta.value()))
}

/// `(1 − β)·f/P`, which tends to 4 as β → 1.
pub fn divergence_coefficient(beta: Beta) -> f64 {
    let b = beta.value();
    8.0 * b / (1.0 + b)
}

/// Display-only classification of |β|.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Nonrelativistic,
    Relativistic,
    Ultrarelativistic,
}

impl Regime {
    pub fn classify(beta: Beta) -> Self {
        let b = beta.value().abs();
        if b < NONRELATIVISTIC_BELOW {
            Regime::Nonrelativistic
        } else if b > ULTRARELATIVISTIC_ABOVE {
            Regime::Ultrarelativistic
        } else {
            Regime::Relativistic
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Nonrelativistic => "nonrelativistic",
            Regime::Relativistic => "relativistic",
            Regime::Ultrarelativistic => "ultrarelativistic",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Both quadrature routes for the kinetic momentum-flux drag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KineticDrag {
    /// Analytic Bose moment in `x`, numeric in `μ`.
    pub moment_path: f64,
    /// Numeric in both `x` and `μ`.
    pub full_path: f64,
}

impl KineticDrag {
    pub fn value(&self) -> f64 {
        self.moment_path
    }

    pub fn path_rel_diff(&self) -> f64 {
        rel_diff(self.moment_path, self.full_path)
    }
}

fn rel_diff(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Reflected-momentum-flux drag, reduced:
/// `−2 (30/π⁴) ∬ x³ μ|μ| n dμ dx`. A photon moving along `μ` hits the face
/// it travels toward at rate `|μ|` and has its normal momentum reversed.
pub fn kinetic_flux_drag(beta: Beta, spec: &QuadratureSpec) -> Result<KineticDrag> {
    let weight = |mu: f64| -2.0 * mu * mu.abs();
    let moment = angular_moment(beta, weight, spec, FrequencyIntegration::BoseMoment)?;
    let full = angular_moment(beta, weight, spec, FrequencyIntegration::Numeric)?;
    Ok(KineticDrag { moment_path: moment.value, full_path: full.value })
}

/// Only the Bose-moment route of [`kinetic_flux_drag`].
pub fn kinetic_flux_drag_fast(beta: Beta, spec: &QuadratureSpec) -> Result<f64> {
    let weight = |mu: f64| -2.0 * mu * mu.abs();
    Ok(angular_moment(beta, weight, spec, FrequencyIntegration::BoseMoment)?.value)
}

/// Closed-form reduction of the kinetic integral, `(8/3) β γ² (3 + β²)`.
pub fn kinetic_flux_drag_closed(beta: Beta) -> f64 {
    let b = beta.value();
    8.0 / 3.0 * b * gamma_sq(beta) * (3.0 + b * b)
}

/// Everything known about one mirror speed, in reduced units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DragReport {
    pub beta: Beta,
    pub gamma: f64,
    pub f_hat: f64,
    pub p_hat: f64,
    pub ratio: f64,
    pub p_parallel_hat: MomentumDensityParallel,
    pub f_kin_hat: Option<f64>,
    pub regime: Regime,
}

impl DragReport {
    pub fn new(beta: Beta) -> Self {
        Self {
            beta,
            gamma: gamma(beta).value(),
            f_hat: drag_force(beta),
            p_hat: radiation_pressure(),
            ratio: ratio(beta),
            p_parallel_hat: momentum_density_closed(beta),
            f_kin_hat: None,
            regime: Regime::classify(beta),
        }
    }

    /// Adds the kinetic cross-check (Bose-moment route).
    pub fn with_kinetic(mut self, spec: &QuadratureSpec) -> Result<Self> {
        self.f_kin_hat = Some(kinetic_flux_drag_fast(self.beta, spec)?);
        Ok(self)
    }
}
