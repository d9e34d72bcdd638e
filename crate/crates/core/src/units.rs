//! Physical constants and the reduced ↔ SI boundary.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Boltzmann constant, J/K (exact).
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Planck constant, J·s (exact).
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Reduced Planck constant h/2π, J·s.
pub const REDUCED_PLANCK: f64 = PLANCK / TAU;

/// The three constants the Stefan–Boltzmann law is built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Speed of light, m/s.
    pub c: f64,
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Boltzmann constant, J/K.
    pub k_b: f64,
}

impl PhysicalConstants {
    /// CODATA 2018 values. ħ is derived from the exact Planck constant
    /// (1.054571817…e-34) rather than its ten-digit truncation.
    pub const CODATA_2018: Self = Self {
        c: SPEED_OF_LIGHT,
        hbar: REDUCED_PLANCK,
        k_b: BOLTZMANN,
    };

    pub fn new(c: f64, hbar: f64, k_b: f64) -> Result<Self> {
        let all_positive = [c, hbar, k_b].iter().all(|v| v.is_finite() && *v > 0.0);
        if !all_positive {
            return Err(Error::usage(format!(
                "physical constants must be finite and positive (c={c}, hbar={hbar}, k_B={k_b})"
            )));
        }
        Ok(Self { c, hbar, k_b })
    }

    /// σ = π²k_B⁴ / (60 ħ³ c²), W·m⁻²·K⁻⁴.
    pub fn stefan_boltzmann(&self) -> f64 {
        stefan_boltzmann(self)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA_2018
    }
}

/// Stefan–Boltzmann constant π²k_B⁴ / (60 ħ³ c²) for the given constants.
pub fn stefan_boltzmann(constants: &PhysicalConstants) -> f64 {
    let PhysicalConstants { c, hbar, k_b } = *constants;
    PI * PI * k_b.powi(4) / (60.0 * hbar.powi(3) * c * c)
}

/// Rest-frame temperature of the radiation bath.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Temperature(f64);

impl Temperature {
    pub fn new(kelvin: f64) -> Result<Self> {
        if kelvin.is_finite() && kelvin > 0.0 {
            Ok(Self(kelvin))
        } else {
            Err(Error::usage(format!("temperature must be finite and > 0 K, got {kelvin}")))
        }
    }

    pub fn kelvin(self) -> f64 {
        self.0
    }
}

/// Which reduction a dimensionless value carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReducedKind {
    /// f̂ = f·c/(σT⁴); SI unit Pa.
    ForceDensity,
    /// P̂ = P·c/(σT⁴); SI unit Pa.
    Pressure,
    /// p̂ = p·c²/(σT⁴); SI unit kg·m⁻²·s⁻¹.
    MomentumDensity,
}

impl ReducedKind {
    /// Multiplier taking the reduced value to SI.
    pub fn si_scale(self, temperature: Temperature, constants: &PhysicalConstants) -> f64 {
        let flux = constants.stefan_boltzmann() * temperature.kelvin().powi(4);
        match self {
            ReducedKind::ForceDensity | ReducedKind::Pressure => flux / constants.c,
            ReducedKind::MomentumDensity => flux / (constants.c * constants.c),
        }
    }
}

impl FromStr for ReducedKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "force_density" => Ok(ReducedKind::ForceDensity),
            "pressure" => Ok(ReducedKind::Pressure),
            "momentum_density" => Ok(ReducedKind::MomentumDensity),
            other => Err(Error::usage(format!(
                "unknown reduction kind {other:?} (expected force_density, pressure or momentum_density)"
            ))),
        }
    }
}

impl fmt::Display for ReducedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReducedKind::ForceDensity => "force_density",
            ReducedKind::Pressure => "pressure",
            ReducedKind::MomentumDensity => "momentum_density",
        })
    }
}

pub fn to_si(
    reduced_value: f64,
    kind: ReducedKind,
    temperature: Temperature,
    constants: &PhysicalConstants,
) -> f64 {
    reduced_value * kind.si_scale(temperature, constants)
}

pub fn from_si(
    si_value: f64,
    kind: ReducedKind,
    temperature: Temperature,
    constants: &PhysicalConstants,
) -> f64 {
    si_value / kind.si_scale(temperature, constants)
}
