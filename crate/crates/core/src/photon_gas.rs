//! The blackbody photon gas seen from the moving mirror.
//!
//! In the mirror frame the bath occupancy is `n = 1/(exp(γx(1 + βμ)) − 1)`
//! where `μ` is the cosine between the photon wavevector and the mirror
//! velocity. Densities are written as `(30/π⁴) ∬ x³ w(μ) n dμ dx` with the
//! azimuth integrated out; the prefactor turns the two-polarization mode
//! measure into units of `σT⁴/c` (energy) or `σT⁴/c²` (momentum).
//!
//! Each density is available on two numerical paths. The default does the
//! `x` integral analytically per direction via the Bose moment
//! `∫x³/(e^{ax} − 1) dx = (π⁴/15)/a⁴` and integrates `μ` numerically; the
//! other integrates both variables numerically and serves as its oracle.

use std::f64::consts::{PI, TAU};

use crate::kinematics::{check_direction_cosine, doppler_unchecked, gamma, gamma_sq, Beta};
use crate::quadrature::{
    integrate_semi_infinite, scaled_bose_moment, try_integrate_interval, IntegrationResult, QuadratureSpec,
};
use crate::{Error, Result};

/// `30/π⁴`: mode measure `2 d³k/(2π)³` with the azimuth done, in reduced units.
pub const DENSITY_PREFACTOR: f64 = 30.0 / (PI * PI * PI * PI);

/// A photon mode in reduced coordinates: `x = ħω/(k_B T)`, direction cosine
/// `mu` relative to the mirror velocity, azimuth `phi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedPhotonCoords {
    x: f64,
    mu: f64,
    phi: f64,
}

impl ReducedPhotonCoords {
    pub fn new(x: f64, mu: f64, phi: f64) -> Result<Self> {
        if !(x.is_finite() && x > 0.0) {
            return Err(Error::usage(format!("reduced frequency must be finite and > 0, got {x}")));
        }
        check_direction_cosine(mu)?;
        if !(0.0..TAU).contains(&phi) {
            return Err(Error::usage(format!("azimuth must lie in [0, 2π), got {phi}")));
        }
        Ok(Self { x, mu, phi })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Photon-gas momentum density along the mirror velocity, in units of
/// `σT⁴/c²`. Antiparallel to the motion: its sign is opposite to β.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct MomentumDensityParallel(pub f64);

impl MomentumDensityParallel {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// How the frequency integral is carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FrequencyIntegration {
    /// Analytic Bose moment per direction, numeric in `μ` only.
    #[default]
    BoseMoment,
    /// Numeric in both `x` (over `[0, ∞)`) and `μ`.
    Numeric,
}

/// Mirror-frame occupation number of the mode. Independent of the azimuth.
pub fn occupancy(coords: &ReducedPhotonCoords, beta: Beta) -> f64 {
    1.0 / (doppler_unchecked(beta, coords.mu) * coords.x).exp_m1()
}

/// `x³ n` for a mode with Doppler factor `a`; the removable point `x = 0`
/// evaluates to its limit 0.
#[inline]
pub fn energy_weighted_occupancy(x: f64, a: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x * x / (a * x).exp_m1()
    }
}

/// `p̂ = −(16/3) β γ²`.
pub fn momentum_density_closed(beta: Beta) -> MomentumDensityParallel {
    // `0.0 - β` keeps a mirror at rest at +0 rather than −0.
    MomentumDensityParallel(16.0 / 3.0 * (0.0 - beta.value()) * gamma_sq(beta))
}

/// `û = 4γ²(1 + β²/3)`, the mirror-frame energy density in units of `σT⁴/c`.
pub fn energy_density_closed(beta: Beta) -> f64 {
    let b = beta.value();
    4.0 * gamma_sq(beta) * (1.0 + b * b / 3.0)
}

/// `(30/π⁴) ∬ x³ weight(μ) n(x, μ, β) dμ dx` over `x ∈ [0, ∞)`, `μ ∈ [−1, 1]`.
///
/// The `μ` range is split at zero; each half is refined adaptively, which
/// concentrates panels near `μ = −1` where the integrand peaks as β → 1.
pub fn angular_moment<W>(
    beta: Beta,
    weight: W,
    spec: &QuadratureSpec,
    path: FrequencyIntegration,
) -> Result<IntegrationResult>
where
    W: Fn(f64) -> f64,
{
    spec.validate()?;
    let g = gamma(beta).value();
    let b = beta.value();
    let inner_spec = spec.inner();
    let mut inner_evaluations = 0usize;

    let mut x_integral = |mu: f64| -> Result<f64> {
        let a = g * b.mul_add(mu, 1.0);
        match path {
            FrequencyIntegration::BoseMoment => scaled_bose_moment(3, a),
            FrequencyIntegration::Numeric => {
                let r = integrate_semi_infinite(|x| energy_weighted_occupancy(x, a), &inner_spec)?;
                inner_evaluations += r.evaluations;
                Ok(r.value)
            }
        }
    };

    let mut total = IntegrationResult { value: 0.0, error_estimate: 0.0, evaluations: 0 };
    for (lo, hi) in [(-1.0, 0.0), (0.0, 1.0)] {
        let r = try_integrate_interval(|mu| Ok(weight(mu) * x_integral(mu)?), lo, hi, spec)?;
        total.value += r.value;
        total.error_estimate += r.error_estimate;
        total.evaluations += r.evaluations;
    }
    total.evaluations += inner_evaluations;
    total.value *= DENSITY_PREFACTOR;
    total.error_estimate *= DENSITY_PREFACTOR;
    Ok(total)
}

/// Momentum density along the velocity by quadrature of the occupancy.
pub fn momentum_density_quad(beta: Beta, spec: &QuadratureSpec) -> Result<IntegrationResult> {
    angular_moment(beta, |mu| mu, spec, FrequencyIntegration::BoseMoment)
}

/// Momentum density by full two-dimensional quadrature.
pub fn momentum_density_quad_2d(beta: Beta, spec: &QuadratureSpec) -> Result<IntegrationResult> {
    angular_moment(beta, |mu| mu, spec, FrequencyIntegration::Numeric)
}

pub fn energy_density_quad(beta: Beta, spec: &QuadratureSpec) -> Result<IntegrationResult> {
    angular_moment(beta, |_| 1.0, spec, FrequencyIntegration::BoseMoment)
}

pub fn energy_density_quad_2d(beta: Beta, spec: &QuadratureSpec) -> Result<IntegrationResult> {
    angular_moment(beta, |_| 1.0, spec, FrequencyIntegration::Numeric)
}
