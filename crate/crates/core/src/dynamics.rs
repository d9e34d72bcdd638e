//! Deceleration of a free mirror by blackbody drag.
//!
//! With areal mass `m_A` and `u = γβ`, the momentum equation
//! `d(γ m_A β c)/dt = −f(β)` becomes parameter-free in reduced time
//! `τ = t/t_c`, `t_c = m_A c/(σT⁴)`:
//!
//! ```text
//! du/dτ = −(32/3) u √(1 + u²)
//! ```
//!
//! The drag is evaluated with the bath rest-frame temperature, and the bath
//! is not heated by the mirror. The ODE separates, giving
//! `u(τ) = 1/sinh(asinh(1/u₀) + (32/3)τ)`, which serves as the oracle for the
//! fixed-step RK4 integrator.
//!
//! RK4 advances `w = 1/u`, for which the same equation reads
//! `dw/dτ = (32/3) √(1 + w²)`. Its Jacobian is `(32/3)/γ` instead of
//! `(32/3)(γ + βu)`, so fast mirrors are integrated with far smaller
//! truncation error at the same step.

use crate::drag::drag_force;
use crate::kinematics::{gamma, Beta, Gamma};
use crate::units::{PhysicalConstants, Temperature};
use crate::{Error, Result};

/// Decay rate of `u` in the slow limit, `32/3`.
pub const DRAG_RATE: f64 = 32.0 / 3.0;

pub const DEFAULT_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MirrorParams {
    areal_mass: f64,
    bath_temperature: Temperature,
}

impl MirrorParams {
    /// `areal_mass` in kg/m².
    pub fn new(areal_mass: f64, bath_temperature: Temperature) -> Result<Self> {
        if !(areal_mass.is_finite() && areal_mass > 0.0) {
            return Err(Error::usage(format!("areal mass must be finite and > 0 kg/m², got {areal_mass}")));
        }
        Ok(Self { areal_mass, bath_temperature })
    }

    pub fn areal_mass(&self) -> f64 {
        self.areal_mass
    }

    pub fn bath_temperature(&self) -> Temperature {
        self.bath_temperature
    }
}

/// `t_c = m_A c/(σT⁴)` in seconds.
pub fn reduced_time_scale(params: &MirrorParams, constants: &PhysicalConstants) -> f64 {
    let flux = constants.stefan_boltzmann() * params.bath_temperature.kelvin().powi(4);
    params.areal_mass * constants.c / flux
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub tau: f64,
    pub beta: Beta,
    pub gamma: Gamma,
}

impl TrajectoryPoint {
    /// From `w = 1/(γβ)`; `w = +∞` is a mirror at rest.
    fn from_inverse_momentum(tau: f64, w: f64) -> Result<Self> {
        if w.is_nan() || w <= 0.0 {
            return Err(Error::Numerical {
                message: format!("trajectory state became invalid at tau = {tau}"),
                estimate: w,
                error_estimate: f64::INFINITY,
            });
        }
        let beta = Beta::new(1.0 / w.hypot(1.0)).map_err(|_| Error::Numerical {
            message: format!("trajectory left the admissible beta range at tau = {tau}"),
            estimate: w,
            error_estimate: f64::INFINITY,
        })?;
        Ok(Self { tau, beta, gamma: gamma(beta) })
    }
}

/// `u = γβ`.
pub fn momentum_from_beta(beta: Beta) -> f64 {
    beta.value() * gamma(beta).value()
}

pub fn beta_from_momentum(u: f64) -> f64 {
    u / u.hypot(1.0)
}

/// `du/dτ`. Equals `−drag_force(β)` expressed through `u`.
pub fn momentum_rate(u: f64) -> f64 {
    -DRAG_RATE * u * u.hypot(1.0)
}

/// `dw/dτ` for `w = 1/u`.
pub fn inverse_momentum_rate(w: f64) -> f64 {
    DRAG_RATE * w.hypot(1.0)
}

fn rk4_step(w: f64, h: f64) -> f64 {
    let k1 = inverse_momentum_rate(w);
    let k2 = inverse_momentum_rate(w + 0.5 * h * k1);
    let k3 = inverse_momentum_rate(w + 0.5 * h * k2);
    let k4 = inverse_momentum_rate(w + h * k3);
    w + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

/// Fixed-step RK4 from `τ = 0` to `tau_end`. Sample times are `i·step`; a
/// final shorter step lands exactly on `tau_end` when it is not a multiple
/// of `step`. `tau_end = 0` yields only the initial point.
pub fn integrate_trajectory(beta0: Beta, tau_end: f64, step: f64) -> Result<Vec<TrajectoryPoint>> {
    if beta0.value() <= 0.0 {
        return Err(Error::usage(format!("initial beta must be > 0, got {}", beta0.value())));
    }
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::usage(format!("step must be finite and > 0, got {step}")));
    }
    if !(tau_end.is_finite() && tau_end >= 0.0) {
        return Err(Error::usage(format!("tau_end must be finite and >= 0, got {tau_end}")));
    }

    let ratio = tau_end / step;
    let nearest = ratio.round();
    let lands_exactly = (ratio - nearest).abs() <= 1e-9 * nearest.max(1.0);
    let full_steps = if lands_exactly { nearest } else { ratio.floor() } as u64;

    let mut w = beta0.one_minus_sq().sqrt() / beta0.value();
    let mut points = Vec::with_capacity(full_steps as usize + 2);
    points.push(TrajectoryPoint { tau: 0.0, beta: beta0, gamma: gamma(beta0) });
    for i in 1..=full_steps {
        w = rk4_step(w, step);
        let tau = if lands_exactly && i == full_steps { tau_end } else { i as f64 * step };
        points.push(TrajectoryPoint::from_inverse_momentum(tau, w)?);
    }
    let last_tau = points.last().map_or(0.0, |p| p.tau);
    if last_tau < tau_end {
        w = rk4_step(w, tau_end - last_tau);
        points.push(TrajectoryPoint::from_inverse_momentum(tau_end, w)?);
    }
    Ok(points)
}

/// Closed-form `u(τ) = 1/sinh(asinh(1/u₀) + (32/3)τ)`, as β.
pub fn analytic_solution(beta0: Beta, tau: f64) -> Result<Beta> {
    if beta0.value() <= 0.0 {
        return Err(Error::usage(format!("initial beta must be > 0, got {}", beta0.value())));
    }
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::usage(format!("tau must be finite and >= 0, got {tau}")));
    }
    if tau == 0.0 {
        return Ok(beta0);
    }
    let u0 = momentum_from_beta(beta0);
    let u = 1.0 / ((1.0 / u0).asinh() + DRAG_RATE * tau).sinh();
    Beta::new(beta_from_momentum(u))
}

/// Largest |β_RK4 − β_exact| over a trajectory.
pub fn max_deviation_from_analytic(beta0: Beta, tau_end: f64, step: f64) -> Result<f64> {
    let mut worst = 0.0f64;
    for p in integrate_trajectory(beta0, tau_end, step)? {
        let exact = analytic_solution(beta0, p.tau)?;
        worst = worst.max((p.beta.value() - exact.value()).abs());
    }
    Ok(worst)
}

/// Observed order of accuracy at `tau_end` from runs at `step` and `step/2`.
pub fn observed_order(beta0: Beta, tau_end: f64, step: f64) -> Result<f64> {
    let exact = analytic_solution(beta0, tau_end)?.value();
    let final_error = |h: f64| -> Result<f64> {
        let traj = integrate_trajectory(beta0, tau_end, h)?;
        Ok((traj.last().expect("non-empty").beta.value() - exact).abs())
    };
    let coarse = final_error(step)?;
    let fine = final_error(0.5 * step)?;
    Ok((coarse / fine).log2())
}

/// `−ln(β(τ)/β₀)/τ` from the integrated trajectory; tends to `32/3` for slow
/// mirrors.
pub fn fitted_decay_rate(beta0: Beta, tau: f64, step: f64) -> Result<f64> {
    let traj = integrate_trajectory(beta0, tau, step)?;
    let end = traj.last().expect("non-empty");
    Ok(-(end.beta.value() / beta0.value()).ln() / end.tau)
}

/// Force per area applied to the mirror, reduced: opposite to its velocity.
pub fn applied_force(beta: Beta) -> f64 {
    -drag_force(beta)
}
