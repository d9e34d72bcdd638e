//! Velocity fraction, Lorentz factor and the Doppler factor of the drifted
//! Planck exponent.
//!
//! Every `1 − β²` is evaluated as `(1 − β)(1 + β)`, which keeps full relative
//! precision as |β| approaches one.

use std::fmt;

use crate::{Error, Result};

/// Largest admissible |β|.
pub const BETA_MAX: f64 = 1.0 - 1e-9;

/// Signed mirror velocity in units of c, |β| ≤ [`BETA_MAX`].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Beta(f64);

impl Beta {
    pub const ZERO: Beta = Beta(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value.abs() <= BETA_MAX {
            Ok(Beta(value))
        } else {
            Err(Error::usage(format!("beta must satisfy |beta| <= 1 - 1e-9, got {value}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn abs(self) -> Beta {
        Beta(self.0.abs())
    }

    /// `1 − β²` in factored form.
    pub fn one_minus_sq(self) -> f64 {
        (1.0 - self.0) * (1.0 + self.0)
    }
}

impl std::ops::Neg for Beta {
    type Output = Beta;

    fn neg(self) -> Beta {
        Beta(-self.0)
    }
}

impl TryFrom<f64> for Beta {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Beta::new(value)
    }
}

impl fmt::Display for Beta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Lorentz factor, always ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Gamma(f64);

impl Gamma {
    pub fn value(self) -> f64 {
        self.0
    }
}

pub fn gamma(beta: Beta) -> Gamma {
    Gamma(1.0 / beta.one_minus_sq().sqrt())
}

/// γ² = 1/((1 − β)(1 + β)).
pub fn gamma_sq(beta: Beta) -> f64 {
    1.0 / beta.one_minus_sq()
}

/// γ(1 + βμ), the factor multiplying `x` in the mirror-frame occupancy.
/// Strictly positive for valid inputs.
pub fn doppler(beta: Beta, mu: f64) -> Result<f64> {
    check_direction_cosine(mu)?;
    Ok(doppler_unchecked(beta, mu))
}

#[inline]
pub(crate) fn doppler_unchecked(beta: Beta, mu: f64) -> f64 {
    gamma(beta).0 * beta.0.mul_add(mu, 1.0)
}

pub(crate) fn check_direction_cosine(mu: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&mu) {
        Ok(())
    } else {
        Err(Error::usage(format!("direction cosine must lie in [-1, 1], got {mu}")))
    }
}
