//! Drag force on a perfectly reflecting plane mirror moving through
//! isotropic blackbody radiation at arbitrary (sub-luminal) speed.
//!
//! All physics is computed in reduced units: frequencies as `x = ħω/k_BT`,
//! forces and pressures in units of `σT⁴/c`, momentum densities in units
//! of `σT⁴/c²`. [`units`] converts to SI at the boundary.
//!
//! The closed forms in [`photon_gas`] and [`drag`] are checked against two
//! independent numerical routes: deterministic quadrature over the drifted
//! Planck distribution ([`quadrature`], [`photon_gas`]) and Monte Carlo
//! sampling of the same distribution ([`montecarlo`]). [`dynamics`]
//! integrates the resulting deceleration of a mirror of given areal mass.

pub mod drag;
pub mod dynamics;
mod error;
pub mod kinematics;
pub mod montecarlo;
pub mod photon_gas;
pub mod quadrature;
pub mod units;

pub use error::{Error, Result};
pub use kinematics::{Beta, Gamma};
pub use units::{PhysicalConstants, Temperature};
