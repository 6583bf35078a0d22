//! Link-budget model for LEO-satellite IoT downlinks and uplinks, with and
//! without a reconfigurable intelligent surface (RIS) mounted next to the
//! satellite feed antenna.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`geometry`]: slant range and incidence angles from the elevation angle.
//! * [`pathloss`]: free-space, RIS broadcasting and near-field RIS
//!   beamforming path-loss models together with their radiation patterns.
//! * [`rain`]: the ITU-R P.618 rain attenuation chain at 0.01% exceedance.
//! * [`channel`]: Rician fading, coherent phase configuration, SNR and rate.
//! * [`simulate`]: deterministic budgets, Monte-Carlo ergodic rates and
//!   parameter sweeps.
//!
//! Lengths are in meters and angles in radians everywhere except inside
//! [`rain`], which follows the ITU convention of km and GHz.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod channel;
pub mod db;
mod error;
pub mod geometry;
pub mod pathloss;
pub mod presets;
pub mod rain;
pub mod simulate;

pub use error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
