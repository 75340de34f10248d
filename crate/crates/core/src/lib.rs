//! Spontaneous emission of a two-level atom between two ideal parallel plates.
//!
//! Each plate is either a perfect conductor or an infinitely permeable
//! medium. The crate provides the vacuum mode functions for the three
//! distinct setups, closed-form emission-rate ratios built from finite mode
//! sums, and an independent brute-force golden-rule evaluation used to check
//! them.

pub mod cli;
pub mod error;
pub mod modes;
pub mod oracle;
pub mod rates;
pub mod types;

pub use error::{Error, Result};
pub use modes::{ModeIndex, ModeProfile, Polarization, Slab};
pub use types::{canonicalize, DipoleOrientation, Family, Geometry, Material, PlateConfiguration, RateRatios, Transition};
