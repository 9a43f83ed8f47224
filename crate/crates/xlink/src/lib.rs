//! Interference modeling for directional LEO satellite cross-links.
//!
//! This crate models co-channel interference among millimeter-wave and
//! sub-THz inter-satellite links in circular low-Earth orbits. It provides:
//!
//! * [`orbital`] — circular-orbit kinematics: periods, angular speeds,
//!   plane-to-GEC transforms, relative phase drift, Earth blockage.
//! * [`radio`] — cone antenna patterns, free-space link budget, thermal
//!   noise, Shannon capacity, and the mmWave / sub-THz band presets.
//! * [`analytic`] — closed-form expected interference, SIR, SINR, and
//!   capacity for four orbit geometries (single orbit, co-planar orbits,
//!   shifted orbits, shifted co-planar orbits) plus combined multi-plane
//!   deployments and the theoretical SIR limit.
//! * [`simulator`] — an independent time-driven engine that propagates
//!   every satellite and detects interferers purely geometrically; the
//!   cross-validation oracle for `analytic`.
//! * [`sweeps`] — parameter sweeps, time averaging, and interference
//!   distribution estimation producing plot-ready tables.
//! * [`cli`] — config parsing, scenario presets, and CSV emission behind
//!   the `xlink` binary.
//!
//! All internal math is linear SI (meters, seconds, radians, watts);
//! dB/dBm conversions happen only at I/O boundaries.
//!
//! ```
//! use xlink::analytic::{single_sir, sir_asymptote};
//!
//! // SIR of a 72-satellite ring at 500 km with 5-degree beams.
//! let sir = single_sir(72, 500e3, 5f64.to_radians());
//! assert!(sir.is_finite());
//! // Densifying the ring converges to the theoretical bound (~1.9 dB).
//! let dense = single_sir(5000, 500e3, 40f64.to_radians());
//! assert!((10.0 * (dense / sir_asymptote()).log10()).abs() < 0.05);
//! ```

pub mod analytic;
pub mod cli;
pub mod orbital;
pub mod radio;
#[doc(hidden)]
pub mod rng;
pub mod simulator;
pub mod sweeps;
pub mod validate;
mod vec3;

pub use vec3::{Mat3, Vec3};

use std::fmt;

/// Crate-wide error type.
#[derive(Debug)]
pub enum Error {
    /// An argument is outside the mathematical domain of an operation.
    Domain(String),
    /// A scenario description is inconsistent (e.g. co-planar orbits with
    /// equal altitudes).
    Scenario(String),
    /// A configuration document failed validation. `line` is 1-based and
    /// 0 when the error is not tied to a specific line.
    Config {
        line: usize,
        key: Option<String>,
        message: String,
    },
    /// A run would exceed a hard resource bound (e.g. > 1e8 timesteps).
    ResourceGuard(String),
    /// Analytic/simulator cross-check exceeded tolerance.
    Validation(String),
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Scenario(m) => write!(f, "scenario error: {m}"),
            Error::Config { line, key, message } => {
                write!(f, "config error")?;
                if *line > 0 {
                    write!(f, " (line {line})")?;
                }
                if let Some(k) = key {
                    write!(f, " [{k}]")?;
                }
                write!(f, ": {message}")
            }
            Error::ResourceGuard(m) => write!(f, "resource guard: {m}"),
            Error::Validation(m) => write!(f, "validation failure: {m}"),
            Error::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
