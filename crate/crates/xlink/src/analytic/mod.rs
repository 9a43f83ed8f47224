//! Closed-form expected interference, SIR, SINR, and capacity for the
//! four cross-link geometries, plus the theoretical SIR limit.
//!
//! Scenario conventions (shared with [`crate::simulator`]):
//!
//! * The victim receiver is satellite 0 of its orbit; its transmitter is
//!   satellite 1, one spacing ahead in true anomaly. Every satellite
//!   beams at its forward neighbor `j - 1` (mod `N`), so boresights are
//!   fully determined by the constellation geometry.
//! * A satellite interferes exactly when (i) the Earth does not block the
//!   path to the victim, (ii) it lies strictly inside the victim's
//!   receive beam, and (iii) the victim lies strictly inside its transmit
//!   beam.
//! * `delta_beta` between two orbits is the in-plane angle of the second
//!   orbit's satellite 0 minus that of the first orbit's satellite 0.
//!
//! Analytic expressions evaluate the cone main lobe; sidelobe patterns
//! are a simulator-side comparison only.

mod combined;
mod coplanar;
mod shifted;
mod single;

pub use combined::{
    combined_deployment_report, combined_deployment_report_with, combined_time_average,
    combined_time_average_with, CombinedAverage, CombinedReport, SourceClass,
};
pub use coplanar::{
    coplanar_delta_beta_at, coplanar_expected_interference, coplanar_interferer_set,
    coplanar_link_distance_m, coplanar_psi, coplanar_psi_prime, coplanar_sir_sinr,
    min_isolation_altitude, IsolationOutcome,
};
pub use shifted::{
    shifted_coplanar_interference, shifted_expected_interference, shifted_interferer_set,
    shifted_sir_sinr,
};
pub use single::{
    optimal_satellite_count, optimal_satellite_count_with, single_expected_interference,
    single_interferer_count, single_interferer_count_with, single_link_distance_m,
    single_link_distance_m_with, single_report, single_sinr, single_sir, single_sir_with,
    sir_asymptote,
};

use crate::orbital::{OrbitSpec, PhysicalConstants};
use crate::radio::{self, RadioConfig};
use crate::{Error, Result, Vec3};
use std::collections::BTreeSet;

/// Identity of one interfering satellite: orbit index (global across the
/// scenario: 0 is the victim's orbit) and satellite index within it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct InterfererId {
    pub orbit: usize,
    pub sat: usize,
}

impl InterfererId {
    pub fn new(orbit: usize, sat: usize) -> Self {
        InterfererId { orbit, sat }
    }
}

/// Link metrics at one instant (or time-averaged).
#[derive(Debug, Clone, PartialEq)]
pub struct InterferenceReport {
    pub interferer_ids: BTreeSet<InterfererId>,
    /// Aggregate interference power at the victim (W).
    pub expected_interference_w: f64,
    /// Useful signal power at the victim (W).
    pub signal_power_w: f64,
    /// Thermal noise power (W).
    pub noise_power_w: f64,
    /// Signal-to-interference ratio; `+inf` when the interferer set is empty.
    pub sir: f64,
    /// Signal-to-interference-plus-noise ratio.
    pub sinr: f64,
    /// Shannon capacity from the SINR (bit/s).
    pub capacity_bps: f64,
}

impl InterferenceReport {
    /// Assemble the ratio metrics from linear powers.
    pub fn from_powers(
        interferer_ids: BTreeSet<InterfererId>,
        signal_power_w: f64,
        expected_interference_w: f64,
        noise_power_w: f64,
        bandwidth_hz: f64,
    ) -> Self {
        let sir = if expected_interference_w > 0.0 {
            signal_power_w / expected_interference_w
        } else {
            f64::INFINITY
        };
        let sinr = signal_power_w / (expected_interference_w + noise_power_w);
        let capacity_bps = bandwidth_hz * (1.0 + sinr).log2();
        InterferenceReport {
            interferer_ids,
            expected_interference_w,
            signal_power_w,
            noise_power_w,
            sir,
            sinr,
            capacity_bps,
        }
    }

    /// Signal-to-noise ratio ignoring interference.
    pub fn snr(&self) -> f64 {
        self.signal_power_w / self.noise_power_w
    }
}

/// Single orbit: interference from the victim's own orbit only.
#[derive(Debug, Clone, Copy)]
pub struct SingleOrbitScenario {
    pub orbit: OrbitSpec,
    pub radio: RadioConfig,
    pub constants: PhysicalConstants,
}

impl SingleOrbitScenario {
    pub fn new(orbit: OrbitSpec, radio: RadioConfig) -> Self {
        SingleOrbitScenario {
            orbit,
            radio,
            constants: PhysicalConstants::default(),
        }
    }
}

/// Which of the two co-planar orbits hosts the victim link.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VictimOrbit {
    Lower,
    Upper,
}

/// Two orbits in the same plane at different altitudes. Orbit index 0 is
/// the lower orbit, 1 the upper, independent of which hosts the victim.
#[derive(Debug, Clone, Copy)]
pub struct CoplanarScenario {
    pub lower: OrbitSpec,
    pub upper: OrbitSpec,
    pub radio: RadioConfig,
    pub victim: VictimOrbit,
    pub constants: PhysicalConstants,
}

impl CoplanarScenario {
    pub fn new(
        lower: OrbitSpec,
        upper: OrbitSpec,
        radio: RadioConfig,
        victim: VictimOrbit,
    ) -> Result<Self> {
        if upper.altitude_m <= lower.altitude_m {
            return Err(Error::Scenario(format!(
                "co-planar upper orbit must be higher than the lower ({} m vs {} m)",
                upper.altitude_m, lower.altitude_m
            )));
        }
        if lower.inclination_rad != upper.inclination_rad || lower.raan_rad != upper.raan_rad {
            return Err(Error::Scenario(
                "co-planar orbits must share inclination and RAAN".into(),
            ));
        }
        Ok(CoplanarScenario {
            lower,
            upper,
            radio,
            victim,
            constants: PhysicalConstants::default(),
        })
    }

    pub fn victim_orbit(&self) -> &OrbitSpec {
        match self.victim {
            VictimOrbit::Lower => &self.lower,
            VictimOrbit::Upper => &self.upper,
        }
    }

    pub fn interfering_orbit(&self) -> &OrbitSpec {
        match self.victim {
            VictimOrbit::Lower => &self.upper,
            VictimOrbit::Upper => &self.lower,
        }
    }

    /// Period of the interference pattern (s).
    pub fn pattern_period_s(&self) -> f64 {
        self.constants
            .max_offset_period_s(
                self.lower.num_satellites,
                self.upper.num_satellites,
                self.lower.altitude_m,
                self.upper.altitude_m,
            )
            .expect("co-planar altitudes differ by construction")
    }
}

/// Two orbits of equal altitude whose planes differ in RAAN.
#[derive(Debug, Clone, Copy)]
pub struct ShiftedScenario {
    /// Orbit hosting the victim link.
    pub orbit1: OrbitSpec,
    /// The shifted orbit.
    pub orbit2: OrbitSpec,
    pub radio: RadioConfig,
    /// Constant in-plane offset of orbit 2's satellite 0 relative to
    /// orbit 1's satellite 0 (equal altitudes make it time-invariant).
    pub delta_beta_rad: f64,
    pub constants: PhysicalConstants,
}

impl ShiftedScenario {
    pub fn new(orbit1: OrbitSpec, orbit2: OrbitSpec, radio: RadioConfig) -> Result<Self> {
        if orbit1.altitude_m != orbit2.altitude_m {
            return Err(Error::Scenario(
                "shifted orbits must share one altitude; use a shifted co-planar scenario otherwise"
                    .into(),
            ));
        }
        if orbit1.raan_rad == orbit2.raan_rad {
            return Err(Error::Scenario(
                "shifted orbits with equal RAAN degenerate into one plane".into(),
            ));
        }
        let delta_beta_rad =
            crate::orbital::wrap_angle(orbit2.phase_offset_rad - orbit1.phase_offset_rad);
        Ok(ShiftedScenario {
            orbit1,
            orbit2,
            radio,
            delta_beta_rad,
            constants: PhysicalConstants::default(),
        })
    }
}

/// A shifted orbit at a different altitude: the general two-plane case.
#[derive(Debug, Clone, Copy)]
pub struct ShiftedCoplanarScenario {
    /// Orbit hosting the victim link.
    pub orbit1: OrbitSpec,
    /// Interfering orbit, possibly at another altitude.
    pub orbit2: OrbitSpec,
    pub radio: RadioConfig,
    pub constants: PhysicalConstants,
}

impl ShiftedCoplanarScenario {
    pub fn new(orbit1: OrbitSpec, orbit2: OrbitSpec, radio: RadioConfig) -> Result<Self> {
        if orbit1.raan_rad == orbit2.raan_rad && orbit1.altitude_m == orbit2.altitude_m {
            return Err(Error::Scenario(
                "orbits coincide in plane and altitude; no valid two-orbit geometry".into(),
            ));
        }
        Ok(ShiftedCoplanarScenario {
            orbit1,
            orbit2,
            radio,
            constants: PhysicalConstants::default(),
        })
    }

    /// Natural period of the interference pattern (s): the offset sweep
    /// period for unequal altitudes, one orbital period otherwise.
    pub fn pattern_period_s(&self) -> f64 {
        if self.orbit1.altitude_m == self.orbit2.altitude_m {
            self.constants
                .orbital_period_s(self.orbit1.altitude_m)
                .expect("valid altitude")
        } else {
            self.constants
                .max_offset_period_s(
                    self.orbit1.num_satellites,
                    self.orbit2.num_satellites,
                    self.orbit1.altitude_m,
                    self.orbit2.altitude_m,
                )
                .expect("altitudes differ")
        }
    }
}

/// Geometric interference trio shared by the vector-based scenarios:
/// returns the victim-to-candidate distance when the candidate satellite
/// interferes, `None` otherwise.
pub(crate) fn interference_distance(
    pc: &PhysicalConstants,
    victim_pos: Vec3,
    rx_boresight: Vec3,
    candidate_pos: Vec3,
    candidate_target_pos: Vec3,
    cos_half_beamwidth: f64,
) -> Option<f64> {
    if pc
        .is_blocked_by_earth(candidate_pos, victim_pos)
        .unwrap_or(true)
    {
        return None;
    }
    let to_candidate = candidate_pos - victim_pos;
    if rx_boresight.cos_angle(to_candidate) <= cos_half_beamwidth {
        return None;
    }
    let candidate_boresight = candidate_target_pos - candidate_pos;
    if candidate_boresight.cos_angle(-to_candidate) <= cos_half_beamwidth {
        return None;
    }
    Some(to_candidate.norm())
}

/// Interference power received over one cross-link of length `distance_m`
/// with both main lobes engaged.
pub(crate) fn cross_term_w(radio: &RadioConfig, distance_m: f64) -> f64 {
    let g = radio.gain();
    radio::received_power(radio, g, g, distance_m).expect("positive distance")
}
