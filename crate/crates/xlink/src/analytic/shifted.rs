//! Shifted orbits: interference between two planes that differ in RAAN,
//! at equal altitudes (`ShiftedScenario`) or different ones
//! (`ShiftedCoplanarScenario`).
//!
//! Positions are built in each orbit's own plane and rotated into the
//! GEC frame; the interference conditions are evaluated on the raw
//! vectors. Both scenarios are evaluated at an explicit time `t`: phases
//! advance at each orbit's own angular rate, which makes the relative
//! offset constant for equal altitudes and linearly drifting otherwise.

use super::{
    cross_term_w, interference_distance, single_interferer_count_with, single_link_distance_m_with,
    InterfererId, InterferenceReport, ShiftedCoplanarScenario, ShiftedScenario,
};
use crate::orbital::{plane_to_gec, OrbitSpec, PhysicalConstants};
use crate::radio::{noise_power, received_power, RadioConfig};
use crate::{Mat3, Vec3};
use std::collections::BTreeSet;

/// One orbit's satellites in the GEC frame at a given time.
struct PlaneAtTime {
    rotation: Mat3,
    radius_m: f64,
    phase_rad: f64,
    spacing_rad: f64,
    n: usize,
}

impl PlaneAtTime {
    fn new(pc: &PhysicalConstants, orbit: &OrbitSpec, t_s: f64) -> PlaneAtTime {
        let omega = pc
            .angular_speed_rad_per_s(orbit.altitude_m)
            .expect("valid altitude");
        PlaneAtTime {
            rotation: plane_to_gec(orbit.raan_rad, orbit.inclination_rad),
            radius_m: orbit.semi_major_axis_m(pc),
            phase_rad: orbit.phase_offset_rad + omega * t_s,
            spacing_rad: orbit.spacing_rad(),
            n: orbit.num_satellites,
        }
    }

    fn position(&self, sat: usize) -> Vec3 {
        self.position_at_angle(self.phase_rad + self.spacing_rad * sat as f64)
    }

    /// Beam target of satellite `sat`: its forward neighbor `sat - 1`.
    fn target(&self, sat: usize) -> Vec3 {
        self.position_at_angle(self.phase_rad + self.spacing_rad * (sat as f64 - 1.0))
    }

    fn position_at_angle(&self, phi: f64) -> Vec3 {
        let (s, c) = phi.sin_cos();
        self.rotation
            .mul_vec(Vec3::new(self.radius_m * c, self.radius_m * s, 0.0))
    }
}

struct TwoPlaneGeometry {
    victim_pos: Vec3,
    rx_boresight: Vec3,
    other: PlaneAtTime,
}

fn two_plane_geometry(
    pc: &PhysicalConstants,
    orbit1: &OrbitSpec,
    orbit2: &OrbitSpec,
    t_s: f64,
) -> TwoPlaneGeometry {
    let plane1 = PlaneAtTime::new(pc, orbit1, t_s);
    let victim_pos = plane1.position(0);
    let tx_pos = plane1.position(1); // satellite 1 beams at the victim
    TwoPlaneGeometry {
        victim_pos,
        rx_boresight: tx_pos - victim_pos,
        other: PlaneAtTime::new(pc, orbit2, t_s),
    }
}

fn interfering_distances(
    pc: &PhysicalConstants,
    geom: &TwoPlaneGeometry,
    radio: &RadioConfig,
) -> Vec<(usize, f64)> {
    let cos_half = (radio.pattern.beamwidth_rad() / 2.0).cos();
    (0..geom.other.n)
        .filter_map(|j| {
            interference_distance(
                pc,
                geom.victim_pos,
                geom.rx_boresight,
                geom.other.position(j),
                geom.other.target(j),
                cos_half,
            )
            .map(|d| (j, d))
        })
        .collect()
}

/// Shifted-orbit satellites interfering with the victim at time `t`.
pub fn shifted_interferer_set(s: &ShiftedScenario, t_s: f64) -> BTreeSet<usize> {
    let geom = two_plane_geometry(&s.constants, &s.orbit1, &s.orbit2, t_s);
    interfering_distances(&s.constants, &geom, &s.radio)
        .into_iter()
        .map(|(j, _)| j)
        .collect()
}

/// Expected interference power from the shifted orbit at time `t` (W).
pub fn shifted_expected_interference(s: &ShiftedScenario, t_s: f64) -> f64 {
    let geom = two_plane_geometry(&s.constants, &s.orbit1, &s.orbit2, t_s);
    interfering_distances(&s.constants, &geom, &s.radio)
        .into_iter()
        .map(|(_, d)| cross_term_w(&s.radio, d))
        .sum()
}

/// Full shifted-orbit report at time `t`: same-orbit interference plus
/// the shifted orbit's contribution. Orbit 0 is the victim's plane,
/// orbit 1 the shifted plane.
pub fn shifted_sir_sinr(s: &ShiftedScenario, t_s: f64) -> InterferenceReport {
    two_plane_report(
        &s.constants,
        &s.orbit1,
        &s.orbit2,
        &s.radio,
        t_s,
    )
}

/// Shifted co-planar report at time `t`: the same pipeline with the
/// interfering orbit on its own radius, whose relative offset therefore
/// drifts over time for unequal altitudes.
pub fn shifted_coplanar_interference(s: &ShiftedCoplanarScenario, t_s: f64) -> InterferenceReport {
    two_plane_report(&s.constants, &s.orbit1, &s.orbit2, &s.radio, t_s)
}

fn two_plane_report(
    pc: &PhysicalConstants,
    orbit1: &OrbitSpec,
    orbit2: &OrbitSpec,
    radio: &RadioConfig,
    t_s: f64,
) -> InterferenceReport {
    let n1 = single_interferer_count_with(
        pc,
        orbit1.num_satellites,
        orbit1.altitude_m,
        radio.pattern.beamwidth_rad(),
    );
    let g = radio.gain();
    let mut interference = 0.0;
    let mut ids: BTreeSet<InterfererId> = BTreeSet::new();
    for i in 2..=(n1 + 1) {
        let d = single_link_distance_m_with(pc, i, orbit1.num_satellites, orbit1.altitude_m);
        interference += received_power(radio, g, g, d).expect("positive distance");
        ids.insert(InterfererId::new(0, i));
    }
    let geom = two_plane_geometry(pc, orbit1, orbit2, t_s);
    for (j, d) in interfering_distances(pc, &geom, radio) {
        interference += cross_term_w(radio, d);
        ids.insert(InterfererId::new(1, j));
    }
    let d1 = single_link_distance_m_with(pc, 1, orbit1.num_satellites, orbit1.altitude_m);
    let signal = received_power(radio, g, g, d1).expect("positive distance");
    InterferenceReport::from_powers(
        ids,
        signal,
        interference,
        noise_power(pc, radio),
        radio.bandwidth_hz,
    )
}
