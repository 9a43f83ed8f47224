//! Single-orbit closed forms: interferer count, link distances, expected
//! interference, SIR/SINR, and the theoretical limits.

use super::{InterfererId, InterferenceReport, SingleOrbitScenario};
use crate::orbital::PhysicalConstants;
use crate::radio::{noise_power, received_power};
use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};

/// `1 - cos(x)` evaluated as `2 sin^2(x/2)`; full precision for the small
/// angular spacings of dense orbits.
#[inline]
fn one_minus_cos(x: f64) -> f64 {
    let s = (x / 2.0).sin();
    2.0 * s * s
}

/// Number of same-orbit satellites interfering with the victim link:
/// `floor(min(N/pi * acos(Re/(Re+h)), 1 + N*alpha/(2*pi))) - 1`, at
/// least zero.
///
/// The beam threshold lands exactly on an integer whenever `N * alpha`
/// is a multiple of a full turn (e.g. 72 satellites with 5-degree
/// beams); a one-nanoradian-scale guard keeps the floor on the closed
/// side of the boundary regardless of rounding direction, matching the
/// closed-form count.
pub fn single_interferer_count_with(
    pc: &PhysicalConstants,
    n: usize,
    altitude_m: f64,
    beamwidth_rad: f64,
) -> usize {
    let nf = n as f64;
    let horizon = nf / PI * (pc.earth_radius_m / (pc.earth_radius_m + altitude_m)).acos();
    let beam = 1.0 + nf * beamwidth_rad / TAU;
    let bound = ((horizon.min(beam) + 1e-9).floor() as i64) - 1;
    bound.max(0) as usize
}

/// [`single_interferer_count_with`] under default Earth constants.
pub fn single_interferer_count(n: usize, altitude_m: f64, beamwidth_rad: f64) -> usize {
    single_interferer_count_with(&PhysicalConstants::default(), n, altitude_m, beamwidth_rad)
}

/// Chord distance between the victim and the satellite `i` spacings away:
/// `sqrt(2) * (Re+h) * sqrt(1 - cos(2*pi*i/N)) = 2 (Re+h) sin(pi*i/N)`.
pub fn single_link_distance_m(i: usize, n: usize, altitude_m: f64) -> f64 {
    single_link_distance_m_with(&PhysicalConstants::default(), i, n, altitude_m)
}

pub fn single_link_distance_m_with(
    pc: &PhysicalConstants,
    i: usize,
    n: usize,
    altitude_m: f64,
) -> f64 {
    debug_assert!(i >= 1 && i < n, "link index {i} out of range for N={n}");
    2.0 * (pc.earth_radius_m + altitude_m) * (PI * i as f64 / n as f64).sin()
}

/// Expected same-orbit interference power (W): the free-space sum over
/// the `N1` interfering satellites; zero when none interfere.
pub fn single_expected_interference(s: &SingleOrbitScenario) -> f64 {
    let n1 = single_interferer_count_with(
        &s.constants,
        s.orbit.num_satellites,
        s.orbit.altitude_m,
        s.radio.pattern.beamwidth_rad(),
    );
    let g = s.radio.gain();
    let mut sum = 0.0;
    for i in 2..=(n1 + 1) {
        let d = single_link_distance_m_with(&s.constants, i, s.orbit.num_satellites, s.orbit.altitude_m);
        sum += received_power(&s.radio, g, g, d).expect("chord distance is positive");
    }
    sum
}

/// Average SIR of the single-orbit link. Everything but the satellite
/// count cancels except through the horizon term of the interferer
/// count, so the value is independent of transmit power, carrier, and
/// altitude whenever the beam term is binding. `+inf` when no satellite
/// interferes.
pub fn single_sir_with(pc: &PhysicalConstants, n: usize, altitude_m: f64, beamwidth_rad: f64) -> f64 {
    let n1 = single_interferer_count_with(pc, n, altitude_m, beamwidth_rad);
    if n1 == 0 {
        return f64::INFINITY;
    }
    let nf = n as f64;
    let numerator = 1.0 / one_minus_cos(TAU / nf);
    let mut denominator = 0.0;
    for i in 2..=(n1 + 1) {
        denominator += 1.0 / one_minus_cos(TAU * i as f64 / nf);
    }
    numerator / denominator
}

/// [`single_sir_with`] under default Earth constants.
pub fn single_sir(n: usize, altitude_m: f64, beamwidth_rad: f64) -> f64 {
    single_sir_with(&PhysicalConstants::default(), n, altitude_m, beamwidth_rad)
}

/// SINR of the single-orbit link: received signal over same-orbit
/// interference plus thermal noise.
pub fn single_sinr(s: &SingleOrbitScenario) -> f64 {
    let report = single_report(s);
    report.sinr
}

/// Full single-orbit report: signal, interference, SIR, SINR, capacity.
pub fn single_report(s: &SingleOrbitScenario) -> InterferenceReport {
    let n1 = single_interferer_count_with(
        &s.constants,
        s.orbit.num_satellites,
        s.orbit.altitude_m,
        s.radio.pattern.beamwidth_rad(),
    );
    let g = s.radio.gain();
    let d1 = single_link_distance_m_with(&s.constants, 1, s.orbit.num_satellites, s.orbit.altitude_m);
    let signal = received_power(&s.radio, g, g, d1).expect("positive link distance");
    let interference = single_expected_interference(s);
    let ids: BTreeSet<InterfererId> = (2..=(n1 + 1)).map(|i| InterfererId::new(0, i)).collect();
    InterferenceReport::from_powers(
        ids,
        signal,
        interference,
        noise_power(&s.constants, &s.radio),
        s.radio.bandwidth_hz,
    )
}

/// Large-N limit of the single-orbit SIR: `1 / (pi^2/6 - 1)`, about
/// 1.55 (1.9 dB). Densifying an orbit cannot push the SIR above this.
pub fn sir_asymptote() -> f64 {
    1.0 / (PI * PI / 6.0 - 1.0)
}

/// Largest satellite count that keeps the single-orbit link free of
/// interference for the given altitude and beamwidth.
pub fn optimal_satellite_count_with(
    pc: &PhysicalConstants,
    altitude_m: f64,
    beamwidth_rad: f64,
) -> usize {
    // Continuous bound from the two interference conditions, then settle
    // the strict-inequality boundary by evaluating the actual count.
    let horizon = (pc.earth_radius_m / (pc.earth_radius_m + altitude_m)).acos();
    let bound = (TAU / beamwidth_rad).max(TAU / horizon);
    let mut n = bound.ceil() as usize + 2;
    while n > 2 && single_interferer_count_with(pc, n, altitude_m, beamwidth_rad) > 0 {
        n -= 1;
    }
    n
}

/// [`optimal_satellite_count_with`] under default Earth constants.
pub fn optimal_satellite_count(altitude_m: f64, beamwidth_rad: f64) -> usize {
    optimal_satellite_count_with(&PhysicalConstants::default(), altitude_m, beamwidth_rad)
}
