//! Combined deployments: every interference source of a full
//! multi-constellation layout aggregated into one report, with each
//! interferer attributed to its geometric source class.

use super::{
    cross_term_w, interference_distance, single_interferer_count_with, single_link_distance_m_with,
    InterfererId, InterferenceReport,
};
use crate::orbital::{plane_to_gec, ConstellationSpec, OrbitSpec, PhysicalConstants};
use crate::radio::{noise_power, received_power, RadioConfig};
use crate::{Error, Result, Vec3};
use std::collections::{BTreeMap, BTreeSet};

/// Geometric relation of an interfering orbit to the victim's orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SourceClass {
    /// The victim's own orbit.
    SameOrbit,
    /// Same altitude, different plane.
    Shifted,
    /// Same plane, different altitude.
    Coplanar,
    /// Different plane and different altitude.
    ShiftedCoplanar,
}

impl SourceClass {
    pub fn name(&self) -> &'static str {
        match self {
            SourceClass::SameOrbit => "single",
            SourceClass::Shifted => "shifted",
            SourceClass::Coplanar => "coplanar",
            SourceClass::ShiftedCoplanar => "shifted_coplanar",
        }
    }
}

/// Combined-deployment metrics at one instant.
#[derive(Debug, Clone)]
pub struct CombinedReport {
    pub report: InterferenceReport,
    /// Aggregate interference power per source class (W); classes with no
    /// geometric candidates still appear with 0.
    pub power_by_class: BTreeMap<SourceClass, f64>,
    /// Source class of every reported interferer.
    pub class_of: BTreeMap<InterfererId, SourceClass>,
}

fn classify(victim: &OrbitSpec, other: &OrbitSpec) -> SourceClass {
    let same_plane =
        other.raan_rad == victim.raan_rad && other.inclination_rad == victim.inclination_rad;
    let same_altitude = other.altitude_m == victim.altitude_m;
    match (same_plane, same_altitude) {
        (true, _) => SourceClass::Coplanar,
        (false, true) => SourceClass::Shifted,
        (false, false) => SourceClass::ShiftedCoplanar,
    }
}

/// Interference, SIR, SINR, and capacity for the victim link (first
/// satellite of the first orbit of the first constellation) inside a
/// full deployment at time `t`. Orbit indices in the report run
/// constellation-major over all planes.
pub fn combined_deployment_report(
    constellations: &[ConstellationSpec],
    radio: &RadioConfig,
    t_s: f64,
) -> Result<CombinedReport> {
    combined_deployment_report_with(&PhysicalConstants::default(), constellations, radio, t_s)
}

pub fn combined_deployment_report_with(
    pc: &PhysicalConstants,
    constellations: &[ConstellationSpec],
    radio: &RadioConfig,
    t_s: f64,
) -> Result<CombinedReport> {
    let victim_orbit = constellations
        .first()
        .and_then(|c| c.orbits.first())
        .ok_or_else(|| Error::Scenario("combined deployment needs at least one orbit".into()))?;

    let mut power_by_class: BTreeMap<SourceClass, f64> = BTreeMap::new();
    for class in [
        SourceClass::SameOrbit,
        SourceClass::Shifted,
        SourceClass::Coplanar,
        SourceClass::ShiftedCoplanar,
    ] {
        power_by_class.insert(class, 0.0);
    }
    let mut class_of: BTreeMap<InterfererId, SourceClass> = BTreeMap::new();
    let mut ids: BTreeSet<InterfererId> = BTreeSet::new();
    let mut interference = 0.0;

    // Same-orbit contribution from the closed form.
    let n1 = single_interferer_count_with(
        pc,
        victim_orbit.num_satellites,
        victim_orbit.altitude_m,
        radio.pattern.beamwidth_rad(),
    );
    let g = radio.gain();
    for i in 2..=(n1 + 1) {
        let d = single_link_distance_m_with(pc, i, victim_orbit.num_satellites, victim_orbit.altitude_m);
        let p = received_power(radio, g, g, d).expect("positive distance");
        interference += p;
        *power_by_class.get_mut(&SourceClass::SameOrbit).unwrap() += p;
        let id = InterfererId::new(0, i);
        ids.insert(id);
        class_of.insert(id, SourceClass::SameOrbit);
    }

    // Cross-orbit contributions, orbit by orbit.
    let victim_state = plane_state(pc, victim_orbit, t_s);
    let victim_pos = victim_state.position(0);
    let rx_boresight = victim_state.position(1) - victim_pos;
    let cos_half = (radio.pattern.beamwidth_rad() / 2.0).cos();

    let mut global_orbit = 0usize;
    for constellation in constellations {
        for orbit in &constellation.orbits {
            let orbit_index = global_orbit;
            global_orbit += 1;
            if orbit_index == 0 {
                continue; // the victim's own orbit is handled above
            }
            let class = classify(victim_orbit, orbit);
            let plane = plane_state(pc, orbit, t_s);
            for j in 0..orbit.num_satellites {
                if let Some(d) = interference_distance(
                    pc,
                    victim_pos,
                    rx_boresight,
                    plane.position(j),
                    plane.target(j),
                    cos_half,
                ) {
                    let p = cross_term_w(radio, d);
                    interference += p;
                    *power_by_class.get_mut(&class).unwrap() += p;
                    let id = InterfererId::new(orbit_index, j);
                    ids.insert(id);
                    class_of.insert(id, class);
                }
            }
        }
    }

    let d1 = single_link_distance_m_with(pc, 1, victim_orbit.num_satellites, victim_orbit.altitude_m);
    let signal = received_power(radio, g, g, d1).expect("positive distance");
    let report = InterferenceReport::from_powers(
        ids,
        signal,
        interference,
        noise_power(pc, radio),
        radio.bandwidth_hz,
    );
    Ok(CombinedReport {
        report,
        power_by_class,
        class_of,
    })
}

struct Plane {
    rotation: crate::Mat3,
    radius_m: f64,
    phase_rad: f64,
    spacing_rad: f64,
}

impl Plane {
    fn position(&self, sat: usize) -> Vec3 {
        self.at(self.phase_rad + self.spacing_rad * sat as f64)
    }
    fn target(&self, sat: usize) -> Vec3 {
        self.at(self.phase_rad + self.spacing_rad * (sat as f64 - 1.0))
    }
    fn at(&self, phi: f64) -> Vec3 {
        let (s, c) = phi.sin_cos();
        self.rotation
            .mul_vec(Vec3::new(self.radius_m * c, self.radius_m * s, 0.0))
    }
}

fn plane_state(pc: &PhysicalConstants, orbit: &OrbitSpec, t_s: f64) -> Plane {
    let omega = pc
        .angular_speed_rad_per_s(orbit.altitude_m)
        .expect("valid altitude");
    Plane {
        rotation: plane_to_gec(orbit.raan_rad, orbit.inclination_rad),
        radius_m: orbit.semi_major_axis_m(pc),
        phase_rad: orbit.phase_offset_rad + omega * t_s,
        spacing_rad: orbit.spacing_rad(),
    }
}

/// Combined metrics averaged over `samples` instants spanning `period_s`:
/// powers are averaged in linear watts, then the ratios and capacity are
/// rebuilt from the mean powers.
#[derive(Debug, Clone)]
pub struct CombinedAverage {
    pub report: InterferenceReport,
    pub power_by_class: BTreeMap<SourceClass, f64>,
    /// SINR-equivalent capacity if no interference existed at all (bit/s).
    pub capacity_no_interference_bps: f64,
}

pub fn combined_time_average(
    constellations: &[ConstellationSpec],
    radio: &RadioConfig,
    period_s: f64,
    samples: usize,
) -> Result<CombinedAverage> {
    combined_time_average_with(
        &PhysicalConstants::default(),
        constellations,
        radio,
        period_s,
        samples,
    )
}

pub fn combined_time_average_with(
    pc: &PhysicalConstants,
    constellations: &[ConstellationSpec],
    radio: &RadioConfig,
    period_s: f64,
    samples: usize,
) -> Result<CombinedAverage> {
    if samples == 0 {
        return Err(Error::Domain("need at least one sample".into()));
    }
    let mut mean_interference = 0.0;
    let mut mean_signal = 0.0;
    let mut power_by_class: BTreeMap<SourceClass, f64> = BTreeMap::new();
    let mut ids: BTreeSet<InterfererId> = BTreeSet::new();
    for k in 0..samples {
        let t = period_s * k as f64 / samples as f64;
        let snap = combined_deployment_report_with(pc, constellations, radio, t)?;
        mean_interference += snap.report.expected_interference_w;
        mean_signal += snap.report.signal_power_w;
        for (class, p) in snap.power_by_class {
            *power_by_class.entry(class).or_insert(0.0) += p;
        }
        ids.extend(snap.report.interferer_ids);
    }
    let inv = 1.0 / samples as f64;
    mean_interference *= inv;
    mean_signal *= inv;
    for p in power_by_class.values_mut() {
        *p *= inv;
    }
    let noise = noise_power(pc, radio);
    let report = InterferenceReport::from_powers(
        ids,
        mean_signal,
        mean_interference,
        noise,
        radio.bandwidth_hz,
    );
    let capacity_no_interference_bps =
        radio.bandwidth_hz * (1.0 + mean_signal / noise).log2();
    Ok(CombinedAverage {
        report,
        power_by_class,
        capacity_no_interference_bps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{single_report, SingleOrbitScenario};
    use crate::radio::Band;
    use std::f64::consts::TAU;

    fn walker_pair(n: usize) -> Vec<ConstellationSpec> {
        let phase_step = TAU / (10.0 * n as f64);
        vec![
            ConstellationSpec::walker(10, n, 500e3, 50f64.to_radians(), 0.0, phase_step).unwrap(),
            ConstellationSpec::walker(10, n, 510e3, 50f64.to_radians(), 0.0, phase_step).unwrap(),
        ]
    }

    #[test]
    fn single_constellation_single_orbit_equals_single_report() {
        let radio = Band::MmWave.config_with_cone(10f64.to_radians()).unwrap();
        let orbit = OrbitSpec::equatorial(500e3, 100).unwrap();
        let deployment = vec![ConstellationSpec::new(vec![orbit]).unwrap()];
        let combined = combined_deployment_report(&deployment, &radio, 0.0).unwrap();
        let single = single_report(&SingleOrbitScenario::new(orbit, radio));
        assert_eq!(combined.report.interferer_ids, single.interferer_ids);
        assert_eq!(combined.report.expected_interference_w, single.expected_interference_w);
        assert_eq!(combined.report.sinr, single.sinr);
        assert!(combined
            .class_of
            .values()
            .all(|&c| c == SourceClass::SameOrbit));
    }

    #[test]
    fn classification_follows_geometry() {
        let victim = OrbitSpec::new(500e3, 0.9, 0.0, 10, 0.0).unwrap();
        let coplanar = OrbitSpec::new(510e3, 0.9, 0.0, 10, 0.0).unwrap();
        let shifted = OrbitSpec::new(500e3, 0.9, 1.0, 10, 0.0).unwrap();
        let shifted_coplanar = OrbitSpec::new(510e3, 0.9, 1.0, 10, 0.0).unwrap();
        assert_eq!(classify(&victim, &coplanar), SourceClass::Coplanar);
        assert_eq!(classify(&victim, &shifted), SourceClass::Shifted);
        assert_eq!(classify(&victim, &shifted_coplanar), SourceClass::ShiftedCoplanar);
    }

    #[test]
    fn narrow_subthz_beams_keep_moderate_walker_pairs_interference_free() {
        let radio = Band::SubThz.config_with_cone(1f64.to_radians()).unwrap();
        let deployment = walker_pair(100);
        for k in 0..8 {
            let t = 500.0 * k as f64;
            let c = combined_deployment_report(&deployment, &radio, t).unwrap();
            assert!(c.report.interferer_ids.is_empty(), "t={t}: {:?}", c.report.interferer_ids);
        }
    }

    #[test]
    fn class_powers_sum_to_the_total() {
        let radio = Band::MmWave.config_with_cone(5f64.to_radians()).unwrap();
        let deployment = walker_pair(120);
        let c = combined_deployment_report(&deployment, &radio, 321.0).unwrap();
        let sum: f64 = c.power_by_class.values().sum();
        let total = c.report.expected_interference_w;
        if total > 0.0 {
            assert!((sum / total - 1.0).abs() < 1e-12);
        } else {
            assert_eq!(sum, 0.0);
        }
        assert_eq!(c.class_of.len(), c.report.interferer_ids.len());
    }

    #[test]
    fn time_average_rebuilds_ratios_from_mean_powers() {
        let radio = Band::MmWave.config_with_cone(5f64.to_radians()).unwrap();
        let deployment = walker_pair(80);
        let pc = PhysicalConstants::default();
        let period = pc.max_offset_period_s(80, 80, 500e3, 510e3).unwrap();
        let avg = combined_time_average(&deployment, &radio, period, 64).unwrap();
        assert!(avg.report.sinr <= avg.report.sir);
        assert!(avg.report.capacity_bps <= avg.capacity_no_interference_bps);
        let n = noise_power(&pc, &radio);
        let want = avg.report.signal_power_w / (avg.report.expected_interference_w + n);
        assert!((avg.report.sinr / want - 1.0).abs() < 1e-12);
    }
}
