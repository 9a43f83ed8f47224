//! Circular-orbit kinematics: periods, angular speeds, in-plane positions,
//! plane-to-GEC transforms, relative phase drift, and Earth blockage.
//!
//! Conventions used throughout the crate:
//!
//! * Orbits are ideal circles around a spherical, non-rotating Earth; the
//!   GEC (geocentric equatorial) frame is fixed against the background
//!   stars with `z` along the rotation axis and `x` toward the vernal
//!   equinox.
//! * The in-plane true anomaly of satellite `j` of an `N`-satellite orbit
//!   at time `t` is `phase_offset + 2*pi*j/N + omega*t`.
//! * Every satellite transmits to its forward neighbor, index `j - 1`
//!   (mod `N`), so the satellite transmitting to satellite `v` is
//!   `v + 1` (mod `N`).
//! * Stored angles are normalized to `[0, 2*pi)`; signed angles produced
//!   by geometry operations live in `(-pi, pi]`.

use crate::{Error, Result, Vec3};
use std::f64::consts::{PI, TAU};

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;

/// Physical constants of the central body and the receiver chain.
///
/// Defaults model Earth; tests may override.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Hard-sphere Earth radius (m).
    pub earth_radius_m: f64,
    /// Standard gravitational parameter (m^3/s^2).
    pub mu_m3_per_s2: f64,
    /// Boltzmann's constant (J/K).
    pub boltzmann_j_per_k: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        PhysicalConstants {
            earth_radius_m: 6.371e6,
            mu_m3_per_s2: 3.986e14,
            boltzmann_j_per_k: 1.380_649e-23,
        }
    }
}

/// Wrap an angle to `[0, 2*pi)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let w = theta.rem_euclid(TAU);
    // rem_euclid can return exactly TAU for tiny negative inputs.
    if w == TAU {
        0.0
    } else {
        w
    }
}

/// Wrap an angle to `(-pi, pi]`.
pub fn wrap_signed(theta: f64) -> f64 {
    let w = wrap_angle(theta);
    if w > PI {
        w - TAU
    } else {
        w
    }
}

/// One circular orbital plane with evenly spaced satellites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitSpec {
    /// Altitude above the surface (m).
    pub altitude_m: f64,
    /// Inclination (rad), normalized to [0, 2*pi).
    pub inclination_rad: f64,
    /// Right ascension of the ascending node (rad), normalized to [0, 2*pi).
    pub raan_rad: f64,
    /// Number of evenly spaced satellites (>= 2).
    pub num_satellites: usize,
    /// True anomaly of satellite 0 at t = 0 (rad), normalized to [0, 2*pi).
    pub phase_offset_rad: f64,
}

impl OrbitSpec {
    pub fn new(
        altitude_m: f64,
        inclination_rad: f64,
        raan_rad: f64,
        num_satellites: usize,
        phase_offset_rad: f64,
    ) -> Result<Self> {
        if !altitude_m.is_finite() || altitude_m < 0.0 {
            return Err(Error::Domain(format!(
                "orbit altitude must be finite and non-negative, got {altitude_m}"
            )));
        }
        if num_satellites < 2 {
            return Err(Error::Domain(format!(
                "an orbit needs at least 2 satellites, got {num_satellites}"
            )));
        }
        Ok(OrbitSpec {
            altitude_m,
            inclination_rad: wrap_angle(inclination_rad),
            raan_rad: wrap_angle(raan_rad),
            num_satellites,
            phase_offset_rad: wrap_angle(phase_offset_rad),
        })
    }

    /// Equatorial orbit with zero RAAN and phase, the common test shape.
    pub fn equatorial(altitude_m: f64, num_satellites: usize) -> Result<Self> {
        OrbitSpec::new(altitude_m, 0.0, 0.0, num_satellites, 0.0)
    }

    /// Semi-major axis, i.e. orbit radius (m).
    pub fn semi_major_axis_m(&self, pc: &PhysicalConstants) -> f64 {
        pc.earth_radius_m + self.altitude_m
    }

    /// Angular spacing between adjacent satellites (rad).
    pub fn spacing_rad(&self) -> f64 {
        TAU / self.num_satellites as f64
    }

    /// True when the altitude is within the usual LEO band the model was
    /// built for (500 km .. 2000 km). Callers may warn outside it.
    pub fn in_leo_band(&self) -> bool {
        (500e3..=2000e3).contains(&self.altitude_m)
    }
}

/// An ordered set of orbital planes forming one deployment.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstellationSpec {
    pub orbits: Vec<OrbitSpec>,
}

impl ConstellationSpec {
    pub fn new(orbits: Vec<OrbitSpec>) -> Result<Self> {
        if orbits.is_empty() {
            return Err(Error::Scenario("a constellation needs at least one orbit".into()));
        }
        Ok(ConstellationSpec { orbits })
    }

    /// Walker-style shell: `planes` orbits of `sats_per_plane` satellites at
    /// a common altitude and inclination, RAANs evenly spread over 2*pi and
    /// in-plane phases staggered by `phase_step_rad` per plane (collision
    /// avoidance at plane crossings).
    pub fn walker(
        planes: usize,
        sats_per_plane: usize,
        altitude_m: f64,
        inclination_rad: f64,
        raan0_rad: f64,
        phase_step_rad: f64,
    ) -> Result<Self> {
        if planes == 0 {
            return Err(Error::Scenario("walker shell needs at least one plane".into()));
        }
        let mut orbits = Vec::with_capacity(planes);
        for k in 0..planes {
            orbits.push(OrbitSpec::new(
                altitude_m,
                inclination_rad,
                raan0_rad + TAU * k as f64 / planes as f64,
                sats_per_plane,
                phase_step_rad * k as f64,
            )?);
        }
        ConstellationSpec::new(orbits)
    }
}

/// Instantaneous state of one satellite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatState {
    /// Position in the GEC frame (m).
    pub position: Vec3,
    /// Unit transmission boresight: toward the forward neighbor `j - 1`.
    pub pointing: Vec3,
    /// Index of the orbit this satellite belongs to (global, flattened
    /// across constellations in multi-constellation runs).
    pub orbit_index: usize,
    /// Index of the satellite within its orbit.
    pub sat_index: usize,
}

impl PhysicalConstants {
    /// Orbital period of a circular orbit at `altitude_m` (s), from
    /// Kepler's third law.
    pub fn orbital_period_s(&self, altitude_m: f64) -> Result<f64> {
        if !altitude_m.is_finite() || altitude_m < 0.0 {
            return Err(Error::Domain(format!(
                "altitude must be finite and non-negative, got {altitude_m}"
            )));
        }
        let a = self.earth_radius_m + altitude_m;
        Ok(TAU * (a.powi(3) / self.mu_m3_per_s2).sqrt())
    }

    /// Constant angular speed of a circular orbit (rad/s).
    pub fn angular_speed_rad_per_s(&self, altitude_m: f64) -> Result<f64> {
        Ok(TAU / self.orbital_period_s(altitude_m)?)
    }

    /// Relative angular offset between two orbits after time `t_s`,
    /// wrapped to [0, 2*pi). Constant when the altitudes are equal.
    pub fn relative_angular_offset(
        &self,
        h1_m: f64,
        h2_m: f64,
        t_s: f64,
        initial_offset_rad: f64,
    ) -> Result<f64> {
        let w1 = self.angular_speed_rad_per_s(h1_m)?;
        let w2 = self.angular_speed_rad_per_s(h2_m)?;
        Ok(wrap_angle(initial_offset_rad + (w1 - w2) * t_s))
    }

    /// Period of the interference pattern of a two-orbit setup (s): the
    /// time for the relative offset to sweep the smaller inter-satellite
    /// spacing, `min(2*pi/n1, 2*pi/n2) / |omega1 - omega2|`.
    pub fn max_offset_period_s(&self, n1: usize, n2: usize, h1_m: f64, h2_m: f64) -> Result<f64> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::Domain("satellite counts must be >= 1".into()));
        }
        if h1_m == h2_m {
            return Err(Error::Domain(
                "equal altitudes: relative offset is constant, no finite period".into(),
            ));
        }
        let dw = self.angular_speed_rad_per_s(h1_m)? - self.angular_speed_rad_per_s(h2_m)?;
        let dbeta_max = TAU / n1.max(n2) as f64;
        Ok(dbeta_max / dw.abs())
    }

    /// Position of satellite `sat_index` in its own orbital plane, with
    /// the plane's `z = 0`: `r = a * (cos phi, sin phi, 0)` where
    /// `phi = offset + 2*pi*j/N`.
    pub fn in_plane_position(
        &self,
        sat_index: usize,
        orbit: &OrbitSpec,
        offset_rad: f64,
    ) -> Result<Vec3> {
        if sat_index >= orbit.num_satellites {
            return Err(Error::Domain(format!(
                "satellite index {sat_index} out of range for an orbit of {}",
                orbit.num_satellites
            )));
        }
        let a = self.semi_major(orbit);
        let phi = offset_rad + orbit.spacing_rad() * sat_index as f64;
        let (s, c) = phi.sin_cos();
        Ok(Vec3::new(a * c, a * s, 0.0))
    }

    fn semi_major(&self, orbit: &OrbitSpec) -> f64 {
        self.earth_radius_m + orbit.altitude_m
    }

    /// Whether the straight path between two points above the surface is
    /// blocked by the (hard-sphere) Earth.
    ///
    /// Evaluates the quadratic rise/set form
    /// `R = <a,b>^2 - |a|^2 |b|^2 + (|a|^2 + |b|^2) Re^2 - 2 Re^2 <a,b>`,
    /// which is positive exactly when the line through the points passes
    /// inside the sphere. The line only matters where the segment actually
    /// runs, so the test applies only when the perpendicular foot from the
    /// Earth's center falls between the endpoints; otherwise the minimum
    /// separation is at an endpoint, which is above the surface by the
    /// precondition, and the path is visible.
    pub fn is_blocked_by_earth(&self, a: Vec3, b: Vec3) -> Result<bool> {
        let re = self.earth_radius_m;
        let (na2, nb2) = (a.norm_squared(), b.norm_squared());
        if na2 <= re * re || nb2 <= re * re {
            return Err(Error::Domain("endpoint inside the Earth".into()));
        }
        let chord = b - a;
        let len2 = chord.norm_squared();
        if len2 == 0.0 {
            return Ok(false); // coincident points, zero-length path
        }
        // Perpendicular foot parameter along a + t*(b - a).
        let t = -a.dot(chord) / len2;
        if t <= 0.0 || t >= 1.0 {
            return Ok(false);
        }
        let p = a.dot(b);
        let rj = p * p - na2 * nb2 + (na2 + nb2) * re * re - 2.0 * re * re * p;
        Ok(rj > 0.0)
    }
}

/// Rotation from an orbit's plane frame into the GEC frame for a plane
/// with the given RAAN and inclination (`Rz(raan) * Rx(inclination)`).
pub fn plane_to_gec(raan_rad: f64, inclination_rad: f64) -> crate::Mat3 {
    let (so, co) = raan_rad.sin_cos();
    let (sg, cg) = inclination_rad.sin_cos();
    crate::Mat3 {
        rows: [
            [co, -so * cg, so * sg],
            [so, co * cg, -co * sg],
            [0.0, sg, cg],
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    const PC: PhysicalConstants = PhysicalConstants {
        earth_radius_m: 6.371e6,
        mu_m3_per_s2: 3.986e14,
        boltzmann_j_per_k: 1.380_649e-23,
    };

    #[test]
    fn orbital_period_matches_closed_form() {
        // Frozen from a direct independent evaluation of
        // 2*pi*sqrt((Re + h)^3 / mu).
        let t500 = PC.orbital_period_s(500e3).unwrap();
        assert!((t500 - 5668.147510).abs() < 1e-5, "T(500km) = {t500}");
        // Surface-skimming orbit.
        let t0 = PC.orbital_period_s(0.0).unwrap();
        assert!((t0 - 5060.840252).abs() < 1e-5, "T(0) = {t0}");
        assert!(PC.orbital_period_s(-1.0).is_err());
    }

    #[test]
    fn orbital_period_kepler_scaling() {
        // Quadrupling the period multiplies the radius by 4^(2/3).
        let h = 500e3;
        let a = PC.earth_radius_m + h;
        let a4 = a * 4f64.powf(2.0 / 3.0);
        let t1 = PC.orbital_period_s(h).unwrap();
        let t4 = PC.orbital_period_s(a4 - PC.earth_radius_m).unwrap();
        assert!((t4 / t1 - 4.0).abs() < 1e-12);
    }

    #[test]
    fn angular_speed_definition_and_monotonicity() {
        let w = PC.angular_speed_rad_per_s(500e3).unwrap();
        assert!((w - 1.108_507_726e-3).abs() < 1e-12, "omega = {w}");
        let t = PC.orbital_period_s(500e3).unwrap();
        assert!((w * t - TAU).abs() < 1e-12);
        // Lower orbits spin faster.
        for (h1, h2) in [(0.0, 1e3), (500e3, 510e3), (500e3, 2000e3)] {
            assert!(
                PC.angular_speed_rad_per_s(h1).unwrap() > PC.angular_speed_rad_per_s(h2).unwrap()
            );
        }
    }

    #[test]
    fn relative_offset_constant_for_equal_altitudes() {
        for t in [0.0, 17.3, 8000.0] {
            let off = PC.relative_angular_offset(510e3, 510e3, t, 0.4).unwrap();
            assert!((off - 0.4).abs() < 1e-12);
        }
    }

    #[test]
    fn relative_offset_drift_rate() {
        // Frozen from the angular_speed oracle: (w1 - w2) * 1000 s.
        let off = PC.relative_angular_offset(500e3, 510e3, 1000.0, 0.0).unwrap();
        assert!((off - 2.415_575_250e-3).abs() < 1e-11, "offset = {off}");
    }

    #[test]
    fn offset_is_periodic_with_max_offset_period() {
        let period = PC.max_offset_period_s(100, 100, 500e3, 510e3).unwrap();
        assert!((period - 26_011.134_649).abs() < 1e-4, "period = {period}");
        // Advancing by one period moves the offset by exactly one satellite
        // spacing, i.e. the wrapped pattern offset is unchanged modulo 2pi/N.
        let spacing = TAU / 100.0;
        for t in [0.0, 123.0, 9000.0] {
            let a = PC.relative_angular_offset(500e3, 510e3, t, 0.1).unwrap();
            let b = PC.relative_angular_offset(500e3, 510e3, t + period, 0.1).unwrap();
            let d = wrap_angle(b - a + 0.5 * spacing) - 0.5 * spacing;
            assert!((d.abs() - spacing).abs() < 1e-9 || d.abs() < 1e-9, "d = {d}");
        }
    }

    #[test]
    fn max_offset_period_scaling_rules() {
        let base = PC.max_offset_period_s(100, 100, 500e3, 510e3).unwrap();
        // Doubling both counts halves the period.
        let double = PC.max_offset_period_s(200, 200, 500e3, 510e3).unwrap();
        assert!((double * 2.0 - base).abs() < 1e-6);
        // The denser orbit sets the spacing.
        let mixed = PC.max_offset_period_s(50, 100, 500e3, 510e3).unwrap();
        assert!((mixed - base).abs() < 1e-6);
        assert!(PC.max_offset_period_s(100, 100, 500e3, 500e3).is_err());
    }

    #[test]
    fn in_plane_positions_are_evenly_spaced_on_the_circle() {
        let orbit = OrbitSpec::equatorial(500e3, 20).unwrap();
        let a = orbit.semi_major_axis_m(&PC);
        let p0 = PC.in_plane_position(0, &orbit, 0.0).unwrap();
        assert!((p0 - Vec3::new(a, 0.0, 0.0)).norm() < 1e-6);
        let p10 = PC.in_plane_position(10, &orbit, 0.0).unwrap();
        assert!((p10 - Vec3::new(-a, 0.0, 0.0)).norm() < 1e-3);
        for j in 0..20 {
            let p = PC.in_plane_position(j, &orbit, 0.3).unwrap();
            assert!((p.norm() - a).abs() < 1e-6);
            let q = PC.in_plane_position((j + 1) % 20, &orbit, 0.3).unwrap();
            let step = wrap_angle(q.y.atan2(q.x) - p.y.atan2(p.x));
            assert!((step - orbit.spacing_rad()).abs() < 1e-12);
        }
        assert!(PC.in_plane_position(20, &orbit, 0.0).is_err());
    }

    #[test]
    fn plane_to_gec_is_a_proper_rotation() {
        let id = plane_to_gec(0.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((id.rows[i][j] - want).abs() < 1e-15);
            }
        }
        // raan = 90 deg, inclination = 90 deg maps x to y.
        let m = plane_to_gec(PI / 2.0, PI / 2.0);
        let v = m.mul_vec(Vec3::new(1.0, 0.0, 0.0));
        assert!((v - Vec3::new(0.0, 1.0, 0.0)).norm() < 1e-12);

        let mut rng = SplitMix64::new(0x5eed_0001);
        for _ in 0..200 {
            let m = plane_to_gec(rng.uniform(0.0, TAU), rng.uniform(0.0, TAU));
            let prod = m.mul_mat(&m.transpose());
            for i in 0..3 {
                for j in 0..3 {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((prod.rows[i][j] - want).abs() < 1e-12);
                }
            }
            assert!((m.det() - 1.0).abs() < 1e-12);
        }
    }

    /// Independent oracle: minimum distance from the segment ab to the
    /// Earth's center, compared against the blocked flag.
    fn segment_min_distance(a: Vec3, b: Vec3) -> f64 {
        let chord = b - a;
        let len2 = chord.norm_squared();
        if len2 == 0.0 {
            return a.norm();
        }
        let t = (-a.dot(chord) / len2).clamp(0.0, 1.0);
        (a + chord * t).norm()
    }

    #[test]
    fn blockage_matches_segment_distance_oracle() {
        let mut rng = SplitMix64::new(0x5eed_0002);
        let mut blocked_count = 0;
        for _ in 0..10_000 {
            // Random pair anywhere in the LEO band, including unequal
            // altitudes and radially stacked geometries.
            let r1 = PC.earth_radius_m + rng.uniform(400e3, 2000e3);
            let r2 = PC.earth_radius_m + rng.uniform(400e3, 2000e3);
            let p1 = rng.point_on_shell(r1);
            let p2 = rng.point_on_shell(r2);
            let min_d = segment_min_distance(p1, p2);
            // Skip ties right at the tangency boundary.
            if (min_d - PC.earth_radius_m).abs() < 1e-9 * PC.earth_radius_m {
                continue;
            }
            let blocked = PC.is_blocked_by_earth(p1, p2).unwrap();
            assert_eq!(blocked, min_d < PC.earth_radius_m, "p1={p1:?} p2={p2:?}");
            if blocked {
                blocked_count += 1;
            }
        }
        assert!(blocked_count > 100, "oracle exercised both branches");
    }

    #[test]
    fn blockage_edge_cases() {
        let a = PC.earth_radius_m + 500e3;
        // Antipodal satellites at the same altitude: Earth in between.
        let p = Vec3::new(a, 0.0, 0.0);
        assert!(PC.is_blocked_by_earth(p, -p).unwrap());
        // Coincident points: visible.
        assert!(!PC.is_blocked_by_earth(p, p).unwrap());
        // Neighbors 2*pi/20 apart at 500 km: visible.
        let q = Vec3::new(a * (TAU / 20.0).cos(), a * (TAU / 20.0).sin(), 0.0);
        assert!(!PC.is_blocked_by_earth(p, q).unwrap());
        // One satellite directly above another: visible even though the
        // infinite line through them passes the Earth's center.
        let above = Vec3::new(a + 800e3, 0.0, 0.0);
        assert!(!PC.is_blocked_by_earth(p, above).unwrap());
        // Inside the Earth is a domain error.
        assert!(PC.is_blocked_by_earth(Vec3::new(1.0, 0.0, 0.0), p).is_err());
    }

    #[test]
    fn orbit_spec_validation_and_wrapping() {
        assert!(OrbitSpec::new(500e3, 0.0, 0.0, 1, 0.0).is_err());
        assert!(OrbitSpec::new(-5.0, 0.0, 0.0, 10, 0.0).is_err());
        let o = OrbitSpec::new(500e3, -PI, 3.0 * TAU + 1.0, 10, -0.25).unwrap();
        assert!((o.inclination_rad - PI).abs() < 1e-12);
        assert!((o.raan_rad - 1.0).abs() < 1e-12);
        assert!((o.phase_offset_rad - (TAU - 0.25)).abs() < 1e-12);
        assert!(o.in_leo_band());
        assert!(!OrbitSpec::equatorial(100e3, 4).unwrap().in_leo_band());
    }

    #[test]
    fn walker_shell_layout() {
        let shell = ConstellationSpec::walker(10, 30, 500e3, 0.873, 0.0, 0.01).unwrap();
        assert_eq!(shell.orbits.len(), 10);
        for (k, orbit) in shell.orbits.iter().enumerate() {
            assert!((orbit.raan_rad - TAU * k as f64 / 10.0).abs() < 1e-12);
            assert!((orbit.phase_offset_rad - 0.01 * k as f64).abs() < 1e-12);
        }
    }
}
