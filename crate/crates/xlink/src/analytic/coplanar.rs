//! Co-planar orbit pair: interference between two orbits sharing one
//! plane at different altitudes.
//!
//! The closed form works in the victim's 2-D plane frame: the victim
//! sits at `(0, r_victim)`, a satellite at in-plane angle `theta` ahead
//! of the victim sits at `r (sin theta, cos theta)`, and the victim's
//! transmitter is one spacing ahead at `theta = 2*pi/N`. The offset
//! `delta_beta` is always the in-plane angle of the *upper* orbit's
//! satellite 0 minus the *lower* orbit's satellite 0, regardless of
//! which orbit hosts the victim.

use super::{
    cross_term_w, interference_distance, single_interferer_count_with, single_link_distance_m_with,
    CoplanarScenario, InterfererId, InterferenceReport, VictimOrbit,
};
use crate::orbital::wrap_angle;
use crate::radio::{noise_power, received_power};
use crate::{Error, Result, Vec3};
use std::collections::BTreeSet;
use std::f64::consts::TAU;

/// The 2-D scene of one victim/interfering-orbit pairing.
struct Frame {
    r_victim: f64,
    r_intf: f64,
    victim_spacing_rad: f64,
    intf_spacing_rad: f64,
    /// In-plane angle of interfering-orbit satellite 0 minus the victim.
    rel_offset_rad: f64,
    n_intf: usize,
}

impl Frame {
    fn new(s: &CoplanarScenario, delta_beta_rad: f64) -> Frame {
        let re = s.constants.earth_radius_m;
        let (victim, intf) = (s.victim_orbit(), s.interfering_orbit());
        let rel = match s.victim {
            VictimOrbit::Lower => delta_beta_rad,
            VictimOrbit::Upper => -delta_beta_rad,
        };
        Frame {
            r_victim: re + victim.altitude_m,
            r_intf: re + intf.altitude_m,
            victim_spacing_rad: victim.spacing_rad(),
            intf_spacing_rad: intf.spacing_rad(),
            rel_offset_rad: rel,
            n_intf: intf.num_satellites,
        }
    }

    fn at(r: f64, theta: f64) -> Vec3 {
        let (s, c) = theta.sin_cos();
        Vec3::new(r * s, r * c, 0.0)
    }

    fn victim_pos(&self) -> Vec3 {
        Vec3::new(0.0, self.r_victim, 0.0)
    }

    fn tx_pos(&self) -> Vec3 {
        Frame::at(self.r_victim, self.victim_spacing_rad)
    }

    fn intf_angle(&self, j: usize) -> f64 {
        self.rel_offset_rad + self.intf_spacing_rad * j as f64
    }

    fn intf_pos(&self, j: usize) -> Vec3 {
        Frame::at(self.r_intf, self.intf_angle(j))
    }

    /// Beam target of interfering satellite `j`: its wrap-around forward
    /// neighbor `j - 1` (mod N), one spacing behind in angle.
    fn intf_target_pos(&self, j: usize) -> Vec3 {
        Frame::at(self.r_intf, self.intf_angle(j) - self.intf_spacing_rad)
    }
}

fn check_index(j: usize, frame: &Frame) -> Result<()> {
    if j >= frame.n_intf {
        return Err(Error::Domain(format!(
            "satellite index {j} out of range for an orbit of {}",
            frame.n_intf
        )));
    }
    Ok(())
}

/// Signed angle from the victim's receive boresight to the direction of
/// interfering-orbit satellite `j`, in `(-pi, pi]`. Positive rotations
/// run from the boresight toward the victim's zenith.
pub fn coplanar_psi(j: usize, s: &CoplanarScenario, delta_beta_rad: f64) -> Result<f64> {
    let frame = Frame::new(s, delta_beta_rad);
    check_index(j, &frame)?;
    let a = frame.victim_pos();
    let boresight = frame.tx_pos() - a;
    let to_sat = frame.intf_pos(j) - a;
    if to_sat.norm_squared() == 0.0 {
        return Err(Error::Domain("victim and satellite coincide".into()));
    }
    Ok(boresight.cross(to_sat).z.atan2(boresight.dot(to_sat)))
}

/// Off-boresight angle at interfering satellite `j` between its own beam
/// (toward its forward neighbor) and the direction of the victim, in
/// `[0, pi]`.
pub fn coplanar_psi_prime(j: usize, s: &CoplanarScenario, delta_beta_rad: f64) -> Result<f64> {
    let frame = Frame::new(s, delta_beta_rad);
    check_index(j, &frame)?;
    let b = frame.intf_pos(j);
    let to_target = frame.intf_target_pos(j) - b;
    let to_victim = frame.victim_pos() - b;
    if to_victim.norm_squared() == 0.0 {
        return Err(Error::Domain("victim and satellite coincide".into()));
    }
    Ok(to_target.angle_to(to_victim))
}

/// Distance from the victim to interfering-orbit satellite `j` (m).
pub fn coplanar_link_distance_m(j: usize, s: &CoplanarScenario, delta_beta_rad: f64) -> f64 {
    let frame = Frame::new(s, delta_beta_rad);
    (frame.intf_pos(j) - frame.victim_pos()).norm()
}

/// Satellites of the interfering orbit that jointly satisfy the
/// visibility and both beam-alignment conditions (strict inequalities at
/// the beam edges).
pub fn coplanar_interferer_set(s: &CoplanarScenario, delta_beta_rad: f64) -> BTreeSet<usize> {
    let frame = Frame::new(s, delta_beta_rad);
    let cos_half = (s.radio.pattern.beamwidth_rad() / 2.0).cos();
    let victim = frame.victim_pos();
    let boresight = frame.tx_pos() - victim;
    (0..frame.n_intf)
        .filter(|&j| {
            interference_distance(
                &s.constants,
                victim,
                boresight,
                frame.intf_pos(j),
                frame.intf_target_pos(j),
                cos_half,
            )
            .is_some()
        })
        .collect()
}

/// Expected cross-orbit interference power at the victim (W).
pub fn coplanar_expected_interference(s: &CoplanarScenario, delta_beta_rad: f64) -> f64 {
    let frame = Frame::new(s, delta_beta_rad);
    coplanar_interferer_set(s, delta_beta_rad)
        .iter()
        .map(|&j| cross_term_w(&s.radio, (frame.intf_pos(j) - frame.victim_pos()).norm()))
        .sum()
}

/// Full co-planar report: the victim orbit's own interference plus the
/// cross-orbit contribution. Interferer ids use orbit 0 for the lower
/// orbit and orbit 1 for the upper one.
pub fn coplanar_sir_sinr(s: &CoplanarScenario, delta_beta_rad: f64) -> InterferenceReport {
    let victim = s.victim_orbit();
    let (victim_idx, intf_idx) = match s.victim {
        VictimOrbit::Lower => (0usize, 1usize),
        VictimOrbit::Upper => (1, 0),
    };
    // Same-orbit part, recomputed for the victim's own orbit parameters.
    let n1 = single_interferer_count_with(
        &s.constants,
        victim.num_satellites,
        victim.altitude_m,
        s.radio.pattern.beamwidth_rad(),
    );
    let g = s.radio.gain();
    let mut interference = 0.0;
    let mut ids: BTreeSet<InterfererId> = BTreeSet::new();
    for i in 2..=(n1 + 1) {
        let d = single_link_distance_m_with(&s.constants, i, victim.num_satellites, victim.altitude_m);
        interference += received_power(&s.radio, g, g, d).expect("positive distance");
        ids.insert(InterfererId::new(victim_idx, i));
    }
    // Cross-orbit part.
    let frame = Frame::new(s, delta_beta_rad);
    for j in coplanar_interferer_set(s, delta_beta_rad) {
        interference += cross_term_w(&s.radio, (frame.intf_pos(j) - frame.victim_pos()).norm());
        ids.insert(InterfererId::new(intf_idx, j));
    }
    let d1 = single_link_distance_m_with(&s.constants, 1, victim.num_satellites, victim.altitude_m);
    let signal = received_power(&s.radio, g, g, d1).expect("positive distance");
    InterferenceReport::from_powers(
        ids,
        signal,
        interference,
        noise_power(&s.constants, &s.radio),
        s.radio.bandwidth_hz,
    )
}

/// Scenario offset at time `t`: `delta_beta(t)` drifts at the difference
/// of the two orbital rates, starting from the orbits' phase offsets.
pub fn coplanar_delta_beta_at(s: &CoplanarScenario, t_s: f64) -> f64 {
    let initial = s.upper.phase_offset_rad - s.lower.phase_offset_rad;
    s.constants
        .relative_angular_offset(s.upper.altitude_m, s.lower.altitude_m, t_s, initial)
        .expect("valid altitudes")
}

/// Outcome of the isolation-altitude search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IsolationOutcome {
    /// Smallest upper-orbit altitude (m) whose interferer set stays empty
    /// for every relative offset.
    Bounded { upper_altitude_m: f64 },
    /// No altitude up to the 2000 km LEO ceiling isolates the orbits.
    UnboundedInLeo,
}

const LEO_CEILING_M: f64 = 2000e3;
const ISOLATION_GRID: usize = 10_000;

/// Minimum upper-orbit altitude that keeps the lower-orbit victim free of
/// cross-orbit interference for every relative offset, found by bisection
/// to 1 m. Emptiness at a candidate altitude is checked on a dense offset
/// grid over one pattern period plus the boresight-aligned worst cases.
pub fn min_isolation_altitude(s: &CoplanarScenario) -> Result<IsolationOutcome> {
    let lower = s.lower;
    let probe = |upper_altitude_m: f64| -> bool {
        // true = some offset yields interference
        let mut upper = s.upper;
        upper.altitude_m = upper_altitude_m;
        let cand = CoplanarScenario {
            lower,
            upper,
            radio: s.radio,
            victim: VictimOrbit::Lower,
            constants: s.constants,
        };
        let period = TAU / upper.num_satellites as f64;
        for k in 0..ISOLATION_GRID {
            let db = period * k as f64 / ISOLATION_GRID as f64;
            if !coplanar_interferer_set(&cand, db).is_empty() {
                return true;
            }
        }
        for db in boresight_aligned_offsets(&cand) {
            if !coplanar_interferer_set(&cand, db).is_empty() {
                return true;
            }
        }
        false
    };

    if probe(LEO_CEILING_M) {
        return Ok(IsolationOutcome::UnboundedInLeo);
    }
    let mut lo = lower.altitude_m; // interference side
    let mut hi = LEO_CEILING_M; // isolated side
    while hi - lo > 1.0 {
        let mid = 0.5 * (lo + hi);
        if probe(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(IsolationOutcome::Bounded { upper_altitude_m: hi })
}

/// Offsets placing an upper satellite exactly on the victim's receive
/// boresight ray (the deepest possible beam alignment), wrapped into one
/// pattern period.
fn boresight_aligned_offsets(s: &CoplanarScenario) -> Vec<f64> {
    let frame = Frame::new(s, 0.0);
    let a = frame.victim_pos();
    let u = (frame.tx_pos() - a).normalized();
    let au = a.dot(u);
    let disc = au * au + frame.r_intf * frame.r_intf - frame.r_victim * frame.r_victim;
    let period = frame.intf_spacing_rad;
    let mut out = vec![0.0]; // overhead pass
    if disc >= 0.0 {
        for t in [-au + disc.sqrt(), -au - disc.sqrt()] {
            if t > 0.0 {
                let b = a + u * t;
                // Scene-frame angle from the victim's zenith (+y).
                let angle = b.x.atan2(b.y);
                out.push(wrap_angle(angle).rem_euclid(period));
            }
        }
    }
    out
}
