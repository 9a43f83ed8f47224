//! Independent time-driven engine: propagates every satellite, detects
//! interferers purely geometrically (line-of-sight plus both beam
//! conditions), and computes instantaneous link metrics.
//!
//! The engine shares only the geometric primitives (vectors, blockage,
//! link budget) with the closed forms in [`crate::analytic`]; sets are
//! found by scanning propagated state, with every boresight recomputed
//! from true neighbor positions each step. Boundary ties (a satellite
//! exactly on a beam edge, a path exactly tangent to the Earth) resolve
//! the same way as the analytic strict inequalities: excluded / visible.

use crate::analytic::{InterfererId, InterferenceReport};
use crate::orbital::{plane_to_gec, ConstellationSpec, PhysicalConstants, SatState};
use crate::radio::{gain_toward, noise_power, received_power, RadioConfig};
use crate::{Error, Result, Vec3};
use std::collections::BTreeSet;

/// Victim link designation: the receiver satellite. Its transmitter is
/// the next satellite in the same orbit (`sat + 1` mod `N`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VictimId {
    pub constellation: usize,
    pub orbit: usize,
    pub sat: usize,
}

#[derive(Debug, Clone)]
pub struct SimulationConfig {
    pub constellations: Vec<ConstellationSpec>,
    pub radio: RadioConfig,
    pub constants: PhysicalConstants,
    pub t_start_s: f64,
    pub t_end_s: f64,
    pub dt_s: f64,
    pub victim: VictimId,
}

/// Hard ceiling on the number of timesteps of one run.
pub const MAX_STEPS: usize = 100_000_000;

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dt_s.is_nan() || self.dt_s <= 0.0 {
            return Err(Error::Scenario(format!("dt must be positive, got {}", self.dt_s)));
        }
        if self.t_end_s.is_nan() || self.t_start_s.is_nan() || self.t_end_s <= self.t_start_s {
            return Err(Error::Scenario("t_end must exceed t_start".into()));
        }
        let c = self
            .constellations
            .get(self.victim.constellation)
            .ok_or_else(|| Error::Scenario("victim constellation index out of range".into()))?;
        let orbit = c
            .orbits
            .get(self.victim.orbit)
            .ok_or_else(|| Error::Scenario("victim orbit index out of range".into()))?;
        if self.victim.sat >= orbit.num_satellites {
            return Err(Error::Scenario("victim satellite index out of range".into()));
        }
        Ok(())
    }

    /// Global orbit index of the victim (constellation-major).
    pub fn victim_global_orbit(&self) -> usize {
        self.constellations[..self.victim.constellation]
            .iter()
            .map(|c| c.orbits.len())
            .sum::<usize>()
            + self.victim.orbit
    }

    /// Natural period of the deployment's interference pattern: one
    /// orbital period for a single-altitude layout, the offset sweep
    /// period for a two-altitude layout.
    pub fn natural_period_s(&self) -> Result<f64> {
        let mut altitudes: Vec<f64> = Vec::new();
        let mut max_n: Vec<usize> = Vec::new();
        for c in &self.constellations {
            for o in &c.orbits {
                match altitudes.iter().position(|&h| h == o.altitude_m) {
                    Some(i) => max_n[i] = max_n[i].max(o.num_satellites),
                    None => {
                        altitudes.push(o.altitude_m);
                        max_n.push(o.num_satellites);
                    }
                }
            }
        }
        match altitudes.len() {
            1 => self.constants.orbital_period_s(altitudes[0]),
            2 => self.constants.max_offset_period_s(max_n[0], max_n[1], altitudes[0], altitudes[1]),
            n => Err(Error::Scenario(format!(
                "no single pattern period for {n} distinct altitudes; set the time range explicitly"
            ))),
        }
    }

    fn step_count(&self) -> Result<usize> {
        let steps = ((self.t_end_s - self.t_start_s) / self.dt_s + 1e-9).floor() as usize + 1;
        if steps > MAX_STEPS {
            return Err(Error::ResourceGuard(format!(
                "{steps} timesteps exceed the {MAX_STEPS} step ceiling"
            )));
        }
        Ok(steps)
    }
}

/// Time-stamped sequence of per-step reports.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub timestamps_s: Vec<f64>,
    pub reports: Vec<InterferenceReport>,
    /// Natural pattern period of the generating deployment, when one exists.
    pub period_s: Option<f64>,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.timestamps_s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.timestamps_s.is_empty()
    }

    /// Sub-series covering `[from, to)` by timestamp.
    pub fn window(&self, from_s: f64, to_s: f64) -> TimeSeries {
        let mut timestamps_s = Vec::new();
        let mut reports = Vec::new();
        for (i, &t) in self.timestamps_s.iter().enumerate() {
            if t >= from_s && t < to_s {
                timestamps_s.push(t);
                reports.push(self.reports[i].clone());
            }
        }
        TimeSeries {
            timestamps_s,
            reports,
            period_s: self.period_s,
        }
    }
}

/// All satellite states at time `t`, orbit-major in global orbit order.
pub fn propagate(cfg: &SimulationConfig, t_s: f64) -> Vec<SatState> {
    let pc = &cfg.constants;
    let mut states = Vec::new();
    let mut orbit_index = 0usize;
    for constellation in &cfg.constellations {
        for orbit in &constellation.orbits {
            let omega = pc
                .angular_speed_rad_per_s(orbit.altitude_m)
                .expect("valid altitude");
            let rotation = plane_to_gec(orbit.raan_rad, orbit.inclination_rad);
            let radius = orbit.semi_major_axis_m(pc);
            let base = orbit.phase_offset_rad + omega * t_s;
            let n = orbit.num_satellites;
            let pos = |idx: f64| -> Vec3 {
                let phi = base + orbit.spacing_rad() * idx;
                let (s, c) = phi.sin_cos();
                rotation.mul_vec(Vec3::new(radius * c, radius * s, 0.0))
            };
            for sat_index in 0..n {
                let position = pos(sat_index as f64);
                // Boresight toward the forward neighbor, recomputed from
                // its true propagated position.
                let neighbor = pos(sat_index as f64 - 1.0);
                states.push(SatState {
                    position,
                    pointing: (neighbor - position).normalized(),
                    orbit_index,
                    sat_index,
                });
            }
            orbit_index += 1;
        }
    }
    states
}

fn orbit_size(states: &[SatState], orbit: usize) -> usize {
    states.iter().filter(|s| s.orbit_index == orbit).count()
}

fn find_state(states: &[SatState], orbit: usize, sat: usize) -> Option<&SatState> {
    states
        .iter()
        .find(|s| s.orbit_index == orbit && s.sat_index == sat)
}

/// Geometric interferer detection: a satellite other than the victim and
/// its transmitter interferes when it has line of sight to the victim,
/// lies strictly inside the victim's receive beam, and the victim lies
/// strictly inside its transmit beam.
pub fn detect_interferers(
    pc: &PhysicalConstants,
    states: &[SatState],
    victim: (usize, usize),
    beamwidth_rad: f64,
) -> BTreeSet<InterfererId> {
    let (v_orbit, v_sat) = victim;
    let n = orbit_size(states, v_orbit);
    let victim_state = find_state(states, v_orbit, v_sat).expect("victim present");
    let tx = find_state(states, v_orbit, (v_sat + 1) % n).expect("transmitter present");
    let rx_boresight = tx.position - victim_state.position;
    let cos_half = (beamwidth_rad / 2.0).cos();

    let mut out = BTreeSet::new();
    for s in states {
        if (s.orbit_index, s.sat_index) == (v_orbit, v_sat)
            || (s.orbit_index, s.sat_index) == (tx.orbit_index, tx.sat_index)
        {
            continue;
        }
        if pc
            .is_blocked_by_earth(s.position, victim_state.position)
            .unwrap_or(true)
        {
            continue;
        }
        let to_s = s.position - victim_state.position;
        if rx_boresight.cos_angle(to_s) <= cos_half {
            continue;
        }
        if s.pointing.cos_angle(-to_s) <= cos_half {
            continue;
        }
        out.insert(InterfererId::new(s.orbit_index, s.sat_index));
    }
    out
}

/// Instantaneous metrics from propagated state: signal power over the
/// actual transmitter distance, aggregate interference over every
/// contributing satellite (through whatever pattern lobes apply), SIR,
/// SINR, and capacity.
pub fn step_metrics(
    pc: &PhysicalConstants,
    states: &[SatState],
    victim: (usize, usize),
    radio: &RadioConfig,
) -> InterferenceReport {
    let (v_orbit, v_sat) = victim;
    let n = orbit_size(states, v_orbit);
    let victim_state = find_state(states, v_orbit, v_sat).expect("victim present");
    let tx = find_state(states, v_orbit, (v_sat + 1) % n).expect("transmitter present");
    let to_tx = tx.position - victim_state.position;
    let rx_boresight = to_tx.normalized();

    let g_rx_signal = gain_toward(&radio.pattern, rx_boresight, rx_boresight);
    let g_tx_signal = gain_toward(&radio.pattern, tx.pointing, -rx_boresight);
    let signal = received_power(radio, g_tx_signal, g_rx_signal, to_tx.norm())
        .expect("transmitter at positive distance");

    let mut interference = 0.0;
    let mut ids = BTreeSet::new();
    for s in states {
        if (s.orbit_index, s.sat_index) == (v_orbit, v_sat)
            || (s.orbit_index, s.sat_index) == (tx.orbit_index, tx.sat_index)
        {
            continue;
        }
        if pc
            .is_blocked_by_earth(s.position, victim_state.position)
            .unwrap_or(true)
        {
            continue;
        }
        let to_s = s.position - victim_state.position;
        let dir = to_s.normalized();
        let g_rx = gain_toward(&radio.pattern, rx_boresight, dir);
        if g_rx == 0.0 {
            continue;
        }
        let g_tx = gain_toward(&radio.pattern, s.pointing, -dir);
        if g_tx == 0.0 {
            continue;
        }
        interference += received_power(radio, g_tx, g_rx, to_s.norm()).expect("positive distance");
        ids.insert(InterfererId::new(s.orbit_index, s.sat_index));
    }
    InterferenceReport::from_powers(
        ids,
        signal,
        interference,
        noise_power(pc, radio),
        radio.bandwidth_hz,
    )
}

/// Run the full time-driven simulation: one report per timestep,
/// deterministic for identical configs.
pub fn run(cfg: &SimulationConfig) -> Result<TimeSeries> {
    cfg.validate()?;
    let steps = cfg.step_count()?;
    let victim = (cfg.victim_global_orbit(), cfg.victim.sat);
    let mut timestamps_s = Vec::with_capacity(steps);
    let mut reports = Vec::with_capacity(steps);
    for k in 0..steps {
        let t = cfg.t_start_s + k as f64 * cfg.dt_s;
        let states = propagate(cfg, t);
        timestamps_s.push(t);
        reports.push(step_metrics(&cfg.constants, &states, victim, &cfg.radio));
    }
    Ok(TimeSeries {
        timestamps_s,
        reports,
        period_s: cfg.natural_period_s().ok(),
    })
}

/// Simulation of an analytic co-planar scenario over `[0, t_end)`.
pub fn config_from_coplanar(
    s: &crate::analytic::CoplanarScenario,
    t_end_s: f64,
    dt_s: f64,
) -> SimulationConfig {
    let victim_orbit = match s.victim {
        crate::analytic::VictimOrbit::Lower => 0,
        crate::analytic::VictimOrbit::Upper => 1,
    };
    SimulationConfig {
        constellations: vec![ConstellationSpec::new(vec![s.lower, s.upper]).expect("two orbits")],
        radio: s.radio,
        constants: s.constants,
        t_start_s: 0.0,
        t_end_s,
        dt_s,
        victim: VictimId {
            constellation: 0,
            orbit: victim_orbit,
            sat: 0,
        },
    }
}

/// Simulation of an analytic shifted scenario over `[0, t_end)`.
pub fn config_from_shifted(
    s: &crate::analytic::ShiftedScenario,
    t_end_s: f64,
    dt_s: f64,
) -> SimulationConfig {
    SimulationConfig {
        constellations: vec![ConstellationSpec::new(vec![s.orbit1, s.orbit2]).expect("two orbits")],
        radio: s.radio,
        constants: s.constants,
        t_start_s: 0.0,
        t_end_s,
        dt_s,
        victim: VictimId {
            constellation: 0,
            orbit: 0,
            sat: 0,
        },
    }
}

/// Simulation of an analytic shifted co-planar scenario over `[0, t_end)`.
pub fn config_from_shifted_coplanar(
    s: &crate::analytic::ShiftedCoplanarScenario,
    t_end_s: f64,
    dt_s: f64,
) -> SimulationConfig {
    SimulationConfig {
        constellations: vec![ConstellationSpec::new(vec![s.orbit1, s.orbit2]).expect("two orbits")],
        radio: s.radio,
        constants: s.constants,
        t_start_s: 0.0,
        t_end_s,
        dt_s,
        victim: VictimId {
            constellation: 0,
            orbit: 0,
            sat: 0,
        },
    }
}
