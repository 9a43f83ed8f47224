//! Parameter sweeps, time averaging, and interference distribution
//! estimation: the figure-class outputs.
//!
//! Sweep points are evaluated independently (optionally across worker
//! threads) and assembled in axis order, so a sweep is a pure function
//! of its spec. Time-varying scenarios are averaged over exactly one
//! pattern period; powers are averaged in linear watts and the ratio
//! metrics rebuilt from the mean powers.

use crate::analytic::{
    combined_deployment_report_with, coplanar_delta_beta_at, coplanar_sir_sinr,
    shifted_coplanar_interference, shifted_sir_sinr, single_report, CoplanarScenario,
    InterferenceReport, ShiftedCoplanarScenario, ShiftedScenario, SingleOrbitScenario,
};
use crate::orbital::{ConstellationSpec, OrbitSpec, PhysicalConstants};
use crate::radio::{watts_to_dbm, AntennaPattern, RadioConfig};
use crate::simulator::TimeSeries;
use crate::{Error, Result};
use std::collections::BTreeSet;
use std::f64::consts::TAU;

/// Recipe for one Walker shell of a combined deployment, rebuilt for
/// every sweep point so phase staggering tracks the satellite count.
#[derive(Debug, Clone, Copy)]
pub struct WalkerRecipe {
    pub planes: usize,
    pub sats_per_plane: usize,
    pub altitude_m: f64,
    pub inclination_rad: f64,
    pub raan0_rad: f64,
}

impl WalkerRecipe {
    pub fn build(&self) -> Result<ConstellationSpec> {
        let phase_step = TAU / (self.planes as f64 * self.sats_per_plane as f64);
        ConstellationSpec::walker(
            self.planes,
            self.sats_per_plane,
            self.altitude_m,
            self.inclination_rad,
            self.raan0_rad,
            phase_step,
        )
    }
}

/// Scenario being swept.
#[derive(Debug, Clone)]
pub enum ScenarioSpec {
    Single(SingleOrbitScenario),
    Coplanar(CoplanarScenario),
    Shifted(ShiftedScenario),
    ShiftedCoplanar(ShiftedCoplanarScenario),
    Combined {
        shells: Vec<WalkerRecipe>,
        radio: RadioConfig,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// Satellites per orbit (applied to every orbit of the scenario).
    SatelliteCount,
    /// Antenna beamwidth (rad).
    Beamwidth,
    /// Upper-orbit altitude minus lower-orbit altitude (m).
    AltitudeSeparation,
    /// Evaluation instant (s).
    Time,
    /// Orbit inclination (rad).
    Inclination,
}

impl SweepAxis {
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::SatelliteCount => "n",
            SweepAxis::Beamwidth => "alpha",
            SweepAxis::AltitudeSeparation => "delta_h",
            SweepAxis::Time => "time",
            SweepAxis::Inclination => "gamma",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    InterferencePower,
    Sir,
    Sinr,
    Capacity,
}

impl Metric {
    pub fn name(&self) -> &'static str {
        match self {
            Metric::InterferencePower => "ei",
            Metric::Sir => "sir",
            Metric::Sinr => "sinr",
            Metric::Capacity => "capacity",
        }
    }

    fn extract(&self, report: &InterferenceReport) -> f64 {
        match self {
            Metric::InterferencePower => report.expected_interference_w,
            Metric::Sir => report.sir,
            Metric::Sinr => report.sinr,
            Metric::Capacity => report.capacity_bps,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Averaging {
    /// Evaluate at one instant (t = 0, or the Time axis value).
    Instant,
    /// Mean powers over exactly one pattern period.
    TimeMean,
    /// Distribution of instantaneous interference over one period.
    Histogram,
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub scenario: ScenarioSpec,
    pub axis: SweepAxis,
    pub values: Vec<f64>,
    pub metric: Metric,
    pub averaging: Averaging,
    /// Grid resolution for time-averaged and histogram evaluations.
    pub samples_per_period: usize,
    /// Histogram bin count.
    pub bins: usize,
    /// Worker threads; 0 = one per available core.
    pub threads: usize,
}

impl SweepSpec {
    pub fn new(scenario: ScenarioSpec, axis: SweepAxis, values: Vec<f64>, metric: Metric) -> Self {
        SweepSpec {
            scenario,
            axis,
            values,
            metric,
            averaging: Averaging::Instant,
            samples_per_period: 1024,
            bins: 50,
            threads: 0,
        }
    }
}

/// Normalized histogram of instantaneous interference power, binned
/// uniformly in dBm. Zero-power samples are folded into the lowest bin.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    /// `bins + 1` edges (dBm).
    pub bin_edges_dbm: Vec<f64>,
    /// Probability density per dB; integrates to 1.
    pub densities_per_db: Vec<f64>,
}

impl Histogram {
    pub fn integral(&self) -> f64 {
        self.densities_per_db
            .iter()
            .zip(self.bin_edges_dbm.windows(2))
            .map(|(d, e)| d * (e[1] - e[0]))
            .sum()
    }

    /// Probability mass inside `[lo, hi]` dBm.
    pub fn mass_in(&self, lo_dbm: f64, hi_dbm: f64) -> f64 {
        self.densities_per_db
            .iter()
            .zip(self.bin_edges_dbm.windows(2))
            .map(|(d, e)| {
                let a = e[0].max(lo_dbm);
                let b = e[1].min(hi_dbm);
                if b > a {
                    d * (b - a)
                } else {
                    0.0
                }
            })
            .sum()
    }
}

#[derive(Debug, Clone)]
pub enum SweepOutput {
    /// One `(axis value, metric value)` row per sweep point.
    Table(Vec<(f64, f64)>),
    /// One interference distribution per sweep point.
    Histograms(Vec<(f64, Histogram)>),
}

/// Evaluate the scenario's instantaneous report at time `t`.
pub fn evaluate_instant(scenario: &ScenarioSpec, t_s: f64) -> Result<InterferenceReport> {
    Ok(match scenario {
        ScenarioSpec::Single(s) => single_report(s),
        ScenarioSpec::Coplanar(s) => coplanar_sir_sinr(s, coplanar_delta_beta_at(s, t_s)),
        ScenarioSpec::Shifted(s) => shifted_sir_sinr(s, t_s),
        ScenarioSpec::ShiftedCoplanar(s) => shifted_coplanar_interference(s, t_s),
        ScenarioSpec::Combined { shells, radio } => {
            let constellations: Result<Vec<_>> = shells.iter().map(|s| s.build()).collect();
            combined_deployment_report_with(
                &PhysicalConstants::default(),
                &constellations?,
                radio,
                t_s,
            )?
            .report
        }
    })
}

/// Natural period of the scenario's interference pattern (s).
pub fn scenario_period_s(scenario: &ScenarioSpec) -> Result<f64> {
    let pc = PhysicalConstants::default();
    Ok(match scenario {
        ScenarioSpec::Single(s) => pc.orbital_period_s(s.orbit.altitude_m)?,
        ScenarioSpec::Coplanar(s) => s.pattern_period_s(),
        ScenarioSpec::Shifted(s) => pc.orbital_period_s(s.orbit1.altitude_m)?,
        ScenarioSpec::ShiftedCoplanar(s) => s.pattern_period_s(),
        ScenarioSpec::Combined { shells, .. } => {
            let mut altitudes: Vec<(f64, usize)> = Vec::new();
            for shell in shells {
                match altitudes.iter_mut().find(|(h, _)| *h == shell.altitude_m) {
                    Some((_, n)) => *n = (*n).max(shell.sats_per_plane),
                    None => altitudes.push((shell.altitude_m, shell.sats_per_plane)),
                }
            }
            match altitudes.len() {
                1 => pc.orbital_period_s(altitudes[0].0)?,
                2 => pc.max_offset_period_s(
                    altitudes[0].1,
                    altitudes[1].1,
                    altitudes[0].0,
                    altitudes[1].0,
                )?,
                n => {
                    return Err(Error::Scenario(format!(
                        "no single pattern period for {n} distinct altitudes"
                    )))
                }
            }
        }
    })
}

fn retarget_orbit_count(orbit: &OrbitSpec, n: usize) -> Result<OrbitSpec> {
    OrbitSpec::new(
        orbit.altitude_m,
        orbit.inclination_rad,
        orbit.raan_rad,
        n,
        orbit.phase_offset_rad,
    )
}

/// Apply one axis value to the scenario template.
pub(crate) fn apply_axis(scenario: &ScenarioSpec, axis: SweepAxis, value: f64) -> Result<ScenarioSpec> {
    let as_count = |v: f64| -> Result<usize> {
        if v.fract() != 0.0 || v < 2.0 {
            return Err(Error::Scenario(format!(
                "satellite-count sweep values must be integers >= 2, got {v}"
            )));
        }
        Ok(v as usize)
    };
    let retarget_pattern = |radio: &RadioConfig, alpha: f64| -> Result<RadioConfig> {
        let pattern = match radio.pattern {
            AntennaPattern::Cone { .. } => AntennaPattern::cone(alpha)?,
            AntennaPattern::ConeSphere { sidelobe_db_down, .. } => {
                AntennaPattern::cone_sphere(alpha, sidelobe_db_down)?
            }
        };
        Ok(RadioConfig { pattern, ..*radio })
    };

    let mut out = scenario.clone();
    match (&mut out, axis) {
        (ScenarioSpec::Single(s), SweepAxis::SatelliteCount) => {
            s.orbit = retarget_orbit_count(&s.orbit, as_count(value)?)?;
        }
        (ScenarioSpec::Single(s), SweepAxis::Beamwidth) => {
            s.radio = retarget_pattern(&s.radio, value)?;
        }
        (ScenarioSpec::Coplanar(s), SweepAxis::SatelliteCount) => {
            let n = as_count(value)?;
            s.lower = retarget_orbit_count(&s.lower, n)?;
            s.upper = retarget_orbit_count(&s.upper, n)?;
        }
        (ScenarioSpec::Coplanar(s), SweepAxis::Beamwidth) => {
            s.radio = retarget_pattern(&s.radio, value)?;
        }
        (ScenarioSpec::Coplanar(s), SweepAxis::AltitudeSeparation) => {
            if value <= 0.0 {
                return Err(Error::Scenario("altitude separation must be positive".into()));
            }
            s.upper.altitude_m = s.lower.altitude_m + value;
        }
        (ScenarioSpec::Shifted(s), SweepAxis::SatelliteCount) => {
            let n = as_count(value)?;
            s.orbit1 = retarget_orbit_count(&s.orbit1, n)?;
            // Re-stagger the second orbit to half a spacing so the sweep
            // never manufactures colliding satellites at plane crossings.
            s.orbit2 = OrbitSpec::new(
                s.orbit2.altitude_m,
                s.orbit2.inclination_rad,
                s.orbit2.raan_rad,
                n,
                s.orbit1.phase_offset_rad + TAU / (2.0 * n as f64),
            )?;
            s.delta_beta_rad = TAU / (2.0 * n as f64);
        }
        (ScenarioSpec::Shifted(s), SweepAxis::Beamwidth) => {
            s.radio = retarget_pattern(&s.radio, value)?;
        }
        (ScenarioSpec::Shifted(s), SweepAxis::Inclination) => {
            s.orbit1.inclination_rad = crate::orbital::wrap_angle(value);
            s.orbit2.inclination_rad = crate::orbital::wrap_angle(value);
        }
        (ScenarioSpec::ShiftedCoplanar(s), SweepAxis::SatelliteCount) => {
            let n = as_count(value)?;
            s.orbit1 = retarget_orbit_count(&s.orbit1, n)?;
            s.orbit2 = retarget_orbit_count(&s.orbit2, n)?;
        }
        (ScenarioSpec::ShiftedCoplanar(s), SweepAxis::Beamwidth) => {
            s.radio = retarget_pattern(&s.radio, value)?;
        }
        (ScenarioSpec::ShiftedCoplanar(s), SweepAxis::AltitudeSeparation) => {
            if value <= 0.0 {
                return Err(Error::Scenario("altitude separation must be positive".into()));
            }
            s.orbit2.altitude_m = s.orbit1.altitude_m + value;
        }
        (ScenarioSpec::ShiftedCoplanar(s), SweepAxis::Inclination) => {
            s.orbit1.inclination_rad = crate::orbital::wrap_angle(value);
            s.orbit2.inclination_rad = crate::orbital::wrap_angle(value);
        }
        (ScenarioSpec::Combined { shells, .. }, SweepAxis::SatelliteCount) => {
            let n = as_count(value)?;
            for shell in shells {
                shell.sats_per_plane = n;
            }
        }
        (ScenarioSpec::Combined { radio, .. }, SweepAxis::Beamwidth) => {
            *radio = retarget_pattern(radio, value)?;
        }
        (ScenarioSpec::Combined { shells, .. }, SweepAxis::Inclination) => {
            for shell in shells {
                shell.inclination_rad = crate::orbital::wrap_angle(value);
            }
        }
        (_, SweepAxis::Time) => {} // evaluation instant, no retargeting
        (_, axis) => {
            return Err(Error::Scenario(format!(
                "axis {:?} is not applicable to this scenario",
                axis
            )))
        }
    }
    Ok(out)
}

fn validate_values(axis: SweepAxis, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::Scenario("sweep values must be nonempty".into()));
    }
    if values.len() > 1 {
        let increasing = values[1] > values[0];
        for w in values.windows(2) {
            let ok = if increasing { w[1] > w[0] } else { w[1] < w[0] };
            if !ok {
                return Err(Error::Scenario("sweep values must be strictly monotone".into()));
            }
        }
    }
    if axis == SweepAxis::Beamwidth && values.iter().any(|&v| !(v > 0.0 && v <= TAU)) {
        return Err(Error::Scenario("beamwidth values must lie in (0, 2*pi]".into()));
    }
    Ok(())
}

/// One-period analytic series of a (possibly retargeted) scenario.
fn analytic_series(scenario: &ScenarioSpec, samples: usize) -> Result<TimeSeries> {
    let period = scenario_period_s(scenario)?;
    let dt = period / samples as f64;
    let mut timestamps_s = Vec::with_capacity(samples);
    let mut reports = Vec::with_capacity(samples);
    for k in 0..samples {
        let t = k as f64 * dt;
        timestamps_s.push(t);
        reports.push(evaluate_instant(scenario, t)?);
    }
    Ok(TimeSeries {
        timestamps_s,
        reports,
        period_s: Some(period),
    })
}

fn evaluate_point(spec: &SweepSpec, value: f64) -> Result<PointOutput> {
    let scenario = apply_axis(&spec.scenario, spec.axis, value)?;
    let t_instant = if spec.axis == SweepAxis::Time { value } else { 0.0 };
    match spec.averaging {
        Averaging::Instant => {
            let report = evaluate_instant(&scenario, t_instant)?;
            Ok(PointOutput::Scalar(spec.metric.extract(&report)))
        }
        Averaging::TimeMean => {
            if spec.axis == SweepAxis::Time {
                return Err(Error::Scenario(
                    "time axis and time averaging cannot be combined".into(),
                ));
            }
            let series = analytic_series(&scenario, spec.samples_per_period.max(2))?;
            let mean = time_average(&series)?;
            Ok(PointOutput::Scalar(spec.metric.extract(&mean)))
        }
        Averaging::Histogram => {
            if spec.axis == SweepAxis::Time {
                return Err(Error::Scenario(
                    "time axis and histogram estimation cannot be combined".into(),
                ));
            }
            let series = analytic_series(&scenario, spec.samples_per_period.max(2))?;
            Ok(PointOutput::Hist(interference_pdf(&series, spec.bins)?))
        }
    }
}

enum PointOutput {
    Scalar(f64),
    Hist(Histogram),
}

/// Run the sweep: evaluate every axis value (concurrently when useful)
/// and assemble results in axis order.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutput> {
    validate_values(spec.axis, &spec.values)?;
    let workers = effective_threads(spec.threads).min(spec.values.len()).max(1);
    let mut slots: Vec<Option<Result<PointOutput>>> = Vec::new();
    slots.resize_with(spec.values.len(), || None);

    if workers <= 1 {
        for (i, &v) in spec.values.iter().enumerate() {
            slots[i] = Some(evaluate_point(spec, v));
        }
    } else {
        let chunks: Vec<Vec<usize>> = (0..workers)
            .map(|w| (w..spec.values.len()).step_by(workers).collect())
            .collect();
        let results: Vec<Vec<(usize, Result<PointOutput>)>> = std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|idx| {
                    scope.spawn(move || {
                        idx.into_iter()
                            .map(|i| (i, evaluate_point(spec, spec.values[i])))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("sweep worker")).collect()
        });
        for chunk in results {
            for (i, r) in chunk {
                slots[i] = Some(r);
            }
        }
    }

    let mut scalars = Vec::with_capacity(spec.values.len());
    let mut hists = Vec::with_capacity(spec.values.len());
    for (i, slot) in slots.into_iter().enumerate() {
        match slot.expect("every sweep point evaluated")? {
            PointOutput::Scalar(v) => scalars.push((spec.values[i], v)),
            PointOutput::Hist(h) => hists.push((spec.values[i], h)),
        }
    }
    if hists.is_empty() {
        Ok(SweepOutput::Table(scalars))
    } else {
        Ok(SweepOutput::Histograms(hists))
    }
}

/// Worker-thread budget: the explicit request, clamped at one, or the
/// machine's available parallelism when unspecified.
pub fn effective_threads(requested: usize) -> usize {
    if requested > 0 {
        requested
    } else {
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
    }
}

/// Time-average a series over its pattern period: arithmetic mean of the
/// linear powers, with SIR/SINR/capacity rebuilt from the mean powers
/// (never a mean of ratios). The series must span at least one period.
pub fn time_average(series: &TimeSeries) -> Result<InterferenceReport> {
    if series.is_empty() {
        return Err(Error::Domain("cannot average an empty series".into()));
    }
    let period = series
        .period_s
        .ok_or_else(|| Error::Domain("series carries no pattern period".into()))?;
    let n = series.len();
    if n > 1 {
        let span = series.timestamps_s[n - 1] - series.timestamps_s[0];
        let dt = span / (n - 1) as f64;
        if span + dt < period * (1.0 - 1e-9) {
            return Err(Error::Domain(format!(
                "series spans {span:.3} s, less than one pattern period ({period:.3} s)"
            )));
        }
    }
    let inv = 1.0 / n as f64;
    let mean_signal: f64 = series.reports.iter().map(|r| r.signal_power_w).sum::<f64>() * inv;
    let mean_intf: f64 =
        series.reports.iter().map(|r| r.expected_interference_w).sum::<f64>() * inv;
    let noise = series.reports[0].noise_power_w;
    let mut ids = BTreeSet::new();
    for r in &series.reports {
        ids.extend(r.interferer_ids.iter().copied());
    }
    Ok(InterferenceReport::from_powers(
        ids,
        mean_signal,
        mean_intf,
        noise,
        bandwidth_of(series),
    ))
}

/// Recover the bandwidth used by the series' reports from capacity and
/// SINR of any entry (the reports all share one radio config).
fn bandwidth_of(series: &TimeSeries) -> f64 {
    let r = &series.reports[0];
    r.capacity_bps / (1.0 + r.sinr).log2()
}

/// Distribution of instantaneous interference power across the series,
/// treating time as uniformly distributed. Bins are uniform in dBm
/// between the smallest positive and the largest sample; zero-power
/// samples count toward the lowest bin.
pub fn interference_pdf(series: &TimeSeries, bins: usize) -> Result<Histogram> {
    if bins < 2 {
        return Err(Error::Domain("need at least 2 histogram bins".into()));
    }
    if series.is_empty() {
        return Err(Error::Domain("cannot bin an empty series".into()));
    }
    let samples: Vec<f64> = series
        .reports
        .iter()
        .map(|r| r.expected_interference_w)
        .collect();
    let positive: Vec<f64> = samples.iter().copied().filter(|&v| v > 0.0).collect();

    // Degenerate spread: a single occupied bin of unit mass.
    let spread = |lo: f64, hi: f64| hi - lo > 1e-12;
    if positive.is_empty()
        || !spread(
            watts_to_dbm(positive.iter().cloned().fold(f64::INFINITY, f64::min)),
            watts_to_dbm(positive.iter().cloned().fold(0.0, f64::max)),
        )
    {
        let center = positive.first().map(|&v| watts_to_dbm(v)).unwrap_or(-400.0);
        return Ok(Histogram {
            bin_edges_dbm: vec![center - 0.5, center + 0.5],
            densities_per_db: vec![1.0],
        });
    }

    let lo = watts_to_dbm(positive.iter().cloned().fold(f64::INFINITY, f64::min));
    let hi = watts_to_dbm(positive.iter().cloned().fold(0.0, f64::max));
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for &v in &samples {
        let idx = if v <= 0.0 {
            0
        } else {
            (((watts_to_dbm(v) - lo) / width) as usize).min(bins - 1)
        };
        counts[idx] += 1;
    }
    let total = samples.len() as f64;
    let densities_per_db = counts
        .iter()
        .map(|&c| c as f64 / (total * width))
        .collect();
    let bin_edges_dbm = (0..=bins).map(|i| lo + width * i as f64).collect();
    Ok(Histogram {
        bin_edges_dbm,
        densities_per_db,
    })
}


#[cfg(test)]
mod figure_tests {
    use super::*;
    use crate::analytic::{single_report, ShiftedScenario, SingleOrbitScenario, VictimOrbit};
    use crate::radio::{linear_to_db, Band};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn shifted_alpha_sweep(band: Band) -> Vec<(f64, f64)> {
        let scenario = ScenarioSpec::Shifted(
            ShiftedScenario::new(
                OrbitSpec::new(500e3, 3f64.to_radians(), 0.0, 50, 0.0).unwrap(),
                OrbitSpec::new(500e3, 3f64.to_radians(), FRAC_PI_2, 50, PI / 50.0).unwrap(),
                band.config_with_cone(0.1).unwrap(),
            )
            .unwrap(),
        );
        let mut spec = SweepSpec::new(
            scenario,
            SweepAxis::Beamwidth,
            (1..=12).map(|d| (d as f64).to_radians()).collect(),
            Metric::Sinr,
        );
        spec.averaging = Averaging::TimeMean;
        spec.samples_per_period = 1024;
        match run_sweep(&spec).unwrap() {
            SweepOutput::Table(rows) => rows,
            _ => unreachable!(),
        }
    }

    fn snr_db(band: Band, alpha: f64, n: usize) -> f64 {
        let radio = band.config_with_cone(alpha).unwrap();
        let s = SingleOrbitScenario::new(OrbitSpec::equatorial(500e3, n).unwrap(), radio);
        linear_to_db(single_report(&s).snr())
    }

    #[test]
    fn shifted_beamwidth_sweep_against_the_snr_reference() {
        // mmWave at 3-degree inclination, 90-degree shift, N = 50: the
        // time-averaged SINR tracks the SNR for narrow beams and falls
        // well below it around 7 degrees.
        let rows = shifted_alpha_sweep(Band::MmWave);
        for (alpha, sinr) in &rows {
            let gap = snr_db(Band::MmWave, *alpha, 50) - linear_to_db(*sinr);
            let deg = alpha.to_degrees();
            if deg <= 3.5 {
                assert!(gap < 0.01, "alpha {deg:.0}: gap {gap:.3} dB");
            }
            if (6.5..7.5).contains(&deg) {
                assert!(gap > 5.0, "alpha {deg:.0}: gap {gap:.3} dB");
            }
        }
        // Sub-THz links stay noise-dominated across the whole sweep.
        for (alpha, sinr) in shifted_alpha_sweep(Band::SubThz) {
            let gap = snr_db(Band::SubThz, alpha, 50) - linear_to_db(sinr);
            assert!(gap < 0.1, "alpha {:.0}: gap {gap:.3} dB", alpha.to_degrees());
        }
    }

    #[test]
    fn interference_pdf_shapes_across_the_four_reference_configs() {
        use crate::simulator::{config_from_coplanar, run};
        // Co-planar pair 10 km apart: low interference dominates the
        // distribution everywhere, and the wide-beam sparse ring has the
        // largest spread on the dBm axis.
        let mut dbm_variances = Vec::new();
        for (alpha_deg, n) in [(10.0f64, 50usize), (10.0, 100), (30.0, 50), (30.0, 100)] {
            let s = CoplanarScenario::new(
                OrbitSpec::equatorial(500e3, n).unwrap(),
                OrbitSpec::equatorial(510e3, n).unwrap(),
                Band::MmWave.config_with_cone(alpha_deg.to_radians()).unwrap(),
                VictimOrbit::Lower,
            )
            .unwrap();
            let period = s.pattern_period_s();
            let dt = period / 2000.0;
            let series = run(&config_from_coplanar(&s, period - 0.5 * dt, dt)).unwrap();
            let hist = interference_pdf(&series, 50).unwrap();
            let lo = hist.bin_edges_dbm[0];
            let hi = *hist.bin_edges_dbm.last().unwrap();
            let low_mass = hist.mass_in(lo - 1.0, 0.5 * (lo + hi));
            assert!(low_mass > 0.5, "alpha {alpha_deg}, N {n}: low-half mass {low_mass:.3}");
            let dbm: Vec<f64> = series
                .reports
                .iter()
                .filter(|r| r.expected_interference_w > 0.0)
                .map(|r| watts_to_dbm(r.expected_interference_w))
                .collect();
            let mean = dbm.iter().sum::<f64>() / dbm.len() as f64;
            let var = dbm.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / dbm.len() as f64;
            dbm_variances.push(((alpha_deg, n), var));
        }
        let max = dbm_variances
            .iter()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert_eq!(max.0, (30.0, 50), "variances: {dbm_variances:?}");
    }

    #[test]
    fn coplanar_separation_sweep_plateaus_just_below_5_db() {
        // Widening the orbit gap removes the cross-orbit interference;
        // the time-averaged SINR settles at the same-orbit limit, just
        // below 5 dB for 10-degree mmWave beams at N = 100.
        let scenario = ScenarioSpec::Coplanar(
            CoplanarScenario::new(
                OrbitSpec::equatorial(500e3, 100).unwrap(),
                OrbitSpec::equatorial(510e3, 100).unwrap(),
                Band::MmWave.config_with_cone(10f64.to_radians()).unwrap(),
                VictimOrbit::Lower,
            )
            .unwrap(),
        );
        let mut spec = SweepSpec::new(
            scenario,
            SweepAxis::AltitudeSeparation,
            vec![10e3, 50e3, 100e3, 300e3, 500e3],
            Metric::Sinr,
        );
        spec.averaging = Averaging::TimeMean;
        spec.samples_per_period = 512;
        let rows = match run_sweep(&spec).unwrap() {
            SweepOutput::Table(rows) => rows,
            _ => unreachable!(),
        };
        let db: Vec<f64> = rows.iter().map(|(_, v)| linear_to_db(*v)).collect();
        // Small separations suffer, wide ones converge to a constant.
        assert!(db[0] < db.last().unwrap() - 1.0, "{db:?}");
        let plateau = *db.last().unwrap();
        assert!((4.0..5.0).contains(&plateau), "plateau = {plateau:.3} dB");
        assert!((db[3] - plateau).abs() < 0.05, "{db:?}");
    }
}
