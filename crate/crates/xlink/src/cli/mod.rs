//! Command-line surface: configuration ingestion, scenario execution,
//! and CSV emission.
//!
//! ```text
//! xlink <command> --config <file> --out <dir> [--check-sim] [--no-timestamp]
//! ```
//!
//! Commands: `single`, `coplanar`, `shifted`, `shifted-coplanar`, `full`,
//! `sweep`, `validate`. Exit codes: 0 success, 2 config error,
//! 3 validation-suite failure, 4 resource guard. `XLINK_THREADS` caps
//! worker parallelism. Identical inputs produce byte-identical CSV,
//! except for the timestamp comment that `--no-timestamp` removes.

pub mod config;

pub use config::{parse_config, Command, RunConfig};

use crate::analytic::{combined_time_average_with, coplanar_delta_beta_at, SourceClass};
use crate::orbital::PhysicalConstants;
use crate::radio::linear_to_db;
use crate::simulator::{propagate, step_metrics, SimulationConfig, VictimId};
use crate::sweeps::{
    self, evaluate_instant, interference_pdf, run_sweep, scenario_period_s, Histogram, Metric,
    ScenarioSpec, SweepAxis, SweepOutput, SweepSpec,
};
use crate::{Error, Result};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Parsed command line.
#[derive(Debug, Clone)]
pub struct CliOptions {
    pub command: Command,
    pub config_path: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub check_sim: bool,
    pub no_timestamp: bool,
}

const USAGE: &str = "usage: xlink <single|coplanar|shifted|shifted-coplanar|full|sweep|validate> \
--config <file> [--out <dir>] [--check-sim] [--no-timestamp]";

pub fn parse_args(args: &[String]) -> Result<CliOptions> {
    let mut it = args.iter();
    let command = it
        .next()
        .and_then(|s| Command::from_name(s))
        .ok_or_else(|| Error::Config {
            line: 0,
            key: None,
            message: USAGE.into(),
        })?;
    let mut opts = CliOptions {
        command,
        config_path: None,
        out_dir: PathBuf::from("out"),
        check_sim: false,
        no_timestamp: false,
    };
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--config" => {
                let v = it.next().ok_or_else(|| Error::Config {
                    line: 0,
                    key: None,
                    message: "--config needs a file path".into(),
                })?;
                opts.config_path = Some(PathBuf::from(v));
            }
            "--out" => {
                let v = it.next().ok_or_else(|| Error::Config {
                    line: 0,
                    key: None,
                    message: "--out needs a directory".into(),
                })?;
                opts.out_dir = PathBuf::from(v);
            }
            "--check-sim" => opts.check_sim = true,
            "--no-timestamp" => opts.no_timestamp = true,
            other => {
                return Err(Error::Config {
                    line: 0,
                    key: None,
                    message: format!("unknown argument '{other}'\n{USAGE}"),
                })
            }
        }
    }
    if opts.config_path.is_none() && command != Command::Validate {
        return Err(Error::Config {
            line: 0,
            key: None,
            message: format!("the {} command needs --config <file>", command.name()),
        });
    }
    Ok(opts)
}

/// Map an error to the documented process exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config { .. } | Error::Scenario(_) | Error::Domain(_) => 2,
        Error::Validation(_) => 3,
        Error::ResourceGuard(_) => 4,
        Error::Io(_) => 1,
    }
}

/// Full CLI entry point; returns the process exit code.
pub fn run_cli(args: &[String]) -> i32 {
    let opts = match parse_args(args) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{e}");
            return exit_code(&e);
        }
    };
    let text = match &opts.config_path {
        Some(p) => match std::fs::read_to_string(p) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("cannot read {}: {e}", p.display());
                return 1;
            }
        },
        None => String::new(),
    };
    let run = match parse_config(&text, opts.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            return exit_code(&e);
        }
    };
    match execute(&run, &opts) {
        Ok(paths) => {
            for p in paths {
                println!("wrote {}", p.display());
            }
            0
        }
        Err(e) => {
            eprintln!("{e}");
            exit_code(&e)
        }
    }
}

/// Worker budget from `XLINK_THREADS`, falling back to the machine.
pub fn thread_budget() -> usize {
    match std::env::var("XLINK_THREADS") {
        Ok(v) => match v.parse::<usize>() {
            Ok(n) if n >= 1 => n,
            _ => {
                eprintln!("warning: ignoring invalid XLINK_THREADS='{v}'");
                sweeps::effective_threads(0)
            }
        },
        Err(_) => sweeps::effective_threads(0),
    }
}

// ---------------------------------------------------------------------
// CSV plumbing
// ---------------------------------------------------------------------

struct Csv {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    fn new(columns: Vec<&'static str>) -> Csv {
        Csv { columns, rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn write(&self, path: &Path, no_timestamp: bool) -> Result<PathBuf> {
        let mut out = String::new();
        out.push_str("# schema=1\n");
        if !no_timestamp {
            let unix = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            let _ = writeln!(out, "# generated_unix={unix}");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        std::fs::write(path, out)?;
        Ok(path.to_path_buf())
    }
}

/// dB with fixed 4-decimal formatting; infinities print as `inf`.
fn fmt_db(linear: f64) -> String {
    let db = linear_to_db(linear);
    if db.is_infinite() {
        if db > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{db:.4}")
    }
}

fn fmt_gbps(bps: f64) -> String {
    format!("{:.6}", bps / 1e9)
}

/// Watts in lossless scientific notation; exact zero stays `0`.
fn fmt_watts(w: f64) -> String {
    format!("{w:e}")
}

fn fmt_plain(v: f64) -> String {
    format!("{v}")
}

// ---------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------

/// Execute a parsed run and return the written artifact paths.
pub fn execute(run: &RunConfig, opts: &CliOptions) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(&opts.out_dir)?;
    let threads = thread_budget();
    match run.command {
        Command::Single => execute_single(run, opts),
        Command::Coplanar | Command::Shifted | Command::ShiftedCoplanar => {
            execute_series(run, opts)
        }
        Command::Sweep => execute_sweep(run, opts, threads),
        Command::Full => execute_full(run, opts, threads),
        Command::Validate => execute_validate(run, opts),
    }
}

fn scenario_of(run: &RunConfig) -> Result<&ScenarioSpec> {
    run.scenario.as_ref().ok_or_else(|| Error::Config {
        line: 0,
        key: None,
        message: "missing scenario".into(),
    })
}

fn execute_single(run: &RunConfig, opts: &CliOptions) -> Result<Vec<PathBuf>> {
    let scenario = scenario_of(run)?;
    let s = match scenario {
        ScenarioSpec::Single(s) => s,
        _ => unreachable!("single command builds a single scenario"),
    };
    let report = evaluate_instant(scenario, 0.0)?;
    if opts.check_sim {
        let dev = cross_check(scenario, &[0.0])?;
        eprintln!("simulator cross-check: {dev}");
    }
    let mut csv = Csv::new(vec![
        "n",
        "alpha_deg",
        "altitude_km",
        "n_interferers",
        "ei_w",
        "signal_w",
        "snr_db",
        "sir_db",
        "sinr_db",
        "cap_gbps",
    ]);
    csv.push(vec![
        s.orbit.num_satellites.to_string(),
        format!("{:.6}", s.radio.pattern.beamwidth_rad().to_degrees()),
        format!("{:.3}", s.orbit.altitude_m / 1e3),
        report.interferer_ids.len().to_string(),
        fmt_watts(report.expected_interference_w),
        fmt_watts(report.signal_power_w),
        fmt_db(report.snr()),
        fmt_db(report.sir),
        fmt_db(report.sinr),
        fmt_gbps(report.capacity_bps),
    ]);
    Ok(vec![csv.write(&opts.out_dir.join("single.csv"), opts.no_timestamp)?])
}

fn execute_series(run: &RunConfig, opts: &CliOptions) -> Result<Vec<PathBuf>> {
    let scenario = scenario_of(run)?;
    let grid = run.time.ok_or_else(|| Error::Config {
        line: 0,
        key: None,
        message: "missing time grid".into(),
    })?;
    let steps = ((grid.end_s - grid.start_s) / grid.dt_s + 1e-9).floor() as usize + 1;
    if steps > crate::simulator::MAX_STEPS {
        return Err(Error::ResourceGuard(format!(
            "{steps} timesteps exceed the {} step ceiling",
            crate::simulator::MAX_STEPS
        )));
    }

    let with_offset = matches!(
        scenario,
        ScenarioSpec::Coplanar(_) | ScenarioSpec::ShiftedCoplanar(_)
    );
    let mut columns = vec!["t_s"];
    if with_offset {
        columns.push("delta_beta_rad");
    }
    columns.extend(["n_interferers", "ei_w", "sir_db", "sinr_db", "cap_gbps"]);
    if opts.check_sim {
        columns.extend(["ei_w_sim", "sinr_db_sim"]);
    }
    let mut csv = Csv::new(columns);

    let sim_cfg = opts.check_sim.then(|| sim_config_for(scenario)).flatten();
    let mut max_dev: f64 = 0.0;
    let mut set_mismatches = 0usize;
    let pc = PhysicalConstants::default();

    let mut timestamps = Vec::with_capacity(steps);
    let mut reports = Vec::with_capacity(steps);
    for k in 0..steps {
        let t = grid.start_s + k as f64 * grid.dt_s;
        let report = evaluate_instant(scenario, t)?;
        let mut row = vec![fmt_plain(t)];
        if with_offset {
            let offset = match scenario {
                ScenarioSpec::Coplanar(s) => coplanar_delta_beta_at(s, t),
                ScenarioSpec::ShiftedCoplanar(s) => shifted_coplanar_offset(s, t),
                _ => unreachable!(),
            };
            row.push(fmt_plain(offset));
        }
        row.extend([
            report.interferer_ids.len().to_string(),
            fmt_watts(report.expected_interference_w),
            fmt_db(report.sir),
            fmt_db(report.sinr),
            fmt_gbps(report.capacity_bps),
        ]);
        if let Some(cfg) = &sim_cfg {
            let states = propagate(cfg, t);
            let sim = step_metrics(&pc, &states, (cfg.victim_global_orbit(), cfg.victim.sat), &cfg.radio);
            if sim.interferer_ids != report.interferer_ids {
                let tie = report
                    .interferer_ids
                    .symmetric_difference(&sim.interferer_ids)
                    .all(|&id| crate::validate::boundary_margin(&pc, cfg, t, id) < 1e-9);
                if !tie {
                    set_mismatches += 1;
                }
            } else {
                max_dev = max_dev.max(rel_dev(
                    report.expected_interference_w,
                    sim.expected_interference_w,
                ));
                max_dev = max_dev.max(rel_dev(report.signal_power_w, sim.signal_power_w));
            }
            row.extend([fmt_watts(sim.expected_interference_w), fmt_db(sim.sinr)]);
        }
        csv.push(row);
        timestamps.push(t);
        reports.push(report);
    }

    let name = run.command.name().replace('-', "_");
    let mut written = vec![csv.write(&opts.out_dir.join(format!("{name}.csv")), opts.no_timestamp)?];

    if let Some(bins) = run.pdf_bins {
        let series = crate::simulator::TimeSeries {
            timestamps_s: timestamps,
            reports,
            period_s: scenario_period_s(scenario).ok(),
        };
        let hist = interference_pdf(&series, bins)?;
        let mut csv = Csv::new(vec!["bin_low_dbm", "bin_high_dbm", "density_per_db"]);
        push_histogram_rows(&mut csv, None, &hist);
        written.push(csv.write(&opts.out_dir.join(format!("{name}_pdf.csv")), opts.no_timestamp)?);
    }

    if opts.check_sim {
        eprintln!(
            "simulator cross-check: max relative power deviation {max_dev:.3e}, set mismatches {set_mismatches}"
        );
        if set_mismatches > 0 || max_dev > 1e-9 {
            return Err(Error::Validation(format!(
                "analytic/simulator deviation beyond 1e-9 ({set_mismatches} set mismatches, max dev {max_dev:.3e})"
            )));
        }
    }
    Ok(written)
}

fn shifted_coplanar_offset(s: &crate::analytic::ShiftedCoplanarScenario, t: f64) -> f64 {
    s.constants
        .relative_angular_offset(
            s.orbit2.altitude_m,
            s.orbit1.altitude_m,
            t,
            s.orbit2.phase_offset_rad - s.orbit1.phase_offset_rad,
        )
        .expect("valid altitudes")
}

fn axis_column(axis: SweepAxis) -> &'static str {
    match axis {
        SweepAxis::SatelliteCount => "n",
        SweepAxis::Beamwidth => "alpha_deg",
        SweepAxis::AltitudeSeparation => "delta_h_km",
        SweepAxis::Time => "time_s",
        SweepAxis::Inclination => "gamma_deg",
    }
}

fn metric_column(metric: Metric) -> &'static str {
    match metric {
        Metric::InterferencePower => "ei_w",
        Metric::Sir => "sir_db",
        Metric::Sinr => "sinr_db",
        Metric::Capacity => "cap_gbps",
    }
}

fn fmt_metric(metric: Metric, value: f64) -> String {
    match metric {
        Metric::InterferencePower => fmt_watts(value),
        Metric::Sir | Metric::Sinr => fmt_db(value),
        Metric::Capacity => fmt_gbps(value),
    }
}

fn push_histogram_rows(csv: &mut Csv, axis_value: Option<String>, hist: &Histogram) {
    for (i, d) in hist.densities_per_db.iter().enumerate() {
        let mut row = Vec::new();
        if let Some(v) = &axis_value {
            row.push(v.clone());
        }
        row.extend([
            format!("{:.4}", hist.bin_edges_dbm[i]),
            format!("{:.4}", hist.bin_edges_dbm[i + 1]),
            format!("{d:.6e}"),
        ]);
        csv.push(row);
    }
}

fn execute_sweep(run: &RunConfig, opts: &CliOptions, threads: usize) -> Result<Vec<PathBuf>> {
    let scenario = scenario_of(run)?;
    let settings = run.sweep.as_ref().ok_or_else(|| Error::Config {
        line: 0,
        key: None,
        message: "missing [sweep] section".into(),
    })?;
    let spec = SweepSpec {
        scenario: scenario.clone(),
        axis: settings.axis,
        values: settings.values.clone(),
        metric: settings.metric,
        averaging: settings.averaging,
        samples_per_period: settings.samples,
        bins: settings.bins,
        threads,
    };
    let output = run_sweep(&spec)?;

    if opts.check_sim {
        let dev = sweep_cross_check(&spec)?;
        eprintln!("simulator cross-check: {dev}");
    }

    let path = match output {
        SweepOutput::Table(rows) => {
            let mut csv = Csv::new(vec![axis_column(settings.axis), metric_column(settings.metric)]);
            for (i, (_, value)) in rows.iter().enumerate() {
                csv.push(vec![
                    fmt_plain(settings.display_values[i]),
                    fmt_metric(settings.metric, *value),
                ]);
            }
            csv.write(&opts.out_dir.join("sweep.csv"), opts.no_timestamp)?
        }
        SweepOutput::Histograms(hists) => {
            let mut csv = Csv::new(vec![
                axis_column(settings.axis),
                "bin_low_dbm",
                "bin_high_dbm",
                "density_per_db",
            ]);
            for (i, (_, hist)) in hists.iter().enumerate() {
                push_histogram_rows(&mut csv, Some(fmt_plain(settings.display_values[i])), hist);
            }
            csv.write(&opts.out_dir.join("sweep_hist.csv"), opts.no_timestamp)?
        }
    };
    Ok(vec![path])
}

fn execute_full(run: &RunConfig, opts: &CliOptions, threads: usize) -> Result<Vec<PathBuf>> {
    let settings = run.full.as_ref().ok_or_else(|| Error::Config {
        line: 0,
        key: None,
        message: "missing full-deployment settings".into(),
    })?;
    let radio = match scenario_of(run)? {
        ScenarioSpec::Combined { radio, .. } => *radio,
        _ => unreachable!("full command builds a combined scenario"),
    };
    let pc = PhysicalConstants::default();

    let evaluate = |n: usize| -> Result<Vec<String>> {
        let mut shells = settings.shells.clone();
        for shell in &mut shells {
            shell.sats_per_plane = n;
        }
        let scenario = ScenarioSpec::Combined { shells: shells.clone(), radio };
        let period = scenario_period_s(&scenario)?;
        let constellations = shells
            .iter()
            .map(|s| s.build())
            .collect::<Result<Vec<_>>>()?;
        let avg = combined_time_average_with(&pc, &constellations, &radio, period, settings.samples)?;
        let class = |c: SourceClass| *avg.power_by_class.get(&c).unwrap_or(&0.0);
        Ok(vec![
            n.to_string(),
            fmt_db(avg.report.snr()),
            fmt_db(avg.report.sinr),
            fmt_gbps(avg.report.capacity_bps),
            fmt_gbps(avg.capacity_no_interference_bps),
            fmt_watts(avg.report.expected_interference_w),
            fmt_watts(class(SourceClass::SameOrbit)),
            fmt_watts(class(SourceClass::Shifted)),
            fmt_watts(class(SourceClass::Coplanar)),
            fmt_watts(class(SourceClass::ShiftedCoplanar)),
        ])
    };

    let workers = threads.min(settings.n_values.len()).max(1);
    let mut slots: Vec<Option<Result<Vec<String>>>> = Vec::new();
    slots.resize_with(settings.n_values.len(), || None);
    if workers <= 1 {
        for (i, &n) in settings.n_values.iter().enumerate() {
            slots[i] = Some(evaluate(n));
        }
    } else {
        let chunks: Vec<Vec<usize>> = (0..workers)
            .map(|w| (w..settings.n_values.len()).step_by(workers).collect())
            .collect();
        let results: Vec<Vec<(usize, Result<Vec<String>>)>> = std::thread::scope(|scope| {
            let eval = &evaluate;
            let n_values = &settings.n_values;
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|idx| {
                    scope.spawn(move || {
                        idx.into_iter()
                            .map(|i| (i, eval(n_values[i])))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("full worker")).collect()
        });
        for chunk in results {
            for (i, r) in chunk {
                slots[i] = Some(r);
            }
        }
    }

    let mut csv = Csv::new(vec![
        "n",
        "snr_db",
        "sinr_db",
        "cap_gbps",
        "cap_nointf_gbps",
        "ei_w_total",
        "ei_w_single",
        "ei_w_shifted",
        "ei_w_coplanar",
        "ei_w_shifted_coplanar",
    ]);
    for slot in slots {
        csv.push(slot.expect("every n evaluated")?);
    }

    if opts.check_sim {
        // Spot-check the combined closed form against the simulator at the
        // extremes of the sweep.
        for &n in [settings.n_values.first(), settings.n_values.last()]
            .into_iter()
            .flatten()
        {
            let mut shells = settings.shells.clone();
            for shell in &mut shells {
                shell.sats_per_plane = n;
            }
            let scenario = ScenarioSpec::Combined { shells, radio };
            let dev = cross_check(&scenario, &[0.0, 311.0, 1722.0, 4934.0])?;
            eprintln!("simulator cross-check (n={n}): {dev}");
        }
    }

    Ok(vec![csv.write(&opts.out_dir.join("full.csv"), opts.no_timestamp)?])
}

fn execute_validate(run: &RunConfig, opts: &CliOptions) -> Result<Vec<PathBuf>> {
    let settings = run.validate;
    let reports = crate::validate::run_all(settings.configs_per_family, settings.seed);
    let mut csv = Csv::new(vec![
        "family",
        "configs",
        "instants",
        "ties_skipped",
        "set_mismatches",
        "max_interference_rel_dev",
        "max_signal_rel_dev",
        "max_sinr_rel_dev",
    ]);
    let mut all_pass = true;
    for report in &reports {
        println!("{report}");
        all_pass &= report.passed(1e-9);
        csv.push(vec![
            report.family.name().to_string(),
            report.configs_run.to_string(),
            report.instants_checked.to_string(),
            report.boundary_ties_skipped.to_string(),
            report.set_mismatches.to_string(),
            format!("{:.6e}", report.max_interference_rel_dev),
            format!("{:.6e}", report.max_signal_rel_dev),
            format!("{:.6e}", report.max_sinr_rel_dev),
        ]);
    }
    let path = csv.write(&opts.out_dir.join("validate.csv"), opts.no_timestamp)?;
    if !all_pass {
        return Err(Error::Validation(
            "analytic/simulator equivalence failed; see validate.csv".into(),
        ));
    }
    Ok(vec![path])
}

// ---------------------------------------------------------------------
// Simulator cross-checks
// ---------------------------------------------------------------------

fn rel_dev(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Simulation config equivalent to a scenario, when one exists.
fn sim_config_for(scenario: &ScenarioSpec) -> Option<SimulationConfig> {
    match scenario {
        ScenarioSpec::Single(s) => Some(SimulationConfig {
            constellations: vec![
                crate::orbital::ConstellationSpec::new(vec![s.orbit]).expect("one orbit"),
            ],
            radio: s.radio,
            constants: s.constants,
            t_start_s: 0.0,
            t_end_s: 1.0,
            dt_s: 1.0,
            victim: VictimId { constellation: 0, orbit: 0, sat: 0 },
        }),
        ScenarioSpec::Coplanar(s) => Some(crate::simulator::config_from_coplanar(s, 1.0, 1.0)),
        ScenarioSpec::Shifted(s) => Some(crate::simulator::config_from_shifted(s, 1.0, 1.0)),
        ScenarioSpec::ShiftedCoplanar(s) => {
            Some(crate::simulator::config_from_shifted_coplanar(s, 1.0, 1.0))
        }
        ScenarioSpec::Combined { shells, radio } => {
            let constellations: Result<Vec<_>> = shells.iter().map(|s| s.build()).collect();
            Some(SimulationConfig {
                constellations: constellations.ok()?,
                radio: *radio,
                constants: PhysicalConstants::default(),
                t_start_s: 0.0,
                t_end_s: 1.0,
                dt_s: 1.0,
                victim: VictimId { constellation: 0, orbit: 0, sat: 0 },
            })
        }
    }
}

/// Compare the analytic evaluation with the simulator at the given
/// instants; error beyond 1e-9 relative or on a non-tie set mismatch.
fn cross_check(scenario: &ScenarioSpec, instants: &[f64]) -> Result<String> {
    let cfg = sim_config_for(scenario).ok_or_else(|| Error::Validation(
        "scenario has no simulator mapping".into(),
    ))?;
    let pc = PhysicalConstants::default();
    let mut max_dev: f64 = 0.0;
    for &t in instants {
        let analytic = evaluate_instant(scenario, t)?;
        let states = propagate(&cfg, t);
        let sim = step_metrics(&pc, &states, (cfg.victim_global_orbit(), cfg.victim.sat), &cfg.radio);
        if analytic.interferer_ids != sim.interferer_ids {
            let tie = analytic
                .interferer_ids
                .symmetric_difference(&sim.interferer_ids)
                .all(|&id| crate::validate::boundary_margin(&pc, &cfg, t, id) < 1e-9);
            if !tie {
                return Err(Error::Validation(format!(
                    "interferer sets differ at t={t}: analytic {:?} vs simulator {:?}",
                    analytic.interferer_ids, sim.interferer_ids
                )));
            }
            continue;
        }
        max_dev = max_dev.max(rel_dev(
            analytic.expected_interference_w,
            sim.expected_interference_w,
        ));
        max_dev = max_dev.max(rel_dev(analytic.signal_power_w, sim.signal_power_w));
    }
    if max_dev > 1e-9 {
        return Err(Error::Validation(format!(
            "analytic/simulator power deviation {max_dev:.3e} exceeds 1e-9"
        )));
    }
    Ok(format!("max relative power deviation {max_dev:.3e} across {} instants", instants.len()))
}

/// Cross-check up to three representative sweep points over one period.
fn sweep_cross_check(spec: &SweepSpec) -> Result<String> {
    let picks: Vec<f64> = if spec.values.len() <= 3 {
        spec.values.clone()
    } else {
        vec![
            spec.values[0],
            spec.values[spec.values.len() / 2],
            spec.values[spec.values.len() - 1],
        ]
    };
    let mut notes = Vec::new();
    for v in picks {
        let scenario = sweeps::apply_axis(&spec.scenario, spec.axis, v)?;
        let period = scenario_period_s(&scenario)?;
        let instants: Vec<f64> = (0..64).map(|k| period * k as f64 / 64.0).collect();
        let note = cross_check(&scenario, &instants)?;
        notes.push(format!("value {v}: {note}"));
    }
    Ok(notes.join("; "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn args_parse_the_documented_grammar() {
        let args: Vec<String> = ["coplanar", "--config", "run.cfg", "--out", "results", "--check-sim", "--no-timestamp"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let opts = parse_args(&args).unwrap();
        assert_eq!(opts.command, Command::Coplanar);
        assert_eq!(opts.config_path.as_deref(), Some(Path::new("run.cfg")));
        assert_eq!(opts.out_dir, Path::new("results"));
        assert!(opts.check_sim && opts.no_timestamp);

        assert!(parse_args(&["bogus".to_string()]).is_err());
        assert!(parse_args(&["single".to_string()]).is_err()); // missing --config
        let v = parse_args(&["validate".to_string()]).unwrap();
        assert!(v.config_path.is_none());
    }

    #[test]
    fn exit_codes_follow_the_contract() {
        assert_eq!(
            exit_code(&Error::Config { line: 1, key: None, message: "x".into() }),
            2
        );
        assert_eq!(exit_code(&Error::Validation("x".into())), 3);
        assert_eq!(exit_code(&Error::ResourceGuard("x".into())), 4);
    }

    #[test]
    fn db_formatting_handles_infinities() {
        assert_eq!(fmt_db(f64::INFINITY), "inf");
        assert_eq!(fmt_db(1.0), "0.0000");
        assert_eq!(fmt_watts(0.0), "0e0");
    }
}
