//! Run-configuration documents: a flat, typed key-value format with
//! section tables, strict schema validation, and explicit unit suffixes.
//!
//! ```text
//! # single-orbit run
//! scenario = single
//! band     = mmwave
//! alpha    = 5 deg
//! n        = 72
//! altitude = 500 km
//!
//! [time]
//! end  = 26000 s
//! step = 2.6 s
//! ```
//!
//! Every value carries its unit (`km`, `m`, `deg`, `rad`, `GHz`, `MHz`,
//! `kHz`, `Hz`, `dBm`, `W`, `dB`, `K`, `s`); counts and identifiers are
//! bare. Unknown keys are rejected. See the README for the full schema.

use crate::analytic::{
    CoplanarScenario, ShiftedCoplanarScenario, ShiftedScenario, SingleOrbitScenario, VictimOrbit,
};
use crate::orbital::OrbitSpec;
use crate::radio::{dbm_to_watts, AntennaPattern, Band, RadioConfig};
use crate::sweeps::{Averaging, Metric, ScenarioSpec, SweepAxis, WalkerRecipe};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::f64::consts::TAU;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Single,
    Coplanar,
    Shifted,
    ShiftedCoplanar,
    Full,
    Sweep,
    Validate,
}

impl Command {
    pub fn from_name(s: &str) -> Option<Command> {
        match s {
            "single" => Some(Command::Single),
            "coplanar" => Some(Command::Coplanar),
            "shifted" => Some(Command::Shifted),
            "shifted-coplanar" => Some(Command::ShiftedCoplanar),
            "full" => Some(Command::Full),
            "sweep" => Some(Command::Sweep),
            "validate" => Some(Command::Validate),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Single => "single",
            Command::Coplanar => "coplanar",
            Command::Shifted => "shifted",
            Command::ShiftedCoplanar => "shifted-coplanar",
            Command::Full => "full",
            Command::Sweep => "sweep",
            Command::Validate => "validate",
        }
    }
}

/// Time grid of a scenario run.
#[derive(Debug, Clone, Copy)]
pub struct TimeGrid {
    pub start_s: f64,
    pub end_s: f64,
    pub dt_s: f64,
}

#[derive(Debug, Clone)]
pub struct SweepSettings {
    pub axis: SweepAxis,
    /// Axis values converted to SI units.
    pub values: Vec<f64>,
    /// The same values as written in the config (display units).
    pub display_values: Vec<f64>,
    pub metric: Metric,
    pub averaging: Averaging,
    pub samples: usize,
    pub bins: usize,
}

#[derive(Debug, Clone)]
pub struct FullSettings {
    pub shells: Vec<WalkerRecipe>,
    pub n_values: Vec<usize>,
    pub samples: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct ValidateSettings {
    pub seed: u64,
    pub configs_per_family: usize,
}

/// A parsed, validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub scenario: Option<ScenarioSpec>,
    pub time: Option<TimeGrid>,
    pub sweep: Option<SweepSettings>,
    pub full: Option<FullSettings>,
    pub validate: ValidateSettings,
    /// Also emit an interference histogram with this many bins.
    pub pdf_bins: Option<usize>,
}

/// One raw `key = value` entry.
struct RawValue {
    line: usize,
    text: String,
    consumed: bool,
}

struct Document {
    entries: BTreeMap<String, RawValue>,
}

impl Document {
    fn parse(text: &str) -> Result<Document> {
        let mut entries = BTreeMap::new();
        let mut section = String::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw_line.find('#') {
                Some(p) => &raw_line[..p],
                None => raw_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            if let Some(inner) = line.strip_prefix('[') {
                let name = inner.strip_suffix(']').ok_or(Error::Config {
                    line: line_no,
                    key: None,
                    message: "unterminated section header".into(),
                })?;
                let name = name.trim().to_ascii_lowercase();
                if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '.' || c == '_')
                {
                    return Err(Error::Config {
                        line: line_no,
                        key: None,
                        message: format!("invalid section name '{name}'"),
                    });
                }
                section = name;
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(Error::Config {
                line: line_no,
                key: None,
                message: format!("expected 'key = value', got '{line}'"),
            })?;
            let key = key.trim().to_ascii_lowercase();
            if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::Config {
                    line: line_no,
                    key: None,
                    message: format!("invalid key '{key}'"),
                });
            }
            let full_key = if section.is_empty() {
                key
            } else {
                format!("{section}.{key}")
            };
            if entries.contains_key(&full_key) {
                return Err(Error::Config {
                    line: line_no,
                    key: Some(full_key),
                    message: "duplicate key".into(),
                });
            }
            entries.insert(
                full_key,
                RawValue {
                    line: line_no,
                    text: value.trim().to_string(),
                    consumed: false,
                },
            );
        }
        Ok(Document { entries })
    }

    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        self.entries.get_mut(key).map(|v| {
            v.consumed = true;
            (v.line, v.text.clone())
        })
    }

    fn finish(&self) -> Result<()> {
        for (key, v) in &self.entries {
            if !v.consumed {
                return Err(Error::Config {
                    line: v.line,
                    key: Some(key.clone()),
                    message: "unknown key".into(),
                });
            }
        }
        Ok(())
    }
}

fn bad(line: usize, key: &str, message: impl Into<String>) -> Error {
    Error::Config {
        line,
        key: Some(key.to_string()),
        message: message.into(),
    }
}

/// Split "`<number> <unit>`" and convert via the unit table.
fn parse_with_units(
    line: usize,
    key: &str,
    text: &str,
    kind: &str,
    units: &[(&str, f64)],
) -> Result<f64> {
    let mut parts = text.split_whitespace();
    let number = parts.next().unwrap_or("");
    let unit = parts.next().unwrap_or("");
    if parts.next().is_some() {
        return Err(bad(line, key, format!("expected '<number> <unit>', got '{text}'")));
    }
    let value: f64 = number
        .parse()
        .map_err(|_| bad(line, key, format!("'{number}' is not a number")))?;
    if unit.is_empty() {
        let expected: Vec<&str> = units.iter().map(|(u, _)| *u).collect();
        return Err(bad(
            line,
            key,
            format!("{kind} value '{text}' is missing a unit suffix (one of {expected:?})"),
        ));
    }
    for (u, scale) in units {
        if unit == *u {
            return Ok(value * scale);
        }
    }
    let expected: Vec<&str> = units.iter().map(|(u, _)| *u).collect();
    Err(bad(
        line,
        key,
        format!("unknown {kind} unit '{unit}' (expected one of {expected:?})"),
    ))
}

fn parse_length_m(line: usize, key: &str, text: &str) -> Result<f64> {
    parse_with_units(line, key, text, "length", &[("km", 1e3), ("m", 1.0)])
}

fn parse_angle_rad(line: usize, key: &str, text: &str) -> Result<f64> {
    let deg = std::f64::consts::PI / 180.0;
    parse_with_units(line, key, text, "angle", &[("deg", deg), ("rad", 1.0)])
}

fn parse_frequency_hz(line: usize, key: &str, text: &str) -> Result<f64> {
    parse_with_units(
        line,
        key,
        text,
        "frequency",
        &[("GHz", 1e9), ("MHz", 1e6), ("kHz", 1e3), ("Hz", 1.0)],
    )
}

fn parse_duration_s(line: usize, key: &str, text: &str) -> Result<f64> {
    parse_with_units(line, key, text, "duration", &[("s", 1.0)])
}

fn parse_temperature_k(line: usize, key: &str, text: &str) -> Result<f64> {
    parse_with_units(line, key, text, "temperature", &[("K", 1.0)])
}

fn parse_level_db(line: usize, key: &str, text: &str) -> Result<f64> {
    parse_with_units(line, key, text, "level", &[("dB", 1.0)])
}

fn parse_power_w(line: usize, key: &str, text: &str) -> Result<f64> {
    let mut parts = text.split_whitespace();
    let number = parts.next().unwrap_or("");
    let unit = parts.next().unwrap_or("");
    let value: f64 = number
        .parse()
        .map_err(|_| bad(line, key, format!("'{number}' is not a number")))?;
    match unit {
        "dBm" => Ok(dbm_to_watts(value)),
        "W" => Ok(value),
        other => Err(bad(
            line,
            key,
            format!("unknown power unit '{other}' (expected 'dBm' or 'W')"),
        )),
    }
}

fn parse_count(line: usize, key: &str, text: &str) -> Result<usize> {
    text.parse()
        .map_err(|_| bad(line, key, format!("'{text}' is not a non-negative integer")))
}

/// Sweep value lists: either a comma list (`1, 3, 5`) or an inclusive
/// range with a step (`10..200 step 5`).
fn parse_value_list(line: usize, key: &str, text: &str) -> Result<Vec<f64>> {
    if let Some((range, step)) = text.split_once("step") {
        let (lo, hi) = range
            .trim()
            .split_once("..")
            .ok_or_else(|| bad(line, key, format!("range '{text}' needs the form 'a..b step c'")))?;
        let lo: f64 = lo
            .trim()
            .parse()
            .map_err(|_| bad(line, key, format!("'{}' is not a number", lo.trim())))?;
        let hi: f64 = hi
            .trim()
            .parse()
            .map_err(|_| bad(line, key, format!("'{}' is not a number", hi.trim())))?;
        let step: f64 = step
            .trim()
            .parse()
            .map_err(|_| bad(line, key, format!("'{}' is not a number", step.trim())))?;
        if step.is_nan() || step <= 0.0 || hi < lo {
            return Err(bad(line, key, "range requires a positive step and b >= a"));
        }
        let mut out = Vec::new();
        let mut k = 0usize;
        loop {
            let v = lo + step * k as f64;
            if v > hi + 1e-9 * step {
                break;
            }
            out.push(v);
            k += 1;
        }
        Ok(out)
    } else {
        text.split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<f64>()
                    .map_err(|_| bad(line, key, format!("'{}' is not a number", tok.trim())))
            })
            .collect()
    }
}

/// Parse and validate a configuration document for `command`.
pub fn parse_config(text: &str, command: Command) -> Result<RunConfig> {
    let mut doc = Document::parse(text)?;

    // An optional scenario tag must agree with the command; the sweep
    // command reads it later to pick its scenario template.
    if !matches!(command, Command::Sweep) {
        if let Some((line, tag)) = doc.take("scenario") {
            if !matches!(command, Command::Validate) && tag != command.name() {
                return Err(bad(
                    line,
                    "scenario",
                    format!("scenario '{tag}' does not match the '{}' command", command.name()),
                ));
            }
        }
    }

    let validate = ValidateSettings {
        seed: doc
            .take("seed")
            .map(|(l, t)| parse_count(l, "seed", &t))
            .transpose()?
            .unwrap_or(7) as u64,
        configs_per_family: doc
            .take("configs")
            .map(|(l, t)| parse_count(l, "configs", &t))
            .transpose()?
            .unwrap_or(250),
    };

    let mut cfg = RunConfig {
        command,
        scenario: None,
        time: None,
        sweep: None,
        full: None,
        validate,
        pdf_bins: None,
    };

    if let Some((l, t)) = doc.take("pdf_bins") {
        let bins = parse_count(l, "pdf_bins", &t)?;
        if bins < 2 {
            return Err(bad(l, "pdf_bins", "need at least 2 bins"));
        }
        cfg.pdf_bins = Some(bins);
    }

    match command {
        Command::Validate => {}
        Command::Full => {
            let radio = read_radio(&mut doc)?;
            let shells = vec![
                read_constellation(&mut doc, "constellation.1")?,
                read_constellation(&mut doc, "constellation.2")?,
            ];
            let sweep = read_sweep_section(&mut doc, true)?;
            let sweep = sweep.ok_or_else(|| Error::Config {
                line: 0,
                key: Some("sweep.values".into()),
                message: "the full command needs a [sweep] section with axis = n".into(),
            })?;
            if sweep.axis != SweepAxis::SatelliteCount {
                return Err(Error::Config {
                    line: 0,
                    key: Some("sweep.axis".into()),
                    message: "the full command sweeps the satellite count (axis = n)".into(),
                });
            }
            let n_values = sweep
                .values
                .iter()
                .map(|&v| {
                    if v.fract() == 0.0 && v >= 2.0 {
                        Ok(v as usize)
                    } else {
                        Err(Error::Config {
                            line: 0,
                            key: Some("sweep.values".into()),
                            message: format!("satellite counts must be integers >= 2, got {v}"),
                        })
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            cfg.scenario = Some(ScenarioSpec::Combined {
                shells: shells.clone(),
                radio,
            });
            cfg.full = Some(FullSettings {
                shells,
                n_values,
                samples: sweep.samples,
            });
        }
        Command::Sweep => {
            let scenario = build_scenario_for_sweep(&mut doc)?;
            let sweep = read_sweep_section(&mut doc, false)?.ok_or_else(|| Error::Config {
                line: 0,
                key: Some("sweep.values".into()),
                message: "the sweep command needs a [sweep] section".into(),
            })?;
            cfg.scenario = Some(scenario);
            cfg.sweep = Some(sweep);
        }
        Command::Single | Command::Coplanar | Command::Shifted | Command::ShiftedCoplanar => {
            let scenario = build_scenario(&mut doc, command)?;
            cfg.time = Some(resolve_time_grid(&mut doc, &scenario)?);
            cfg.scenario = Some(scenario);
        }
    }

    doc.finish()?;
    Ok(cfg)
}

fn read_radio(doc: &mut Document) -> Result<RadioConfig> {
    let alpha = match doc.take("alpha") {
        Some((l, t)) => parse_angle_rad(l, "alpha", &t)?,
        None => {
            return Err(Error::Config {
                line: 0,
                key: Some("alpha".into()),
                message: "missing required beamwidth (e.g. 'alpha = 5 deg')".into(),
            })
        }
    };
    let pattern = match doc.take("sidelobe") {
        Some((l, t)) => AntennaPattern::cone_sphere(alpha, parse_level_db(l, "sidelobe", &t)?)
            .map_err(|e| bad(l, "sidelobe", e.to_string()))?,
        None => AntennaPattern::cone(alpha).map_err(|e| bad(0, "alpha", e.to_string()))?,
    };

    let explicit: Vec<&str> = ["radio.tx_power", "radio.carrier", "radio.bandwidth", "radio.temperature"]
        .into_iter()
        .filter(|k| doc.entries.contains_key(*k))
        .collect();
    let band_key = doc.take("band");
    if !explicit.is_empty() {
        if let Some((l, _)) = band_key {
            return Err(bad(l, "band", "give either a band preset or a [radio] section, not both"));
        }
        if explicit.len() != 4 {
            return Err(Error::Config {
                line: 0,
                key: Some("radio".into()),
                message: "a [radio] section needs tx_power, carrier, bandwidth, and temperature".into(),
            });
        }
        let (l, t) = doc.take("radio.tx_power").expect("checked present");
        let tx_power_w = parse_power_w(l, "radio.tx_power", &t)?;
        let (l, t) = doc.take("radio.carrier").expect("checked present");
        let carrier_hz = parse_frequency_hz(l, "radio.carrier", &t)?;
        let (l, t) = doc.take("radio.bandwidth").expect("checked present");
        let bandwidth_hz = parse_frequency_hz(l, "radio.bandwidth", &t)?;
        let (l, t) = doc.take("radio.temperature").expect("checked present");
        let system_temperature_k = parse_temperature_k(l, "radio.temperature", &t)?;
        RadioConfig::new(tx_power_w, carrier_hz, bandwidth_hz, system_temperature_k, pattern)
            .map_err(|e| Error::Config {
                line: 0,
                key: Some("radio".into()),
                message: e.to_string(),
            })
    } else {
        let band = match band_key {
            Some((l, t)) => Band::from_name(&t)
                .ok_or_else(|| bad(l, "band", format!("unknown band '{t}' (mmwave or subthz)")))?,
            None => Band::MmWave,
        };
        Ok(band.config(pattern))
    }
}

/// Read one `[orbit.N]` section; `defaults` fills unspecified geometry.
fn read_orbit(
    doc: &mut Document,
    section: &str,
    required: bool,
    defaults: Option<&OrbitSpec>,
) -> Result<Option<OrbitSpec>> {
    let key = |k: &str| format!("{section}.{k}");
    let altitude = doc.take(&key("altitude"));
    let satellites = doc.take(&key("satellites"));
    let any = altitude.is_some() || satellites.is_some();
    if !any && !required {
        return Ok(None);
    }
    let altitude_m = match altitude {
        Some((l, t)) => parse_length_m(l, &key("altitude"), &t)?,
        None => defaults.map(|d| d.altitude_m).unwrap_or(500e3),
    };
    let num_satellites = match satellites {
        Some((l, t)) => parse_count(l, &key("satellites"), &t)?,
        None => match defaults {
            Some(d) => d.num_satellites,
            None => {
                return Err(Error::Config {
                    line: 0,
                    key: Some(key("satellites")),
                    message: "missing satellite count".into(),
                })
            }
        },
    };
    let inclination_rad = match doc.take(&key("inclination")) {
        Some((l, t)) => parse_angle_rad(l, &key("inclination"), &t)?,
        None => defaults.map(|d| d.inclination_rad).unwrap_or(0.0),
    };
    let raan_rad = match doc.take(&key("raan")) {
        Some((l, t)) => parse_angle_rad(l, &key("raan"), &t)?,
        None => defaults.map(|d| d.raan_rad).unwrap_or(0.0),
    };
    let phase_offset_rad = match doc.take(&key("phase")) {
        Some((l, t)) => parse_angle_rad(l, &key("phase"), &t)?,
        None => 0.0,
    };
    let orbit = OrbitSpec::new(altitude_m, inclination_rad, raan_rad, num_satellites, phase_offset_rad)
        .map_err(|e| Error::Config {
            line: 0,
            key: Some(section.to_string()),
            message: e.to_string(),
        })?;
    if !orbit.in_leo_band() {
        eprintln!(
            "warning: [{section}] altitude {:.1} km is outside the 500-2000 km LEO band the model targets",
            orbit.altitude_m / 1e3
        );
    }
    Ok(Some(orbit))
}

fn read_constellation(doc: &mut Document, section: &str) -> Result<WalkerRecipe> {
    let key = |k: &str| format!("{section}.{k}");
    let take_required = |doc: &mut Document, k: &str| -> Result<(usize, String)> {
        doc.take(&key(k)).ok_or_else(|| Error::Config {
            line: 0,
            key: Some(key(k)),
            message: "missing required key".into(),
        })
    };
    let (l, t) = take_required(doc, "planes")?;
    let planes = parse_count(l, &key("planes"), &t)?;
    let (l, t) = take_required(doc, "satellites")?;
    let sats_per_plane = parse_count(l, &key("satellites"), &t)?;
    let (l, t) = take_required(doc, "altitude")?;
    let altitude_m = parse_length_m(l, &key("altitude"), &t)?;
    let (l, t) = take_required(doc, "inclination")?;
    let inclination_rad = parse_angle_rad(l, &key("inclination"), &t)?;
    let raan0_rad = match doc.take(&key("raan0")) {
        Some((l, t)) => parse_angle_rad(l, &key("raan0"), &t)?,
        None => 0.0,
    };
    if planes == 0 || sats_per_plane < 2 {
        return Err(Error::Config {
            line: 0,
            key: Some(section.to_string()),
            message: "need at least one plane and two satellites per plane".into(),
        });
    }
    Ok(WalkerRecipe {
        planes,
        sats_per_plane,
        altitude_m,
        inclination_rad,
        raan0_rad,
    })
}

fn build_scenario(doc: &mut Document, command: Command) -> Result<ScenarioSpec> {
    let radio = read_radio(doc)?;
    match command {
        Command::Single => {
            // Accept the shorthand top-level n/altitude or an [orbit.1] table.
            let shorthand_n = doc.take("n");
            let shorthand_h = doc.take("altitude");
            let orbit = if shorthand_n.is_some() || shorthand_h.is_some() {
                let n = match shorthand_n {
                    Some((l, t)) => parse_count(l, "n", &t)?,
                    None => {
                        return Err(Error::Config {
                            line: 0,
                            key: Some("n".into()),
                            message: "missing satellite count".into(),
                        })
                    }
                };
                let altitude_m = match shorthand_h {
                    Some((l, t)) => parse_length_m(l, "altitude", &t)?,
                    None => 500e3,
                };
                OrbitSpec::equatorial(altitude_m, n).map_err(|e| Error::Config {
                    line: 0,
                    key: Some("n".into()),
                    message: e.to_string(),
                })?
            } else {
                read_orbit(doc, "orbit.1", true, None)?.expect("required orbit")
            };
            Ok(ScenarioSpec::Single(SingleOrbitScenario::new(orbit, radio)))
        }
        Command::Coplanar => {
            let lower = read_orbit(doc, "orbit.1", true, None)?.expect("required orbit");
            let upper = read_orbit(doc, "orbit.2", true, Some(&lower))?.expect("required orbit");
            let victim = match doc.take("victim") {
                Some((l, t)) => match t.as_str() {
                    "lower" => VictimOrbit::Lower,
                    "upper" => VictimOrbit::Upper,
                    other => {
                        return Err(bad(l, "victim", format!("expected 'lower' or 'upper', got '{other}'")))
                    }
                },
                None => VictimOrbit::Lower,
            };
            let s = CoplanarScenario::new(lower, upper, radio, victim).map_err(config_err)?;
            Ok(ScenarioSpec::Coplanar(s))
        }
        Command::Shifted => {
            let orbit1 = read_orbit(doc, "orbit.1", true, None)?.expect("required orbit");
            let orbit2 = read_orbit(doc, "orbit.2", true, Some(&orbit1))?.expect("required orbit");
            let s = ShiftedScenario::new(orbit1, orbit2, radio).map_err(config_err)?;
            Ok(ScenarioSpec::Shifted(s))
        }
        Command::ShiftedCoplanar => {
            let orbit1 = read_orbit(doc, "orbit.1", true, None)?.expect("required orbit");
            let orbit2 = read_orbit(doc, "orbit.2", true, Some(&orbit1))?.expect("required orbit");
            let s = ShiftedCoplanarScenario::new(orbit1, orbit2, radio).map_err(config_err)?;
            Ok(ScenarioSpec::ShiftedCoplanar(s))
        }
        _ => unreachable!("scenario builder called for {command:?}"),
    }
}

fn config_err(e: Error) -> Error {
    Error::Config {
        line: 0,
        key: None,
        message: e.to_string(),
    }
}

fn build_scenario_for_sweep(doc: &mut Document) -> Result<ScenarioSpec> {
    let (line, tag) = doc.take("scenario").ok_or_else(|| Error::Config {
        line: 0,
        key: Some("scenario".into()),
        message: "the sweep command needs 'scenario = single|coplanar|shifted|shifted-coplanar|full'"
            .into(),
    })?;
    match tag.as_str() {
        "single" => build_scenario(doc, Command::Single),
        "coplanar" => build_scenario(doc, Command::Coplanar),
        "shifted" => build_scenario(doc, Command::Shifted),
        "shifted-coplanar" => build_scenario(doc, Command::ShiftedCoplanar),
        "full" => {
            let radio = read_radio(doc)?;
            let shells = vec![
                read_constellation(doc, "constellation.1")?,
                read_constellation(doc, "constellation.2")?,
            ];
            Ok(ScenarioSpec::Combined { shells, radio })
        }
        other => Err(bad(line, "scenario", format!("unknown scenario '{other}'"))),
    }
}

fn read_sweep_section(doc: &mut Document, required: bool) -> Result<Option<SweepSettings>> {
    let axis_entry = doc.take("sweep.axis");
    let values_entry = doc.take("sweep.values");
    if axis_entry.is_none() && values_entry.is_none() && !required {
        return Ok(None);
    }
    let (l_axis, axis_text) = axis_entry.ok_or_else(|| Error::Config {
        line: 0,
        key: Some("sweep.axis".into()),
        message: "missing sweep axis".into(),
    })?;
    let axis = match axis_text.as_str() {
        "n" => SweepAxis::SatelliteCount,
        "alpha" => SweepAxis::Beamwidth,
        "delta_h" => SweepAxis::AltitudeSeparation,
        "time" => SweepAxis::Time,
        "gamma" => SweepAxis::Inclination,
        other => {
            return Err(bad(
                l_axis,
                "sweep.axis",
                format!("unknown axis '{other}' (n, alpha, delta_h, time, gamma)"),
            ))
        }
    };
    let (l_vals, values_text) = values_entry.ok_or_else(|| Error::Config {
        line: 0,
        key: Some("sweep.values".into()),
        message: "missing sweep values".into(),
    })?;
    let raw = parse_value_list(l_vals, "sweep.values", &values_text)?;
    if raw.is_empty() {
        return Err(bad(l_vals, "sweep.values", "sweep values must be nonempty"));
    }
    // Values are written in per-axis display units; convert to SI.
    let scale = match axis {
        SweepAxis::SatelliteCount => 1.0,
        SweepAxis::Beamwidth => TAU / 360.0,   // degrees
        SweepAxis::AltitudeSeparation => 1e3,  // kilometers
        SweepAxis::Time => 1.0,                // seconds
        SweepAxis::Inclination => TAU / 360.0, // degrees
    };
    let values = raw.iter().map(|v| v * scale).collect();
    let display_values = raw;
    let metric = match doc.take("sweep.metric") {
        Some((l, t)) => match t.as_str() {
            "ei" => Metric::InterferencePower,
            "sir" => Metric::Sir,
            "sinr" => Metric::Sinr,
            "capacity" => Metric::Capacity,
            other => {
                return Err(bad(
                    l,
                    "sweep.metric",
                    format!("unknown metric '{other}' (ei, sir, sinr, capacity)"),
                ))
            }
        },
        None => Metric::Sinr,
    };
    let averaging = match doc.take("sweep.averaging") {
        Some((l, t)) => match t.as_str() {
            "instant" => Averaging::Instant,
            "time_mean" => Averaging::TimeMean,
            "histogram" => Averaging::Histogram,
            other => {
                return Err(bad(
                    l,
                    "sweep.averaging",
                    format!("unknown averaging '{other}' (instant, time_mean, histogram)"),
                ))
            }
        },
        None => Averaging::Instant,
    };
    let samples = match doc.take("sweep.samples") {
        Some((l, t)) => parse_count(l, "sweep.samples", &t)?.max(2),
        None => 1024,
    };
    let bins = match doc.take("sweep.bins") {
        Some((l, t)) => {
            let b = parse_count(l, "sweep.bins", &t)?;
            if b < 2 {
                return Err(bad(l, "sweep.bins", "need at least 2 bins"));
            }
            b
        }
        None => 50,
    };
    Ok(Some(SweepSettings {
        axis,
        values,
        display_values,
        metric,
        averaging,
        samples,
        bins,
    }))
}

/// Fill the [time] section with scenario-derived defaults: one pattern
/// period (two orbital periods for shifted orbits) at 10,000 steps per
/// period.
fn resolve_time_grid(doc: &mut Document, scenario: &ScenarioSpec) -> Result<TimeGrid> {
    let period = crate::sweeps::scenario_period_s(scenario).map_err(config_err)?;
    let default_end = match scenario {
        ScenarioSpec::Shifted(_) => 2.0 * period,
        _ => period,
    };
    let start_s = match doc.take("time.start") {
        Some((l, t)) => parse_duration_s(l, "time.start", &t)?,
        None => 0.0,
    };
    let end_s = match doc.take("time.end") {
        Some((l, t)) => parse_duration_s(l, "time.end", &t)?,
        None => start_s + default_end,
    };
    let dt_s = match doc.take("time.step") {
        Some((l, t)) => parse_duration_s(l, "time.step", &t)?,
        None => period / 10_000.0,
    };
    if dt_s.is_nan() || dt_s <= 0.0 || end_s <= start_s {
        return Err(Error::Config {
            line: 0,
            key: Some("time".into()),
            message: "need step > 0 and end > start".into(),
        });
    }
    Ok(TimeGrid { start_s, end_s, dt_s })
}
