//! Antenna patterns, free-space link budget, thermal noise, and Shannon
//! capacity.
//!
//! The reference pattern is an ideal cone: uniform power gain
//! `G = 2 / (1 - cos(alpha/2))` inside a cone of full beamwidth `alpha`,
//! zero outside, which radiates exactly the transmit power over the
//! sphere. The cone-plus-sphere variant adds a uniform sidelobe floor a
//! configured number of dB below the main lobe, renormalized so total
//! radiated power is still conserved.
//!
//! All quantities are linear SI; use [`db_to_linear`] and friends only at
//! I/O boundaries.

use crate::orbital::SPEED_OF_LIGHT;
use crate::{Error, Result, Vec3};
use std::f64::consts::TAU;

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0) / 1000.0
}

pub fn watts_to_dbm(w: f64) -> f64 {
    10.0 * (w * 1000.0).log10()
}

/// Idealized directional antenna pattern.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AntennaPattern {
    /// Uniform gain inside a cone of full beamwidth `alpha`, zero outside.
    Cone { beamwidth_rad: f64 },
    /// Cone main lobe plus a uniform sidelobe floor over the rest of the
    /// sphere, `sidelobe_db_down` dB below the main lobe.
    ConeSphere {
        beamwidth_rad: f64,
        sidelobe_db_down: f64,
    },
}

impl AntennaPattern {
    pub fn cone(beamwidth_rad: f64) -> Result<Self> {
        Self::validate_beamwidth(beamwidth_rad)?;
        Ok(AntennaPattern::Cone { beamwidth_rad })
    }

    pub fn cone_sphere(beamwidth_rad: f64, sidelobe_db_down: f64) -> Result<Self> {
        Self::validate_beamwidth(beamwidth_rad)?;
        if sidelobe_db_down.is_nan() || sidelobe_db_down <= 0.0 {
            return Err(Error::Domain(
                "sidelobe level must be > 0 dB below the main lobe".into(),
            ));
        }
        Ok(AntennaPattern::ConeSphere {
            beamwidth_rad,
            sidelobe_db_down,
        })
    }

    fn validate_beamwidth(alpha: f64) -> Result<()> {
        if !(alpha > 0.0 && alpha <= TAU) {
            return Err(Error::Domain(format!(
                "beamwidth must be in (0, 2*pi], got {alpha}"
            )));
        }
        Ok(())
    }

    pub fn beamwidth_rad(&self) -> f64 {
        match *self {
            AntennaPattern::Cone { beamwidth_rad } => beamwidth_rad,
            AntennaPattern::ConeSphere { beamwidth_rad, .. } => beamwidth_rad,
        }
    }

    /// Sidelobe power gain; zero for the pure cone.
    pub fn sidelobe_gain(&self) -> f64 {
        match *self {
            AntennaPattern::Cone { .. } => 0.0,
            AntennaPattern::ConeSphere { sidelobe_db_down, .. } => {
                main_lobe_gain(self) * db_to_linear(-sidelobe_db_down)
            }
        }
    }
}

/// Main-lobe power gain of a pattern.
///
/// Cone: `2 / (1 - cos(alpha/2))`. Cone-plus-sphere: the same cone
/// renormalized so that main lobe plus sidelobe floor still radiate the
/// total transmit power:
/// `G = 2 / ((1 - cos(alpha/2)) + rho * (1 + cos(alpha/2)))` with
/// `rho` the linear sidelobe ratio.
pub fn main_lobe_gain(pattern: &AntennaPattern) -> f64 {
    // 1 - cos(alpha/2) = 2*sin^2(alpha/4), numerically stable for
    // sub-degree beams.
    let one_minus_cos = |x: f64| 2.0 * (x / 2.0).sin().powi(2);
    match *pattern {
        AntennaPattern::Cone { beamwidth_rad } => 2.0 / one_minus_cos(beamwidth_rad / 2.0),
        AntennaPattern::ConeSphere {
            beamwidth_rad,
            sidelobe_db_down,
        } => {
            let omc = one_minus_cos(beamwidth_rad / 2.0);
            let rho = db_to_linear(-sidelobe_db_down);
            2.0 / (omc + rho * (2.0 - omc))
        }
    }
}

/// Power gain of `pattern` pointing along `boresight` toward `target_dir`
/// (both unit vectors). The beam edge uses a strict inequality: a target
/// exactly `alpha/2` off boresight is outside the main lobe.
pub fn gain_toward(pattern: &AntennaPattern, boresight: Vec3, target_dir: Vec3) -> f64 {
    let cos_half = (pattern.beamwidth_rad() / 2.0).cos();
    if boresight.cos_angle(target_dir) > cos_half {
        main_lobe_gain(pattern)
    } else {
        pattern.sidelobe_gain()
    }
}

/// Radio-link parameters shared by every satellite in a deployment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioConfig {
    /// Transmit power (W).
    pub tx_power_w: f64,
    /// Carrier frequency (Hz).
    pub carrier_hz: f64,
    /// Channel bandwidth (Hz).
    pub bandwidth_hz: f64,
    /// Receiver system temperature (K).
    pub system_temperature_k: f64,
    pub pattern: AntennaPattern,
}

impl RadioConfig {
    pub fn new(
        tx_power_w: f64,
        carrier_hz: f64,
        bandwidth_hz: f64,
        system_temperature_k: f64,
        pattern: AntennaPattern,
    ) -> Result<Self> {
        for (name, v) in [
            ("tx_power", tx_power_w),
            ("carrier", carrier_hz),
            ("bandwidth", bandwidth_hz),
            ("system_temperature", system_temperature_k),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(RadioConfig {
            tx_power_w,
            carrier_hz,
            bandwidth_hz,
            system_temperature_k,
            pattern,
        })
    }

    pub fn wavelength_m(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_hz
    }

    /// Main-lobe gain of this config's pattern.
    pub fn gain(&self) -> f64 {
        main_lobe_gain(&self.pattern)
    }
}

/// The two frequency bands studied in the numeric analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Band {
    /// Ka-band millimeter wave: 60 dBm, 38 GHz carrier, 400 MHz, 100 K.
    MmWave,
    /// Sub-terahertz: 27 dBm, 130 GHz carrier, 10 GHz, 100 K.
    SubThz,
}

impl Band {
    /// Stable identifier used by the config schema.
    pub fn name(&self) -> &'static str {
        match self {
            Band::MmWave => "mmwave",
            Band::SubThz => "subthz",
        }
    }

    pub fn from_name(s: &str) -> Option<Band> {
        match s {
            "mmwave" => Some(Band::MmWave),
            "subthz" => Some(Band::SubThz),
            _ => None,
        }
    }

    /// Radio config for this band with the given antenna pattern.
    pub fn config(&self, pattern: AntennaPattern) -> RadioConfig {
        let (p_dbm, f_c, b) = match self {
            Band::MmWave => (60.0, 38e9, 400e6),
            Band::SubThz => (27.0, 130e9, 10e9),
        };
        RadioConfig {
            tx_power_w: dbm_to_watts(p_dbm),
            carrier_hz: f_c,
            bandwidth_hz: b,
            system_temperature_k: 100.0,
            pattern,
        }
    }

    /// Convenience: band preset with a pure cone of beamwidth `alpha`.
    pub fn config_with_cone(&self, beamwidth_rad: f64) -> Result<RadioConfig> {
        Ok(self.config(AntennaPattern::cone(beamwidth_rad)?))
    }
}

/// Free-space received power `P_tx * g_tx * g_rx * (lambda / (4 pi d))^2`.
pub fn received_power(cfg: &RadioConfig, g_tx: f64, g_rx: f64, distance_m: f64) -> Result<f64> {
    if distance_m.is_nan() || distance_m <= 0.0 {
        return Err(Error::Domain(format!(
            "link distance must be positive, got {distance_m}"
        )));
    }
    let spread = cfg.wavelength_m() / (2.0 * TAU * distance_m);
    Ok(cfg.tx_power_w * g_tx * g_rx * spread * spread)
}

/// Johnson-Nyquist thermal noise power `k * T * B`.
pub fn noise_power(pc: &crate::orbital::PhysicalConstants, cfg: &RadioConfig) -> f64 {
    pc.boltzmann_j_per_k * cfg.system_temperature_k * cfg.bandwidth_hz
}

/// Shannon capacity `B * log2(1 + sinr)` in bit/s.
pub fn capacity(bandwidth_hz: f64, sinr: f64) -> Result<f64> {
    if sinr < 0.0 || sinr.is_nan() {
        return Err(Error::Domain(format!("sinr must be >= 0, got {sinr}")));
    }
    Ok(bandwidth_hz * (1.0 + sinr).log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbital::PhysicalConstants;
    use crate::rng::SplitMix64;
    use std::f64::consts::PI;

    fn mmwave(alpha_deg: f64) -> RadioConfig {
        Band::MmWave.config_with_cone(alpha_deg.to_radians()).unwrap()
    }

    #[test]
    fn cone_gain_examples() {
        let g = |deg: f64| main_lobe_gain(&AntennaPattern::cone(deg.to_radians()).unwrap());
        assert!((g(360.0) - 1.0).abs() < 1e-12); // isotropic
        assert!((g(180.0) - 2.0).abs() < 1e-12); // hemisphere
        // Frozen: 2 / (1 - cos(30 deg)).
        assert!((g(60.0) - 14.928_203).abs() < 1e-5);
        assert!((linear_to_db(g(60.0)) - 11.7401).abs() < 1e-3);
        assert!(AntennaPattern::cone(0.0).is_err());
    }

    #[test]
    fn cone_gain_monotone_decreasing_in_beamwidth() {
        let mut prev = f64::INFINITY;
        for deg in 1..=360 {
            let g = main_lobe_gain(&AntennaPattern::cone((deg as f64).to_radians()).unwrap());
            assert!(g < prev, "gain must fall as the beam widens");
            prev = g;
        }
    }

    #[test]
    fn cone_conserves_radiated_power() {
        // G * (cone solid angle) / (4 pi) == 1.
        let mut rng = SplitMix64::new(3);
        for _ in 0..200 {
            let alpha = rng.uniform(1e-3, TAU);
            let g = main_lobe_gain(&AntennaPattern::cone(alpha).unwrap());
            let solid = TAU * 2.0 * ((alpha / 4.0).sin().powi(2)); // 2pi(1-cos(a/2))
            assert!((g * solid / (2.0 * TAU) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn cone_sphere_conserves_radiated_power_and_orders_gains() {
        let mut rng = SplitMix64::new(4);
        for _ in 0..200 {
            let alpha = rng.uniform(1e-2, PI);
            let level = rng.uniform(3.0, 40.0);
            let p = AntennaPattern::cone_sphere(alpha, level).unwrap();
            let g_main = main_lobe_gain(&p);
            let g_side = p.sidelobe_gain();
            assert!(g_side > 0.0 && g_side < g_main);
            assert!((g_side / g_main - db_to_linear(-level)).abs() < 1e-12);
            let omc = 2.0 * (alpha / 4.0).sin().powi(2);
            let total = g_main * omc / 2.0 + g_side * (2.0 - omc) / 2.0;
            assert!((total - 1.0).abs() < 1e-9, "power conservation, got {total}");
        }
    }

    #[test]
    fn gain_toward_beam_edges() {
        let pattern = AntennaPattern::cone(10f64.to_radians()).unwrap();
        let bore = Vec3::new(1.0, 0.0, 0.0);
        let on_axis = gain_toward(&pattern, bore, bore);
        assert!((on_axis - main_lobe_gain(&pattern)).abs() < 1e-12);
        // Exactly alpha/2 off axis: outside (strict inequality).
        let (s, c) = 5f64.to_radians().sin_cos();
        assert_eq!(gain_toward(&pattern, bore, Vec3::new(c, s, 0.0)), 0.0);
        // Just inside.
        let (s, c) = 4.999f64.to_radians().sin_cos();
        assert!(gain_toward(&pattern, bore, Vec3::new(c, s, 0.0)) > 0.0);
        // Cone-plus-sphere 13 dB down, 90 degrees off axis: main lobe
        // divided by 10^1.3.
        let cps = AntennaPattern::cone_sphere(10f64.to_radians(), 13.0).unwrap();
        let side = gain_toward(&cps, bore, Vec3::new(0.0, 1.0, 0.0));
        assert!((side - main_lobe_gain(&cps) / 10f64.powf(1.3)).abs() < 1e-9);
    }

    #[test]
    fn received_power_examples() {
        let cfg = mmwave(5.0);
        // Unit spreading factor: d = lambda / (4 pi).
        let d = cfg.wavelength_m() / (2.0 * TAU);
        let p = received_power(&cfg, 1.0, 1.0, d).unwrap();
        assert!((p / cfg.tx_power_w - 1.0).abs() < 1e-12);
        // Inverse square.
        let p1 = received_power(&cfg, 1.0, 1.0, 1e5).unwrap();
        let p2 = received_power(&cfg, 1.0, 1.0, 2e5).unwrap();
        assert!((p1 / p2 - 4.0).abs() < 1e-12);
        // Frozen regression: mmWave preset, cone gain at 5 deg, 100 km.
        let g = cfg.gain();
        let p100 = received_power(&cfg, g, g, 100e3).unwrap();
        assert!((p100 / 1.740_374_736e-7 - 1.0).abs() < 1e-9, "p100 = {p100:e}");
        assert!(received_power(&cfg, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn received_power_scaling_properties() {
        let mut rng = SplitMix64::new(5);
        let base = mmwave(5.0);
        for _ in 0..500 {
            let (g_tx, g_rx) = (rng.uniform(0.1, 1e4), rng.uniform(0.1, 1e4));
            let d = rng.uniform(1.0, 1e7);
            let k = rng.uniform(0.5, 20.0);
            let p = received_power(&base, g_tx, g_rx, d).unwrap();
            let mut scaled = base;
            scaled.tx_power_w *= k;
            assert!((received_power(&scaled, g_tx, g_rx, d).unwrap() / (p * k) - 1.0).abs() < 1e-12);
            assert!(
                (received_power(&base, g_tx * k, g_rx, d).unwrap() / (p * k) - 1.0).abs() < 1e-12
            );
            assert!(
                (received_power(&base, g_tx, g_rx, d * k).unwrap() * k * k / p - 1.0).abs() < 1e-12
            );
        }
    }

    #[test]
    fn noise_power_examples() {
        let pc = PhysicalConstants::default();
        let sub = Band::SubThz.config_with_cone(1f64.to_radians()).unwrap();
        let n_sub = noise_power(&pc, &sub);
        assert!((n_sub / 1.380_649e-11 - 1.0).abs() < 1e-12);
        assert!((watts_to_dbm(n_sub) - -78.5992).abs() < 1e-3);
        let mmw = mmwave(5.0);
        let n_mmw = noise_power(&pc, &mmw);
        assert!((n_mmw / 5.522_596e-13 - 1.0).abs() < 1e-12);
        assert!((watts_to_dbm(n_mmw) - -92.5786).abs() < 1e-3);
        // Linearity in bandwidth.
        let mut wide = mmw;
        wide.bandwidth_hz *= 2.0;
        assert!((noise_power(&pc, &wide) / n_mmw - 2.0).abs() < 1e-12);
    }

    #[test]
    fn capacity_examples() {
        assert_eq!(capacity(10e9, 0.0).unwrap(), 0.0);
        assert!((capacity(10e9, 1.0).unwrap() - 10e9).abs() < 1e-3);
        // SIR asymptote over 400 MHz lands near 0.54 Gbit/s.
        let c = capacity(400e6, 1.550_546_097).unwrap();
        assert!((c - 5.403_225e8).abs() < 1e2, "c = {c}");
        assert!(capacity(1e9, -0.1).is_err());
        // Monotone in both arguments.
        assert!(capacity(1e9, 2.0).unwrap() > capacity(1e9, 1.0).unwrap());
        assert!(capacity(2e9, 1.0).unwrap() > capacity(1e9, 1.0).unwrap());
    }

    #[test]
    fn band_presets_match_the_table() {
        let m = Band::MmWave.config_with_cone(0.1).unwrap();
        assert!((m.tx_power_w - 1000.0).abs() < 1e-9);
        assert_eq!(m.carrier_hz, 38e9);
        assert_eq!(m.bandwidth_hz, 400e6);
        assert_eq!(m.system_temperature_k, 100.0);
        let s = Band::SubThz.config_with_cone(0.1).unwrap();
        assert!((s.tx_power_w - 0.501_187_233_6).abs() < 1e-9);
        assert_eq!(s.carrier_hz, 130e9);
        assert_eq!(s.bandwidth_hz, 10e9);
        assert_eq!(Band::from_name("mmwave"), Some(Band::MmWave));
        assert_eq!(Band::from_name("subthz"), Some(Band::SubThz));
        assert_eq!(Band::from_name("laser"), None);
    }
}
