//! Acceptance suite: one test per headline claim of the interference
//! model, each printing a PASS/FAIL line (visible with `--nocapture`).
//!
//! Run with `cargo test --test acceptance -- --nocapture`.

use std::time::Instant;
use xlink::analytic::{
    combined_time_average, min_isolation_altitude, optimal_satellite_count,
    single_interferer_count, single_report, single_sinr, single_sir, sir_asymptote,
    CoplanarScenario, IsolationOutcome, SingleOrbitScenario, VictimOrbit,
};
use xlink::orbital::{ConstellationSpec, OrbitSpec, PhysicalConstants};
use xlink::radio::{capacity, linear_to_db, Band};
use xlink::simulator::{config_from_coplanar, config_from_shifted, run};
use xlink::sweeps::WalkerRecipe;
use std::f64::consts::{PI, TAU};

fn criterion(n: usize, ok: bool, detail: &str) {
    println!("acceptance criterion {n:2}: {} - {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {detail}");
}

fn mmwave_scenario(n: usize, alpha_deg: f64) -> SingleOrbitScenario {
    SingleOrbitScenario::new(
        OrbitSpec::equatorial(500e3, n).unwrap(),
        Band::MmWave.config_with_cone(alpha_deg.to_radians()).unwrap(),
    )
}

// 1. The SIR limit sits at 1.9 dB and dense orbits approach it.
#[test]
fn criterion_01_sir_asymptote() {
    let t0 = Instant::now();
    let asym_db = linear_to_db(sir_asymptote());
    let dense_db = linear_to_db(single_sir(5000, 500e3, 40f64.to_radians()));
    let gap = (dense_db - asym_db).abs();
    let elapsed = t0.elapsed().as_secs_f64();
    let ok = (asym_db - 1.906).abs() <= 0.01 && gap <= 0.05 && elapsed < 1.0;
    criterion(
        1,
        ok,
        &format!("asymptote {asym_db:.4} dB, N=5000 gap {gap:.4} dB, {elapsed:.2} s"),
    );
}

// 2. 71 satellites maximize the interference-free deployment, and the
// 72nd costs the link more than 35 dB of SINR.
#[test]
fn criterion_02_optimal_count_and_sinr_cliff() {
    let t0 = Instant::now();
    let n_star = optimal_satellite_count(500e3, 5f64.to_radians());
    let s71 = linear_to_db(single_sinr(&mmwave_scenario(71, 5.0)));
    let s72 = linear_to_db(single_sinr(&mmwave_scenario(72, 5.0)));
    let drop = s71 - s72;
    let elapsed = t0.elapsed().as_secs_f64();
    let ok = n_star == 71 && drop > 35.0 && elapsed < 1.0;
    criterion(
        2,
        ok,
        &format!("N* = {n_star}, SINR {s71:.4} -> {s72:.4} dB (drop {drop:.4} dB), {elapsed:.2} s"),
    );
}

// 3. SIR steps shrink as the ring densifies: > 1.5 dB at 24 -> 25,
// < 0.2 dB at 73 -> 74 (40-degree beams).
#[test]
fn criterion_03_sir_step_structure() {
    let t0 = Instant::now();
    let alpha = 40f64.to_radians();
    let at = |n: usize| linear_to_db(single_sir(n, 500e3, alpha));
    let early = at(24) - at(25);
    let late = at(73) - at(74);
    let elapsed = t0.elapsed().as_secs_f64();
    let ok = early > 1.5 && late < 0.2 && elapsed < 1.0;
    criterion(
        3,
        ok,
        &format!("drop 24->25 = {early:.4} dB, drop 73->74 = {late:.4} dB, {elapsed:.2} s"),
    );
}

// 4. Altitude cancels out of the SIR whenever the beam term binds the
// interferer count: bit-identical values across the LEO band.
#[test]
fn criterion_04_altitude_invariance() {
    let pc = PhysicalConstants::default();
    let mut checked = 0;
    let mut ok = true;
    let mut detail = String::new();
    for (n, alpha_deg) in [(100usize, 10.0f64), (200, 20.0), (80, 5.0), (150, 40.0)] {
        let alpha = alpha_deg.to_radians();
        // Only meaningful where the beam term binds at every altitude.
        let beam_bound = |h: f64| {
            let horizon = n as f64 / PI * (pc.earth_radius_m / (pc.earth_radius_m + h)).acos();
            1.0 + n as f64 * alpha / TAU < horizon
        };
        if !(beam_bound(500e3) && beam_bound(1000e3) && beam_bound(2000e3)) {
            continue;
        }
        checked += 1;
        let base = single_sir(n, 500e3, alpha);
        for h in [1000e3, 2000e3] {
            if single_sir(n, h, alpha).to_bits() != base.to_bits() {
                ok = false;
                detail = format!("N={n}, alpha={alpha_deg} deg differs at h={h}");
            }
        }
    }
    ok &= checked >= 3;
    if detail.is_empty() {
        detail = format!("{checked} beam-bound configs bit-identical across 500/1000/2000 km");
    }
    criterion(4, ok, &detail);
}

// 5. Capacity at the SIR limit: 0.540 Gbit/s over 400 MHz and
// 13.5 Gbit/s over 10 GHz, exactly per the implemented formula.
#[test]
fn criterion_05_capacity_asymptotes() {
    let asym = sir_asymptote();
    let c_mmw = capacity(400e6, asym).unwrap();
    let c_thz = capacity(10e9, asym).unwrap();
    // Property: identical to the direct Shannon expression.
    let exact_mmw = 400e6 * (1.0 + asym).log2();
    let exact_thz = 10e9 * (1.0 + asym).log2();
    let ok = c_mmw.to_bits() == exact_mmw.to_bits()
        && c_thz.to_bits() == exact_thz.to_bits()
        && (c_mmw - 5.403_225e8).abs() < 1e3
        && (c_thz - 1.350_806e10).abs() < 1e5;
    criterion(
        5,
        ok,
        &format!("400 MHz -> {:.6} Gbit/s, 10 GHz -> {:.5} Gbit/s", c_mmw / 1e9, c_thz / 1e9),
    );
}

// 6. Co-planar pair at 500/510 km, N = 100, 10-degree beams: the
// simulated SIR series is periodic with the offset sweep period, stays
// within the [-25, 0] dB envelope (2 dB slack), and the upper-victim
// run mirrors the lower-victim run under time reversal.
#[test]
fn criterion_06_coplanar_periodicity_and_symmetry() {
    let t0 = Instant::now();
    let radio = Band::MmWave.config_with_cone(10f64.to_radians()).unwrap();
    let lower = OrbitSpec::equatorial(500e3, 100).unwrap();
    let upper = OrbitSpec::equatorial(510e3, 100).unwrap();
    let scen_low = CoplanarScenario::new(lower, upper, radio, VictimOrbit::Lower).unwrap();
    let scen_up = CoplanarScenario::new(lower, upper, radio, VictimOrbit::Upper).unwrap();
    let period = scen_low.pattern_period_s();
    let steps_per_period = 10_000usize;
    let dt = period / steps_per_period as f64;

    let series_low = run(&config_from_coplanar(&scen_low, 2.0 * period + 0.5 * dt, dt)).unwrap();
    let series_up = run(&config_from_coplanar(&scen_up, period + 0.5 * dt, dt)).unwrap();

    // Periodicity: lag of one period leaves powers within 1e-9 relative;
    // half a period does not.
    let mut max_period_dev: f64 = 0.0;
    let mut half_lag_dev: f64 = 0.0;
    for k in 0..steps_per_period {
        let a = &series_low.reports[k];
        let b = &series_low.reports[k + steps_per_period];
        max_period_dev = max_period_dev.max(rel_dev(
            a.expected_interference_w,
            b.expected_interference_w,
        ));
        let h = &series_low.reports[k + steps_per_period / 2];
        half_lag_dev = half_lag_dev.max(rel_dev(
            a.expected_interference_w,
            h.expected_interference_w,
        ));
    }

    // Envelope over one period, in dB.
    let mut min_db = f64::INFINITY;
    let mut max_db = f64::NEG_INFINITY;
    for r in &series_low.reports[..steps_per_period] {
        let db = linear_to_db(r.sir);
        min_db = min_db.min(db);
        max_db = max_db.max(db);
    }
    let envelope_ok = min_db >= -27.0 && max_db <= 2.0 && (max_db - min_db) > 5.0;

    // Mirror symmetry: with both phase offsets zero the offset crosses
    // zero at t = 0, so the upper-victim cross-orbit interference at t
    // equals the lower-victim one at -t = period - t. Each victim's own
    // orbit adds a constant, which is removed before comparing; the SIR
    // profiles then mirror up to the victim-specific constants (within
    // 0.05 dB).
    let own_low = single_report(&SingleOrbitScenario::new(lower, radio)).expected_interference_w;
    let own_up = single_report(&SingleOrbitScenario::new(upper, radio)).expected_interference_w;
    let mut max_mirror_dev: f64 = 0.0;
    let mut max_sir_mirror_db: f64 = 0.0;
    for k in 0..=steps_per_period {
        let up = &series_up.reports[k];
        let low = &series_low.reports[steps_per_period - k];
        let cross_up = (up.expected_interference_w - own_up).max(0.0);
        let cross_low = (low.expected_interference_w - own_low).max(0.0);
        max_mirror_dev = max_mirror_dev.max(rel_dev(cross_up, cross_low));
        let ratio_db = (linear_to_db(up.sir) - linear_to_db(low.sir)).abs();
        max_sir_mirror_db = max_sir_mirror_db.max(ratio_db);
    }

    let elapsed = t0.elapsed().as_secs_f64();
    let ok = max_period_dev <= 1e-9
        && half_lag_dev > 1e-3
        && envelope_ok
        && max_mirror_dev <= 1e-6
        && max_sir_mirror_db <= 0.05
        && elapsed < 60.0;
    criterion(
        6,
        ok,
        &format!(
            "period dev {max_period_dev:.2e} (half-lag {half_lag_dev:.2e}), SIR in [{min_db:.2}, {max_db:.2}] dB, \
             mirror dev {max_mirror_dev:.2e} (SIR {max_sir_mirror_db:.4} dB), {elapsed:.1} s"
        ),
    );
}

// 7. Isolation altitude: narrow beams isolate within 10 km; at 3-degree
// beams the 10-satellite requirement exceeds the 100-satellite one by
// roughly 1000 km.
#[test]
fn criterion_07_isolation_altitude() {
    let t0 = Instant::now();
    let solve = |n: usize, alpha_deg: f64| -> IsolationOutcome {
        let s = CoplanarScenario::new(
            OrbitSpec::equatorial(500e3, n).unwrap(),
            OrbitSpec::equatorial(510e3, n).unwrap(),
            Band::MmWave.config_with_cone(alpha_deg.to_radians()).unwrap(),
            VictimOrbit::Lower,
        )
        .unwrap();
        min_isolation_altitude(&s).unwrap()
    };
    let sep = |o: IsolationOutcome| match o {
        IsolationOutcome::Bounded { upper_altitude_m } => upper_altitude_m - 500e3,
        IsolationOutcome::UnboundedInLeo => f64::INFINITY,
    };
    let narrow = sep(solve(50, 1.0));
    let wide_sparse = sep(solve(10, 3.0));
    let wide_dense = sep(solve(100, 3.0));
    let spread = wide_sparse - wide_dense;
    let elapsed = t0.elapsed().as_secs_f64();
    let ok = narrow < 10e3 && (800e3..=1200e3).contains(&spread) && elapsed < 300.0;
    criterion(
        7,
        ok,
        &format!(
            "dh(N=50, 1 deg) = {:.2} km, dh(N=10, 3 deg) - dh(N=100, 3 deg) = {:.1} km, {elapsed:.1} s",
            narrow / 1e3,
            spread / 1e3
        ),
    );
}

// 8. Shifted orbits at 3-degree inclination, 90-degree RAAN shift:
// two SIR-drop windows per orbit (four over two periods), narrower
// when the ring densifies to 100 satellites.
#[test]
fn criterion_08_shifted_drop_windows() {
    let t0 = Instant::now();
    let windows_for = |n: usize| -> (usize, f64) {
        let s = xlink::analytic::ShiftedScenario::new(
            OrbitSpec::new(500e3, 3f64.to_radians(), 0.0, n, 0.0).unwrap(),
            OrbitSpec::new(500e3, 3f64.to_radians(), FRAC_PI_2, n, PI / n as f64).unwrap(),
            Band::MmWave.config_with_cone(30f64.to_radians()).unwrap(),
        )
        .unwrap();
        let period = s.constants.orbital_period_s(500e3).unwrap();
        let dt = period / 5000.0;
        let series = run(&config_from_shifted(&s, 2.0 * period - 0.5 * dt, dt)).unwrap();
        let baseline_db = linear_to_db(
            single_report(&SingleOrbitScenario::new(s.orbit1, s.radio)).sir,
        );
        let threshold = baseline_db - 4.0;
        let below: Vec<bool> = series
            .reports
            .iter()
            .map(|r| linear_to_db(r.sir) < threshold)
            .collect();
        // Merge sub-0.1% gaps and drop sub-0.1% blips: discretization guard.
        let guard = below.len() / 1000;
        let runs = contiguous_runs(&below, guard);
        let total_below: usize = runs.iter().map(|&(_, len)| len).sum();
        (runs.len(), total_below as f64 * dt)
    };
    let (w50, dur50) = windows_for(50);
    let (w100, dur100) = windows_for(100);
    let elapsed = t0.elapsed().as_secs_f64();
    let ok = w50 == 4 && w100 == 4 && dur100 < dur50 && elapsed < 60.0;
    criterion(
        8,
        ok,
        &format!(
            "windows(N=50) = {w50} ({dur50:.0} s below), windows(N=100) = {w100} ({dur100:.0} s below), {elapsed:.1} s"
        ),
    );
}

use std::f64::consts::FRAC_PI_2;

// Runs of `true` after closing gaps shorter than `guard` and dropping
// runs shorter than `guard`.
fn contiguous_runs(mask: &[bool], guard: usize) -> Vec<(usize, usize)> {
    let mut filled: Vec<bool> = mask.to_vec();
    // Close short gaps.
    let mut i = 0;
    while i < filled.len() {
        if !filled[i] {
            let start = i;
            while i < filled.len() && !filled[i] {
                i += 1;
            }
            if start > 0 && i < filled.len() && i - start <= guard {
                for cell in filled.iter_mut().take(i).skip(start) {
                    *cell = true;
                }
            }
        } else {
            i += 1;
        }
    }
    // Collect runs, dropping blips.
    let mut runs = Vec::new();
    let mut i = 0;
    while i < filled.len() {
        if filled[i] {
            let start = i;
            while i < filled.len() && filled[i] {
                i += 1;
            }
            if i - start > guard {
                runs.push((start, i - start));
            }
        } else {
            i += 1;
        }
    }
    runs
}

// 9. Combined two-Walker deployment (10 planes, 50-degree inclination,
// 500/510 km): narrow sub-THz beams stay interference-free through 350
// satellites per orbit and deviate by 360; mmWave capacity with the
// 10 km co-planar neighbor plateaus at or below 0.8 Gbit/s.
#[test]
fn criterion_09_combined_deployment() {
    let t0 = Instant::now();
    let pc = PhysicalConstants::default();
    let shells = |n: usize, h: f64| -> ConstellationSpec {
        WalkerRecipe {
            planes: 10,
            sats_per_plane: n,
            altitude_m: h,
            inclination_rad: 50f64.to_radians(),
            raan0_rad: 0.0,
        }
        .build()
        .unwrap()
    };
    let averaged = |n: usize, band: Band, alpha_deg: f64, samples: usize| {
        let radio = band.config_with_cone(alpha_deg.to_radians()).unwrap();
        let deployment = vec![shells(n, 500e3), shells(n, 510e3)];
        let period = pc.max_offset_period_s(n, n, 500e3, 510e3).unwrap();
        combined_time_average(&deployment, &radio, period, samples).unwrap()
    };

    // Sub-THz, 1-degree beams: silent through 350, first same-orbit
    // interferer by 360.
    let mut subthz_ok = true;
    let mut detail = String::new();
    for n in [200usize, 340, 350] {
        let avg = averaged(n, Band::SubThz, 1.0, 200);
        let dev = rel_dev(avg.report.capacity_bps, avg.capacity_no_interference_bps);
        if avg.report.expected_interference_w != 0.0 || dev > 1e-12 {
            subthz_ok = false;
            detail = format!("unexpected interference at N={n} (dev {dev:.2e}); ");
        }
    }
    let at360 = averaged(360, Band::SubThz, 1.0, 200);
    let dev360 = (at360.capacity_no_interference_bps - at360.report.capacity_bps)
        / at360.capacity_no_interference_bps;
    let boundary_ok = single_interferer_count(350, 500e3, 1f64.to_radians()) == 0
        && single_interferer_count(360, 500e3, 1f64.to_radians()) >= 1
        && dev360 > 1e-3;

    // mmWave, 5-degree beams, 10 km co-planar separation: the co-planar
    // interference caps the time-averaged capacity below 0.8 Gbit/s.
    let mut mm_wave_caps = Vec::new();
    for n in [150usize, 250, 400, 500] {
        let avg = averaged(n, Band::MmWave, 5.0, 200);
        mm_wave_caps.push(avg.report.capacity_bps);
    }
    let plateau_ok = mm_wave_caps.iter().all(|&c| c <= 0.8e9);

    let elapsed = t0.elapsed().as_secs_f64();
    let ok = subthz_ok && boundary_ok && plateau_ok && elapsed < 600.0;
    criterion(
        9,
        ok,
        &format!(
            "{detail}sub-THz deviation at N=360: {:.2}%, mmWave caps {:?} Gbit/s, {elapsed:.1} s",
            dev360 * 100.0,
            mm_wave_caps.iter().map(|c| (c / 1e7).round() / 100.0).collect::<Vec<_>>()
        ),
    );
}

// 10. Oracle equivalence: across >= 1000 randomized configurations per
// scenario family, the closed forms and the time-driven simulator agree
// on interferer sets exactly and on powers within 1e-9 relative.
#[test]
fn criterion_10_oracle_equivalence() {
    let t0 = Instant::now();
    let reports = xlink::validate::run_all(1000, 0x5eed_ace5);
    let mut ok = true;
    let mut details = Vec::new();
    for r in &reports {
        ok &= r.passed(1e-9) && r.configs_run >= 1000;
        details.push(format!(
            "{}: dev {:.1e}/{:.1e} ties {} mismatches {}",
            r.family.name(),
            r.max_interference_rel_dev,
            r.max_signal_rel_dev,
            r.boundary_ties_skipped,
            r.set_mismatches
        ));
    }
    let elapsed = t0.elapsed().as_secs_f64();
    ok &= elapsed < 600.0;
    criterion(10, ok, &format!("{} ({elapsed:.1} s)", details.join("; ")));
}

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
