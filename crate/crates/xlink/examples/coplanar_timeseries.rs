//! Time-varying SIR between two co-planar orbits 10 km apart, the
//! mirror symmetry between the two victims, and the interference
//! distribution over one pattern period.
//!
//! ```text
//! cargo run --example coplanar_timeseries
//! ```

use xlink::analytic::{CoplanarScenario, VictimOrbit};
use xlink::orbital::OrbitSpec;
use xlink::radio::{linear_to_db, Band};
use xlink::simulator::{config_from_coplanar, run};
use xlink::sweeps::interference_pdf;

fn main() {
    let radio = Band::MmWave.config_with_cone(10f64.to_radians()).unwrap();
    let lower = OrbitSpec::equatorial(500e3, 100).unwrap();
    let upper = OrbitSpec::equatorial(510e3, 100).unwrap();
    let scen = CoplanarScenario::new(lower, upper, radio, VictimOrbit::Lower).unwrap();
    let period = scen.pattern_period_s();
    println!(
        "two co-planar orbits, 500/510 km, N = 100, mmWave 10 deg beams; pattern period {:.0} s",
        period
    );

    let dt = period / 400.0;
    let series_low = run(&config_from_coplanar(&scen, period, dt)).unwrap();
    let scen_up = CoplanarScenario::new(lower, upper, radio, VictimOrbit::Upper).unwrap();
    let series_up = run(&config_from_coplanar(&scen_up, period, dt)).unwrap();

    println!("\n{:>9} {:>12} {:>12} {:>14}", "t_s", "sir_low_db", "sir_up_db", "interferers");
    for k in (0..series_low.len()).step_by(25) {
        println!(
            "{:>9.0} {:>12.2} {:>12.2} {:>14}",
            series_low.timestamps_s[k],
            linear_to_db(series_low.reports[k].sir),
            linear_to_db(series_up.reports[k].sir),
            series_low.reports[k].interferer_ids.len(),
        );
    }

    let hist = interference_pdf(&series_low, 12).unwrap();
    println!("\ninterference pdf (lower victim, one period):");
    let peak = hist
        .densities_per_db
        .iter()
        .cloned()
        .fold(0.0f64, f64::max);
    for (i, d) in hist.densities_per_db.iter().enumerate() {
        let bar = "#".repeat((d / peak * 50.0).round() as usize);
        println!(
            "  [{:>8.2}, {:>8.2}) dBm  {bar}",
            hist.bin_edges_dbm[i],
            hist.bin_edges_dbm[i + 1]
        );
    }
}
