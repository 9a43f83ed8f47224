//! The largest interference-free satellite count per altitude and
//! beamwidth, and the SINR cliff one extra satellite causes.
//!
//! ```text
//! cargo run --example optimal_count
//! ```

use xlink::analytic::{optimal_satellite_count, single_sinr, SingleOrbitScenario};
use xlink::orbital::OrbitSpec;
use xlink::radio::{linear_to_db, Band};

fn main() {
    println!("largest interference-free satellite count N*:\n");
    print!("{:>12}", "alpha \\ h");
    for h_km in [500.0, 1000.0, 2000.0] {
        print!("{:>10.0} km", h_km);
    }
    println!();
    for alpha_deg in [1.0f64, 3.0, 5.0, 10.0, 30.0] {
        print!("{alpha_deg:>8.0} deg");
        for h_km in [500.0f64, 1000.0, 2000.0] {
            print!("{:>13}", optimal_satellite_count(h_km * 1e3, alpha_deg.to_radians()));
        }
        println!();
    }

    // The cliff at the mmWave reference point: 5-degree beams, 500 km.
    let n_star = optimal_satellite_count(500e3, 5f64.to_radians());
    println!("\nmmWave, 5 deg beams at 500 km: N* = {n_star}");
    let radio = Band::MmWave.config_with_cone(5f64.to_radians()).unwrap();
    for n in [n_star - 1, n_star, n_star + 1, n_star + 2] {
        let s = SingleOrbitScenario::new(OrbitSpec::equatorial(500e3, n).unwrap(), radio);
        println!("  N = {n:>3}: SINR = {:>7.3} dB", linear_to_db(single_sinr(&s)));
    }
}
