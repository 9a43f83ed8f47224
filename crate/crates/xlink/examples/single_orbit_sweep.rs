//! Single-orbit SIR/SINR/capacity versus satellite count, for several
//! beamwidths and both band presets, with the theoretical 1.9 dB bound.
//!
//! ```text
//! cargo run --example single_orbit_sweep
//! ```

use xlink::analytic::{single_report, sir_asymptote, SingleOrbitScenario};
use xlink::orbital::OrbitSpec;
use xlink::radio::{linear_to_db, Band};

fn main() {
    let altitude = 500e3;
    println!(
        "single orbit at {:.0} km; SIR bound = {:.3} dB\n",
        altitude / 1e3,
        linear_to_db(sir_asymptote())
    );

    for (band, alphas) in [
        (Band::MmWave, [5.0f64, 10.0, 40.0]),
        (Band::SubThz, [1.0f64, 3.0, 5.0]),
    ] {
        println!("== {} ==", band.name());
        print!("{:>5}", "N");
        for a in alphas {
            print!("  | a={a:>4.0} deg: {:>8} {:>8} {:>9}", "sir_db", "sinr_db", "cap_gbps");
        }
        println!();
        for n in [10usize, 25, 50, 71, 72, 100, 150, 200] {
            print!("{n:>5}");
            for a in alphas {
                let radio = band.config_with_cone(a.to_radians()).unwrap();
                let orbit = OrbitSpec::equatorial(altitude, n).unwrap();
                let r = single_report(&SingleOrbitScenario::new(orbit, radio));
                print!(
                    "  |            {:>8.2} {:>8.2} {:>9.3}",
                    linear_to_db(r.sir),
                    linear_to_db(r.sinr),
                    r.capacity_bps / 1e9
                );
            }
            println!();
        }
        println!();
    }
    println!("the equivalent CSV: xlink sweep --config <cfg> with axis = n");
}
