//! Minimum co-planar orbit separation that guarantees an empty
//! interferer set for every relative phase, versus satellite count.
//!
//! ```text
//! cargo run --example isolation_altitude
//! ```

use xlink::analytic::{min_isolation_altitude, CoplanarScenario, IsolationOutcome, VictimOrbit};
use xlink::orbital::OrbitSpec;
use xlink::radio::Band;

fn main() {
    println!("minimum upper-orbit separation for interference isolation (lower orbit at 500 km):\n");
    print!("{:>8}", "N");
    for alpha in [1.0, 3.0, 10.0] {
        print!("{:>16}", format!("a = {alpha:.0} deg"));
    }
    println!();
    for n in [10usize, 20, 50, 100, 200] {
        print!("{n:>8}");
        for alpha_deg in [1.0f64, 3.0, 10.0] {
            let s = CoplanarScenario::new(
                OrbitSpec::equatorial(500e3, n).unwrap(),
                OrbitSpec::equatorial(510e3, n).unwrap(),
                Band::MmWave.config_with_cone(alpha_deg.to_radians()).unwrap(),
                VictimOrbit::Lower,
            )
            .unwrap();
            match min_isolation_altitude(&s).unwrap() {
                IsolationOutcome::Bounded { upper_altitude_m } => {
                    print!("{:>13.2} km", (upper_altitude_m - 500e3) / 1e3)
                }
                IsolationOutcome::UnboundedInLeo => print!("{:>16}", "beyond LEO"),
            }
        }
        println!();
    }
    println!("\nnarrow beams allow co-channel constellations a few km apart;");
    println!("denser orbits point their beams closer to the tangent and isolate sooner.");
}
