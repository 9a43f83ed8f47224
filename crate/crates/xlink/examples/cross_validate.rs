//! Randomized analytic/simulator equivalence sweep: every scenario
//! family, deterministic seeds, exact interferer-set agreement and
//! sub-1e-9 power agreement.
//!
//! ```text
//! cargo run --example cross_validate
//! ```

fn main() {
    let configs = 200;
    println!("cross-validating closed forms against the time-driven engine");
    println!("({configs} random configurations per scenario family)\n");
    let mut all_pass = true;
    for report in xlink::validate::run_all(configs, 0xd1ce) {
        println!("{report}");
        all_pass &= report.passed(1e-9);
    }
    println!(
        "\n{}",
        if all_pass {
            "all families agree (sets exact, powers within 1e-9 relative)"
        } else {
            "DISAGREEMENT FOUND - see the rows above"
        }
    );
    std::process::exit(if all_pass { 0 } else { 3 });
}
