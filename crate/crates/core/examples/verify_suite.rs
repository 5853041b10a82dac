//! Runs every verification criterion on one thread and prints its verdict
//! and wall-clock time.

use std::time::Instant;

use lorentz_delta::sampling::DEFAULT_SEED;
use lorentz_delta::verify::criteria;

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    for c in criteria() {
        let start = Instant::now();
        let r = c.evaluate(seed);
        let verdict = if r.pass() { "pass" } else { "FAIL" };
        println!("{:<26} {verdict}  {:>8.2?}", c.name, start.elapsed());
        for f in r.failures() {
            println!(
                "    {}: expected {}, computed {}",
                f.name, f.expected, f.computed
            );
        }
    }
}
