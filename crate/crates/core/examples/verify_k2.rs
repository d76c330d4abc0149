//! Checks the (K.2) supercongruence at every odd prime up to a bound.
//!
//! ```text
//! cargo run --example verify_k2 -- 500
//! ```

use supercong::congruence::{check_k2, primes_in_range};

fn main() {
    let bound: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let mut worst = i64::MAX;
    for p in primes_in_range(3, bound) {
        let report = check_k2(p).expect("odd prime");
        assert!(report.passed(), "counterexample: {report}");
        worst = worst.min(report.margin().unwrap_or(i64::MAX));
        if p < 20 {
            println!("{report}   S = {}", report.lhs_digest);
        }
    }
    println!("all odd primes up to {bound} pass; smallest margin over p^4 is {worst}");
}
