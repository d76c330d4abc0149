//! Runs every auxiliary congruence that feeds the proof at a few primes and
//! prints the achieved p-adic valuations against the required ones.

use supercong::congruence::{Check, CheckOptions};

fn main() {
    let opts = CheckOptions::default();
    let primes = [3u64, 5, 7, 11, 13, 101];
    print!("{:<13}", "check");
    for p in primes {
        print!("{p:>11}");
    }
    println!();
    for check in Check::all().filter(|c| !matches!(c, Check::Swisher | Check::G7)) {
        print!("{:<13}", check.name());
        for p in primes {
            let cell = match check.run(p, 1, &opts) {
                Ok(r) => format!("{}/{}", r.achieved_valuation.expect("verdict"), r.required_valuation),
                Err(_) => "-".to_string(),
            };
            print!("{cell:>11}");
        }
        println!();
    }
}
