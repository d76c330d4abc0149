//! Parallel sweep of several checks, rendered as a JSON-lines report.

use supercong::cli::{render, Format};
use supercong::congruence::{sweep, Check, CheckOptions};

fn main() {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let checks = [Check::K2, Check::Key2, Check::Morley, Check::Wolstenholme];
    let reports = sweep(&checks, 3, 40, 1, workers, &CheckOptions::default()).unwrap();
    print!("{}", render(&reports, Format::Json, false, 0).unwrap());
}
