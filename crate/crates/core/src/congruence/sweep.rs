use rayon::prelude::*;

use super::{Check, CheckOptions, CheckReport, Status};
use crate::{Error, Result};

/// Odd primes in `[lo, hi]`, by a sieve of Eratosthenes.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 3 || lo > hi {
        return Vec::new();
    }
    let n = hi as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            (i * i..=n).step_by(i).for_each(|j| composite[j] = true);
        }
        i += 1;
    }
    (lo.max(3)..=hi).filter(|&q| !composite[q as usize]).collect()
}

/// Turns a checker result into a report; domain errors become skips and
/// every other failure becomes an error record.
pub(crate) fn settle(
    name: &str,
    p: u64,
    r: u32,
    required: crate::Valuation,
    outcome: Result<CheckReport>,
) -> CheckReport {
    match outcome {
        Ok(report) => report,
        Err(Error::Domain(msg)) => CheckReport::without_verdict(name, p, r, required, Status::Skipped, msg),
        Err(e) => CheckReport::without_verdict(name, p, r, required, Status::Error, e.to_string()),
    }
}

/// Runs `job` for every item on a pool of `workers` threads and returns the
/// reports sorted by `(p, check)`, so output never depends on scheduling.
pub fn parallel_reports<T, F>(items: Vec<T>, workers: usize, job: F) -> Result<Vec<CheckReport>>
where
    T: Send,
    F: Fn(T) -> CheckReport + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
    let mut reports: Vec<CheckReport> = pool.install(|| items.into_par_iter().map(job).collect());
    reports.sort_by(|a, b| (a.p, &a.check).cmp(&(b.p, &b.check)));
    Ok(reports)
}

/// Runs every check at every odd prime in `[p_lo, p_hi]`.
pub fn sweep(
    checks: &[Check],
    p_lo: u64,
    p_hi: u64,
    r: u32,
    workers: usize,
    opts: &CheckOptions,
) -> Result<Vec<CheckReport>> {
    let jobs: Vec<(Check, u64)> = primes_in_range(p_lo, p_hi)
        .into_iter()
        .flat_map(|p| checks.iter().map(move |&c| (c, p)))
        .collect();
    parallel_reports(jobs, workers, |(check, p)| {
        settle(check.name(), p, r, check.required_valuation(p, r), check.run(p, r, opts))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_matches_trial_division() {
        let sieved = primes_in_range(1, 500);
        let trial: Vec<u64> = (3..=500).filter(|&n| crate::exact::is_prime(n)).collect();
        assert_eq!(sieved, trial);
        assert_eq!(primes_in_range(10, 20), vec![11, 13, 17, 19]);
        assert!(primes_in_range(0, 2).is_empty());
    }

    #[test]
    fn sweep_order_is_independent_of_workers() {
        let checks = [Check::K2, Check::Morley, Check::Key2];
        let opts = CheckOptions::default();
        let mut one = sweep(&checks, 3, 60, 1, 1, &opts).unwrap();
        let mut many = sweep(&checks, 3, 60, 1, 8, &opts).unwrap();
        one.iter_mut().chain(many.iter_mut()).for_each(|r| r.elapsed_ms = 0);
        assert_eq!(one, many);
        let morley3 = one.iter().find(|r| r.p == 3 && r.check == "morley").unwrap();
        assert_eq!(morley3.status, Status::Skipped);
        assert!(one.iter().filter(|r| r.check == "k2").all(|r| r.passed()));
    }
}
