use std::fmt;

use crate::exact::Valuation;

/// Longest digest kept in a report before truncation.
pub const DIGEST_LIMIT: usize = 64;
const TRUNCATION_MARKER: &str = "…truncated";

/// Truncates a decimal rendering to [`DIGEST_LIMIT`] characters.
pub fn digest(s: &str) -> String {
    if s.chars().count() <= DIGEST_LIMIT {
        return s.to_string();
    }
    let head: String = s.chars().take(DIGEST_LIMIT).collect();
    format!("{head}{TRUNCATION_MARKER}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    /// The prime does not satisfy the statement's hypothesis.
    Skipped,
    /// The check could not reach a verdict (e.g. precision exhausted).
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Error => "error",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one congruence check at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub check: String,
    pub p: u64,
    pub r: u32,
    pub required_valuation: Valuation,
    /// `None` for skipped checks and checks that errored.
    pub achieved_valuation: Option<Valuation>,
    pub status: Status,
    pub lhs_digest: String,
    pub rhs_digest: String,
    pub elapsed_ms: u64,
    /// Skip reason or error message.
    pub note: Option<String>,
}

impl CheckReport {
    /// Builds a verdict from a known achieved valuation. The caller must
    /// have ruled out undecidable lower bounds.
    pub(crate) fn verdict(
        check: &str,
        p: u64,
        r: u32,
        required: Valuation,
        achieved: Valuation,
        lhs: String,
        rhs: String,
    ) -> Self {
        let pass = achieved.meets(required).unwrap_or(false);
        CheckReport {
            check: check.to_string(),
            p,
            r,
            required_valuation: required,
            achieved_valuation: Some(achieved),
            status: if pass { Status::Pass } else { Status::Fail },
            lhs_digest: digest(&lhs),
            rhs_digest: digest(&rhs),
            elapsed_ms: 0,
            note: None,
        }
    }

    pub(crate) fn without_verdict(
        check: &str,
        p: u64,
        r: u32,
        required: Valuation,
        status: Status,
        note: String,
    ) -> Self {
        CheckReport {
            check: check.to_string(),
            p,
            r,
            required_valuation: required,
            achieved_valuation: None,
            status,
            lhs_digest: String::new(),
            rhs_digest: String::new(),
            elapsed_ms: 0,
            note: Some(note),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Re-derives the pass flag from the valuations.
    pub fn is_consistent(&self) -> bool {
        match (self.status, self.achieved_valuation) {
            (Status::Pass, Some(v)) => v.meets(self.required_valuation) == Some(true),
            (Status::Fail, Some(v)) => v.meets(self.required_valuation) == Some(false),
            (Status::Skipped | Status::Error, None) => true,
            _ => false,
        }
    }

    /// `achieved − required` for finite pairs, used for sweep summaries.
    pub fn margin(&self) -> Option<i64> {
        match (self.achieved_valuation?, self.required_valuation) {
            (Valuation::Finite(a) | Valuation::AtLeast(a), Valuation::Finite(k)) => Some(a - k),
            _ => None,
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<12} p={:<5} r={} {:<7}", self.check, self.p, self.r, self.status)?;
        match self.achieved_valuation {
            Some(v) => write!(f, " v_p={v} (need {})", self.required_valuation)?,
            None => write!(f, " (need {})", self.required_valuation)?,
        }
        if let Some(note) = &self.note {
            write!(f, " [{note}]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digests_truncate() {
        assert_eq!(digest("2607/512"), "2607/512");
        let long = "9".repeat(100);
        let d = digest(&long);
        assert!(d.starts_with(&"9".repeat(64)));
        assert!(d.ends_with("…truncated"));
        assert_eq!(d.chars().count(), 64 + "…truncated".chars().count());
    }

    #[test]
    fn verdicts_follow_valuations() {
        let r = CheckReport::verdict("k2", 3, 1, Valuation::Finite(4), Valuation::Finite(4), "a".into(), "b".into());
        assert!(r.passed() && r.is_consistent());
        assert_eq!(r.margin(), Some(0));
        let r = CheckReport::verdict("k2", 3, 1, Valuation::Finite(4), Valuation::Finite(3), "a".into(), "b".into());
        assert_eq!(r.status, Status::Fail);
        assert!(r.is_consistent());
        let r = CheckReport::verdict("p2", 3, 1, Valuation::Infinite, Valuation::Infinite, "a".into(), "a".into());
        assert!(r.passed() && r.margin().is_none());
    }
}
