use std::time::Instant;

use super::{eval_exact, eval_padic, parse, sum_series, ParseError, SumMode, SumValue, SummandAst};
use crate::congruence::{compare_exact, compare_padic, parallel_reports, primes_in_range, settle, CheckOptions, CheckReport};
use crate::exact::Valuation;
use crate::{Error, Result};

/// Truncation used when a block has no `terms=` line.
pub const DEFAULT_TERMS: &str = "(p^r-1)/2";

const KEYS: [&str; 5] = ["name", "summand", "rhs", "modexp", "terms"];

/// A user-defined congruence `Σ_{n=0}^{terms} summand ≡ rhs (mod p^modexp)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesSpec {
    pub name: String,
    /// Over `{n}`.
    pub summand: SummandAst,
    /// Over `{p, r}`.
    pub rhs: SummandAst,
    /// Over `{p, r}`.
    pub modexp: SummandAst,
    /// Over `{p, r}`.
    pub terms: SummandAst,
}

impl SeriesSpec {
    pub fn new(name: &str, summand: &str, rhs: &str, modexp: &str, terms: Option<&str>) -> Result<Self, ParseError> {
        Ok(SeriesSpec {
            name: name.to_string(),
            summand: parse(summand, &["n"])?,
            rhs: parse(rhs, &["p", "r"])?,
            modexp: parse(modexp, &["p", "r"])?,
            terms: parse(terms.unwrap_or(DEFAULT_TERMS), &["p", "r"])?,
        })
    }

    fn integer_at(&self, ast: &SummandAst, what: &str, p: u64, r: u32) -> Result<i64> {
        let v = eval_exact(ast, &[("p", p as i64), ("r", r as i64)])?;
        if !v.is_integer() {
            return Err(Error::NonInteger(format!("{}: {what} `{ast}` evaluates to {v}", self.name)));
        }
        i64::try_from(v.to_integer())
            .map_err(|_| Error::Domain(format!("{}: {what} evaluates to {v}, out of range", self.name)))
    }

    pub fn required_valuation(&self, p: u64, r: u32) -> Result<Valuation> {
        Ok(Valuation::Finite(self.integer_at(&self.modexp, "modulus exponent", p, r)?))
    }

    /// Upper summation index at `(p, r)`.
    pub fn truncation(&self, p: u64, r: u32) -> Result<u64> {
        let n = self.integer_at(&self.terms, "truncation bound", p, r)?;
        u64::try_from(n).map_err(|_| Error::Domain(format!("{}: negative truncation bound {n}", self.name)))
    }

    /// Runs the congruence at an odd prime `p`.
    pub fn check(&self, p: u64, r: u32, opts: &CheckOptions) -> Result<CheckReport> {
        if p < 3 || !crate::exact::is_prime(p) {
            return Err(Error::Domain(format!("{}: p must be an odd prime", self.name)));
        }
        let start = Instant::now();
        let required = self.required_valuation(p, r)?;
        let terms = self.truncation(p, r)?;
        let bindings = [("p", p as i64), ("r", r as i64)];
        let mut report = if opts.uses_padic(p) {
            let prec = opts.precision_for(required.lower_bound().unwrap_or(0));
            let lhs = sum_series(&self.summand, "n", terms, SumMode::Padic { p, prec })?;
            let rhs = eval_padic(&self.rhs, &bindings, p, prec)?;
            let SumValue::Padic(lhs) = lhs else { unreachable!("padic mode") };
            compare_padic(&self.name, p, r, required, &lhs, &rhs)?
        } else {
            let SumValue::Exact(lhs) = sum_series(&self.summand, "n", terms, SumMode::Exact)? else {
                unreachable!("exact mode")
            };
            let rhs = eval_exact(&self.rhs, &bindings)?;
            compare_exact(&self.name, p, r, required, &lhs, &rhs)?
        };
        report.elapsed_ms = start.elapsed().as_millis() as u64;
        Ok(report)
    }
}

/// Parses a series file: blank-line separated blocks of `key=value` lines.
/// Lines starting with `#` are comments. Keys are `name`, `summand`, `rhs`,
/// `modexp` and the optional `terms`.
///
/// ```
/// let specs = supercong::hypdsl::parse_series_file(
///     "name=k2\nsummand=poch(1/2,n)^3/fact(n)^3*(42*n+5)/64^n\nrhs=5*p*(-1)^((p-1)/2)\nmodexp=4\n",
/// ).unwrap();
/// assert_eq!(specs[0].name, "k2");
/// ```
pub fn parse_series_file(src: &str) -> Result<Vec<SeriesSpec>, ParseError> {
    let mut specs = Vec::new();
    let mut block: Vec<(&str, &str, usize, usize)> = Vec::new();
    let mut offset = 0;
    for line in src.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        let body = line.trim_end_matches(['\n', '\r']);
        let trimmed = body.trim_start();
        if trimmed.is_empty() {
            if !block.is_empty() {
                specs.push(finish_block(src, std::mem::take(&mut block))?);
            }
            continue;
        }
        if trimmed.starts_with('#') {
            continue;
        }
        let indent = body.len() - trimmed.len();
        let Some(eq) = trimmed.find('=') else {
            return Err(ParseError::at(src, start + indent, "expected `key=value`", "one of name, summand, rhs, modexp, terms"));
        };
        let key = trimmed[..eq].trim();
        if !KEYS.contains(&key) {
            return Err(ParseError::at(src, start + indent, format!("unknown key `{key}`"), "one of name, summand, rhs, modexp, terms"));
        }
        if block.iter().any(|(k, ..)| *k == key) {
            return Err(ParseError::at(src, start + indent, format!("duplicate key `{key}` in block"), ""));
        }
        let raw = &trimmed[eq + 1..];
        let value = raw.trim();
        let value_at = start + indent + eq + 1 + (raw.len() - raw.trim_start().len());
        block.push((key, value, value_at, start + indent));
    }
    if !block.is_empty() {
        specs.push(finish_block(src, block)?);
    }
    if specs.is_empty() {
        return Err(ParseError::at(src, src.len(), "no series blocks", "a block with name, summand, rhs and modexp"));
    }
    for (i, s) in specs.iter().enumerate() {
        if specs[..i].iter().any(|t| t.name == s.name) {
            let at = src.find(&format!("={}", s.name)).map_or(0, |x| x + 1);
            return Err(ParseError::at(src, at, format!("duplicate series name `{}`", s.name), ""));
        }
    }
    Ok(specs)
}

fn finish_block(src: &str, block: Vec<(&str, &str, usize, usize)>) -> Result<SeriesSpec, ParseError> {
    let block_at = block[0].3;
    let get = |key: &str| block.iter().find(|(k, ..)| *k == key).map(|&(_, v, at, _)| (v, at));
    let require = |key: &str| {
        get(key).ok_or_else(|| ParseError::at(src, block_at, format!("series block is missing `{key}=`"), format!("a `{key}=` line")))
    };
    let (name, name_at) = require("name")?;
    if name.is_empty() || name.contains(char::is_whitespace) || name.contains(',') {
        return Err(ParseError::at(src, name_at, format!("invalid series name `{name}`"), "a name without spaces or commas"));
    }
    let expr = |key: &str, vars: &[&str]| -> Result<SummandAst, ParseError> {
        let (value, at) = require(key)?;
        parse(value, vars).map_err(|e| e.relocate(src, at))
    };
    let terms = match get("terms") {
        Some((value, at)) => parse(value, &["p", "r"]).map_err(|e| e.relocate(src, at))?,
        None => parse(DEFAULT_TERMS, &["p", "r"]).expect("default truncation parses"),
    };
    Ok(SeriesSpec {
        name: name.to_string(),
        summand: expr("summand", &["n"])?,
        rhs: expr("rhs", &["p", "r"])?,
        modexp: expr("modexp", &["p", "r"])?,
        terms,
    })
}

/// Runs every series at every odd prime in `[p_lo, p_hi]`; same ordering and
/// error handling as [`crate::congruence::sweep`].
pub fn sweep_series(
    specs: &[SeriesSpec],
    p_lo: u64,
    p_hi: u64,
    r: u32,
    workers: usize,
    opts: &CheckOptions,
) -> Result<Vec<CheckReport>> {
    let jobs: Vec<(&SeriesSpec, u64)> = primes_in_range(p_lo, p_hi)
        .into_iter()
        .flat_map(|p| specs.iter().map(move |s| (s, p)))
        .collect();
    parallel_reports(jobs, workers, |(spec, p)| {
        let required = spec.required_valuation(p, r).unwrap_or(Valuation::Finite(0));
        settle(&spec.name, p, r, required, spec.check(p, r, opts))
    })
}
