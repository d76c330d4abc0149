//! `--config FILE` support: `key=value` lines merged into argv as flags the
//! user did not pass explicitly.

use std::ffi::OsString;

/// Flags each subcommand path accepts from a config file.
const ACCEPTED: &[(&str, &[&str])] = &[
    ("verify", &["pmin", "pmax", "r", "backend", "guard-digits", "exact-threshold", "workers"]),
    (
        "sweep",
        &["checks", "pmin", "pmax", "r", "backend", "guard-digits", "exact-threshold", "workers", "out", "format", "timings"],
    ),
    (
        "dsl",
        &["series-file", "pmin", "pmax", "r", "backend", "guard-digits", "exact-threshold", "workers", "out", "format", "timings"],
    ),
    ("wz certify", &[]),
    ("wz grid", &["nmax", "kmax"]),
    ("wz telescope", &["p"]),
    ("numeric", &["terms", "digits"]),
];

const BOOLEAN: &[&str] = &["timings"];

/// Returns the value of `--config` and argv with that option removed.
fn split_config(args: Vec<OsString>) -> Result<(Option<String>, Vec<OsString>), String> {
    let mut rest = Vec::with_capacity(args.len());
    let mut path = None;
    let mut iter = args.into_iter();
    while let Some(arg) = iter.next() {
        let text = arg.to_string_lossy().into_owned();
        if text == "--" {
            rest.push(arg);
            rest.extend(iter.by_ref());
            break;
        }
        if text == "--config" {
            let value = iter.next().ok_or("--config needs a file argument")?;
            path = Some(value.to_string_lossy().into_owned());
        } else if let Some(value) = text.strip_prefix("--config=") {
            path = Some(value.to_string());
        } else {
            rest.push(arg);
        }
    }
    Ok((path, rest))
}

/// Subcommand path such as `sweep` or `wz grid`, read from the bare words of
/// argv (the program name excluded).
fn subcommand_path(args: &[OsString]) -> String {
    let words: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .filter(|a| !a.starts_with('-'))
        .collect();
    match words.first().map(String::as_str) {
        Some("wz") => words.iter().take(2).cloned().collect::<Vec<_>>().join(" "),
        Some(first) => first.to_string(),
        None => String::new(),
    }
}

fn given(args: &[OsString], key: &str) -> bool {
    let flag = format!("--{key}");
    args.iter().any(|a| {
        let a = a.to_string_lossy();
        a == flag || a.starts_with(&format!("{flag}="))
    })
}

/// Parses `key=value` lines; `#` starts a comment line.
pub(crate) fn parse_config(src: &str) -> Result<Vec<(String, String)>, String> {
    let all: Vec<&str> = ACCEPTED.iter().flat_map(|(_, keys)| keys.iter().copied()).collect();
    let mut out: Vec<(String, String)> = Vec::new();
    for (i, line) in src.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", i + 1))?;
        let key = key.trim().replace('_', "-");
        if !all.contains(&key.as_str()) {
            return Err(format!("config line {}: unknown key `{key}`", i + 1));
        }
        if out.iter().any(|(k, _)| *k == key) {
            return Err(format!("config line {}: duplicate key `{key}`", i + 1));
        }
        out.push((key, value.trim().to_string()));
    }
    Ok(out)
}

/// Applies `--config` to argv. Explicit flags win; keys the chosen subcommand
/// does not take are ignored so one file can serve several subcommands.
pub(crate) fn merge(args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let (path, mut args) = split_config(args)?;
    let Some(path) = path else { return Ok(args) };
    let src = std::fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let entries = parse_config(&src).map_err(|e| format!("{path}: {e}"))?;
    let cmd = subcommand_path(&args);
    let accepted = ACCEPTED.iter().find(|(c, _)| *c == cmd).map_or(&[][..], |(_, keys)| keys);
    // flags must precede a `--` separator
    let insert_at = args.iter().position(|a| a == "--").unwrap_or(args.len());
    let mut extra = Vec::new();
    for (key, value) in entries {
        if !accepted.contains(&key.as_str()) || given(&args, &key) {
            continue;
        }
        if BOOLEAN.contains(&key.as_str()) {
            match value.as_str() {
                "true" | "yes" | "1" => extra.push(OsString::from(format!("--{key}"))),
                "false" | "no" | "0" => {}
                other => return Err(format!("{path}: `{key}` expects true or false, got `{other}`")),
            }
        } else {
            extra.push(OsString::from(format!("--{key}={value}")));
        }
    }
    args.splice(insert_at..insert_at, extra);
    Ok(args)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<OsString> {
        s.split_whitespace().map(OsString::from).collect()
    }

    #[test]
    fn paths_and_flags() {
        assert_eq!(subcommand_path(&argv("x wz grid --nmax 3")), "wz grid");
        assert_eq!(subcommand_path(&argv("x verify k2 --pmax 9")), "verify");
        assert!(given(&argv("x sweep --pmax=9"), "pmax"));
        assert!(!given(&argv("x sweep --pmaxx 9"), "pmax"));
    }

    #[test]
    fn config_lines() {
        let entries = parse_config("# c\npmax = 50\nguard_digits=4\n").unwrap();
        assert_eq!(entries, vec![("pmax".into(), "50".into()), ("guard-digits".into(), "4".into())]);
        assert!(parse_config("bogus=1").is_err());
        assert!(parse_config("pmax").is_err());
        assert!(parse_config("pmax=1\npmax=2").is_err());
    }

    #[test]
    fn explicit_flags_win() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "pmax=50\npmin=5\nnmax=3\ntimings=true\n").unwrap();
        let args = argv(&format!("x sweep --config {} --pmax 9", path.display()));
        let merged: Vec<String> = merge(args).unwrap().iter().map(|a| a.to_string_lossy().into_owned()).collect();
        assert_eq!(merged, ["x", "sweep", "--pmax", "9", "--pmin=5", "--timings"]);
    }
}
