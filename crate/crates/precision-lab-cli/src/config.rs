//! The optional experiment config file: a flat key-value document with
//! `[rotation]`, `[lorenz]`, `[qc]`, and `[output]` sections. Unknown
//! sections or keys are hard errors — no silent typo tolerance. Flags
//! always win over file values.

use crate::{Failure, EX_IOERR, EX_USAGE};
use std::collections::BTreeMap;
use std::path::Path;

const SECTIONS: [(&str, &[&str]); 4] = [
    (
        "rotation",
        &[
            "theta_deg",
            "steps",
            "digits",
            "mode",
            "record_every",
            "tie",
        ],
    ),
    (
        "lorenz",
        &[
            "digits_a",
            "digits_b",
            "h",
            "t_max",
            "threshold",
            "sigma",
            "rho",
            "beta",
            "x0",
            "y0",
            "z0",
            "restart_truncate",
            "sample_every",
            "tie",
        ],
    ),
    ("qc", &["digits_list"]),
    ("output", &["out", "format", "gnuplot_script"]),
];

/// Parsed config file; empty when no file was given.
#[derive(Debug, Default)]
pub struct ConfigFile {
    values: BTreeMap<(String, String), String>,
}

impl ConfigFile {
    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.values
            .get(&(section.to_string(), key.to_string()))
            .map(String::as_str)
    }

    /// Typed lookup; parse failures are usage errors naming the key.
    pub fn parse<T: std::str::FromStr>(
        &self,
        section: &str,
        key: &str,
    ) -> Result<Option<T>, Failure> {
        match self.get(section, key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
                Failure::usage(format!(
                    "config [{section}] {key}: cannot parse value '{raw}'"
                ))
            }),
        }
    }
}

pub fn load(path: Option<&Path>) -> Result<ConfigFile, Failure> {
    let Some(path) = path else {
        return Ok(ConfigFile::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EX_IOERR,
        message: format!("cannot read config {}: {e}", path.display()),
    })?;
    parse(&text).map_err(|msg| Failure {
        code: EX_USAGE,
        message: format!("{}: {msg}", path.display()),
    })
}

fn parse(text: &str) -> Result<ConfigFile, String> {
    let mut values = BTreeMap::new();
    let mut section: Option<&str> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let name = name.trim();
            section = Some(
                SECTIONS
                    .iter()
                    .map(|(s, _)| *s)
                    .find(|s| *s == name)
                    .ok_or_else(|| format!("line {}: unknown section [{name}]", lineno + 1))?,
            );
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("line {}: expected 'key = value'", lineno + 1));
        };
        let key = key.trim();
        let value = value.trim();
        let Some(sec) = section else {
            return Err(format!(
                "line {}: key '{key}' appears before any [section]",
                lineno + 1
            ));
        };
        let known = SECTIONS
            .iter()
            .find(|(s, _)| *s == sec)
            .map(|(_, keys)| keys.contains(&key))
            .unwrap_or(false);
        if !known {
            return Err(format!(
                "line {}: unknown key '{key}' in section [{sec}]",
                lineno + 1
            ));
        }
        values.insert((sec.to_string(), key.to_string()), value.to_string());
    }
    Ok(ConfigFile { values })
}

/// `flag.or(file).unwrap_or(default)` for one setting.
pub fn resolve<T: Clone>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}
