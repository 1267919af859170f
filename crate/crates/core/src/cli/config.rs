//! `key=value` configuration files.
//!
//! Precedence is command-line flag, then config file, then built-in default.
//! Keys use the long flag names without the leading dashes.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const SEED_ENV: &str = "FFTP_SEED";

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

const KNOWN_KEYS: &[&str] = &[
    "width",
    "height",
    "blobs",
    "alpha",
    "seed",
    "downsample",
    "keep-w",
    "keep-h",
    "noise",
    "extra-peaks",
    "widen",
    "explicit-operator",
    "sigma-min",
    "sigma-max",
    "amp-min",
    "amp-max",
];

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::param(format!("config line {}: expected key=value", n + 1))
            })?;
            let key = key.trim().trim_start_matches("--").replace('_', "-");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(Error::param(format!(
                    "config line {}: unknown key {key:?}",
                    n + 1
                )));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.values
            .get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| Error::param(format!("config key {key}: cannot parse {v:?}")))
            })
            .transpose()
    }

    /// Flag value if given, else config value, else `default`.
    pub fn resolve<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T> {
        match flag {
            Some(v) => Ok(v),
            None => Ok(self.get(key)?.unwrap_or(default)),
        }
    }
}

/// Seed precedence: flag, config file, `FFTP_SEED`, then `default`.
pub fn resolve_seed(flag: Option<u64>, config: &ConfigFile, default: u64) -> Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    if let Some(seed) = config.get("seed")? {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::param(format!("{SEED_ENV}={v:?} is not a 64-bit unsigned integer"))
        }),
        Err(_) => Ok(default),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let cfg = ConfigFile::parse("# comment\nwidth = 128\nextra_peaks=5\n\n").unwrap();
        assert_eq!(cfg.resolve(Some(64usize), "width", 256).unwrap(), 64);
        assert_eq!(cfg.resolve(None, "width", 256usize).unwrap(), 128);
        assert_eq!(cfg.resolve(None, "height", 256usize).unwrap(), 256);
        assert_eq!(cfg.resolve(None, "extra-peaks", 3usize).unwrap(), 5);
        assert_eq!(resolve_seed(Some(9), &cfg, 42).unwrap(), 9);
        let seeded = ConfigFile::parse("seed=11").unwrap();
        assert_eq!(resolve_seed(None, &seeded, 42).unwrap(), 11);
    }

    #[test]
    fn rejects_malformed() {
        assert!(ConfigFile::parse("width").is_err());
        assert!(ConfigFile::parse("colour=red").is_err());
        let cfg = ConfigFile::parse("alpha=lots").unwrap();
        assert!(cfg.get::<f64>("alpha").is_err());
    }
}
