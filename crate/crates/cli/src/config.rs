//! Verification settings, read from TOML:
//!
//! ```toml
//! n_range = "3..10"   # inclusive
//! cap = 1000000       # enumeration cap per search
//! corpus = "links.tsv"
//! ```

use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use linkcolor::zlinalg::DEFAULT_ENUMERATION_CAP;
use serde::Deserialize;

pub const CAP_ENV: &str = "LINKCOLOR_CAP";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub n_range: RangeInclusive<u64>,
    pub cap: u64,
    pub corpus: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config { n_range: 3..=10, cap: default_cap(), corpus: None }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    n_range: Option<String>,
    cap: Option<u64>,
    corpus: Option<PathBuf>,
}

/// The cap from the environment, else the library default.
pub fn default_cap() -> u64 {
    std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_ENUMERATION_CAP)
}

/// `a..b` or `a..=b`, both inclusive, with `a <= b`.
pub fn parse_range(text: &str) -> Result<RangeInclusive<u64>, String> {
    let (a, b) = text.split_once("..").ok_or_else(|| format!("range {text:?} is not of the form a..b"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let parse = |s: &str| s.trim().parse::<u64>().map_err(|_| format!("bad range bound {s:?}"));
    let (a, b) = (parse(a)?, parse(b)?);
    if a > b {
        return Err(format!("empty range {text:?}"));
    }
    Ok(a..=b)
}

impl Config {
    /// Parses TOML; relative corpus paths are resolved against `base`.
    pub fn from_toml(text: &str, base: Option<&Path>) -> Result<Config, String> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| e.to_string())?;
        let mut cfg = Config::default();
        if let Some(r) = raw.n_range {
            cfg.n_range = parse_range(&r)?;
        }
        if *cfg.n_range.start() < 3 {
            return Err("n_range must start at 3 or above".to_string());
        }
        if let Some(c) = raw.cap {
            cfg.cap = c;
        }
        cfg.corpus = raw.corpus.map(|p| match base {
            Some(b) if p.is_relative() => b.join(p),
            _ => p,
        });
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Config, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Config::from_toml(&text, path.parent())
    }
}
