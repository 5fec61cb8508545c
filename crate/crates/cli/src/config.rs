use std::path::{Path, PathBuf};

use qcongruence::catalog::Options;
use qcongruence::congruence::Strategy;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(CliError::Usage(format!("unknown format {s}"))),
        }
    }
}

/// One block of work: a set of ids over an n-list and, for integer ids, primes and exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunBlock {
    /// Entry ids; `all` expands to every catalog id and `conjectures` to
    /// every conjecture, q-side and integer.
    pub ids: Vec<String>,
    /// Odd values of n, e.g. `3..21` or `5,9,13`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub primes: Vec<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub r: Vec<u32>,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(default)]
    pub strategy: Strategy,
    #[serde(default = "one")]
    pub jobs: usize,
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache: Option<PathBuf>,
    #[serde(default)]
    pub fail_fast: bool,
    #[serde(default)]
    pub options: Options,
    #[serde(default, rename = "run")]
    pub runs: Vec<RunBlock>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            strategy: Strategy::default(),
            jobs: 1,
            format: Format::default(),
            cache: None,
            fail_fast: false,
            options: Options::default(),
            runs: Vec::new(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let cfg: RunConfig = toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.jobs == 0 {
            return Err(CliError::Usage("jobs must be at least 1".into()));
        }
        for b in &self.runs {
            if let Some(n) = &b.n {
                parse_n_list(n)?;
            }
        }
        Ok(())
    }
}

/// Parses `3..21` (inclusive), `3..21:4` (step) or comma-separated items of either form,
/// keeping odd values only.
pub fn parse_n_list(s: &str) -> Result<Vec<u64>, CliError> {
    let bad = || CliError::Usage(format!("bad n-range {s:?}"));
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (range, step) = match item.split_once(':') {
            Some((r, st)) => (r, st.parse::<u64>().map_err(|_| bad())?),
            None => (item, 1),
        };
        if step == 0 {
            return Err(bad());
        }
        match range.split_once("..") {
            Some((a, b)) => {
                let a: u64 = a.trim().parse().map_err(|_| bad())?;
                let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                let mut n = a;
                while n <= b {
                    out.push(n);
                    n += step;
                }
            }
            None => out.push(range.parse().map_err(|_| bad())?),
        }
    }
    out.retain(|n| n % 2 == 1);
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

/// Parses a comma-separated list of integers.
pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| CliError::Usage(format!("bad list item {x:?}"))))
        .collect()
}
