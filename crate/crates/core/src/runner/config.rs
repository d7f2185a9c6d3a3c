use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::seed::Seed;

/// Parameters of a single run. Unset fields take per-experiment defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub name: String,
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub t: Option<usize>,
    pub s: Option<usize>,
    pub samples: Option<usize>,
    pub probes: Option<usize>,
    pub seed: Seed,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), seed: 1, ..Self::default() }
    }

    pub fn with(mut self, key: &str, value: usize) -> Result<Self> {
        self.set(key, &value.to_string())?;
        Ok(self)
    }

    /// Sets a field from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let num = || -> Result<usize> {
            value
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("{key} must be a non-negative integer, got {value:?}")))
        };
        match key {
            "name" | "experiment" => self.name = value.to_string(),
            "n" => self.n = Some(num()?),
            "d" => self.d = Some(num()?),
            "t" => self.t = Some(num()?),
            "s" => self.s = Some(num()?),
            "samples" => self.samples = Some(num()?),
            "probes" => self.probes = Some(num()?),
            "seed" => {
                self.seed = value
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("seed must be a u64, got {value:?}")))?
            }
            "out" => self.out = Some(PathBuf::from(value)),
            _ => return Err(Error::InvalidParameter(format!("unknown parameter {key:?}"))),
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<usize> {
        match key {
            "n" => self.n,
            "d" => self.d,
            "t" => self.t,
            "s" => self.s,
            "samples" => self.samples,
            "probes" => self.probes,
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteLevel {
    Smoke,
    Full,
}

impl FromStr for SuiteLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smoke" => Ok(SuiteLevel::Smoke),
            "full" => Ok(SuiteLevel::Full),
            _ => Err(Error::InvalidParameter(format!("suite level must be smoke or full, got {s:?}"))),
        }
    }
}

impl fmt::Display for SuiteLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuiteLevel::Smoke => "smoke",
            SuiteLevel::Full => "full",
        })
    }
}

/// Suite settings, readable from a `key = value` file with `#` comments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub level: SuiteLevel,
    pub seed: Seed,
    pub parallel: bool,
    pub out_dir: Option<PathBuf>,
    /// Restricts the suite to these experiments when nonempty.
    pub only: Vec<String>,
}

impl SuiteConfig {
    pub fn new(level: SuiteLevel) -> Self {
        Self { level, seed: 1, parallel: false, out_dir: None, only: Vec::new() }
    }
}

impl FromStr for SuiteConfig {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut cfg = SuiteConfig::new(SuiteLevel::Smoke);
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected `key = value`, got {line:?}")))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "level" => cfg.level = v.parse()?,
                "seed" => cfg.seed = v.parse().map_err(|_| Error::Parse(format!("bad seed {v:?}")))?,
                "parallel" => cfg.parallel = v.parse().map_err(|_| Error::Parse(format!("bad flag {v:?}")))?,
                "out_dir" => cfg.out_dir = Some(PathBuf::from(v)),
                "experiments" => {
                    cfg.only = v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
                }
                _ => return Err(Error::Parse(format!("unknown suite key {k:?}"))),
            }
        }
        Ok(cfg)
    }
}
