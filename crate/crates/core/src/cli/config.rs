use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(Error::Config(format!("unknown format {other:?}"))),
        }
    }
}

/// An inclusive player-count range, written `3` or `2-4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KRange {
    pub min: usize,
    pub max: usize,
}

impl KRange {
    pub fn single(k: usize) -> Self {
        Self { min: k, max: k }
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<usize> {
        self.min..=self.max
    }
}

impl FromStr for KRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Config(format!("bad player count {t:?}")))
        };
        match s.split_once('-') {
            Some((a, b)) => Ok(Self {
                min: parse(a)?,
                max: parse(b)?,
            }),
            None => Ok(Self::single(parse(s)?)),
        }
    }
}

pub const MIN_K: usize = 2;
pub const MAX_K: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignConfig {
    pub seed: u64,
    pub trials: usize,
    pub k: KRange,
    pub depth: usize,
    pub tolerance: f64,
    pub format: OutputFormat,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            trials: 10_000,
            k: KRange { min: 2, max: 4 },
            depth: 8,
            tolerance: 1e-9,
            format: OutputFormat::Json,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 || self.tolerance.is_infinite() {
            return Err(Error::Config(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.k.min < MIN_K || self.k.max > MAX_K || self.k.min > self.k.max {
            return Err(Error::Config(format!(
                "k range {}-{} outside [{MIN_K}, {MAX_K}]",
                self.k.min, self.k.max
            )));
        }
        if self.depth == 0 || self.depth > 16 {
            return Err(Error::Config(format!("depth {} outside [1, 16]", self.depth)));
        }
        Ok(())
    }
}
