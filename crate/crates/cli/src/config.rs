use clap::ValueEnum;
use serde::Serialize;
use silting_dg_core::{Exec, HomologyOptions};
use silting_perf_modules::HomOptions;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

/// What to do when a number changes between `L` and `L + delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OnUnstable {
    Warn,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub input: Option<String>,
    pub trunc: usize,
    pub delta: usize,
    pub window: (i64, i64),
    pub format: Format,
    pub scenario: Option<String>,
    pub on_unstable: OnUnstable,
    #[serde(skip)]
    pub exec: Exec,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            input: None,
            trunc: silting_dg_core::DEFAULT_TRUNC,
            delta: silting_dg_core::DEFAULT_DELTA,
            window: (-2, 0),
            format: Format::Json,
            scenario: None,
            on_unstable: OnUnstable::Warn,
            exec: Exec::default(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.trunc < 1 {
            return Err(CliError::Config("truncation L must be at least 1".into()));
        }
        if self.delta < 1 {
            return Err(CliError::Config("stability delta must be at least 1".into()));
        }
        let (lo, hi) = self.window;
        if lo > hi || hi > 0 {
            return Err(CliError::Config(format!("window {lo}..{hi} needs lo <= hi <= 0")));
        }
        Ok(())
    }

    pub fn hom(&self) -> HomOptions {
        HomOptions { trunc: self.trunc, delta: self.delta, exec: self.exec }
    }

    pub fn homology(&self) -> HomologyOptions {
        HomologyOptions { trunc: self.trunc, delta: self.delta, piece: None, exec: self.exec }
    }
}

/// `lo..hi`, either end possibly negative.
pub fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got `{s}`"))?;
    let lo = a.trim().parse().map_err(|_| format!("bad lower end `{a}`"))?;
    let hi = b.trim().parse().map_err(|_| format!("bad upper end `{b}`"))?;
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        assert_eq!(parse_window("-2..0"), Ok((-2, 0)));
        assert_eq!(parse_window(" -3 .. -1"), Ok((-3, -1)));
        assert!(parse_window("-2,0").is_err());
    }

    #[test]
    fn validation() {
        let mut c = RunConfig::default();
        assert!(c.validate().is_ok());
        c.window = (0, 1);
        assert!(c.validate().is_err());
        c.window = (-1, -2);
        assert!(c.validate().is_err());
        c.window = (-1, 0);
        c.trunc = 0;
        assert!(c.validate().is_err());
        c.trunc = 3;
        c.delta = 0;
        assert!(c.validate().is_err());
    }
}
