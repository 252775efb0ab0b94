//! Run configuration, read from a TOML file.
//!
//! ```toml
//! [grid]
//! nx = 256
//! ny = 256          # defaults to nx
//! lx = 100.0
//! ly = 100.0        # defaults to lx
//!
//! [run]
//! dt = 2e-3
//! t_final = 50.0
//! linear_only = false
//! regularity = 8    # N in the H^N norms
//!
//! [initial]
//! family = "gaussian"   # or "random-band"
//! amplitude = 1e-2
//! sigma = 1.0           # gaussian width
//! seed = 0              # random-band
//! k_max = 8             # random-band cutoff (integer wavenumber)
//!
//! [samples]
//! count = 40            # log-spaced in [t_min, min(t_final, t_max)], plus t = 0
//! spacing = "log"       # or "uniform": count + 1 equal steps on [0, t_final]
//! # times = [0.0, 1.0]  # explicit list, overrides count
//! write_fields = false
//!
//! [fit]
//! # t1 = 5.0            # defaults to the validity window of the box
//! # t2 = 50.0
//! abscissa = "bracket"  # or "time"
//! ```
//!
//! Keys may appear in any order; unknown keys are rejected.

use std::path::Path;

use mhd2d::analysis::{validity_window, Abscissa};
use mhd2d::nonlinear::{dt_max, gaussian_state, log_times, random_band_state, uniform_times};
use mhd2d::spectral::Grid2D;
use mhd2d::State;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub grid: GridConfig,
    pub run: RunSection,
    pub initial: InitialConfig,
    #[serde(default)]
    pub samples: SampleConfig,
    #[serde(default)]
    pub fit: FitConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub nx: usize,
    pub ny: Option<usize>,
    pub lx: f64,
    pub ly: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub dt: f64,
    pub t_final: f64,
    #[serde(default)]
    pub linear_only: bool,
    #[serde(default = "default_regularity")]
    pub regularity: u32,
}

fn default_regularity() -> u32 {
    8
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Gaussian,
    RandomBand,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialConfig {
    pub family: Family,
    pub amplitude: f64,
    #[serde(default = "default_sigma")]
    pub sigma: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_k_max")]
    pub k_max: i64,
}

fn default_sigma() -> f64 {
    1.0
}

fn default_k_max() -> i64 {
    8
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleConfig {
    #[serde(default = "default_count")]
    pub count: usize,
    #[serde(default)]
    pub spacing: Spacing,
    pub times: Option<Vec<f64>>,
    #[serde(default)]
    pub write_fields: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Spacing {
    #[default]
    Log,
    Uniform,
}

fn default_count() -> usize {
    40
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self { count: default_count(), spacing: Spacing::Log, times: None, write_fields: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AbscissaConfig {
    #[default]
    Bracket,
    Time,
}

impl From<AbscissaConfig> for Abscissa {
    fn from(a: AbscissaConfig) -> Self {
        match a {
            AbscissaConfig::Bracket => Abscissa::Bracket,
            AbscissaConfig::Time => Abscissa::Time,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitConfig {
    pub t1: Option<f64>,
    pub t2: Option<f64>,
    #[serde(default)]
    pub abscissa: AbscissaConfig,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| bad(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(m) => bad(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| bad(e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn grid(&self) -> Result<Grid2D<f64>, CliError> {
        let g = &self.grid;
        Grid2D::new(g.nx, g.ny.unwrap_or(g.nx), g.lx, g.ly.unwrap_or(g.lx)).map_err(|e| bad(format!("grid: {e}")))
    }

    fn check(&self) -> Result<(), CliError> {
        self.grid()?;
        let r = &self.run;
        if !(r.dt > 0.0 && r.dt.is_finite()) {
            return Err(bad(format!("run.dt must be positive, got {}", r.dt)));
        }
        if !(r.t_final >= 0.0 && r.t_final.is_finite()) {
            return Err(bad(format!("run.t_final must be non-negative, got {}", r.t_final)));
        }
        if r.regularity < 1 {
            return Err(bad("run.regularity must be at least 1"));
        }
        let i = &self.initial;
        if !(i.amplitude > 0.0 && i.amplitude.is_finite()) {
            return Err(bad(format!("initial.amplitude must be positive, got {}", i.amplitude)));
        }
        if !(i.sigma > 0.0) {
            return Err(bad(format!("initial.sigma must be positive, got {}", i.sigma)));
        }
        if i.k_max < 1 {
            return Err(bad(format!("initial.k_max must be at least 1, got {}", i.k_max)));
        }
        if let Some(ts) = &self.samples.times {
            if let Some(t) = ts.iter().find(|&&t| !(0.0..=r.t_final).contains(&t)) {
                return Err(bad(format!("samples.times: {t} lies outside [0, {}]", r.t_final)));
            }
        } else if self.samples.count == 0 {
            return Err(bad("samples.count must be positive"));
        }
        if let (Some(a), Some(b)) = (self.fit.t1, self.fit.t2) {
            if !(a < b) {
                return Err(bad(format!("fit window [{a}, {b}] is empty")));
            }
        }
        Ok(())
    }

    /// Initial state; a step above the `dt_max` rule for it is a configuration error.
    pub fn initial_state(&self) -> Result<State, CliError> {
        let grid = self.grid()?;
        let i = &self.initial;
        let s = match i.family {
            Family::Gaussian => gaussian_state(grid, i.amplitude, i.sigma),
            Family::RandomBand => random_band_state(grid, i.seed, i.amplitude, i.k_max),
        }
        .map_err(|e| bad(format!("initial: {e}")))?;
        let limit = dt_max(&s);
        if self.run.dt > limit {
            return Err(bad(format!("run.dt = {} exceeds dt_max = {limit} for the initial data", self.run.dt)));
        }
        Ok(s)
    }

    /// Fit window: the configured bounds, else the validity window of the box.
    pub fn fit_window(&self) -> Result<(f64, f64), CliError> {
        let (lo, hi) = validity_window(&self.grid()?);
        Ok((self.fit.t1.unwrap_or(lo), self.fit.t2.unwrap_or(hi)))
    }

    /// Explicit times, `count + 1` uniform times, or `count` log-spaced times in `[t_min, min(T, t_max)]` plus `t = 0`.
    pub fn sample_times(&self) -> Result<Vec<f64>, CliError> {
        if let Some(ts) = &self.samples.times {
            let mut ts = ts.clone();
            ts.sort_by(f64::total_cmp);
            ts.dedup();
            return Ok(ts);
        }
        let t = self.run.t_final;
        if t == 0.0 {
            return Ok(vec![0.0]);
        }
        if self.samples.spacing == Spacing::Uniform {
            return Ok(uniform_times(t, self.samples.count));
        }
        let (lo, hi) = validity_window(&self.grid()?);
        let hi = hi.min(t);
        let lo = if lo < hi { lo } else { (t * 1e-3).max(self.run.dt) };
        Ok(log_times(self.samples.count, lo, hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASIC: &str = r#"
        [run]
        t_final = 10.0
        dt = 1e-2
        [grid]
        nx = 32
        lx = 20.0
        [initial]
        family = "gaussian"
        amplitude = 1e-2
    "#;

    #[test]
    fn defaults_fill_in() {
        let c = RunConfig::parse(BASIC).unwrap();
        assert_eq!(c.grid().unwrap(), Grid2D::square(32, 20.0).unwrap());
        assert_eq!(c.run.regularity, 8);
        assert_eq!(c.samples.count, 40);
        assert_eq!(c.fit.abscissa, AbscissaConfig::Bracket);
        let ts = c.sample_times().unwrap();
        assert_eq!(ts.len(), 41);
        assert_eq!(ts[0], 0.0);
        assert!(ts.iter().all(|&t| t <= 10.0 * (1.0 + 1e-12)));
    }

    #[test]
    fn round_trips_through_toml() {
        let c = RunConfig::parse(BASIC).unwrap();
        assert_eq!(RunConfig::parse(&c.to_toml()).unwrap(), c);
    }

    #[test]
    fn rejects_bad_values() {
        for (from, to) in [
            ("amplitude = 1e-2", "amplitude = 0.0"),
            ("amplitude = 1e-2", "amplitude = 1e-2\nbogus = 1"),
            ("dt = 1e-2", "dt = -1.0"),
            ("nx = 32", "nx = 33"),
            ("family = \"gaussian\"", "family = \"plane-wave\""),
            ("t_final = 10.0", "t_final = 10.0\n[samples]\ntimes = [11.0]"),
        ] {
            let text = BASIC.replace(from, to);
            assert!(matches!(RunConfig::parse(&text), Err(CliError::Config(_))), "{to}");
        }
    }

    #[test]
    fn oversized_step_is_a_config_error() {
        let text = BASIC.replace("dt = 1e-2", "dt = 0.1").replace("amplitude = 1e-2", "amplitude = 50.0");
        let c = RunConfig::parse(&text).unwrap();
        assert!(matches!(c.initial_state(), Err(CliError::Config(m)) if m.contains("dt_max")));
    }
}
