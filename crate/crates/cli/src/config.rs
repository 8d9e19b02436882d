//! Experiment description: a TOML key/value file overlaid with flags.

use std::path::{Path, PathBuf};

use seedwalk::{BenchmarkConfig, Mode, Preconditioner, SolveParams};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    Mu,
    OverlapFraction,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::Mu => "mu",
            SweepVariable::OverlapFraction => "overlap_fraction",
        }
    }
}

/// Everything `bench` needs. Field names double as config-file keys.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentSpec {
    pub n: usize,
    pub avg_degree: f64,
    pub max_degree: usize,
    pub degree_exponent: f64,
    pub community_exponent: f64,
    pub c_min: usize,
    pub c_max: usize,
    pub mu: f64,
    pub overlap_fraction: f64,
    pub memberships_per_overlap_node: usize,
    /// LFR `network.dat`; replaces the generator when set.
    pub network: Option<PathBuf>,
    /// LFR `community.dat` belonging to `network`.
    pub communities: Option<PathBuf>,

    pub seed_fraction: f64,
    #[serde(deserialize_with = "de_mode")]
    pub mode: Mode,
    pub iterations: usize,
    pub epsilon: f64,
    pub reps: usize,
    pub sweep: SweepVariable,
    pub values: Vec<f64>,
    pub tol: f64,
    pub rng_seed: u64,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
}

fn de_mode<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Mode, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        let b = BenchmarkConfig::default();
        Self {
            n: b.n,
            avg_degree: b.avg_degree,
            max_degree: b.max_degree,
            degree_exponent: b.degree_exponent,
            community_exponent: b.community_exponent,
            c_min: b.c_min,
            c_max: b.c_max,
            mu: b.mu,
            overlap_fraction: b.overlap_fraction,
            memberships_per_overlap_node: b.memberships_per_overlap_node,
            network: None,
            communities: None,
            seed_fraction: 0.1,
            mode: Mode::Disjoint,
            iterations: 1,
            epsilon: 0.1,
            reps: 100,
            sweep: SweepVariable::Mu,
            values: vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8],
            tol: 1e-10,
            rng_seed: 1,
            workers: None,
            out: None,
        }
    }
}

impl ExperimentSpec {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Generator settings for one sweep point.
    pub fn benchmark_at(&self, value: f64) -> BenchmarkConfig {
        let mut cfg = BenchmarkConfig {
            n: self.n,
            avg_degree: self.avg_degree,
            max_degree: self.max_degree,
            degree_exponent: self.degree_exponent,
            community_exponent: self.community_exponent,
            mu: self.mu,
            c_min: self.c_min,
            c_max: self.c_max,
            overlap_fraction: self.overlap_fraction,
            memberships_per_overlap_node: self.memberships_per_overlap_node,
            rng_seed: self.rng_seed,
        };
        match self.sweep {
            SweepVariable::Mu => cfg.mu = value,
            SweepVariable::OverlapFraction => cfg.overlap_fraction = value,
        }
        cfg
    }

    pub fn solve_params(&self) -> SolveParams {
        SolveParams {
            rel_tolerance: self.tol,
            max_iterations: None,
            preconditioner: Preconditioner::Jacobi,
        }
    }

    pub fn uses_files(&self) -> bool {
        self.network.is_some()
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let fail = |m: String| Err(CliError::Config(m));
        if self.reps == 0 {
            return fail("reps must be at least 1".into());
        }
        if self.iterations == 0 {
            return fail("iterations must be at least 1".into());
        }
        if !(self.seed_fraction > 0.0 && self.seed_fraction <= 1.0) {
            return fail(format!(
                "seed_fraction {} outside (0, 1]",
                self.seed_fraction
            ));
        }
        if !(self.epsilon > 0.0) {
            return fail("epsilon must be positive".into());
        }
        if !(self.tol > 0.0) {
            return fail("tol must be positive".into());
        }
        if self.workers == Some(0) {
            return fail("workers must be at least 1".into());
        }
        if self.network.is_some() != self.communities.is_some() {
            return fail("network and communities files must be given together".into());
        }
        if self.uses_files() {
            return Ok(());
        }
        if self.values.is_empty() {
            return fail("sweep needs at least one value".into());
        }
        for &v in &self.values {
            if !(0.0..=1.0).contains(&v) {
                return fail(format!("{} value {v} outside [0, 1]", self.sweep.name()));
            }
            self.benchmark_at(v).validate().map_err(CliError::from)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_partial_file() {
        let spec = ExperimentSpec::from_toml(
            "mode = \"overlapping\"\nsweep = \"overlap_fraction\"\nvalues = [0.1, 0.3]\nreps = 5\n",
        )
        .unwrap();
        assert_eq!(spec.mode, Mode::Overlapping);
        assert_eq!(spec.sweep, SweepVariable::OverlapFraction);
        assert_eq!(spec.values, vec![0.1, 0.3]);
        assert_eq!(spec.n, 1000);
        assert_eq!(spec.benchmark_at(0.3).overlap_fraction, 0.3);
        spec.validate().unwrap();
    }

    #[test]
    fn rejects_unknown_keys_and_modes() {
        assert!(ExperimentSpec::from_toml("colour = 3").is_err());
        assert!(ExperimentSpec::from_toml("mode = \"fuzzy\"").is_err());
    }

    #[test]
    fn validation() {
        let spec = ExperimentSpec {
            values: vec![1.2],
            ..Default::default()
        };
        assert!(spec.validate().is_err());
        let spec = ExperimentSpec {
            reps: 0,
            ..Default::default()
        };
        assert!(spec.validate().is_err());
        let spec = ExperimentSpec {
            network: Some("x".into()),
            ..Default::default()
        };
        assert!(spec.validate().is_err());
    }
}
