//! Experiment configuration and its flat `key = value` file format.
//!
//! ```text
//! # comments start with '#'
//! seed = 42
//! networks = bundled            # or a comma-separated list of edge-list paths
//! perturbations = 99
//! simulations = 5
//! lpa_max_iterations = 100
//! coefficient = global          # or local
//! modularity = as-written       # or symmetrized
//! execution = parallel          # or sequential
//! output_dir = results
//! ```
//!
//! Every key is optional. Relative paths resolve against the directory of
//! the config file.

use std::path::{Path, PathBuf};

use crate::detector::DetectorConfig;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lpa::DEFAULT_MAX_ITERATIONS;
use crate::metrics::ModularityMode;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetworkSource {
    /// The three bundled toy networks.
    Bundled,
    Paths(Vec<PathBuf>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub networks: NetworkSource,
    pub perturbation_count: usize,
    pub simulation_count: usize,
    pub lpa_max_iterations: usize,
    pub detector: DetectorConfig,
    pub modularity_mode: ModularityMode,
    pub execution: Execution,
    pub output_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 0,
            networks: NetworkSource::Bundled,
            perturbation_count: 99,
            simulation_count: 5,
            lpa_max_iterations: DEFAULT_MAX_ITERATIONS,
            detector: DetectorConfig::default(),
            modularity_mode: ModularityMode::AsWritten,
            execution: Execution::default(),
            output_dir: PathBuf::from("results"),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.simulation_count == 0 {
            return Err(Error::InvalidParameter("simulations must be at least 1".into()));
        }
        if self.lpa_max_iterations == 0 {
            return Err(Error::InvalidParameter(
                "lpa_max_iterations must be at least 1".into(),
            ));
        }
        if matches!(&self.networks, NetworkSource::Paths(p) if p.is_empty()) {
            return Err(Error::InvalidParameter("network list is empty".into()));
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or_else(|| Path::new(""));
        Self::parse(&text, base)
    }

    /// Parses the `key = value` format; relative paths are joined onto `base_dir`.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(at) => &raw[..at],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err("expected `key = value`".into()))?;
            let (key, value) = (key.trim(), value.trim());
            let number = |what: &str| -> Result<u64> {
                value
                    .parse()
                    .map_err(|_| err(format!("{what} must be a non-negative integer, got `{value}`")))
            };
            match key {
                "seed" => cfg.seed = number(key)?,
                "perturbations" => cfg.perturbation_count = number(key)? as usize,
                "simulations" => cfg.simulation_count = number(key)? as usize,
                "lpa_max_iterations" => cfg.lpa_max_iterations = number(key)? as usize,
                "coefficient" => {
                    cfg.detector.coefficient_strategy =
                        value.parse().map_err(|e: Error| err(e.to_string()))?
                }
                "modularity" => {
                    cfg.modularity_mode = value.parse().map_err(|e: Error| err(e.to_string()))?
                }
                "execution" => {
                    cfg.execution = match value {
                        "parallel" => Execution::Parallel,
                        "sequential" => Execution::Sequential,
                        _ => return Err(err(format!("unknown execution mode `{value}`"))),
                    }
                }
                "networks" => {
                    cfg.networks = if value == "bundled" {
                        NetworkSource::Bundled
                    } else {
                        NetworkSource::Paths(
                            value
                                .split(',')
                                .map(str::trim)
                                .filter(|s| !s.is_empty())
                                .map(|s| base_dir.join(s))
                                .collect(),
                        )
                    }
                }
                "output_dir" => cfg.output_dir = base_dir.join(value),
                _ => return Err(err(format!("unknown key `{key}`"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}
