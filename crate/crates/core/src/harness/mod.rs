//! Comparison experiments between label propagation, its density-optimized
//! refinement, and the SCC-seeded detector.
//!
//! For every network and simulation index the runner executes label
//! propagation with a per-run seed, optimizes its partition, runs the
//! detector, and records community count, ADC and modularity for each.
//! Output is a set of CSV files written in a fixed order, so identical
//! configurations produce byte-identical files.

mod config;
mod generate;
mod toynets;

use std::collections::HashSet;
use std::fmt::{self, Write as _};
use std::path::Path;

use sha2::{Digest, Sha256};

pub use config::{ExperimentConfig, NetworkSource};
pub use generate::{generate_perturbed_networks, generate_synthetic_large, Perturbation};
pub use toynets::{toynet, toynets, TOYNET_SOURCES};

use crate::detector::detect_communities;
use crate::error::{Error, Result};
use crate::graph::{parse_edge_list, DirectedGraph};
use crate::lpa::{label_propagation, LpaConfig};
use crate::metrics::MetricsRecord;
use crate::optimizer::optimize_density;
use crate::partition::Partition;

pub const RUNS_HEADER: &str = "network,algorithm,simulation,seed,n_communities,adc,modularity";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Lpa,
    LpaOptimized,
    Detector,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Lpa, Algorithm::LpaOptimized, Algorithm::Detector];
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Lpa => "lpa",
            Algorithm::LpaOptimized => "lpa+optimized",
            Algorithm::Detector => "detector",
        })
    }
}

/// A network taking part in an experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    pub id: String,
    pub graph: DirectedGraph,
    /// For perturbed networks: base id and removed edge as `source->target` labels.
    pub derived_from: Option<(String, String)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub network: String,
    pub algorithm: Algorithm,
    /// 1-based simulation index.
    pub simulation: usize,
    /// Label propagation seed; 0 for detector rows, which use no randomness.
    pub seed: u64,
    pub metrics: MetricsRecord,
    pub partition: Partition,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmSummary {
    pub algorithm: Algorithm,
    pub runs: usize,
    pub mean_n_communities: f64,
    pub mean_adc: f64,
    pub mean_modularity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkSummary {
    pub network: String,
    pub algorithm: Algorithm,
    pub runs: usize,
    pub distinct_partitions: usize,
    pub mean_n_communities: f64,
    pub mean_adc: f64,
    pub mean_modularity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    pub networks: Vec<Network>,
    /// Ordered by network, then simulation, then algorithm.
    pub records: Vec<RunRecord>,
}

/// Per-run seed from the experiment seed, network id and simulation index.
///
/// Hash-derived so that adding or removing networks leaves every other
/// run's seed unchanged.
pub fn derive_seed(seed: u64, network_id: &str, simulation: usize) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update((network_id.len() as u64).to_le_bytes());
    h.update(network_id.as_bytes());
    h.update((simulation as u64).to_le_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"))
}

/// Base networks followed by their perturbations.
pub fn load_networks(cfg: &ExperimentConfig) -> Result<Vec<Network>> {
    let bases: Vec<(String, DirectedGraph)> = match &cfg.networks {
        NetworkSource::Bundled => toynets(),
        NetworkSource::Paths(paths) => {
            let mut seen = HashSet::new();
            paths
                .iter()
                .map(|path| {
                    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
                    let id = path
                        .file_stem()
                        .map(|s| s.to_string_lossy().into_owned())
                        .unwrap_or_else(|| path.display().to_string());
                    if !seen.insert(id.clone()) {
                        return Err(Error::InvalidParameter(format!(
                            "two networks share the id `{id}`"
                        )));
                    }
                    let g = parse_edge_list(&text).map_err(|e| e.in_network(&id))?;
                    Ok((id, g))
                })
                .collect::<Result<_>>()?
        }
    };

    let graphs: Vec<DirectedGraph> = bases.iter().map(|(_, g)| g.clone()).collect();
    let perturbed = if cfg.perturbation_count == 0 {
        Vec::new()
    } else {
        generate_perturbed_networks(
            &graphs,
            cfg.perturbation_count,
            derive_seed(cfg.seed, "#perturbations", 0),
        )?
    };
    let width = cfg.perturbation_count.to_string().len();

    let mut networks: Vec<Network> = bases
        .into_iter()
        .map(|(id, graph)| Network {
            id,
            graph,
            derived_from: None,
        })
        .collect();
    for (i, p) in perturbed.into_iter().enumerate() {
        let base = &networks[p.base];
        let removed = format!(
            "{}->{}",
            base.graph.label(p.removed.0),
            base.graph.label(p.removed.1)
        );
        networks.push(Network {
            id: format!("perturbed_{:0width$}", i + 1),
            derived_from: Some((base.id.clone(), removed)),
            graph: p.graph,
        });
    }
    Ok(networks)
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Experiment> {
    cfg.validate()?;
    let networks = load_networks(cfg)?;
    let jobs: Vec<(usize, usize)> = (0..networks.len())
        .flat_map(|n| (1..=cfg.simulation_count).map(move |s| (n, s)))
        .collect();
    let per_job = cfg.execution.try_map(&jobs, |&(n, simulation)| {
        let net = &networks[n];
        run_once(cfg, net, simulation).map_err(|e| e.in_network(&net.id))
    })?;
    Ok(Experiment {
        networks,
        records: per_job.into_iter().flatten().collect(),
    })
}

fn run_once(cfg: &ExperimentConfig, net: &Network, simulation: usize) -> Result<Vec<RunRecord>> {
    let g = &net.graph;
    let seed = derive_seed(cfg.seed, &net.id, simulation);
    let lpa = label_propagation(
        g,
        &LpaConfig {
            seed,
            max_iterations: cfg.lpa_max_iterations,
        },
    )?
    .partition;
    let optimized = optimize_density(g, &lpa)?.output_partition;
    let detected = detect_communities(g, &cfg.detector);

    [
        (Algorithm::Lpa, seed, lpa),
        (Algorithm::LpaOptimized, seed, optimized),
        (Algorithm::Detector, 0, detected),
    ]
    .into_iter()
    .map(|(algorithm, seed, partition)| {
        Ok(RunRecord {
            network: net.id.clone(),
            algorithm,
            simulation,
            seed,
            metrics: MetricsRecord::compute(g, &partition, cfg.modularity_mode)?,
            partition,
        })
    })
    .collect()
}

/// Six decimals, with negative zero printed as zero.
fn real(x: f64) -> String {
    format!("{:.6}", x + 0.0).replace("-0.000000", "0.000000")
}

fn mean_of(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

impl Experiment {
    pub fn records_for(&self, algorithm: Algorithm) -> impl Iterator<Item = &RunRecord> {
        self.records.iter().filter(move |r| r.algorithm == algorithm)
    }

    pub fn algorithm_summaries(&self) -> Vec<AlgorithmSummary> {
        Algorithm::ALL
            .iter()
            .map(|&algorithm| {
                let rows: Vec<&RunRecord> = self.records_for(algorithm).collect();
                AlgorithmSummary {
                    algorithm,
                    runs: rows.len(),
                    mean_n_communities: mean_of(rows.iter().map(|r| r.metrics.n_communities as f64)),
                    mean_adc: mean_of(rows.iter().map(|r| r.metrics.adc)),
                    mean_modularity: mean_of(rows.iter().map(|r| r.metrics.modularity)),
                }
            })
            .collect()
    }

    pub fn network_summaries(&self) -> Vec<NetworkSummary> {
        let mut out = Vec::new();
        for net in &self.networks {
            for &algorithm in &Algorithm::ALL {
                let rows: Vec<&RunRecord> = self
                    .records
                    .iter()
                    .filter(|r| r.network == net.id && r.algorithm == algorithm)
                    .collect();
                let distinct: HashSet<&Partition> = rows.iter().map(|r| &r.partition).collect();
                out.push(NetworkSummary {
                    network: net.id.clone(),
                    algorithm,
                    runs: rows.len(),
                    distinct_partitions: distinct.len(),
                    mean_n_communities: mean_of(rows.iter().map(|r| r.metrics.n_communities as f64)),
                    mean_adc: mean_of(rows.iter().map(|r| r.metrics.adc)),
                    mean_modularity: mean_of(rows.iter().map(|r| r.metrics.modularity)),
                });
            }
        }
        out
    }

    /// Mean over paired runs of `|Q(optimized) - Q(lpa)|`.
    pub fn mean_abs_optimization_delta_q(&self) -> f64 {
        let lpa = self.records_for(Algorithm::Lpa);
        let opt = self.records_for(Algorithm::LpaOptimized);
        mean_of(lpa.zip(opt).map(|(a, b)| (b.metrics.modularity - a.metrics.modularity).abs()))
    }

    pub fn runs_csv(&self) -> String {
        let mut out = String::from(RUNS_HEADER);
        out.push('\n');
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.network,
                r.algorithm,
                r.simulation,
                r.seed,
                r.metrics.n_communities,
                real(r.metrics.adc),
                real(r.metrics.modularity)
            );
        }
        out
    }

    pub fn summary_csv(&self) -> String {
        let mut out = String::from(
            "network,algorithm,runs,distinct_partitions,mean_n_communities,mean_adc,mean_modularity\n",
        );
        for s in self.network_summaries() {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                s.network,
                s.algorithm,
                s.runs,
                s.distinct_partitions,
                real(s.mean_n_communities),
                real(s.mean_adc),
                real(s.mean_modularity)
            );
        }
        out
    }

    /// Per-algorithm means over every run, plus the optimization's mean |ΔQ|.
    pub fn means_csv(&self) -> String {
        let mut out = String::from("algorithm,runs,mean_n_communities,mean_adc,mean_modularity\n");
        for s in self.algorithm_summaries() {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                s.algorithm,
                s.runs,
                real(s.mean_n_communities),
                real(s.mean_adc),
                real(s.mean_modularity)
            );
        }
        let _ = writeln!(
            out,
            "# mean_abs_delta_modularity(lpa -> lpa+optimized) = {}",
            real(self.mean_abs_optimization_delta_q())
        );
        out
    }

    pub fn networks_csv(&self) -> String {
        let mut out = String::from("network,nodes,edges,base,removed_edge\n");
        for n in &self.networks {
            let (base, removed) = match &n.derived_from {
                Some((b, e)) => (b.as_str(), e.as_str()),
                None => ("", ""),
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                n.id,
                n.graph.node_count(),
                n.graph.edge_count(),
                base,
                removed
            );
        }
        out
    }

    /// Writes `runs.csv`, `summary.csv`, `means.csv` and `networks.csv`.
    pub fn write_csvs(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for (name, body) in [
            ("runs.csv", self.runs_csv()),
            ("summary.csv", self.summary_csv()),
            ("means.csv", self.means_csv()),
            ("networks.csv", self.networks_csv()),
        ] {
            let path = dir.join(name);
            std::fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
        }
        Ok(())
    }
}
