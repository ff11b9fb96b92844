use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::builder::RangedU64ValueParser;
use clap::{Args, Parser, Subcommand};
use dencomm::harness::{
    generate_perturbed_networks, generate_synthetic_large, run_experiment, toynets,
    ExperimentConfig,
};
use dencomm::{
    detect_communities, label_propagation, optimize_density, parse_edge_list,
    CoefficientStrategy, DetectorConfig, DirectedGraph, LpaConfig, MetricsRecord, ModularityMode,
    Partition,
};

/// Density-based community detection for directed graphs.
#[derive(Parser)]
#[command(name = "dencomm", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the SCC-merging detector and print the partition.
    Detect {
        edgelist: PathBuf,
        /// Clustering coefficient used to rank merge candidates.
        #[arg(long, default_value = "global", value_parser = parse_coefficient)]
        coefficient: CoefficientStrategy,
    },
    /// Run seeded asynchronous label propagation and print the partition.
    Lpa {
        edgelist: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long = "max-iter", default_value_t = dencomm::lpa::DEFAULT_MAX_ITERATIONS,
              value_parser = RangedU64ValueParser::<usize>::new().range(1..))]
        max_iter: usize,
    },
    /// Split communities into strongly connected parts where that raises density.
    Optimize {
        edgelist: PathBuf,
        #[command(flatten)]
        partition: PartitionArg,
    },
    /// Print community count, ADC and modularity for a partition.
    Metrics {
        edgelist: PathBuf,
        #[command(flatten)]
        partition: PartitionArg,
        #[arg(long, default_value = "as-written", value_parser = parse_modularity)]
        modularity: ModularityMode,
    },
    /// Run the full comparison experiment described by a config file.
    Experiment {
        #[arg(long)]
        config: PathBuf,
    },
    /// Write single-edge-removal variants of base networks as edge lists.
    GenPerturbed {
        /// Base edge lists. Defaults to the bundled toy networks.
        bases: Vec<PathBuf>,
        #[arg(long, default_value_t = 99)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "out-dir", default_value = "perturbed")]
        out_dir: PathBuf,
    },
    /// Write a uniform random directed graph as an edge list.
    GenRandom {
        #[arg(long)]
        nodes: usize,
        #[arg(long = "mean-out-degree")]
        mean_out_degree: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PartitionArg {
    /// CSV of `node_label,community_id` lines.
    #[arg(long)]
    partition: PathBuf,
}

fn parse_coefficient(s: &str) -> Result<CoefficientStrategy, String> {
    s.parse().map_err(|e: dencomm::Error| e.to_string())
}

fn parse_modularity(s: &str) -> Result<ModularityMode, String> {
    s.parse().map_err(|e: dencomm::Error| e.to_string())
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_graph(path: &Path) -> Result<DirectedGraph> {
    parse_edge_list(&read_text(path)?).with_context(|| format!("in {}", path.display()))
}

fn read_partition(g: &DirectedGraph, arg: &PartitionArg) -> Result<Partition> {
    Partition::parse_csv(g, &read_text(&arg.partition)?)
        .with_context(|| format!("in {}", arg.partition.display()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn print(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Detect {
            edgelist,
            coefficient,
        } => {
            let g = read_graph(&edgelist)?;
            let cfg = DetectorConfig {
                coefficient_strategy: coefficient,
            };
            print(&detect_communities(&g, &cfg).to_csv(&g))
        }
        Command::Lpa {
            edgelist,
            seed,
            max_iter,
        } => {
            let g = read_graph(&edgelist)?;
            let outcome = label_propagation(
                &g,
                &LpaConfig {
                    seed,
                    max_iterations: max_iter,
                },
            )?;
            if !outcome.converged {
                eprintln!("warning: no convergence within {max_iter} iterations");
            }
            print(&outcome.partition.to_csv(&g))
        }
        Command::Optimize {
            edgelist,
            partition,
        } => {
            let g = read_graph(&edgelist)?;
            let p = read_partition(&g, &partition)?;
            let report = optimize_density(&g, &p)?;
            print(&report.output_partition.to_csv(&g))?;
            eprintln!(
                "communities: {} -> {}, splits: {}",
                report.input_partition.community_count(),
                report.output_partition.community_count(),
                report.splits.len()
            );
            for s in &report.splits {
                eprintln!(
                    "  community {}: {} components, density {:.6} -> mean {:.6}",
                    s.community, s.component_count, s.community_density, s.mean_component_density
                );
            }
            Ok(())
        }
        Command::Metrics {
            edgelist,
            partition,
            modularity,
        } => {
            let g = read_graph(&edgelist)?;
            let p = read_partition(&g, &partition)?;
            let m = MetricsRecord::compute(&g, &p, modularity)?;
            print(&format!(
                "n_communities,adc,modularity\n{},{:.6},{:.6}\n",
                m.n_communities,
                m.adc,
                m.modularity + 0.0
            ))
        }
        Command::Experiment { config } => {
            let cfg = ExperimentConfig::load(&config)?;
            let experiment = run_experiment(&cfg)?;
            experiment.write_csvs(&cfg.output_dir)?;
            for s in experiment.algorithm_summaries() {
                eprintln!(
                    "{}: mean ADC {:.4}, mean modularity {:.4} over {} runs",
                    s.algorithm, s.mean_adc, s.mean_modularity, s.runs
                );
            }
            eprintln!("wrote results to {}", cfg.output_dir.display());
            Ok(())
        }
        Command::GenPerturbed {
            bases,
            count,
            seed,
            out_dir,
        } => {
            let named: Vec<(String, DirectedGraph)> = if bases.is_empty() {
                toynets()
            } else {
                bases
                    .iter()
                    .map(|p| Ok((p.display().to_string(), read_graph(p)?)))
                    .collect::<Result<_>>()?
            };
            let graphs: Vec<DirectedGraph> = named.iter().map(|(_, g)| g.clone()).collect();
            let perturbations = generate_perturbed_networks(&graphs, count, seed)?;
            fs::create_dir_all(&out_dir)
                .with_context(|| format!("cannot create {}", out_dir.display()))?;
            let width = count.to_string().len();
            let mut manifest = String::from("file,base,source,target\n");
            for (i, p) in perturbations.iter().enumerate() {
                let file = format!("perturbed_{:0width$}.txt", i + 1);
                write_file(&out_dir.join(&file), &p.graph.to_edge_list())?;
                let (base_id, base) = &named[p.base];
                manifest.push_str(&format!(
                    "{file},{base_id},{},{}\n",
                    base.label(p.removed.0),
                    base.label(p.removed.1)
                ));
            }
            print(&manifest)
        }
        Command::GenRandom {
            nodes,
            mean_out_degree,
            seed,
            out,
        } => {
            let g = generate_synthetic_large(nodes, mean_out_degree, seed)?;
            match out {
                Some(path) => write_file(&path, &g.to_edge_list()),
                None => print(&g.to_edge_list()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
