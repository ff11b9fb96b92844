//! Asynchronous label propagation.
//!
//! Every node starts with its own label. Each iteration visits the nodes in
//! a freshly shuffled order and moves each one to a label of maximal
//! weighted frequency among its undirected neighbours. A node already
//! holding a maximal label keeps it; otherwise ties are broken uniformly at
//! random. The run stops after an iteration that changes nothing, or at the
//! iteration cap. All randomness comes from a ChaCha stream seeded by
//! [`LpaConfig::seed`], so a run is a pure function of graph and config.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, UndirectedGraph};
use crate::partition::Partition;

pub const DEFAULT_MAX_ITERATIONS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LpaConfig {
    pub seed: u64,
    pub max_iterations: usize,
}

impl LpaConfig {
    pub fn new(seed: u64) -> Self {
        LpaConfig {
            seed,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::InvalidParameter(
                "max_iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

impl Default for LpaConfig {
    fn default() -> Self {
        LpaConfig::new(0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpaOutcome {
    pub partition: Partition,
    pub iterations: usize,
    /// True when the last iteration changed no label.
    pub converged: bool,
}

pub fn label_propagation(g: &DirectedGraph, cfg: &LpaConfig) -> Result<LpaOutcome> {
    cfg.validate()?;
    let u = g.undirected_view();
    let n = u.node_count();
    let mut labels: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut order: Vec<usize> = (0..n).collect();

    // Dense per-label accumulator, reset through `touched` after each node.
    let mut freq = vec![0.0f64; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut best: Vec<usize> = Vec::new();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < cfg.max_iterations {
        iterations += 1;
        order.shuffle(&mut rng);
        let mut changed = false;
        for &v in &order {
            if u.degree(v) == 0 {
                continue;
            }
            for &(w, weight) in u.neighbors(v) {
                let l = labels[w];
                if freq[l] == 0.0 {
                    touched.push(l);
                }
                freq[l] += weight;
            }
            let top = touched.iter().map(|&l| freq[l]).fold(f64::MIN, f64::max);
            best.clear();
            best.extend(touched.iter().copied().filter(|&l| freq[l] == top));
            if !best.contains(&labels[v]) {
                // Sorted so the draw does not depend on neighbour order.
                best.sort_unstable();
                labels[v] = best[rng.gen_range(0..best.len())];
                changed = true;
            }
            for &l in &touched {
                freq[l] = 0.0;
            }
            touched.clear();
        }
        if !changed {
            converged = true;
            break;
        }
    }

    Ok(LpaOutcome {
        partition: Partition::from_labels(labels),
        iterations,
        converged,
    })
}

/// True when every node holds a label of maximal weighted frequency among
/// its neighbours (isolated nodes trivially qualify).
pub fn is_label_stable(u: &UndirectedGraph, p: &Partition) -> bool {
    (0..u.node_count()).all(|v| {
        let mut freq: Vec<(usize, f64)> = Vec::new();
        for &(w, weight) in u.neighbors(v) {
            let l = p.community_of(w);
            match freq.iter_mut().find(|(x, _)| *x == l) {
                Some(e) => e.1 += weight,
                None => freq.push((l, weight)),
            }
        }
        let Some(top) = freq.iter().map(|e| e.1).reduce(f64::max) else {
            return true;
        };
        freq.iter()
            .any(|&(l, f)| l == p.community_of(v) && f == top)
    })
}
