//! SCC-seeded community detection.
//!
//! Every strongly connected component starts as its own community. The
//! components are then visited once, in decomposition order. A visited
//! component that has not been absorbed looks at every other live community
//! sharing at least one edge (either direction) with it, and absorbs the one
//! whose union with its own community has the highest clustering
//! coefficient. Ties go to the candidate owned by the smallest component
//! ordinal. Absorption is unconditional and a candidate's whole community
//! moves along with it, so communities stay weakly connected and never split
//! an SCC.
//!
//! Coefficients of candidate unions are computed incrementally: each live
//! community keeps its triangle and connected-triple counts plus per-node
//! degree and triangle counts, and a merge only touches nodes that have an
//! edge across the two sides.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::graph::{DirectedGraph, UndirectedGraph};
use crate::metrics::local_coefficient;
use crate::partition::Partition;
use crate::scc::strongly_connected_components;

/// Coefficient used to rank candidate unions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CoefficientStrategy {
    /// Transitivity: 3 × triangles / connected triples.
    #[default]
    GlobalTransitivity,
    /// Mean of per-node local clustering coefficients.
    AverageLocal,
}

impl fmt::Display for CoefficientStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoefficientStrategy::GlobalTransitivity => "global",
            CoefficientStrategy::AverageLocal => "local",
        })
    }
}

impl FromStr for CoefficientStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "global" | "global-transitivity" => Ok(CoefficientStrategy::GlobalTransitivity),
            "local" | "average-local" => Ok(CoefficientStrategy::AverageLocal),
            other => Err(Error::InvalidParameter(format!(
                "unknown coefficient strategy `{other}` (expected global or local)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct DetectorConfig {
    pub coefficient_strategy: CoefficientStrategy,
}

/// Float slack when comparing average-local scores, so that sums taken in
/// different orders still tie.
pub const LOCAL_TIE_TOLERANCE: f64 = 1e-12;

/// A candidate union's coefficient, comparable across candidates.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Score {
    /// Exact `numerator / denominator`; `0 / 1` when there is no triple.
    Ratio { numerator: u64, denominator: u64 },
    Real(f64),
}

impl Score {
    pub(crate) fn transitivity(triangles: u64, triples: u64) -> Self {
        if triples == 0 {
            Score::Ratio {
                numerator: 0,
                denominator: 1,
            }
        } else {
            Score::Ratio {
                numerator: 3 * triangles,
                denominator: triples,
            }
        }
    }

    pub(crate) fn compare(&self, other: &Score) -> Ordering {
        match (*self, *other) {
            (
                Score::Ratio {
                    numerator: a,
                    denominator: b,
                },
                Score::Ratio {
                    numerator: c,
                    denominator: d,
                },
            ) => (a as u128 * d as u128).cmp(&(c as u128 * b as u128)),
            (Score::Real(x), Score::Real(y)) => {
                if x > y + LOCAL_TIE_TOLERANCE {
                    Ordering::Greater
                } else if y > x + LOCAL_TIE_TOLERANCE {
                    Ordering::Less
                } else {
                    Ordering::Equal
                }
            }
            _ => unreachable!("scores of different strategies"),
        }
    }
}

pub fn detect_communities(g: &DirectedGraph, cfg: &DetectorConfig) -> Partition {
    let scc = strongly_connected_components(g);
    let mut state = State::new(g.undirected_view(), &scc.to_partition());
    let strategy = cfg.coefficient_strategy;

    for s in 0..scc.len() {
        if state.absorbed[s] {
            continue;
        }
        let own = state.slot_of_node[scc.components()[s][0]];
        let mut best: Option<(Score, usize, usize)> = None; // (score, owner, slot)
        for cand in state.adjacent_slots(own) {
            let merged = state.evaluate(own, cand);
            let score = merged.score(strategy, state.size(own) + state.size(cand));
            let owner = state.slots[cand].owner;
            let better = match &best {
                None => true,
                Some((b, b_owner, _)) => match score.compare(b) {
                    Ordering::Greater => true,
                    Ordering::Equal => owner < *b_owner,
                    Ordering::Less => false,
                },
            };
            if better {
                best = Some((score, owner, cand));
            }
        }
        if let Some((_, owner, cand)) = best {
            state.absorbed[owner] = true;
            state.merge(own, cand, s);
        }
    }

    Partition::from_labels(state.slot_of_node.iter().map(|&slot| state.slots[slot].owner))
}

#[derive(Debug)]
struct Slot {
    /// Component ordinal whose label the community carries.
    owner: usize,
    members: Vec<usize>,
    triangles: u64,
    triples: u64,
    local_sum: f64,
}

struct Merged {
    triangles: u64,
    triples: u64,
    local_sum: f64,
    /// (node, added degree, added triangles) for nodes with a cross edge.
    changes: Vec<(usize, u64, u64)>,
}

impl Merged {
    fn score(&self, strategy: CoefficientStrategy, size: usize) -> Score {
        match strategy {
            CoefficientStrategy::GlobalTransitivity => {
                Score::transitivity(self.triangles, self.triples)
            }
            CoefficientStrategy::AverageLocal => Score::Real(self.local_sum / size as f64),
        }
    }
}

struct State {
    und: UndirectedGraph,
    slots: Vec<Slot>,
    slot_of_node: Vec<usize>,
    absorbed: Vec<bool>,
    /// Undirected degree of each node inside its own community.
    degree: Vec<u64>,
    /// Triangles inside its own community that contain each node.
    triangles: Vec<u64>,
    // Scratch space indexed by node.
    mark: Vec<u64>,
    stamp: u64,
    delta_degree: Vec<u64>,
    delta_triangles: Vec<u64>,
}

struct Scratch<'a> {
    touched: Vec<usize>,
    delta_degree: &'a mut [u64],
    delta_triangles: &'a mut [u64],
}

impl Scratch<'_> {
    fn add(&mut self, v: usize, degree: u64, triangles: u64) {
        if self.delta_degree[v] == 0 && self.delta_triangles[v] == 0 {
            self.touched.push(v);
        }
        self.delta_degree[v] += degree;
        self.delta_triangles[v] += triangles;
    }
}

fn pairs(d: u64) -> u64 {
    d * d.saturating_sub(1) / 2
}

impl State {
    fn new(und: UndirectedGraph, initial: &Partition) -> Self {
        let n = und.node_count();
        let labels = initial.assignment();
        let mut degree = vec![0u64; n];
        let mut triangles = vec![0u64; n];
        let mut mark = vec![0u64; n];
        for a in 0..n {
            let same = |x: &&(usize, f64)| labels[x.0] == labels[a];
            degree[a] = und.neighbors(a).iter().filter(same).count() as u64;
            let stamp = a as u64 + 1;
            for &(b, _) in und.neighbors(a).iter().filter(same) {
                mark[b] = stamp;
            }
            for &(b, _) in und.neighbors(a).iter().filter(same).filter(|x| x.0 > a) {
                for &(c, _) in und.neighbors(b) {
                    if c > b && mark[c] == stamp {
                        triangles[a] += 1;
                        triangles[b] += 1;
                        triangles[c] += 1;
                    }
                }
            }
        }

        let mut slots: Vec<Slot> = (0..initial.community_count())
            .map(|owner| Slot {
                owner,
                members: Vec::new(),
                triangles: 0,
                triples: 0,
                local_sum: 0.0,
            })
            .collect();
        for v in 0..n {
            let slot = &mut slots[labels[v]];
            slot.members.push(v);
            slot.triangles += triangles[v];
            slot.triples += pairs(degree[v]);
            slot.local_sum += local_coefficient(triangles[v], degree[v]);
        }
        for slot in &mut slots {
            slot.triangles /= 3;
        }

        State {
            und,
            absorbed: vec![false; slots.len()],
            slot_of_node: labels.to_vec(),
            slots,
            degree,
            triangles,
            stamp: n as u64 + 1,
            mark,
            delta_degree: vec![0; n],
            delta_triangles: vec![0; n],
        }
    }

    fn size(&self, slot: usize) -> usize {
        self.slots[slot].members.len()
    }

    /// Live slots with at least one edge to `slot`, in ascending slot order.
    fn adjacent_slots(&mut self, slot: usize) -> Vec<usize> {
        self.stamp += 1;
        let mut out = Vec::new();
        for &v in &self.slots[slot].members {
            for &(w, _) in self.und.neighbors(v) {
                let t = self.slot_of_node[w];
                if t != slot && self.mark[t] != self.stamp {
                    self.mark[t] = self.stamp;
                    out.push(t);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Statistics of the union of slots `a` and `b`.
    fn evaluate(&mut self, a: usize, b: usize) -> Merged {
        let (x, y) = if self.size(a) <= self.size(b) {
            (a, b)
        } else {
            (b, a)
        };
        let mut scratch = Scratch {
            touched: Vec::new(),
            delta_degree: &mut self.delta_degree,
            delta_triangles: &mut self.delta_triangles,
        };
        let (und, slot_of_node, mark) = (&self.und, &self.slot_of_node, &mut self.mark);
        let mut cross_triangles = 0u64;

        for &x1 in &self.slots[x].members {
            self.stamp += 1;
            let s = self.stamp;
            for &(w, _) in und.neighbors(x1) {
                mark[w] = s;
            }
            for &(w, _) in und.neighbors(x1) {
                if slot_of_node[w] == y {
                    scratch.add(x1, 1, 0);
                    scratch.add(w, 1, 0);
                    // x1, w and a common neighbour on w's side.
                    for &(w2, _) in und.neighbors(w) {
                        if w2 > w && slot_of_node[w2] == y && mark[w2] == s {
                            cross_triangles += 1;
                            scratch.add(x1, 0, 1);
                            scratch.add(w, 0, 1);
                            scratch.add(w2, 0, 1);
                        }
                    }
                } else if slot_of_node[w] == x && w > x1 {
                    // x1, w and a common neighbour on the other side.
                    for &(z, _) in und.neighbors(w) {
                        if slot_of_node[z] == y && mark[z] == s {
                            cross_triangles += 1;
                            scratch.add(x1, 0, 1);
                            scratch.add(w, 0, 1);
                            scratch.add(z, 0, 1);
                        }
                    }
                }
            }
        }

        let (sa, sb) = (&self.slots[a], &self.slots[b]);
        let mut triples = sa.triples + sb.triples;
        let mut local_sum = sa.local_sum + sb.local_sum;
        let mut changes = Vec::with_capacity(scratch.touched.len());
        for &v in &scratch.touched {
            let (d, t) = (self.degree[v], self.triangles[v]);
            let (dd, dt) = (scratch.delta_degree[v], scratch.delta_triangles[v]);
            triples += pairs(d + dd) - pairs(d);
            local_sum += local_coefficient(t + dt, d + dd) - local_coefficient(t, d);
            changes.push((v, dd, dt));
            scratch.delta_degree[v] = 0;
            scratch.delta_triangles[v] = 0;
        }
        Merged {
            triangles: sa.triangles + sb.triangles + cross_triangles,
            triples,
            local_sum,
            changes,
        }
    }

    /// Merges slot `b` into slot `a`'s community, labelled by component `owner`.
    fn merge(&mut self, a: usize, b: usize, owner: usize) {
        let merged = self.evaluate(a, b);
        for &(v, dd, dt) in &merged.changes {
            self.degree[v] += dd;
            self.triangles[v] += dt;
        }
        let (keep, drop) = if self.size(a) >= self.size(b) {
            (a, b)
        } else {
            (b, a)
        };
        let moved = std::mem::take(&mut self.slots[drop].members);
        for &v in &moved {
            self.slot_of_node[v] = keep;
        }
        let slot = &mut self.slots[keep];
        slot.members.extend(moved);
        slot.owner = owner;
        slot.triangles = merged.triangles;
        slot.triples = merged.triples;
        slot.local_sum = merged.local_sum;
    }
}
