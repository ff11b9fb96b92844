//! Brute-force reference computations over dense adjacency matrices.
//!
//! Nothing here calls into the library's metric or SCC code; graphs are
//! read only through `weight(i, j)`.

#![allow(dead_code)]

use dencomm::{DirectedGraph, Partition};
use rand::Rng;

pub fn dense(g: &DirectedGraph) -> Vec<Vec<f64>> {
    let n = g.node_count();
    (0..n)
        .map(|i| (0..n).map(|j| g.weight(i, j).unwrap_or(0.0)).collect())
        .collect()
}

pub fn symmetrize(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| a[i][j] + a[j][i]).collect())
        .collect()
}

/// Literal double sum `1/(2m) Σ_ij [A_ij - k_i k_j / 2m] δ(c_i, c_j)`.
pub fn modularity(a: &[Vec<f64>], labels: &[usize]) -> f64 {
    let n = a.len();
    let k: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let two_m: f64 = k.iter().sum();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                q += a[i][j] - k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}

pub fn density(a: &[Vec<f64>], members: &[usize]) -> f64 {
    let n = members.len();
    if n < 2 {
        return 0.0;
    }
    let mut edges = 0;
    for &i in members {
        for &j in members {
            if i != j && a[i][j] > 0.0 {
                edges += 1;
            }
        }
    }
    edges as f64 / (n * (n - 1)) as f64
}

pub fn adc(a: &[Vec<f64>], labels: &[usize]) -> f64 {
    let mut ids: Vec<usize> = labels.to_vec();
    ids.sort_unstable();
    ids.dedup();
    let total: f64 = ids
        .iter()
        .map(|&c| {
            let members: Vec<usize> = (0..a.len()).filter(|&v| labels[v] == c).collect();
            density(a, &members)
        })
        .sum();
    total / ids.len() as f64
}

/// 3 × triangles / connected triples, from explicit vertex triples.
pub fn transitivity(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let adj = |i: usize, j: usize| a[i][j] > 0.0 || a[j][i] > 0.0;
    let mut triangles = 0u64;
    let mut triples = 0u64;
    for center in 0..n {
        for x in 0..n {
            for y in x + 1..n {
                if x != center && y != center && adj(center, x) && adj(center, y) {
                    triples += 1;
                    if adj(x, y) {
                        triangles += 1;
                    }
                }
            }
        }
    }
    // Each triangle was counted once per center.
    if triples == 0 {
        0.0
    } else {
        triangles as f64 / triples as f64
    }
}

pub fn reachability(g: &DirectedGraph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut r: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i == j || g.has_edge(i, j)).collect())
        .collect();
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                let via = r[k].clone();
                for (cell, reach) in r[i].iter_mut().zip(via) {
                    *cell |= reach;
                }
            }
        }
    }
    r
}

/// Components by mutual reachability, each ascending, ordered by smallest member.
pub fn scc(g: &DirectedGraph) -> Vec<Vec<usize>> {
    let r = reachability(g);
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let comp: Vec<usize> = (0..n).filter(|&j| r[i][j] && r[j][i]).collect();
        for &j in &comp {
            seen[j] = true;
        }
        out.push(comp);
    }
    out
}

/// True when the graph on `k` nodes with the given arcs has no directed cycle (Kahn).
pub fn is_acyclic(k: usize, arcs: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0; k];
    for &(_, v) in arcs {
        indeg[v] += 1;
    }
    let mut ready: Vec<usize> = (0..k).filter(|&v| indeg[v] == 0).collect();
    let mut done = 0;
    while let Some(u) = ready.pop() {
        done += 1;
        for &(a, b) in arcs {
            if a == u {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.push(b);
                }
            }
        }
    }
    done == k
}

/// Weakly connected check of `members` within `g`, by undirected flood fill.
pub fn weakly_connected(g: &DirectedGraph, members: &[usize]) -> bool {
    if members.is_empty() {
        return true;
    }
    let inside = |v: usize| members.contains(&v);
    let mut seen = vec![members[0]];
    let mut frontier = vec![members[0]];
    while let Some(u) = frontier.pop() {
        for v in 0..g.node_count() {
            if inside(v) && !seen.contains(&v) && (g.has_edge(u, v) || g.has_edge(v, u)) {
                seen.push(v);
                frontier.push(v);
            }
        }
    }
    seen.len() == members.len()
}

/// Random simple directed graph; weights are 1 unless `weighted`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64, weighted: bool) -> DirectedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                let w = if weighted { rng.gen_range(0.25..4.0) } else { 1.0 };
                edges.push((u, v, w));
            }
        }
    }
    DirectedGraph::from_edges(n, &edges).expect("valid random graph")
}

pub fn random_partition(rng: &mut impl Rng, n: usize, max_communities: usize) -> Partition {
    let k = rng.gen_range(1..=max_communities.max(1));
    Partition::from_labels((0..n).map(|_| rng.gen_range(0..k)))
}
