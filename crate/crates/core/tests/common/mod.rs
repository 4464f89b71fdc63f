// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Brute-force reference computations over dense adjacency matrices.
//! Nothing here calls into the library's metric code.

#![allow(dead_code, clippy::needless_range_loop)]

use astopo::graph::AsGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A small random graph held both as an edge list and as a dense matrix.
#[derive(Debug, Clone)]
pub struct Sample {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub adj: Vec<Vec<bool>>,
}

/// Label of node `i`; spaced out and increasing so index order is ASN order.
pub fn label(i: usize) -> u32 {
    (i as u32 + 1) * 7919
}

impl Sample {
    pub fn random(seed: u64, max_nodes: usize) -> Sample {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=max_nodes);
        let p: f64 = rng.gen_range(0.0..0.5);
        let mut adj = vec![vec![false; n]; n];
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(p) {
                    adj[a][b] = true;
                    adj[b][a] = true;
                    // random orientation for the ordered multiset
                    edges.push(if rng.gen() { (a, b) } else { (b, a) });
                }
            }
        }
        Sample { n, edges, adj }
    }

    pub fn graph(&self) -> AsGraph {
        let nodes: Vec<u32> = (0..self.n).map(label).collect();
        let edges: Vec<(u32, u32)> = self
            .edges
            .iter()
            .map(|&(a, b)| (label(a), label(b)))
            .collect();
        AsGraph::from_edges(&nodes, &edges)
    }
}

pub fn triangles_by_triples(adj: &[Vec<bool>]) -> u64 {
    let n = adj.len();
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if adj[a][b] && adj[b][c] && adj[a][c] {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Linked neighbor pairs over all neighbor pairs; 0 below two neighbors.
pub fn local_clustering_by_pairs(adj: &[Vec<bool>], i: usize) -> f64 {
    let nbrs: Vec<usize> = (0..adj.len()).filter(|&j| adj[i][j]).collect();
    if nbrs.len() < 2 {
        return 0.0;
    }
    let mut linked = 0u64;
    let mut pairs = 0u64;
    for x in 0..nbrs.len() {
        for y in x + 1..nbrs.len() {
            pairs += 1;
            if adj[nbrs[x]][nbrs[y]] {
                linked += 1;
            }
        }
    }
    linked as f64 / pairs as f64
}

/// Reflexive transitive closure (Warshall).
pub fn closure(adj: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = adj.len();
    let mut r = adj.to_vec();
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

/// Components as sorted label lists, ordered largest first then by
/// smallest label.
pub fn components_by_closure(adj: &[Vec<bool>]) -> Vec<Vec<u32>> {
    let r = closure(adj);
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&j| r[i][j]).collect();
        for &j in &members {
            seen[j] = true;
        }
        comps.push(members.into_iter().map(label).collect::<Vec<u32>>());
    }
    comps.sort_by(|a: &Vec<u32>, b: &Vec<u32>| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    comps
}

pub const UNREACHABLE: u64 = u64::MAX;

/// All-pairs hop distances (Floyd–Warshall).
pub fn distances(adj: &[Vec<bool>]) -> Vec<Vec<u64>> {
    let n = adj.len();
    let mut d = vec![vec![UNREACHABLE; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if adj[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == UNREACHABLE {
                continue;
            }
            for j in 0..n {
                if d[k][j] != UNREACHABLE && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Fraction of unordered pairs at finite distance.
pub fn reachability_by_pairs(adj: &[Vec<bool>]) -> Option<f64> {
    let n = adj.len();
    if n < 2 {
        return None;
    }
    let d = distances(adj);
    let mut connected = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            if d[i][j] != UNREACHABLE {
                connected += 1;
            }
        }
    }
    Some(connected as f64 / (n * (n - 1) / 2) as f64)
}

/// Largest finite distance within the largest component (ties: smallest
/// member label).
pub fn diameter_of_giant(adj: &[Vec<bool>]) -> u64 {
    let d = distances(adj);
    let giant = &components_by_closure(adj)[0];
    let idx: Vec<usize> = giant.iter().map(|&l| (l / 7919 - 1) as usize).collect();
    let mut best = 0;
    for &i in &idx {
        for &j in &idx {
            best = best.max(d[i][j]);
        }
    }
    best
}

/// Mean finite distance over connected ordered pairs `i != j`.
pub fn mean_distance(adj: &[Vec<bool>]) -> Option<f64> {
    let d = distances(adj);
    let n = adj.len();
    let (mut sum, mut count) = (0u64, 0u64);
    for i in 0..n {
        for j in 0..n {
            if i != j && d[i][j] != UNREACHABLE {
                sum += d[i][j];
                count += 1;
            }
        }
    }
    (count > 0).then(|| sum as f64 / count as f64)
}
