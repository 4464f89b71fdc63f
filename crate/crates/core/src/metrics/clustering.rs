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

//! Triangle counts and clustering coefficients.
//!
//! A node's triangle count `T(i)` is the number of edges among its
//! neighbors; its local coefficient is `2·T(i) / (deg(i)·(deg(i) − 1))`,
//! taken as 0 when `deg(i) < 2`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::AsNumber;
use crate::error::MetricError;
use crate::graph::AsGraph;

/// Which nodes the global coefficient averages over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClusteringScope {
    /// Every node, with `deg < 2` nodes contributing 0.
    AllNodes,
    /// Only nodes with `deg >= 2`.
    #[default]
    EligibleOnly,
}

impl fmt::Display for ClusteringScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClusteringScope::AllNodes => "all",
            ClusteringScope::EligibleOnly => "eligible",
        })
    }
}

impl FromStr for ClusteringScope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" | "all-nodes" => Ok(ClusteringScope::AllNodes),
            "eligible" | "eligible-only" => Ok(ClusteringScope::EligibleOnly),
            other => Err(format!("unknown clustering scope '{other}'")),
        }
    }
}

fn coefficient(triangles: u64, degree: usize) -> f64 {
    if degree < 2 {
        return 0.0;
    }
    let d = degree as u64;
    (2 * triangles) as f64 / (d * (d - 1)) as f64
}

fn sorted_intersection_count(a: &[u32], b: &[u32]) -> u64 {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// `T(i)` for every node, indexed like [`AsGraph::nodes`].
///
/// Edges are oriented from lower to higher (degree, index) rank and each
/// triangle is found once, by intersecting the forward lists of its two
/// lowest-ranked corners.
pub fn triangles_per_node(graph: &AsGraph) -> Vec<u64> {
    let n = graph.node_count();
    let rank = |i: usize| (graph.degree_at(i), i);
    let forward: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|u| {
            graph
                .neighbors_at(u)
                .iter()
                .copied()
                .filter(|&v| rank(v as usize) > rank(u))
                .collect()
        })
        .collect();

    (0..n)
        .into_par_iter()
        .fold(
            || vec![0u64; n],
            |mut acc, u| {
                let fu = &forward[u];
                for &v in fu {
                    let fv = &forward[v as usize];
                    let (mut i, mut j) = (0, 0);
                    while i < fu.len() && j < fv.len() {
                        match fu[i].cmp(&fv[j]) {
                            Ordering::Less => i += 1,
                            Ordering::Greater => j += 1,
                            Ordering::Equal => {
                                acc[u] += 1;
                                acc[v as usize] += 1;
                                acc[fu[i] as usize] += 1;
                                i += 1;
                                j += 1;
                            }
                        }
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; n],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// Number of distinct triangles in the graph.
pub fn count_triangles(graph: &AsGraph) -> u64 {
    triangles_per_node(graph).iter().sum::<u64>() / 3
}

pub fn local_clustering(graph: &AsGraph, node: AsNumber) -> Result<f64, MetricError> {
    let i = graph.index_of(node)?;
    let neighbors = graph.neighbors_at(i);
    if neighbors.len() < 2 {
        return Ok(0.0);
    }
    // each neighbor-neighbor edge is seen from both ends
    let twice: u64 = neighbors
        .iter()
        .map(|&v| sorted_intersection_count(neighbors, graph.neighbors_at(v as usize)))
        .sum();
    Ok(coefficient(twice / 2, neighbors.len()))
}

pub fn global_clustering(graph: &AsGraph, scope: ClusteringScope) -> Result<f64, MetricError> {
    clustering_report(graph).global(scope)
}

/// Up to `k` nodes with `deg >= 2`, highest coefficient first, ties by
/// ascending ASN.
pub fn top_k_clustering(graph: &AsGraph, k: usize) -> Vec<(AsNumber, f64)> {
    clustering_report(graph).top_k(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NodeClustering {
    pub asn: AsNumber,
    pub degree: usize,
    pub triangles: u64,
    pub coefficient: f64,
}

/// Per-node and aggregate clustering for one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringReport {
    /// One entry per node, ascending ASN.
    pub nodes: Vec<NodeClustering>,
    pub triangle_total: u64,
    pub eligible_nodes: usize,
    /// Σ C(deg, 2) over all nodes.
    pub connected_triples: u64,
}

pub fn clustering_report(graph: &AsGraph) -> ClusteringReport {
    let triangles = triangles_per_node(graph);
    let nodes: Vec<NodeClustering> = triangles
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let degree = graph.degree_at(i);
            NodeClustering {
                asn: graph.asn_at(i),
                degree,
                triangles: t,
                coefficient: coefficient(t, degree),
            }
        })
        .collect();
    let connected_triples = nodes
        .iter()
        .map(|n| {
            let d = n.degree as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum();
    ClusteringReport {
        triangle_total: triangles.iter().sum::<u64>() / 3,
        eligible_nodes: nodes.iter().filter(|n| n.degree >= 2).count(),
        connected_triples,
        nodes,
    }
}

impl ClusteringReport {
    pub fn coefficient_of(&self, node: AsNumber) -> Option<f64> {
        self.nodes
            .binary_search_by_key(&node, |n| n.asn)
            .ok()
            .map(|i| self.nodes[i].coefficient)
    }

    /// Mean local coefficient over `scope`. Summed in ASN order.
    pub fn global(&self, scope: ClusteringScope) -> Result<f64, MetricError> {
        if self.nodes.is_empty() {
            return Err(MetricError::Undefined("graph has no nodes"));
        }
        let (sum, n) = self
            .nodes
            .iter()
            .filter(|c| scope == ClusteringScope::AllNodes || c.degree >= 2)
            .fold((0.0, 0usize), |(s, n), c| (s + c.coefficient, n + 1));
        if n == 0 {
            return Err(MetricError::Undefined("no node has degree >= 2"));
        }
        Ok(sum / n as f64)
    }

    /// `3 × triangles / connected triples`, reported alongside the mean of
    /// local coefficients.
    pub fn transitivity(&self) -> Option<f64> {
        (self.connected_triples > 0)
            .then(|| (3 * self.triangle_total) as f64 / self.connected_triples as f64)
    }

    pub fn top_k(&self, k: usize) -> Vec<(AsNumber, f64)> {
        let mut eligible: Vec<&NodeClustering> =
            self.nodes.iter().filter(|n| n.degree >= 2).collect();
        eligible.sort_by(|a, b| {
            b.coefficient
                .total_cmp(&a.coefficient)
                .then(a.asn.cmp(&b.asn))
        });
        eligible
            .into_iter()
            .take(k)
            .map(|n| (n.asn, n.coefficient))
            .collect()
    }
}
