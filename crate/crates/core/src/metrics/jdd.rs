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

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::AsGraph;

/// Edge counts per endpoint degree pair.
///
/// Ordered distributions tally `(deg(source), deg(destination))` over the
/// graph's ordered edge multiset. Unordered ones tally `(min, max)` over the
/// simple edge set, so only pairs with `k <= k'` are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointDegreeDistribution {
    counts: BTreeMap<(usize, usize), u64>,
    total_edges: u64,
    ordered: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JddRow {
    pub k: usize,
    pub k_prime: usize,
    pub count: u64,
    pub probability: f64,
}

impl JointDegreeDistribution {
    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    pub fn total_edges(&self) -> u64 {
        self.total_edges
    }

    pub fn counts(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.counts
    }

    pub fn count(&self, k: usize, k_prime: usize) -> u64 {
        let key = if self.ordered {
            (k, k_prime)
        } else {
            (k.min(k_prime), k.max(k_prime))
        };
        self.counts.get(&key).copied().unwrap_or(0)
    }

    pub fn probability(&self, k: usize, k_prime: usize) -> f64 {
        if self.total_edges == 0 {
            return 0.0;
        }
        self.count(k, k_prime) as f64 / self.total_edges as f64
    }

    pub fn rows(&self) -> Vec<JddRow> {
        self.counts
            .iter()
            .map(|(&(k, k_prime), &count)| JddRow {
                k,
                k_prime,
                count,
                probability: count as f64 / self.total_edges as f64,
            })
            .collect()
    }
}

pub fn joint_degree_distribution(graph: &AsGraph, ordered: bool) -> JointDegreeDistribution {
    let mut counts = BTreeMap::new();
    let mut total = 0u64;
    if ordered {
        for &(a, b) in graph.ordered_edge_indices() {
            let key = (graph.degree_at(a as usize), graph.degree_at(b as usize));
            *counts.entry(key).or_insert(0) += 1;
            total += 1;
        }
    } else {
        for (a, b) in graph.edge_indices() {
            let (da, db) = (graph.degree_at(a), graph.degree_at(b));
            *counts.entry((da.min(db), da.max(db))).or_insert(0) += 1;
            total += 1;
        }
    }
    JointDegreeDistribution {
        counts,
        total_edges: total,
        ordered,
    }
}
