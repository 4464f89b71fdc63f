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

/// Node counts per degree, with probabilities taken over all nodes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeDistribution {
    frequency: BTreeMap<usize, u64>,
    total_nodes: u64,
}

impl DegreeDistribution {
    pub fn from_frequencies(frequency: BTreeMap<usize, u64>) -> Self {
        let total_nodes = frequency.values().sum();
        DegreeDistribution {
            frequency,
            total_nodes,
        }
    }

    pub fn frequency(&self) -> &BTreeMap<usize, u64> {
        &self.frequency
    }

    pub fn count(&self, degree: usize) -> u64 {
        self.frequency.get(&degree).copied().unwrap_or(0)
    }

    pub fn total_nodes(&self) -> u64 {
        self.total_nodes
    }

    pub fn is_empty(&self) -> bool {
        self.total_nodes == 0
    }

    /// Σ k·frequency[k], which is twice the edge count of the source graph.
    pub fn degree_mass(&self) -> u64 {
        self.frequency.iter().map(|(&k, &n)| k as u64 * n).sum()
    }

    pub fn probability(&self, degree: usize) -> f64 {
        if self.total_nodes == 0 {
            return 0.0;
        }
        self.count(degree) as f64 / self.total_nodes as f64
    }

    pub fn probabilities(&self) -> BTreeMap<usize, f64> {
        self.frequency
            .keys()
            .map(|&k| (k, self.probability(k)))
            .collect()
    }
}

pub fn degree_distribution(graph: &AsGraph) -> DegreeDistribution {
    let mut frequency = BTreeMap::new();
    for i in 0..graph.node_count() {
        *frequency.entry(graph.degree_at(i)).or_insert(0) += 1;
    }
    DegreeDistribution::from_frequencies(frequency)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HistogramRow {
    pub degree: usize,
    pub count: u64,
    pub probability: f64,
}

/// Histogram rows in ascending degree order.
pub fn degree_histogram(dist: &DegreeDistribution) -> Vec<HistogramRow> {
    dist.frequency
        .iter()
        .map(|(&degree, &count)| HistogramRow {
            degree,
            count,
            probability: dist.probability(degree),
        })
        .collect()
}
