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

use std::collections::VecDeque;

use crate::dataset::AsNumber;
use crate::error::MetricError;
use crate::graph::AsGraph;

/// Connected components, largest first; equal sizes ordered by smallest ASN.
/// Each component lists its nodes in ascending ASN order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentInventory {
    pub components: Vec<Vec<AsNumber>>,
    total_nodes: usize,
}

impl ComponentInventory {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    /// Largest component size over total nodes; `None` on an empty graph.
    pub fn giant_fraction(&self) -> Option<f64> {
        self.components
            .first()
            .map(|c| c.len() as f64 / self.total_nodes as f64)
    }

    pub fn giant(&self) -> Option<&[AsNumber]> {
        self.components.first().map(Vec::as_slice)
    }
}

/// Component label per node index, labels numbered in order of each
/// component's smallest node.
pub(crate) fn component_labels(graph: &AsGraph) -> (Vec<u32>, Vec<usize>) {
    let n = graph.node_count();
    let mut label = vec![u32::MAX; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if label[start] != u32::MAX {
            continue;
        }
        let id = sizes.len() as u32;
        label[start] = id;
        queue.push_back(start);
        let mut size = 0;
        while let Some(u) = queue.pop_front() {
            size += 1;
            for &v in graph.neighbors_at(u) {
                if label[v as usize] == u32::MAX {
                    label[v as usize] = id;
                    queue.push_back(v as usize);
                }
            }
        }
        sizes.push(size);
    }
    (label, sizes)
}

pub fn connected_components(graph: &AsGraph) -> ComponentInventory {
    let (labels, sizes) = component_labels(graph);
    let mut components: Vec<Vec<AsNumber>> = sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
    // ascending index order keeps each member list sorted by ASN
    for (i, &l) in labels.iter().enumerate() {
        components[l as usize].push(graph.asn_at(i));
    }
    // labels already follow smallest-member order, so a stable sort by size
    // settles ties by smallest ASN
    components.sort_by_key(|c| std::cmp::Reverse(c.len()));
    ComponentInventory {
        components,
        total_nodes: graph.node_count(),
    }
}

/// Fraction of unordered node pairs joined by some path, from component
/// sizes: `Σ n_c(n_c − 1)/2` over `N(N − 1)/2`.
pub fn reachability(graph: &AsGraph) -> Result<f64, MetricError> {
    let n = graph.node_count() as u128;
    if n < 2 {
        return Err(MetricError::Undefined("fewer than 2 nodes"));
    }
    let (_, sizes) = component_labels(graph);
    let connected: u128 = sizes
        .iter()
        .map(|&s| {
            let s = s as u128;
            s * (s - 1) / 2
        })
        .sum();
    Ok(connected as f64 / (n * (n - 1) / 2) as f64)
}
