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

//! Undirected simple AS graph plus the ordered edge multiset it was built
//! from.
//!
//! Nodes are stored densely in ascending ASN order, so a node's index order
//! is its ASN order and sorted index lists are sorted ASN lists.

use std::collections::HashMap;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::{AsNumber, LinkRecord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("AS{0} is not in the graph")]
    UnknownNode(AsNumber),
}

/// Which record columns define a link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeMode {
    /// One edge per record, source to destination.
    #[default]
    Endpoints,
    /// One edge per consecutive hop pair of each AS path.
    PathAdjacent,
    Both,
}

impl EdgeMode {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeMode::Endpoints => "endpoints",
            EdgeMode::PathAdjacent => "path-adjacent",
            EdgeMode::Both => "both",
        }
    }
}

impl fmt::Display for EdgeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EdgeMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "endpoints" => Ok(EdgeMode::Endpoints),
            "path-adjacent" => Ok(EdgeMode::PathAdjacent),
            "both" => Ok(EdgeMode::Both),
            other => Err(format!("unknown edge mode '{other}'")),
        }
    }
}

/// Accumulates nodes and ordered pairs, then freezes them into an [`AsGraph`].
#[derive(Debug, Default)]
pub struct GraphBuilder {
    nodes: Vec<AsNumber>,
    pairs: Vec<(AsNumber, AsNumber)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, asn: AsNumber) -> &mut Self {
        self.nodes.push(asn);
        self
    }

    /// Adds both endpoints as nodes. Self-pairs add the node only.
    pub fn add_edge(&mut self, source: AsNumber, destination: AsNumber) -> &mut Self {
        self.nodes.push(source);
        self.nodes.push(destination);
        if source != destination {
            self.pairs.push((source, destination));
        }
        self
    }

    pub fn build(self) -> AsGraph {
        let GraphBuilder { mut nodes, pairs } = self;
        nodes.sort_unstable();
        nodes.dedup();
        let index: HashMap<AsNumber, u32> = nodes
            .iter()
            .enumerate()
            .map(|(i, &asn)| (asn, i as u32))
            .collect();

        let mut adjacency = vec![Vec::new(); nodes.len()];
        let mut ordered_edges = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let (ia, ib) = (index[&a], index[&b]);
            adjacency[ia as usize].push(ib);
            adjacency[ib as usize].push(ia);
            ordered_edges.push((ia, ib));
        }
        let mut degree_mass = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            degree_mass += list.len();
        }

        AsGraph {
            nodes,
            index,
            adjacency,
            ordered_edges,
            edge_count: degree_mass / 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsGraph {
    nodes: Vec<AsNumber>,
    index: HashMap<AsNumber, u32>,
    adjacency: Vec<Vec<u32>>,
    ordered_edges: Vec<(u32, u32)>,
    edge_count: usize,
}

/// Builds the AS graph for `records` under `mode`.
///
/// Self-pairs never produce an edge, though in endpoints mode the AS of a
/// self-record still becomes a node. Duplicate links collapse in the simple
/// graph but every ordered pair is kept for directional statistics.
pub fn build_graph(records: &[LinkRecord], mode: EdgeMode) -> AsGraph {
    let mut builder = GraphBuilder::new();
    for record in records {
        if matches!(mode, EdgeMode::Endpoints | EdgeMode::Both) {
            builder.add_edge(record.source, record.destination);
        }
        if matches!(mode, EdgeMode::PathAdjacent | EdgeMode::Both) {
            let hops = record.path.hops();
            builder.add_node(hops[0]);
            for pair in hops.windows(2) {
                builder.add_edge(pair[0], pair[1]);
            }
        }
    }
    builder.build()
}

impl AsGraph {
    /// Convenience constructor over raw ASNs. Panics on ASN 0.
    pub fn from_edges(isolated: &[u32], edges: &[(u32, u32)]) -> AsGraph {
        let asn = |v: u32| AsNumber::new(v).expect("ASN 0 is reserved");
        let mut builder = GraphBuilder::new();
        for &v in isolated {
            builder.add_node(asn(v));
        }
        for &(a, b) in edges {
            builder.add_edge(asn(a), asn(b));
        }
        builder.build()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Number of undirected simple edges.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// All nodes in ascending ASN order.
    pub fn nodes(&self) -> &[AsNumber] {
        &self.nodes
    }

    pub fn contains(&self, node: AsNumber) -> bool {
        self.index.contains_key(&node)
    }

    pub fn index_of(&self, node: AsNumber) -> Result<usize, GraphError> {
        self.index
            .get(&node)
            .map(|&i| i as usize)
            .ok_or(GraphError::UnknownNode(node))
    }

    pub fn asn_at(&self, index: usize) -> AsNumber {
        self.nodes[index]
    }

    pub fn degree(&self, node: AsNumber) -> Result<usize, GraphError> {
        Ok(self.adjacency[self.index_of(node)?].len())
    }

    pub fn neighbors(&self, node: AsNumber) -> Result<Vec<AsNumber>, GraphError> {
        let i = self.index_of(node)?;
        Ok(self.adjacency[i]
            .iter()
            .map(|&j| self.nodes[j as usize])
            .collect())
    }

    #[inline]
    pub fn degree_at(&self, index: usize) -> usize {
        self.adjacency[index].len()
    }

    /// Sorted neighbor indices of the node at `index`.
    #[inline]
    pub fn neighbors_at(&self, index: usize) -> &[u32] {
        &self.adjacency[index]
    }

    /// Ordered pairs as node indices, with multiplicity, in record order.
    pub fn ordered_edge_indices(&self) -> &[(u32, u32)] {
        &self.ordered_edges
    }

    pub fn ordered_edges(&self) -> impl Iterator<Item = (AsNumber, AsNumber)> + '_ {
        self.ordered_edges
            .iter()
            .map(|&(a, b)| (self.nodes[a as usize], self.nodes[b as usize]))
    }

    /// Undirected edges as index pairs `(i, j)` with `i < j`, ascending.
    pub fn edge_indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(i, list)| {
            let start = list.partition_point(|&j| (j as usize) <= i);
            list[start..].iter().map(move |&j| (i, j as usize))
        })
    }

    /// Undirected edges as ASN pairs `(a, b)` with `a < b`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (AsNumber, AsNumber)> + '_ {
        self.edge_indices()
            .map(|(i, j)| (self.nodes[i], self.nodes[j]))
    }

    /// Writes `<asn> <asn>` per undirected edge, smaller ASN first, in
    /// ascending order.
    pub fn write_edge_list<W: Write>(&self, sink: W) -> io::Result<()> {
        let mut sink = io::BufWriter::new(sink);
        for (a, b) in self.edges() {
            writeln!(sink, "{a} {b}")?;
        }
        sink.flush()
    }
}
