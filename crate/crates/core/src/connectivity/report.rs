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

use super::components::{connected_components, reachability};
use super::paths::{
    average_shortest_path_length, diameter, observed_path_length, path_redundancy, HopCounting,
};
use crate::dataset::LinkRecord;
use crate::error::MetricError;
use crate::graph::AsGraph;

/// Below this many nodes, path lengths and diameter are computed exactly
/// unless the caller asks otherwise.
pub const EXACT_NODE_LIMIT: usize = 10_000;

/// BFS sources used for average path length on graphs at or above
/// [`EXACT_NODE_LIMIT`] when no sample size is given.
pub const DEFAULT_SAMPLE_SIZE: usize = 1_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityOptions {
    pub hops: HopCounting,
    /// Source sample for average path length; `None` picks automatically.
    pub sample_size: Option<usize>,
    /// Force exact or approximate diameter; `None` picks automatically.
    pub exact_diameter: Option<bool>,
    pub seed: u64,
}

impl Default for ConnectivityOptions {
    fn default() -> Self {
        ConnectivityOptions {
            hops: HopCounting::Ases,
            sample_size: None,
            exact_diameter: None,
            seed: 0,
        }
    }
}

/// All connectivity metrics for one dataset. Metrics that are undefined
/// for the input are `None`, with the reason under `absent`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConnectivityReport {
    #[serde(rename = "redundancy_R")]
    pub redundancy: Option<f64>,
    pub reachability: Option<f64>,
    pub observed_path_avg: Option<f64>,
    pub observed_path_hops: HopCounting,
    pub graph_avg_shortest_path: Option<f64>,
    pub graph_avg_shortest_path_sampled: Option<bool>,
    pub graph_avg_shortest_path_sources: Option<usize>,
    pub diameter: Option<usize>,
    pub diameter_exact: Option<bool>,
    pub component_count: usize,
    pub component_sizes: Vec<usize>,
    pub giant_fraction: Option<f64>,
    pub absent: BTreeMap<String, String>,
}

fn keep<T>(
    absent: &mut BTreeMap<String, String>,
    field: &str,
    r: Result<T, MetricError>,
) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(e) => {
            absent.insert(field.to_string(), e.to_string());
            None
        }
    }
}

pub fn connectivity_report(
    graph: &AsGraph,
    records: &[LinkRecord],
    options: &ConnectivityOptions,
) -> ConnectivityReport {
    let mut absent = BTreeMap::new();
    let large = graph.node_count() >= EXACT_NODE_LIMIT;

    let inventory = connected_components(graph);
    let redundancy = keep(&mut absent, "redundancy_R", path_redundancy(records));
    let reach = keep(&mut absent, "reachability", reachability(graph));
    let observed = keep(
        &mut absent,
        "observed_path_avg",
        observed_path_length(records, options.hops),
    );

    let sample = options.sample_size.or(large.then_some(DEFAULT_SAMPLE_SIZE));
    let avg = keep(
        &mut absent,
        "graph_avg_shortest_path",
        average_shortest_path_length(graph, sample, options.seed),
    );
    let exact = options.exact_diameter.unwrap_or(!large);
    let diam = keep(
        &mut absent,
        "diameter",
        diameter(graph, exact, options.seed),
    );

    ConnectivityReport {
        redundancy,
        reachability: reach,
        observed_path_avg: observed,
        observed_path_hops: options.hops,
        graph_avg_shortest_path: avg.map(|a| a.mean),
        graph_avg_shortest_path_sampled: avg.map(|a| a.sampled),
        graph_avg_shortest_path_sources: avg.map(|a| a.sources),
        diameter: diam.map(|d| d.value),
        diameter_exact: diam.map(|d| d.exact),
        component_count: inventory.component_count(),
        component_sizes: inventory.sizes(),
        giant_fraction: inventory.giant_fraction(),
        absent,
    }
}
