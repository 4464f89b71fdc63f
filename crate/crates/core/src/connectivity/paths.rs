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

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::components::component_labels;
use crate::dataset::{AsNumber, AsPath, LinkRecord};
use crate::error::MetricError;
use crate::graph::AsGraph;

/// How an observed path's length is counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HopCounting {
    /// Number of ASes on the path.
    #[default]
    Ases,
    /// Number of AS-to-AS links, one less than the AS count.
    Edges,
}

impl HopCounting {
    pub fn length(self, path: &AsPath) -> usize {
        match self {
            HopCounting::Ases => path.len(),
            HopCounting::Edges => path.len() - 1,
        }
    }
}

impl fmt::Display for HopCounting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HopCounting::Ases => "ases",
            HopCounting::Edges => "edges",
        })
    }
}

impl FromStr for HopCounting {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ases" => Ok(HopCounting::Ases),
            "edges" => Ok(HopCounting::Edges),
            other => Err(format!("unknown hop counting '{other}'")),
        }
    }
}

/// Mean number of distinct paths per unordered endpoint pair.
///
/// Self-records name no AS pair and are skipped.
pub fn path_redundancy(records: &[LinkRecord]) -> Result<f64, MetricError> {
    let mut groups: HashMap<(AsNumber, AsNumber), HashSet<&AsPath>> = HashMap::new();
    for r in records.iter().filter(|r| !r.is_self_record()) {
        let key = (r.source.min(r.destination), r.source.max(r.destination));
        groups.entry(key).or_default().insert(&r.path);
    }
    if groups.is_empty() {
        return Err(MetricError::Undefined("no AS pairs in the record set"));
    }
    let paths: usize = groups.values().map(HashSet::len).sum();
    Ok(paths as f64 / groups.len() as f64)
}

/// Mean length of the observed paths, one per record.
pub fn observed_path_length(records: &[LinkRecord], hops: HopCounting) -> Result<f64, MetricError> {
    if records.is_empty() {
        return Err(MetricError::Undefined("no records"));
    }
    let total: u64 = records.iter().map(|r| hops.length(&r.path) as u64).sum();
    Ok(total as f64 / records.len() as f64)
}

struct Bfs {
    dist: Vec<u32>,
    queue: VecDeque<usize>,
    touched: Vec<usize>,
}

#[derive(Debug, Clone, Copy, Default)]
struct Sweep {
    distance_sum: u64,
    reached: u64,
    eccentricity: u32,
    /// Smallest-index node at maximum distance.
    farthest: usize,
}

impl Bfs {
    fn new(n: usize) -> Self {
        Bfs {
            dist: vec![u32::MAX; n],
            queue: VecDeque::new(),
            touched: Vec::new(),
        }
    }

    fn run(&mut self, graph: &AsGraph, source: usize) -> Sweep {
        for &i in &self.touched {
            self.dist[i] = u32::MAX;
        }
        self.touched.clear();
        self.dist[source] = 0;
        self.touched.push(source);
        self.queue.push_back(source);
        let mut sweep = Sweep {
            farthest: source,
            ..Sweep::default()
        };
        while let Some(u) = self.queue.pop_front() {
            let d = self.dist[u];
            if d > sweep.eccentricity || (d == sweep.eccentricity && u < sweep.farthest) {
                sweep.eccentricity = d;
                sweep.farthest = u;
            }
            sweep.distance_sum += d as u64;
            for &v in graph.neighbors_at(u) {
                let v = v as usize;
                if self.dist[v] == u32::MAX {
                    self.dist[v] = d + 1;
                    self.touched.push(v);
                    self.queue.push_back(v);
                }
            }
        }
        sweep.reached = self.touched.len() as u64 - 1;
        sweep
    }
}

/// Mean shortest-path distance over connected ordered node pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathLengthEstimate {
    pub mean: f64,
    /// BFS sources used.
    pub sources: usize,
    /// Connected ordered pairs contributing to the mean.
    pub pairs: u64,
    pub sampled: bool,
}

/// Average BFS distance between connected pairs; unreachable pairs are
/// left out. When `sample_size` is below the node count, only that many
/// sources drawn with `seed` are swept.
pub fn average_shortest_path_length(
    graph: &AsGraph,
    sample_size: Option<usize>,
    seed: u64,
) -> Result<PathLengthEstimate, MetricError> {
    if graph.edge_count() == 0 {
        return Err(MetricError::Undefined("graph has no edges"));
    }
    let n = graph.node_count();
    let (sources, sampled): (Vec<usize>, bool) = match sample_size {
        Some(s) if s < n => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picked = sample(&mut rng, n, s.max(1)).into_vec();
            picked.sort_unstable();
            (picked, true)
        }
        _ => ((0..n).collect(), false),
    };

    let (sum, pairs) = sources
        .par_iter()
        .map_init(
            || Bfs::new(n),
            |bfs, &s| {
                let sweep = bfs.run(graph, s);
                (sweep.distance_sum, sweep.reached)
            },
        )
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));

    if pairs == 0 {
        return Err(MetricError::Undefined(
            "sampled sources reach no other node",
        ));
    }
    Ok(PathLengthEstimate {
        mean: sum as f64 / pairs as f64,
        sources: sources.len(),
        pairs,
        sampled,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiameterEstimate {
    pub value: usize,
    /// False when `value` is a double-sweep lower bound.
    pub exact: bool,
}

/// Seeded start nodes for the double-sweep lower bound.
pub const DOUBLE_SWEEP_STARTS: usize = 8;

/// Largest eccentricity within the largest component.
pub fn diameter(graph: &AsGraph, exact: bool, seed: u64) -> Result<DiameterEstimate, MetricError> {
    if graph.edge_count() == 0 {
        return Err(MetricError::Undefined("graph has no edges"));
    }
    let (labels, sizes) = component_labels(graph);
    // first label with the maximum size is the one holding the smallest ASN
    let giant = sizes
        .iter()
        .enumerate()
        .fold(
            (0, 0),
            |best, (l, &s)| if s > best.1 { (l, s) } else { best },
        )
        .0 as u32;
    let members: Vec<usize> = (0..graph.node_count())
        .filter(|&i| labels[i] == giant)
        .collect();
    let n = graph.node_count();

    if exact {
        let value = members
            .par_iter()
            .map_init(|| Bfs::new(n), |bfs, &s| bfs.run(graph, s).eccentricity)
            .max()
            .unwrap_or(0);
        return Ok(DiameterEstimate {
            value: value as usize,
            exact: true,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts = sample(
        &mut rng,
        members.len(),
        DOUBLE_SWEEP_STARTS.min(members.len()),
    );
    let mut bfs = Bfs::new(n);
    let mut best = 0;
    for k in starts.iter() {
        let first = bfs.run(graph, members[k]);
        let second = bfs.run(graph, first.farthest);
        best = best.max(first.eccentricity).max(second.eccentricity);
    }
    Ok(DiameterEstimate {
        value: best as usize,
        exact: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{parse_records, FormatConfig};

    fn records(text: &str) -> Vec<LinkRecord> {
        parse_records(text.as_bytes(), &FormatConfig::default())
            .unwrap()
            .records
    }

    fn complete(n: u32) -> AsGraph {
        let mut edges = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                edges.push((a, b));
            }
        }
        AsGraph::from_edges(&[], &edges)
    }

    #[test]
    fn redundancy_fixtures() {
        assert_eq!(path_redundancy(&records("1,2,::1,5\n3,4,::2,6\n")), Ok(1.0));
        // pair {1,2} seen with two distinct paths, {3,4} with one
        let recs = records("1,2,::1,5\n2,1,::2,6 7\n3,4,::3,6\n");
        assert_eq!(path_redundancy(&recs), Ok(1.5));
        // repeated identical path counts once
        let recs = records("1,2,::1,5\n1,2,::1,5\n");
        assert_eq!(path_redundancy(&recs), Ok(1.0));
        assert!(path_redundancy(&[]).is_err());
        assert!(path_redundancy(&records("1,1,::1,5\n")).is_err());
    }

    #[test]
    fn observed_lengths() {
        let table_one = records(
            "63574,48603,::1,52821 17666 54520 21712 60977\n\
             1380,20972,::2,32431 51320 58325 23574\n\
             55690,10380,::3,18085 5945 18156 11599 5905\n\
             40447,5090,::4,62279\n\
             28304,29994,::5,53053 16947 9854 38728 50542\n",
        );
        assert_eq!(observed_path_length(&table_one, HopCounting::Ases), Ok(4.0));
        assert_eq!(
            observed_path_length(&table_one, HopCounting::Edges),
            Ok(3.0)
        );
        let one = records("1,2,::1,9\n");
        assert_eq!(observed_path_length(&one, HopCounting::Ases), Ok(1.0));
        assert_eq!(observed_path_length(&one, HopCounting::Edges), Ok(0.0));
        assert!(observed_path_length(&[], HopCounting::Ases).is_err());
    }

    #[test]
    fn shortest_path_fixtures() {
        let path = AsGraph::from_edges(&[], &[(1, 2), (2, 3)]);
        let est = average_shortest_path_length(&path, None, 0).unwrap();
        assert_eq!(est.mean, 4.0 / 3.0);
        assert_eq!(est.pairs, 6);
        assert!(!est.sampled);

        assert_eq!(
            average_shortest_path_length(&complete(5), None, 0)
                .unwrap()
                .mean,
            1.0
        );

        let star = AsGraph::from_edges(&[], &[(1, 2), (1, 3), (1, 4)]);
        assert_eq!(
            average_shortest_path_length(&star, None, 0).unwrap().mean,
            1.5
        );

        assert!(average_shortest_path_length(&AsGraph::from_edges(&[1, 2], &[]), None, 0).is_err());
    }

    #[test]
    fn unreachable_pairs_are_excluded() {
        let g = AsGraph::from_edges(&[9], &[(1, 2), (3, 4)]);
        let est = average_shortest_path_length(&g, None, 3).unwrap();
        assert_eq!(est.mean, 1.0);
        assert_eq!(est.pairs, 4);
    }

    #[test]
    fn sampling_is_seeded() {
        let edges: Vec<(u32, u32)> = (1..200).map(|i| (i, i + 1)).collect();
        let g = AsGraph::from_edges(&[], &edges);
        let a = average_shortest_path_length(&g, Some(20), 11).unwrap();
        let b = average_shortest_path_length(&g, Some(20), 11).unwrap();
        assert_eq!(a, b);
        assert!(a.sampled);
        assert_eq!(a.sources, 20);
        // sample larger than the graph falls back to every source
        let full = average_shortest_path_length(&g, Some(1000), 11).unwrap();
        assert!(!full.sampled);
    }

    #[test]
    fn diameter_fixtures() {
        let edges: Vec<(u32, u32)> = (1..8).map(|i| (i, i + 1)).collect();
        let path8 = AsGraph::from_edges(&[], &edges);
        assert_eq!(diameter(&path8, true, 0).unwrap().value, 7);
        assert_eq!(diameter(&path8, false, 0).unwrap().value, 7);
        assert_eq!(diameter(&complete(6), true, 0).unwrap().value, 1);
        assert!(diameter(&AsGraph::from_edges(&[1], &[]), true, 0).is_err());
    }

    #[test]
    fn diameter_uses_largest_component() {
        // long path of 4 nodes vs. a 5-node star; the star is larger
        let g = AsGraph::from_edges(
            &[],
            &[
                (1, 2),
                (2, 3),
                (3, 4),
                (10, 11),
                (10, 12),
                (10, 13),
                (10, 14),
            ],
        );
        let d = diameter(&g, true, 0).unwrap();
        assert_eq!(
            d,
            DiameterEstimate {
                value: 2,
                exact: true
            }
        );
    }
}
