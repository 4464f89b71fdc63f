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

//! Synthetic AS-link corpora.
//!
//! Every random choice comes from a ChaCha8 generator seeded from the
//! config, with one stream per stage, so identical configs give identical
//! records and changing path options leaves the topology untouched.

mod config;

use std::collections::{HashMap, HashSet};
use std::net::Ipv6Addr;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use crate::dataset::write_dataset;
use crate::dataset::{AsNumber, AsPath, Ipv6Prefix, LinkRecord};
pub use config::{
    check_degree_sequence, paper_degree_sequence, parse_degree_sequence, parse_weights,
    GenerateError, GeneratorConfig, Profile, PAPER_DEGREE_SEQUENCE, PAPER_EDGE_COUNT,
    PAPER_NODE_COUNT, PAPER_PATH_LENGTH_RANGE,
};

/// Rewiring attempts allowed per edge before giving up.
pub const REWIRING_BUDGET_PER_EDGE: usize = 100;

/// Fruitless swap attempts on a single edge, per edge of the graph, before
/// the stubs are reshuffled.
pub const STALL_LIMIT_PER_EDGE: usize = 2;

/// Upper bound for pseudorandom path hops, the 16-bit public ASN range.
const PATH_ASN_MAX: u32 = 64_511;

const STREAM_LABELS: u64 = 1;
const STREAM_EDGES: u64 = 2;
const STREAM_PREFIXES: u64 = 3;
const STREAM_PATHS: u64 = 4;

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// Generates one record per edge of a topology drawn per `config`.
pub fn generate(config: &GeneratorConfig) -> Result<Vec<LinkRecord>, GenerateError> {
    config.validate()?;
    let edges = match config.profile {
        Profile::Paper | Profile::ConfigurationModel => {
            let seq = config
                .degree_sequence
                .as_ref()
                .ok_or(GenerateError::MissingDegreeSequence(config.profile))?;
            let degrees: Vec<usize> = seq
                .iter()
                .flat_map(|(&k, &n)| std::iter::repeat_n(k, n as usize))
                .collect();
            configuration_model(&degrees, &mut stream(config.seed, STREAM_EDGES))?
        }
        Profile::RandomUniform => uniform_edges(
            config.node_count,
            config.edge_count,
            &mut stream(config.seed, STREAM_EDGES),
        ),
    };

    let labels = asn_labels(config.node_count, &mut stream(config.seed, STREAM_LABELS));
    let mut prefix_rng = stream(config.seed, STREAM_PREFIXES);
    let mut path_rng = stream(config.seed, STREAM_PATHS);
    let (min_len, max_len) = config.path_length_range;
    let weights = config
        .path_length_weights
        .as_ref()
        .map(|w| WeightedIndex::new(w).map_err(|e| GenerateError::InvalidWeights(e.to_string())))
        .transpose()?;

    let mut seen_prefixes = HashSet::with_capacity(edges.len());
    let mut records = Vec::with_capacity(edges.len());
    for (a, b) in edges {
        let source = labels[a as usize];
        let destination = labels[b as usize];
        let prefix = loop {
            let addr: u128 = prefix_rng.gen();
            if seen_prefixes.insert(addr) {
                break Ipv6Prefix::host(Ipv6Addr::from(addr));
            }
        };
        let len = match &weights {
            Some(w) => min_len + w.sample(&mut path_rng),
            None => path_rng.gen_range(min_len..=max_len),
        };
        let path = if config.consistent_paths {
            consistent_path(source, destination, len, &mut path_rng)
        } else {
            random_path(len, &mut path_rng)
        };
        records.push(LinkRecord {
            source,
            destination,
            prefix,
            path,
        });
    }
    Ok(records)
}

/// `count` distinct ASNs drawn uniformly from the full 32-bit range.
fn asn_labels(count: usize, rng: &mut ChaCha8Rng) -> Vec<AsNumber> {
    let mut seen = HashSet::with_capacity(count);
    let mut labels = Vec::with_capacity(count);
    while labels.len() < count {
        let v = rng.gen_range(1..=u32::MAX);
        if seen.insert(v) {
            labels.push(AsNumber::new(v).expect("drawn from 1..=u32::MAX"));
        }
    }
    labels
}

fn random_hop(rng: &mut ChaCha8Rng, avoid: &[AsNumber]) -> AsNumber {
    loop {
        let hop = AsNumber::new(rng.gen_range(1..=PATH_ASN_MAX)).expect("nonzero range");
        if !avoid.contains(&hop) {
            return hop;
        }
    }
}

/// A path of exactly `len` ASes with no consecutive repeats.
fn random_path(len: usize, rng: &mut ChaCha8Rng) -> AsPath {
    let mut hops: Vec<AsNumber> = Vec::with_capacity(len);
    for _ in 0..len {
        let avoid: &[AsNumber] = match hops.last() {
            Some(prev) => std::slice::from_ref(prev),
            None => &[],
        };
        hops.push(random_hop(rng, avoid));
    }
    AsPath::new(hops).expect("len >= 1")
}

fn consistent_path(
    source: AsNumber,
    destination: AsNumber,
    len: usize,
    rng: &mut ChaCha8Rng,
) -> AsPath {
    let mut hops = Vec::with_capacity(len);
    hops.push(source);
    for i in 1..len - 1 {
        let prev = hops[i - 1];
        let hop = if i == len - 2 {
            random_hop(rng, &[prev, destination])
        } else {
            random_hop(rng, &[prev])
        };
        hops.push(hop);
    }
    hops.push(destination);
    AsPath::new(hops).expect("len >= 2")
}

fn canonical(a: u32, b: u32) -> (u32, u32) {
    (a.min(b), a.max(b))
}

/// Pairs degree stubs at random, then rewires self-loops and repeated edges
/// with degree-preserving swaps until the graph is simple.
///
/// A swap replaces a bad edge `(a, b)` and a random edge `(c, d)` with
/// either `(a, c), (b, d)` or `(a, d), (b, c)`, accepted only if both new
/// edges are fresh non-loops. Near-complete sequences can leave no such
/// swap; after [`STALL_LIMIT_PER_EDGE`]` × m` fruitless attempts on one edge
/// the stubs are reshuffled. All attempts count against one budget of
/// [`REWIRING_BUDGET_PER_EDGE`]` × m`.
pub(crate) fn configuration_model(
    degrees: &[usize],
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(u32, u32)>, GenerateError> {
    let mut stubs: Vec<u32> = degrees
        .iter()
        .enumerate()
        .flat_map(|(node, &d)| std::iter::repeat_n(node as u32, d))
        .collect();
    if stubs.len() % 2 == 1 {
        return Err(GenerateError::OddDegreeMass(stubs.len() as u64));
    }
    let m = stubs.len() / 2;
    let budget = REWIRING_BUDGET_PER_EDGE * m;
    let stall_limit = (STALL_LIMIT_PER_EDGE * m).max(1);
    let mut attempts = 0;
    loop {
        stubs.shuffle(rng);
        let edges: Vec<(u32, u32)> = stubs.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        match rewire(edges, rng, &mut attempts, budget, stall_limit) {
            Some(edges) => return Ok(edges),
            None if attempts >= budget => {
                return Err(GenerateError::RewiringBudgetExhausted(budget))
            }
            None => {}
        }
    }
}

/// Rewires `edges` in place; `None` when the budget runs out or one edge
/// stalls.
fn rewire(
    mut edges: Vec<(u32, u32)>,
    rng: &mut ChaCha8Rng,
    attempts: &mut usize,
    budget: usize,
    stall_limit: usize,
) -> Option<Vec<(u32, u32)>> {
    let m = edges.len();
    let mut multiplicity: HashMap<(u32, u32), u32> = HashMap::with_capacity(m);
    for &(a, b) in &edges {
        *multiplicity.entry(canonical(a, b)).or_insert(0) += 1;
    }
    let is_bad = |e: (u32, u32), mult: &HashMap<(u32, u32), u32>| {
        e.0 == e.1 || mult[&canonical(e.0, e.1)] > 1
    };
    let mut worklist: Vec<usize> = (0..m)
        .filter(|&i| is_bad(edges[i], &multiplicity))
        .collect();
    worklist.reverse();

    while let Some(i) = worklist.pop() {
        if !is_bad(edges[i], &multiplicity) {
            continue;
        }
        let mut tries = 0;
        loop {
            if *attempts >= budget || tries >= stall_limit || m < 2 {
                return None;
            }
            *attempts += 1;
            tries += 1;
            let j = rng.gen_range(0..m);
            if j == i {
                continue;
            }
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            let (e1, e2) = if rng.gen::<bool>() {
                ((a, c), (b, d))
            } else {
                ((a, d), (b, c))
            };
            if e1.0 == e1.1 || e2.0 == e2.1 {
                continue;
            }
            let (k1, k2) = (canonical(e1.0, e1.1), canonical(e2.0, e2.1));
            if k1 == k2 || multiplicity.contains_key(&k1) || multiplicity.contains_key(&k2) {
                continue;
            }
            for old in [canonical(a, b), canonical(c, d)] {
                let n = multiplicity.get_mut(&old).expect("edge present");
                *n -= 1;
                if *n == 0 {
                    multiplicity.remove(&old);
                }
            }
            multiplicity.insert(k1, 1);
            multiplicity.insert(k2, 1);
            edges[i] = e1;
            edges[j] = e2;
            break;
        }
    }
    Some(edges)
}

/// `edge_count` distinct non-loop edges drawn uniformly over `node_count`
/// nodes. Nodes left without an edge do not appear in the records.
fn uniform_edges(node_count: usize, edge_count: usize, rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    let mut seen = HashSet::with_capacity(edge_count);
    let mut edges = Vec::with_capacity(edge_count);
    while edges.len() < edge_count {
        let a = rng.gen_range(0..node_count as u32);
        let b = rng.gen_range(0..node_count as u32);
        if a != b && seen.insert(canonical(a, b)) {
            edges.push((a, b));
        }
    }
    edges
}
