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
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("degree sequence has odd total degree {0}")]
    OddDegreeMass(u64),
    #[error("degree mass {mass} is not twice the edge count {edge_count}")]
    DegreeMassMismatch { mass: u64, edge_count: usize },
    #[error("degree sequence covers {sequence_nodes} nodes but node count is {node_count}")]
    NodeCountMismatch {
        sequence_nodes: u64,
        node_count: usize,
    },
    #[error("degree-0 nodes cannot appear in link records")]
    ZeroDegree,
    #[error("degree sequence is not graphical (Erdős–Gallai fails at k = {0})")]
    NotGraphical(usize),
    #[error("rewiring budget of {0} attempts exhausted before the graph became simple")]
    RewiringBudgetExhausted(usize),
    #[error("{edges} distinct edges do not fit on {nodes} nodes")]
    TooManyEdges { nodes: usize, edges: usize },
    #[error("profile {0} needs a degree sequence")]
    MissingDegreeSequence(Profile),
    #[error("paper profile fixes {0}; it cannot be overridden")]
    PaperProfileOverride(&'static str),
    #[error("invalid path length range [{0}, {1}]")]
    InvalidPathRange(usize, usize),
    #[error("consistent paths need a minimum path length of 2, got {0}")]
    ConsistentPathTooShort(usize),
    #[error("path length weights: {0}")]
    InvalidWeights(String),
    #[error("config: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    /// Degree sequence, node count, and edge count of the reference
    /// IPv6 AS-link dataset.
    Paper,
    /// `edge_count` distinct edges drawn uniformly over `node_count` nodes.
    RandomUniform,
    /// Exact realization of a given degree sequence.
    ConfigurationModel,
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Paper => "paper",
            Profile::RandomUniform => "random-uniform",
            Profile::ConfigurationModel => "configuration-model",
        })
    }
}

impl FromStr for Profile {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" | "paper-profile" => Ok(Profile::Paper),
            "random-uniform" => Ok(Profile::RandomUniform),
            "configuration-model" => Ok(Profile::ConfigurationModel),
            other => Err(GenerateError::InvalidConfig(format!(
                "unknown profile '{other}'"
            ))),
        }
    }
}

/// Degree frequencies of the reference dataset.
pub const PAPER_DEGREE_SEQUENCE: [(usize, u64); 5] =
    [(1, 14757), (2, 2199), (3, 261), (4, 13), (5, 2)];
pub const PAPER_NODE_COUNT: usize = 17_232;
pub const PAPER_EDGE_COUNT: usize = 10_000;
pub const PAPER_PATH_LENGTH_RANGE: (usize, usize) = (1, 5);

pub fn paper_degree_sequence() -> BTreeMap<usize, u64> {
    PAPER_DEGREE_SEQUENCE.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorConfig {
    pub profile: Profile,
    pub node_count: usize,
    pub edge_count: usize,
    pub degree_sequence: Option<BTreeMap<usize, u64>>,
    /// Inclusive AS-count range for generated paths.
    pub path_length_range: (usize, usize),
    /// Relative weight of each length in `path_length_range`, lowest first.
    /// Uniform when absent.
    pub path_length_weights: Option<Vec<f64>>,
    /// Paths start at the record's source and end at its destination.
    pub consistent_paths: bool,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn paper(seed: u64) -> Self {
        GeneratorConfig {
            profile: Profile::Paper,
            node_count: PAPER_NODE_COUNT,
            edge_count: PAPER_EDGE_COUNT,
            degree_sequence: Some(paper_degree_sequence()),
            path_length_range: PAPER_PATH_LENGTH_RANGE,
            path_length_weights: None,
            consistent_paths: false,
            seed,
        }
    }

    /// Configuration-model config with node and edge counts taken from the
    /// sequence itself.
    pub fn configuration_model(degree_sequence: BTreeMap<usize, u64>, seed: u64) -> Self {
        let nodes = degree_sequence.values().sum::<u64>() as usize;
        let mass: u64 = degree_sequence.iter().map(|(&k, &n)| k as u64 * n).sum();
        GeneratorConfig {
            profile: Profile::ConfigurationModel,
            node_count: nodes,
            edge_count: (mass / 2) as usize,
            degree_sequence: Some(degree_sequence),
            path_length_range: PAPER_PATH_LENGTH_RANGE,
            path_length_weights: None,
            consistent_paths: false,
            seed,
        }
    }

    pub fn random_uniform(node_count: usize, edge_count: usize, seed: u64) -> Self {
        GeneratorConfig {
            profile: Profile::RandomUniform,
            node_count,
            edge_count,
            degree_sequence: None,
            path_length_range: PAPER_PATH_LENGTH_RANGE,
            path_length_weights: None,
            consistent_paths: false,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), GenerateError> {
        let (min, max) = self.path_length_range;
        if min < 1 || min > max {
            return Err(GenerateError::InvalidPathRange(min, max));
        }
        if self.consistent_paths && min < 2 {
            return Err(GenerateError::ConsistentPathTooShort(min));
        }
        if let Some(w) = &self.path_length_weights {
            if w.len() != max - min + 1 {
                return Err(GenerateError::InvalidWeights(format!(
                    "expected {} weights for lengths {min}..={max}, got {}",
                    max - min + 1,
                    w.len()
                )));
            }
            if w.iter().any(|x| !x.is_finite() || *x < 0.0) || w.iter().sum::<f64>() <= 0.0 {
                return Err(GenerateError::InvalidWeights(
                    "weights must be finite, non-negative, and not all zero".into(),
                ));
            }
        }

        match self.profile {
            Profile::Paper => {
                if self.node_count != PAPER_NODE_COUNT {
                    return Err(GenerateError::PaperProfileOverride("node count"));
                }
                if self.edge_count != PAPER_EDGE_COUNT {
                    return Err(GenerateError::PaperProfileOverride("edge count"));
                }
                if self.degree_sequence.as_ref() != Some(&paper_degree_sequence()) {
                    return Err(GenerateError::PaperProfileOverride("degree sequence"));
                }
            }
            Profile::ConfigurationModel => {
                let seq = self
                    .degree_sequence
                    .as_ref()
                    .ok_or(GenerateError::MissingDegreeSequence(self.profile))?;
                check_degree_sequence(seq, self.node_count, self.edge_count)?;
            }
            Profile::RandomUniform => {
                let n = self.node_count as u128;
                if self.edge_count as u128 > n * n.saturating_sub(1) / 2 {
                    return Err(GenerateError::TooManyEdges {
                        nodes: self.node_count,
                        edges: self.edge_count,
                    });
                }
            }
        }
        Ok(())
    }

    /// Reads a flat `key = value` file. Unset keys keep the profile's
    /// defaults; `#` starts a comment.
    pub fn from_key_values(text: &str) -> Result<Self, GenerateError> {
        let mut pairs = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                GenerateError::InvalidConfig(format!("line {}: expected key = value", n + 1))
            })?;
            pairs.insert(k.trim().replace('-', "_"), v.trim().to_string());
        }
        let bad = |key: &str, v: &str| GenerateError::InvalidConfig(format!("bad {key} '{v}'"));

        let seed = match pairs.remove("seed") {
            Some(v) => v.parse().map_err(|_| bad("seed", &v))?,
            None => 0,
        };
        let profile = match pairs.remove("profile") {
            Some(v) => v.parse()?,
            None => Profile::Paper,
        };
        let mut config = match profile {
            Profile::Paper => GeneratorConfig::paper(seed),
            Profile::RandomUniform => GeneratorConfig::random_uniform(0, 0, seed),
            Profile::ConfigurationModel => {
                GeneratorConfig::configuration_model(BTreeMap::new(), seed)
            }
        };
        if let Some(v) = pairs.remove("degree_sequence") {
            let seq = parse_degree_sequence(&v)?;
            if profile == Profile::ConfigurationModel {
                config = GeneratorConfig::configuration_model(seq, seed);
            } else {
                config.degree_sequence = Some(seq);
            }
        }
        for (key, v) in pairs {
            match key.as_str() {
                "nodes" | "node_count" => {
                    config.node_count = v.parse().map_err(|_| bad(&key, &v))?
                }
                "edges" | "edge_count" => {
                    config.edge_count = v.parse().map_err(|_| bad(&key, &v))?
                }
                "path_min" => config.path_length_range.0 = v.parse().map_err(|_| bad(&key, &v))?,
                "path_max" => config.path_length_range.1 = v.parse().map_err(|_| bad(&key, &v))?,
                "path_weights" => config.path_length_weights = Some(parse_weights(&v)?),
                "consistent_paths" => {
                    config.consistent_paths = v.parse().map_err(|_| bad(&key, &v))?
                }
                _ => return Err(GenerateError::InvalidConfig(format!("unknown key '{key}'"))),
            }
        }
        Ok(config)
    }
}

/// Parses `degree:count` pairs separated by commas, e.g. `1:14757,2:2199`.
pub fn parse_degree_sequence(s: &str) -> Result<BTreeMap<usize, u64>, GenerateError> {
    let mut seq = BTreeMap::new();
    for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
        let parsed = item
            .split_once(':')
            .and_then(|(k, n)| Some((k.trim().parse().ok()?, n.trim().parse().ok()?)));
        let (k, n): (usize, u64) = parsed.ok_or_else(|| {
            GenerateError::InvalidConfig(format!("bad degree sequence entry '{item}'"))
        })?;
        *seq.entry(k).or_insert(0) += n;
    }
    seq.retain(|_, n| *n > 0);
    if seq.is_empty() {
        return Err(GenerateError::InvalidConfig("empty degree sequence".into()));
    }
    Ok(seq)
}

pub fn parse_weights(s: &str) -> Result<Vec<f64>, GenerateError> {
    s.split(',')
        .map(|w| {
            w.trim()
                .parse::<f64>()
                .map_err(|_| GenerateError::InvalidWeights(format!("bad weight '{}'", w.trim())))
        })
        .collect()
}

/// Checks handshake parity, counts, and the Erdős–Gallai inequalities.
pub fn check_degree_sequence(
    seq: &BTreeMap<usize, u64>,
    node_count: usize,
    edge_count: usize,
) -> Result<(), GenerateError> {
    if seq.get(&0).copied().unwrap_or(0) > 0 {
        return Err(GenerateError::ZeroDegree);
    }
    let mass: u64 = seq.iter().map(|(&k, &n)| k as u64 * n).sum();
    if mass % 2 == 1 {
        return Err(GenerateError::OddDegreeMass(mass));
    }
    if mass != 2 * edge_count as u64 {
        return Err(GenerateError::DegreeMassMismatch { mass, edge_count });
    }
    let nodes: u64 = seq.values().sum();
    if nodes != node_count as u64 {
        return Err(GenerateError::NodeCountMismatch {
            sequence_nodes: nodes,
            node_count,
        });
    }
    let mut degrees: Vec<u64> = seq
        .iter()
        .rev()
        .flat_map(|(&k, &n)| std::iter::repeat_n(k as u64, n as usize))
        .collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    if let Some(k) = erdos_gallai_violation(&degrees) {
        return Err(GenerateError::NotGraphical(k));
    }
    Ok(())
}

/// First `k` at which a non-increasing sequence breaks Erdős–Gallai.
fn erdos_gallai_violation(degrees: &[u64]) -> Option<usize> {
    let n = degrees.len();
    let mut prefix = vec![0u64; n + 1];
    for (i, &d) in degrees.iter().enumerate() {
        prefix[i + 1] = prefix[i] + d;
    }
    for k in 1..=n {
        let kk = k as u64;
        // entries at or above k contribute k each, the rest their own degree
        let at_least_k = degrees.partition_point(|&d| d >= kk).max(k);
        let rhs = kk * (kk - 1) + kk * (at_least_k - k) as u64 + (prefix[n] - prefix[at_least_k]);
        if prefix[k] > rhs {
            return Some(k);
        }
    }
    None
}
