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

//! Report sections and their JSON, CSV, and table renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::connectivity::ConnectivityReport;
use crate::dataset::{AsNumber, DatasetStats};
use crate::graph::{AsGraph, EdgeMode};
use crate::metrics::{
    degree_histogram, ClusteringReport, ClusteringScope, DegreeDistribution, HistogramRow, JddRow,
    JointDegreeDistribution,
};

#[derive(Debug, Clone, Serialize)]
pub struct GraphSection {
    pub edge_mode: EdgeMode,
    pub node_count: usize,
    pub edge_count: usize,
    pub ordered_edge_count: usize,
}

impl GraphSection {
    pub fn new(graph: &AsGraph, edge_mode: EdgeMode) -> Self {
        GraphSection {
            edge_mode,
            node_count: graph.node_count(),
            edge_count: graph.edge_count(),
            ordered_edge_count: graph.ordered_edge_indices().len(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeSection {
    pub total_nodes: u64,
    pub degree_mass: u64,
    pub frequency: BTreeMap<usize, u64>,
    pub histogram: Vec<HistogramRow>,
}

impl DegreeSection {
    pub fn new(dist: &DegreeDistribution) -> Self {
        DegreeSection {
            total_nodes: dist.total_nodes(),
            degree_mass: dist.degree_mass(),
            frequency: dist.frequency().clone(),
            histogram: degree_histogram(dist),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct JddSection {
    pub ordered: bool,
    pub total_edges: u64,
    pub pairs: Vec<JddRow>,
}

impl JddSection {
    pub fn new(jdd: &JointDegreeDistribution) -> Self {
        JddSection {
            ordered: jdd.is_ordered(),
            total_edges: jdd.total_edges(),
            pairs: jdd.rows(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TopEntry {
    pub asn: AsNumber,
    pub coefficient: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClusteringSection {
    pub scope: ClusteringScope,
    /// Mean local coefficient over `scope`.
    pub global_average: Option<f64>,
    pub global_all_nodes: Option<f64>,
    pub global_eligible_only: Option<f64>,
    pub triangle_total: u64,
    pub eligible_nodes: usize,
    pub connected_triples: u64,
    /// 3 × triangles / connected triples; not the headline coefficient.
    pub transitivity: Option<f64>,
    pub top_k: Vec<TopEntry>,
    pub absent: BTreeMap<String, String>,
}

impl ClusteringSection {
    pub fn new(report: &ClusteringReport, scope: ClusteringScope, top_k: usize) -> Self {
        let mut absent = BTreeMap::new();
        let mut global = |name: &str, scope| match report.global(scope) {
            Ok(v) => Some(v),
            Err(e) => {
                absent.insert(name.to_string(), e.to_string());
                None
            }
        };
        let all = global("global_all_nodes", ClusteringScope::AllNodes);
        let eligible = global("global_eligible_only", ClusteringScope::EligibleOnly);
        let transitivity = report.transitivity();
        if transitivity.is_none() {
            absent.insert(
                "transitivity".into(),
                "undefined: no connected triples".into(),
            );
        }
        ClusteringSection {
            scope,
            global_average: match scope {
                ClusteringScope::AllNodes => all,
                ClusteringScope::EligibleOnly => eligible,
            },
            global_all_nodes: all,
            global_eligible_only: eligible,
            triangle_total: report.triangle_total,
            eligible_nodes: report.eligible_nodes,
            connected_triples: report.connected_triples,
            transitivity,
            top_k: report
                .top_k(top_k)
                .into_iter()
                .map(|(asn, coefficient)| TopEntry { asn, coefficient })
                .collect(),
            absent,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport<M: Serialize> {
    pub manifest: M,
    pub dataset: DatasetStats,
    pub graph: GraphSection,
    pub degree_distribution: DegreeSection,
    pub joint_degree_distribution: JddSection,
    pub clustering: ClusteringSection,
    pub connectivity: ConnectivityReport,
}

/// Rounds every floating-point number in `value` to `digits` fractional
/// digits. Integers are left alone.
pub fn round_floats(value: &mut Value, digits: u32) {
    match value {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(0.0);
            let scale = 10f64.powi(digits as i32);
            let r = (x * scale).round() / scale;
            if let Some(num) = serde_json::Number::from_f64(r) {
                *n = num;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|v| round_floats(v, digits)),
        Value::Object(map) => map.values_mut().for_each(|v| round_floats(v, digits)),
        _ => {}
    }
}

pub fn to_json<T: Serialize>(report: &T, digits: u32) -> String {
    let mut value = serde_json::to_value(report).expect("report serializes");
    round_floats(&mut value, digits);
    let mut out = serde_json::to_string_pretty(&value).expect("value serializes");
    out.push('\n');
    out
}

pub fn fmt_prob(x: f64, digits: u32) -> String {
    format!("{:.*}", digits as usize, x)
}

pub fn histogram_csv(rows: &[HistogramRow], digits: u32) -> String {
    let mut out = String::from("degree,count,probability\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{}",
            r.degree,
            r.count,
            fmt_prob(r.probability, digits)
        );
    }
    out
}

pub fn jdd_csv(rows: &[JddRow], digits: u32) -> String {
    let mut out = String::from("k,k_prime,probability\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{}",
            r.k,
            r.k_prime,
            fmt_prob(r.probability, digits)
        );
    }
    out
}

pub fn clustering_csv(report: &ClusteringReport, digits: u32) -> String {
    let mut out = String::from("asn,degree,triangles,local_clustering\n");
    for n in &report.nodes {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            n.asn,
            n.degree,
            n.triangles,
            fmt_prob(n.coefficient, digits)
        );
    }
    out
}

/// Flattens the scalar leaves of a JSON object into `key,value` CSV rows or
/// an aligned two-column table. Arrays and nested objects are skipped.
pub fn key_values(value: &Value, csv: bool) -> String {
    let mut rows = Vec::new();
    if let Value::Object(map) = value {
        for (k, v) in map {
            let text = match v {
                Value::Null => "-".to_string(),
                Value::String(s) => s.clone(),
                Value::Bool(_) | Value::Number(_) => v.to_string(),
                _ => continue,
            };
            rows.push((k.as_str(), text));
        }
    }
    let mut out = String::new();
    if csv {
        out.push_str("metric,value\n");
        for (k, v) in rows {
            let _ = writeln!(out, "{k},{v}");
        }
    } else {
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in rows {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
    }
    out
}
