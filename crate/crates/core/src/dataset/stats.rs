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

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::types::{AsNumber, Ipv6Prefix, LinkRecord};

/// Which record fields contribute to the unique-AS count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AsCountMode {
    /// Source and destination columns only.
    #[default]
    Endpoints,
    /// Endpoints plus every hop of every path.
    AllFields,
}

/// Summary counts over a record sequence. Path lengths count ASes on the
/// normalized path and are absent when there are no records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetStats {
    pub record_count: usize,
    pub rejected_count: usize,
    pub self_record_count: usize,
    pub as_count_mode: AsCountMode,
    pub unique_as_count: usize,
    pub unique_prefix_count: usize,
    pub path_length_avg: Option<f64>,
    pub path_length_min: Option<usize>,
    pub path_length_max: Option<usize>,
    pub path_hop_total: u64,
}

pub fn basic_stats(records: &[LinkRecord], mode: AsCountMode) -> DatasetStats {
    let mut ases: HashSet<AsNumber> = HashSet::new();
    let mut prefixes: HashSet<Ipv6Prefix> = HashSet::with_capacity(records.len());
    let mut min = usize::MAX;
    let mut max = 0usize;
    let mut total = 0u64;
    let mut self_records = 0;

    for record in records {
        ases.insert(record.source);
        ases.insert(record.destination);
        if mode == AsCountMode::AllFields {
            ases.extend(record.path.hops().iter().copied());
        }
        prefixes.insert(record.prefix);
        let len = record.path.len();
        min = min.min(len);
        max = max.max(len);
        total += len as u64;
        if record.is_self_record() {
            self_records += 1;
        }
    }

    let n = records.len();
    DatasetStats {
        record_count: n,
        rejected_count: 0,
        self_record_count: self_records,
        as_count_mode: mode,
        unique_as_count: ases.len(),
        unique_prefix_count: prefixes.len(),
        path_length_avg: (n > 0).then(|| total as f64 / n as f64),
        path_length_min: (n > 0).then_some(min),
        path_length_max: (n > 0).then_some(max),
        path_hop_total: total,
    }
}
