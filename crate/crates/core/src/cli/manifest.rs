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
use std::time::Instant;

use serde::Serialize;

/// Provenance block embedded in every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool_version: &'static str,
    pub command: &'static str,
    pub input_path: Option<String>,
    pub edge_mode: Option<String>,
    pub options: BTreeMap<String, String>,
    pub seed: Option<u64>,
    /// Wall-clock milliseconds per stage; the only field that varies
    /// between otherwise identical runs.
    pub timings: BTreeMap<String, f64>,
}

impl RunManifest {
    pub fn new(command: &'static str) -> Self {
        RunManifest {
            tool_version: env!("CARGO_PKG_VERSION"),
            command,
            input_path: None,
            edge_mode: None,
            options: BTreeMap::new(),
            seed: None,
            timings: BTreeMap::new(),
        }
    }

    pub fn option(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.options.insert(key.to_string(), value.to_string());
        self
    }

    /// Runs `f`, recording its duration under `stage`.
    pub fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        *self.timings.entry(stage.to_string()).or_insert(0.0) += ms;
        out
    }
}
