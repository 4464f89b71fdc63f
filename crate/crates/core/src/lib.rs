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

//! AS-level topology analysis for AS-link datasets built from IPv6 routing
//! data.
//!
//! Records are parsed with [`dataset::parse_records`], turned into an
//! [`graph::AsGraph`] by [`graph::build_graph`], and measured with the
//! functions in [`metrics`] and [`connectivity`]. [`generator`] produces
//! synthetic corpora in the same format, and [`cli`] wires it all into the
//! `astopo` command.

pub mod cli;
pub mod connectivity;
pub mod dataset;
mod error;
pub mod generator;
pub mod graph;
pub mod metrics;

pub use error::MetricError;
