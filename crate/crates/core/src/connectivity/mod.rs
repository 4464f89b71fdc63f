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

//! Path redundancy, reachability, path lengths, diameter, and components.

mod components;
mod paths;
mod report;

pub use components::{connected_components, reachability, ComponentInventory};
pub use paths::{
    average_shortest_path_length, diameter, observed_path_length, path_redundancy,
    DiameterEstimate, HopCounting, PathLengthEstimate, DOUBLE_SWEEP_STARTS,
};
pub use report::{
    connectivity_report, ConnectivityOptions, ConnectivityReport, DEFAULT_SAMPLE_SIZE,
    EXACT_NODE_LIMIT,
};
