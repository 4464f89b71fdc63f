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

//! Degree distribution, joint degree distribution, and clustering.

mod clustering;
mod degree;
mod jdd;

pub use clustering::{
    clustering_report, count_triangles, global_clustering, local_clustering, top_k_clustering,
    triangles_per_node, ClusteringReport, ClusteringScope, NodeClustering,
};
pub use degree::{degree_distribution, degree_histogram, DegreeDistribution, HistogramRow};
pub use jdd::{joint_degree_distribution, JddRow, JointDegreeDistribution};
