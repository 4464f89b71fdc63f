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

//! AS-link records: domain types, parsing, summaries, and serialization.

mod parse;
mod stats;
mod types;
mod write;

pub use parse::{
    parse_records, parse_records_with, Column, DatasetError, Delimiter, FormatConfig, HeaderMode,
    ParsedDataset, RecordReader, RowError, RowErrorKind,
};
pub use stats::{basic_stats, AsCountMode, DatasetStats};
pub use types::{AsNumber, AsPath, FieldError, Ipv6Prefix, LinkRecord};
pub use write::write_dataset;
