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

use std::io::{self, Write};

use super::parse::Column;
use super::types::LinkRecord;

/// Writes records as a comma-separated table with the standard header row.
pub fn write_dataset<W: Write>(records: &[LinkRecord], sink: W) -> io::Result<()> {
    let mut sink = io::BufWriter::new(sink);
    let header: Vec<&str> = Column::DEFAULT_ORDER
        .iter()
        .map(|c| c.header_name())
        .collect();
    writeln!(sink, "{}", header.join(","))?;
    for r in records {
        writeln!(
            sink,
            "{},{},{},{}",
            r.source, r.destination, r.prefix, r.path
        )?;
    }
    sink.flush()
}
