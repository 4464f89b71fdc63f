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

//! Streaming reader for AS-link tables.
//!
//! Each data row holds four columns: source ASN, destination ASN, IPv6
//! prefix, and a space-separated AS path. Columns are separated by commas or
//! tabs; when a row carries neither and the path is the last column, the
//! first three whitespace-separated tokens are taken as the leading columns.
//! Blank lines and lines starting with `#` are skipped.

use std::fmt;
use std::io::{self, BufRead};

use thiserror::Error;

use super::stats::{basic_stats, AsCountMode, DatasetStats};
use super::types::{AsNumber, AsPath, FieldError, Ipv6Prefix, LinkRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Column {
    Source,
    Destination,
    Prefix,
    Path,
}

impl Column {
    pub const DEFAULT_ORDER: [Column; 4] = [
        Column::Source,
        Column::Destination,
        Column::Prefix,
        Column::Path,
    ];

    pub fn header_name(self) -> &'static str {
        match self {
            Column::Source => "AS_Source",
            Column::Destination => "AS_Destination",
            Column::Prefix => "IPv6_Prefix",
            Column::Path => "AS_Path",
        }
    }

    fn from_header_name(name: &str) -> Option<Column> {
        Column::DEFAULT_ORDER
            .into_iter()
            .find(|c| c.header_name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Delimiter {
    /// Tab if the row contains one, otherwise comma, otherwise whitespace.
    #[default]
    Auto,
    Comma,
    Tab,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HeaderMode {
    /// Treat the first row as a header only if it names the four columns.
    #[default]
    Auto,
    /// The first row is always a header.
    Present,
    Absent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatConfig {
    pub delimiter: Delimiter,
    pub header: HeaderMode,
    pub columns: [Column; 4],
    /// Abort on the first malformed row instead of collecting it.
    pub strict: bool,
}

impl Default for FormatConfig {
    fn default() -> Self {
        FormatConfig {
            delimiter: Delimiter::Auto,
            header: HeaderMode::Auto,
            columns: Column::DEFAULT_ORDER,
            strict: false,
        }
    }
}

impl FormatConfig {
    pub fn strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowErrorKind {
    FieldCount(usize),
    Source(FieldError),
    Destination(FieldError),
    Prefix(FieldError),
    Path(FieldError),
}

impl fmt::Display for RowErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowErrorKind::FieldCount(n) => write!(f, "expected 4 fields, found {n}"),
            RowErrorKind::Source(e) => write!(f, "source: {e}"),
            RowErrorKind::Destination(e) => write!(f, "destination: {e}"),
            RowErrorKind::Prefix(e) => write!(f, "prefix: {e}"),
            // "empty path" stays bare so it reads the same in every context
            RowErrorKind::Path(FieldError::EmptyPath) => write!(f, "empty path"),
            RowErrorKind::Path(e) => write!(f, "path: {e}"),
        }
    }
}

/// A rejected data row. Displays as `line:<n> <reason>`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line:{line} {kind}")]
pub struct RowError {
    /// 1-based physical line number.
    pub line: usize,
    pub kind: RowErrorKind,
}

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("strict mode: {0}")]
    Strict(RowError),
}

/// Records and row errors from one pass over an input.
#[derive(Debug, Clone, Default)]
pub struct ParsedDataset {
    pub records: Vec<LinkRecord>,
    pub errors: Vec<RowError>,
}

impl ParsedDataset {
    pub fn data_rows(&self) -> usize {
        self.records.len() + self.errors.len()
    }

    pub fn stats(&self, mode: AsCountMode) -> DatasetStats {
        let mut stats = basic_stats(&self.records, mode);
        stats.rejected_count = self.errors.len();
        stats
    }
}

/// Iterates the data rows of a table, one parse result per row.
///
/// The outer `Result` carries stream failures; the inner one a per-row
/// verdict. The reader never stops on a bad row.
pub struct RecordReader<R> {
    input: R,
    delimiter: Delimiter,
    header: HeaderMode,
    columns: [Column; 4],
    buf: String,
    line: usize,
    seen_first_row: bool,
}

impl<R: BufRead> RecordReader<R> {
    pub fn new(input: R, format: &FormatConfig) -> Self {
        RecordReader {
            input,
            delimiter: format.delimiter,
            header: format.header,
            columns: format.columns,
            buf: String::new(),
            line: 0,
            seen_first_row: false,
        }
    }

    /// Column order in effect; a recognized header may have reordered it.
    pub fn columns(&self) -> [Column; 4] {
        self.columns
    }

    fn header_order(&self, line: &str) -> Option<[Column; 4]> {
        let mut fields = [""; 4];
        if split_fields(line, self.delimiter, None, &mut fields) != 4 {
            return None;
        }
        let mut order = Column::DEFAULT_ORDER;
        for (slot, name) in order.iter_mut().zip(fields) {
            *slot = Column::from_header_name(name)?;
        }
        let distinct = Column::DEFAULT_ORDER.iter().all(|c| order.contains(c));
        distinct.then_some(order)
    }
}

impl<R: BufRead> Iterator for RecordReader<R> {
    type Item = io::Result<Result<LinkRecord, RowError>>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.buf.clear();
            match self.input.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => return Some(Err(e)),
            }
            self.line += 1;
            let line = self.buf.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !self.seen_first_row {
                self.seen_first_row = true;
                match self.header {
                    HeaderMode::Absent => {}
                    HeaderMode::Auto => {
                        if let Some(order) = self.header_order(line) {
                            self.columns = order;
                            continue;
                        }
                    }
                    HeaderMode::Present => {
                        if let Some(order) = self.header_order(line) {
                            self.columns = order;
                        }
                        continue;
                    }
                }
            }
            let parsed = parse_row(line, self.delimiter, &self.columns).map_err(|kind| RowError {
                line: self.line,
                kind,
            });
            return Some(Ok(parsed));
        }
    }
}

/// Splits a row into at most four fields, returning how many fields the row
/// actually has. With `whitespace_tail` set, a row with no comma or tab is
/// split on whitespace with everything after the third token forming the
/// field at that index.
fn split_fields<'a>(
    line: &'a str,
    delimiter: Delimiter,
    whitespace_tail: Option<usize>,
    out: &mut [&'a str; 4],
) -> usize {
    let sep = match delimiter {
        Delimiter::Comma => Some(','),
        Delimiter::Tab => Some('\t'),
        Delimiter::Auto => {
            if line.contains('\t') {
                Some('\t')
            } else if line.contains(',') {
                Some(',')
            } else {
                None
            }
        }
    };
    match sep {
        Some(sep) => {
            let mut n = 0;
            for field in line.split(sep) {
                if n < 4 {
                    out[n] = field.trim();
                }
                n += 1;
            }
            n
        }
        None => match whitespace_tail {
            Some(3) => {
                let mut rest = line;
                for (i, slot) in out.iter_mut().take(3).enumerate() {
                    rest = rest.trim_start();
                    let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
                    if end == 0 {
                        return i;
                    }
                    *slot = &rest[..end];
                    rest = &rest[end..];
                }
                out[3] = rest.trim();
                if out[3].is_empty() {
                    3
                } else {
                    4
                }
            }
            _ => {
                let mut n = 0;
                for field in line.split_ascii_whitespace() {
                    if n < 4 {
                        out[n] = field;
                    }
                    n += 1;
                }
                n
            }
        },
    }
}

fn parse_row(
    line: &str,
    delimiter: Delimiter,
    columns: &[Column; 4],
) -> Result<LinkRecord, RowErrorKind> {
    let mut fields = [""; 4];
    let path_index = columns.iter().position(|c| *c == Column::Path);
    let n = split_fields(line, delimiter, path_index, &mut fields);
    if n != 4 {
        return Err(RowErrorKind::FieldCount(n));
    }

    let mut source = None;
    let mut destination = None;
    let mut prefix = None;
    let mut path = None;
    for (column, field) in columns.iter().zip(fields) {
        match column {
            Column::Source => {
                source = Some(field.parse::<AsNumber>().map_err(RowErrorKind::Source)?)
            }
            Column::Destination => {
                destination = Some(
                    field
                        .parse::<AsNumber>()
                        .map_err(RowErrorKind::Destination)?,
                )
            }
            Column::Prefix => {
                prefix = Some(field.parse::<Ipv6Prefix>().map_err(RowErrorKind::Prefix)?)
            }
            Column::Path => path = Some(field.parse::<AsPath>().map_err(RowErrorKind::Path)?),
        }
    }
    match (source, destination, prefix, path) {
        (Some(source), Some(destination), Some(prefix), Some(path)) => Ok(LinkRecord {
            source,
            destination,
            prefix,
            path,
        }),
        // a column order that repeats a column leaves one unset
        _ => Err(RowErrorKind::FieldCount(n)),
    }
}

/// Parses a whole table, collecting malformed rows.
pub fn parse_records<R: BufRead>(
    input: R,
    format: &FormatConfig,
) -> Result<ParsedDataset, DatasetError> {
    parse_records_with(input, format, |_| {})
}

/// Like [`parse_records`], calling `on_error` for each malformed row as it
/// is encountered.
pub fn parse_records_with<R: BufRead, F: FnMut(&RowError)>(
    input: R,
    format: &FormatConfig,
    mut on_error: F,
) -> Result<ParsedDataset, DatasetError> {
    let mut out = ParsedDataset::default();
    for row in RecordReader::new(input, format) {
        match row? {
            Ok(record) => out.records.push(record),
            Err(err) => {
                on_error(&err);
                if format.strict {
                    return Err(DatasetError::Strict(err));
                }
                out.errors.push(err);
            }
        }
    }
    Ok(out)
}
