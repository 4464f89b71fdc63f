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

use std::fmt;
use std::net::Ipv6Addr;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Reasons a single field of a link record can be rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("invalid ASN '{0}'")]
    InvalidAsn(String),
    #[error("ASN 0 is reserved")]
    ReservedAsn,
    #[error("invalid IPv6 address '{0}'")]
    InvalidAddress(String),
    #[error("invalid prefix length '{0}'")]
    InvalidPrefixLength(String),
    #[error("empty path")]
    EmptyPath,
    #[error("invalid path hop '{0}'")]
    InvalidHop(String),
}

/// A 32-bit autonomous system number. Zero is reserved and never valid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct AsNumber(u32);

impl AsNumber {
    pub fn new(value: u32) -> Result<Self, FieldError> {
        if value == 0 {
            Err(FieldError::ReservedAsn)
        } else {
            Ok(AsNumber(value))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for AsNumber {
    type Error = FieldError;

    fn try_from(value: u32) -> Result<Self, Self::Error> {
        AsNumber::new(value)
    }
}

impl From<AsNumber> for u32 {
    fn from(asn: AsNumber) -> u32 {
        asn.0
    }
}

impl FromStr for AsNumber {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        // u32::from_str accepts a leading '+', which is not a decimal ASN.
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(FieldError::InvalidAsn(s.to_string()));
        }
        let value = s
            .parse::<u32>()
            .map_err(|_| FieldError::InvalidAsn(s.to_string()))?;
        AsNumber::new(value)
    }
}

impl fmt::Display for AsNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// An IPv6 address with a prefix length in `[0, 128]`.
///
/// Bare addresses (no `/len` suffix) parse with a length of 128 and are
/// displayed without a suffix, so bare-address datasets round-trip.
/// Host bits are kept as given; no masking is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ipv6Prefix {
    address: Ipv6Addr,
    length: u8,
}

impl Ipv6Prefix {
    pub fn new(address: Ipv6Addr, length: u8) -> Result<Self, FieldError> {
        if length > 128 {
            return Err(FieldError::InvalidPrefixLength(length.to_string()));
        }
        Ok(Ipv6Prefix { address, length })
    }

    pub fn host(address: Ipv6Addr) -> Self {
        Ipv6Prefix {
            address,
            length: 128,
        }
    }

    pub fn address(&self) -> Ipv6Addr {
        self.address
    }

    pub fn length(&self) -> u8 {
        self.length
    }
}

impl FromStr for Ipv6Prefix {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (addr, len) = match s.split_once('/') {
            Some((addr, len)) => {
                let len = len.trim();
                if len.is_empty() || !len.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(FieldError::InvalidPrefixLength(len.to_string()));
                }
                let len = len
                    .parse::<u8>()
                    .map_err(|_| FieldError::InvalidPrefixLength(len.to_string()))?;
                (addr.trim(), len)
            }
            None => (s, 128),
        };
        let address = addr
            .parse::<Ipv6Addr>()
            .map_err(|_| FieldError::InvalidAddress(addr.to_string()))?;
        Ipv6Prefix::new(address, len)
    }
}

impl fmt::Display for Ipv6Prefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.length == 128 {
            write!(f, "{}", self.address)
        } else {
            write!(f, "{}/{}", self.address, self.length)
        }
    }
}

/// A non-empty AS path with consecutive duplicate hops (prepending) collapsed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AsPath(Vec<AsNumber>);

impl AsPath {
    /// Builds a normalized path. Fails only on an empty hop sequence.
    pub fn new(mut hops: Vec<AsNumber>) -> Result<Self, FieldError> {
        if hops.is_empty() {
            return Err(FieldError::EmptyPath);
        }
        hops.dedup();
        Ok(AsPath(hops))
    }

    pub fn hops(&self) -> &[AsNumber] {
        &self.0
    }

    /// Number of ASes on the path.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> AsNumber {
        self.0[0]
    }

    pub fn last(&self) -> AsNumber {
        self.0[self.0.len() - 1]
    }
}

impl FromStr for AsPath {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let hops = s
            .split_ascii_whitespace()
            .map(|tok| {
                tok.parse::<AsNumber>().map_err(|e| match e {
                    FieldError::ReservedAsn => FieldError::ReservedAsn,
                    _ => FieldError::InvalidHop(tok.to_string()),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        AsPath::new(hops)
    }
}

impl fmt::Display for AsPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, hop) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{hop}")?;
        }
        Ok(())
    }
}

/// One row of an AS-link dataset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinkRecord {
    pub source: AsNumber,
    pub destination: AsNumber,
    pub prefix: Ipv6Prefix,
    pub path: AsPath,
}

impl LinkRecord {
    /// Records whose source equals their destination are kept but
    /// contribute no endpoint edge.
    pub fn is_self_record(&self) -> bool {
        self.source == self.destination
    }
}
