//! Reading and writing network description files.
//!
//! A network file is a single JSON document with top-level keys `params`
//! (optional, fields individually defaultable), `nodes`, `sessions` and
//! `capacity_overrides` (optional). Rates are in Kbps, coordinates and
//! distances in meters. Unknown keys are rejected rather than ignored so
//! typos surface immediately.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::net::{build_network, Network, NetworkSpec};

/// Parses a JSON network description and builds the runtime network,
/// running full validation. `origin` names the source in error messages.
pub fn parse_network_str(text: &str, origin: &str) -> Result<Network> {
    let spec: NetworkSpec = serde_json::from_str(text).map_err(|source| Error::Json {
        path: origin.to_string(),
        source,
    })?;
    build_network(spec)
}

pub fn parse_network(path: impl AsRef<Path>) -> Result<Network> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_network_str(&text, &path.display().to_string())
}

/// Pretty-printed JSON for a network description. Numbers round-trip
/// exactly: parsing the output reproduces the spec bit for bit.
pub fn network_to_string(spec: &NetworkSpec) -> String {
    let mut out = serde_json::to_string_pretty(spec).expect("network specs always serialize");
    out.push('\n');
    out
}

pub fn write_network(path: impl AsRef<Path>, spec: &NetworkSpec) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, network_to_string(spec)).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}
