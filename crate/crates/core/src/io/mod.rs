//! On-disk formats: dense CSV matrices, JSON documents for networks,
//! representer families, dendrograms and partitions, and Newick trees.
//!
//! All floating-point values are written in the shortest decimal form that
//! parses back to the same `f64`.

mod csv_matrix;
mod documents;
mod newick;

pub use csv_matrix::{format_number, read_matrix_csv, read_network_csv, write_matrix_csv};
pub use documents::{
    dendrogram_from_json, dendrogram_to_json, family_from_json, family_to_json, network_from_json,
    network_to_json, partition_to_json, DendrogramDoc, EdgeDoc, MergeDoc, NetworkDoc,
    PartitionDoc, RepresenterDoc, RepresenterFileDoc,
};
pub use newick::{dendrogram_from_newick, dendrogram_to_newick};

use std::path::Path;

use crate::error::{Error, Result};
use crate::network::Network;

/// Input layouts for networks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetworkFormat {
    /// Header row of labels followed by `n` rows of `n` numbers.
    Csv,
    /// `{"nodes": [...], "edges": [{"from", "to", "weight"}]}`
    Json,
}

impl NetworkFormat {
    /// Guesses from the file extension; defaults to CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => NetworkFormat::Json,
            _ => NetworkFormat::Csv,
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Reads and validates a network. Label order is file order.
pub fn load_network(path: &Path, format: NetworkFormat) -> Result<Network> {
    let text = read_text(path)?;
    let name = path.display().to_string();
    match format {
        NetworkFormat::Csv => read_network_csv(&text, &name),
        NetworkFormat::Json => network_from_json(&text, &name),
    }
}

pub fn load_family(path: &Path) -> Result<crate::RepresenterFamily> {
    family_from_json(&read_text(path)?, &path.display().to_string())
}

pub(crate) fn read_file(path: &Path) -> Result<String> {
    read_text(path)
}
