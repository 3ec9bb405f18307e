//! Report envelope shared by every CLI command, plus plain-text rendering.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::coabelian::CoabelianSpec;
use crate::fpcheck::CharacterDocument;
use crate::gog::GogDocument;
use crate::graph::SimplicialGraph;

pub const TOOL: &str = "raagfp";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// SHA-256 of the graph's canonical JSON document (vertex order preserved),
/// so reformatting the input file does not change the hash.
pub fn graph_hash(g: &SimplicialGraph) -> String {
    let canonical = serde_json::to_string(&g.to_document()).expect("graph documents serialize");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

/// What the command was run on. Absent fields are omitted from JSON.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph_sha256: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<CharacterDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<CoabelianSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph_of_groups: Option<GogDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl InputEcho {
    pub fn for_graph(g: &SimplicialGraph) -> Self {
        InputEcho { graph_sha256: Some(graph_hash(g)), vertices: Some(g.names().to_vec()), ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport<T> {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: InputEcho,
    pub result: T,
    pub warnings: Vec<String>,
}

impl<T: Serialize> AnalysisReport<T> {
    pub fn new(command: &str, input: InputEcho, result: T) -> Self {
        AnalysisReport {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            command: command.to_string(),
            input,
            result,
            warnings: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Left-aligned columns separated by two spaces.
pub fn text_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = vec![line(headers.to_vec())];
    out.push(line(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    for row in rows {
        out.push(line(row.iter().map(String::as_str).collect()));
    }
    out.join("\n")
}

/// `key: value` lines with the values aligned.
pub fn text_fields(fields: &[(&str, String)]) -> String {
    let w = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0) + 1;
    fields.iter().map(|(k, v)| format!("{:<w$} {v}", format!("{k}:"))).collect::<Vec<_>>().join("\n")
}

pub fn braces(names: &[String]) -> String {
    format!("{{{}}}", names.join(","))
}
