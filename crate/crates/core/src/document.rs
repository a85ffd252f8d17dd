//! The lattice interchange format.
//!
//! ```json
//! {"format_version": "1", "elements": ["0", "1"], "covers": [["0", "1"]]}
//! ```
//!
//! Covers are `[lower, upper]` name pairs. An optional `metadata` object may
//! carry a source description and generator names; any other key is rejected.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{validate, Lattice, Relation};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDocument {
    pub format_version: String,
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
}

impl LatticeDocument {
    pub fn from_lattice(l: &Lattice) -> Self {
        LatticeDocument {
            format_version: FORMAT_VERSION.to_string(),
            elements: l.names().to_vec(),
            covers: l
                .covers()
                .into_iter()
                .map(|(x, y)| [l.name(x).to_string(), l.name(y).to_string()])
                .collect(),
            metadata: None,
        }
    }

    pub fn to_lattice(&self) -> Result<Lattice> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Document(format!(
                "unsupported format_version {:?}",
                self.format_version
            )));
        }
        let mut index = HashMap::with_capacity(self.elements.len());
        for (i, name) in self.elements.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(Error::Document(format!("duplicate element {name:?}")));
            }
        }
        let resolve = |name: &String| {
            index
                .get(name.as_str())
                .copied()
                .ok_or_else(|| Error::Document(format!("cover references undeclared element {name:?}")))
        };
        let pairs = self
            .covers
            .iter()
            .map(|[lo, hi]| Ok((resolve(lo)?, resolve(hi)?)))
            .collect::<Result<Vec<_>>>()?;
        validate(self.elements.clone(), Relation::Covers(pairs))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

/// Parses a JSON document straight into a lattice.
pub fn parse_lattice_json(text: &str) -> Result<Lattice> {
    LatticeDocument::from_json(text)?.to_lattice()
}

pub fn lattice_to_json(l: &Lattice) -> String {
    LatticeDocument::from_lattice(l).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"format_version":"1","elements":["0","a","b","1"],
            "covers":[["0","a"],["0","b"],["a","1"],["b","1"]]}"#;
        let l = parse_lattice_json(text).unwrap();
        assert_eq!(l.len(), 4);
        let again = parse_lattice_json(&lattice_to_json(&l)).unwrap();
        assert_eq!(again, l);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{"format_version":"1","elements":["0"],"covers":[],"extra":1}"#;
        assert!(matches!(parse_lattice_json(text), Err(Error::Document(_))));
        let text = r#"{"format_version":"1","elements":["0"],"covers":[],"metadata":{"colour":"red"}}"#;
        assert!(matches!(parse_lattice_json(text), Err(Error::Document(_))));
    }

    #[test]
    fn bad_references_and_versions() {
        let text = r#"{"format_version":"1","elements":["0"],"covers":[["0","x"]]}"#;
        assert!(matches!(parse_lattice_json(text), Err(Error::Document(_))));
        let text = r#"{"format_version":"2","elements":["0"],"covers":[]}"#;
        assert!(matches!(parse_lattice_json(text), Err(Error::Document(_))));
        let text = r#"{"format_version":"1","elements":["0","0"],"covers":[]}"#;
        assert!(matches!(parse_lattice_json(text), Err(Error::Document(_))));
    }

    #[test]
    fn mathematical_failures_pass_through() {
        let text = r#"{"format_version":"1","elements":["p","q","r","s"],
            "covers":[["p","r"],["p","s"],["q","r"],["q","s"]]}"#;
        assert!(matches!(parse_lattice_json(text), Err(Error::NotALattice { .. })));
    }
}
