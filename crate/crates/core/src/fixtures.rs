//! Hand-transcribed lattices shipped as JSON documents.

use crate::document::LatticeDocument;
use crate::error::{Error, Result};
use crate::lattice::Lattice;

const FIXTURES: &[(&str, &str)] = &[
    ("m3", include_str!("../fixtures/m3.json")),
    ("n5", include_str!("../fixtures/n5.json")),
    ("fl_1_2", include_str!("../fixtures/fl_1_2.json")),
    ("gadget_case1", include_str!("../fixtures/gadget_case1.json")),
    ("gadget_case2", include_str!("../fixtures/gadget_case2.json")),
    ("gadget_case3", include_str!("../fixtures/gadget_case3.json")),
    ("gadget_fig5", include_str!("../fixtures/gadget_fig5.json")),
    ("fd3", include_str!("../fixtures/fd3.json")),
    ("fd3_quotient1", include_str!("../fixtures/fd3_quotient1.json")),
    ("fd3_quotient2", include_str!("../fixtures/fd3_quotient2.json")),
    ("fd3_quotient3", include_str!("../fixtures/fd3_quotient3.json")),
];

pub fn fixture_names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(name, _)| *name)
}

pub fn fixture_document(name: &str) -> Result<LatticeDocument> {
    let (_, text) = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    LatticeDocument::from_json(text)
}

pub fn fixture(name: &str) -> Result<Lattice> {
    fixture_document(name)?.to_lattice()
}

/// Generator elements recorded in a fixture's metadata, resolved to indices.
pub fn fixture_generators(name: &str) -> Result<Vec<usize>> {
    let doc = fixture_document(name)?;
    let l = doc.to_lattice()?;
    doc.metadata
        .and_then(|m| m.generators)
        .unwrap_or_default()
        .iter()
        .map(|g| l.element(g))
        .collect()
}
