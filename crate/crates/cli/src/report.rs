//! JSON reports. Elements are reported by name.

use std::collections::BTreeMap;

use latkit::doubling::is_bounded;
use latkit::gj::{block_tag, decide_free_embeddable, find_gadgets, gadget_census, GadgetWitness, Obstruction, Verdict};
use latkit::predicates::{
    doubly_reducible, is_distributive, is_modular, is_semidistributive_join, is_semidistributive_meet,
    linear_decomposition, whitman, width,
};
use latkit::terms::{sd_level, DEFAULT_SD_LEVEL_BOUND};
use latkit::{ElementSet, Lattice};
use serde::Serialize;
use serde_json::{json, Value};

fn names(l: &Lattice, xs: impl IntoIterator<Item = usize>) -> Vec<String> {
    xs.into_iter().map(|x| l.name(x).to_string()).collect()
}

fn set_names(l: &Lattice, s: &ElementSet) -> Vec<String> {
    names(l, s.iter())
}

#[derive(Debug, Serialize)]
pub struct Analysis {
    pub size: usize,
    pub covers: usize,
    pub width: usize,
    pub distributive: bool,
    pub modular: bool,
    pub sd_meet: bool,
    pub sd_join: bool,
    pub sd_level: Option<usize>,
    pub whitman: bool,
    pub doubly_reducible: Vec<String>,
    pub blocks: Vec<String>,
    pub gadgets: BTreeMap<&'static str, usize>,
    pub bounded: bool,
    pub free_embeddable: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<&'static str>,
}

pub fn analyze(l: &Lattice) -> Result<Analysis, latkit::Error> {
    let decomposition = linear_decomposition(l);
    let blocks = decomposition
        .block_lattices(l)
        .iter()
        .map(|b| block_tag(b).map_or_else(|| format!("other({})", b.len()), |t| t.to_string()))
        .collect();
    let gadgets = gadget_census(&find_gadgets(l)?).into_iter().map(|(c, n)| (c.as_str(), n)).collect();
    let verdict = decide_free_embeddable(l);
    let reason = match &verdict {
        Verdict::Embeddable { .. } => None,
        Verdict::NotEmbeddable { obstruction: Obstruction::DoublyReducible { .. } } => Some("doubly_reducible"),
        Verdict::NotEmbeddable { obstruction: Obstruction::NonConformingBlock { .. } } => Some("non_conforming_block"),
        Verdict::OutOfScope { .. } => Some("not_distributive"),
    };
    Ok(Analysis {
        size: l.len(),
        covers: l.cover_count(),
        width: width(l).size,
        distributive: is_distributive(l).holds(),
        modular: is_modular(l).holds(),
        sd_meet: is_semidistributive_meet(l),
        sd_join: is_semidistributive_join(l),
        sd_level: sd_level(l, DEFAULT_SD_LEVEL_BOUND),
        whitman: whitman(l),
        doubly_reducible: set_names(l, &doubly_reducible(l)),
        blocks,
        gadgets,
        bounded: is_bounded(l).bounded(),
        free_embeddable: verdict.as_str(),
        reason,
    })
}

pub fn verdict(l: &Lattice) -> Value {
    match decide_free_embeddable(l) {
        Verdict::Embeddable { decomposition } => json!({
            "verdict": "embeddable",
            "blocks": decomposition.blocks.iter().map(|b| json!({
                "tag": b.tag.to_string(),
                "elements": set_names(l, &b.elements),
                "poset_components": b.poset_components,
            })).collect::<Vec<_>>(),
        }),
        Verdict::NotEmbeddable { obstruction: Obstruction::DoublyReducible { element } } => json!({
            "verdict": "not_embeddable",
            "reason": "doubly_reducible",
            "element": l.name(element),
        }),
        Verdict::NotEmbeddable { obstruction: Obstruction::NonConformingBlock { block } } => json!({
            "verdict": "not_embeddable",
            "reason": "non_conforming_block",
            "block": block,
        }),
        Verdict::OutOfScope { distributivity_violation: (x, y, z) } => json!({
            "verdict": "out_of_scope",
            "reason": "not_distributive",
            "witness": names(l, [x, y, z]),
        }),
    }
}

pub fn gadgets(l: &Lattice) -> Result<Value, latkit::Error> {
    let found = find_gadgets(l)?;
    let entry = |g: &GadgetWitness| {
        json!({
            "p": l.name(g.p),
            "q": l.name(g.q),
            "r": l.name(g.r),
            "shared": g.shared,
            "class": g.class,
            "generated": set_names(l, &g.generated),
        })
    };
    let census: BTreeMap<&str, usize> = gadget_census(&found).into_iter().map(|(c, n)| (c.as_str(), n)).collect();
    Ok(json!({
        "gadgets": found.iter().map(entry).collect::<Vec<_>>(),
        "census": census,
    }))
}
