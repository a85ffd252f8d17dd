//! Gadgets, boolean sublattices generated by antichains, and the decision
//! procedure for finite distributive lattices embeddable in a free lattice.
//!
//! A gadget `G(p; q, r)` is the sublattice generated by `p, q, r` where
//! `q < r`, `p` is incomparable to both, and `p ^ q = p ^ r` or
//! `p v q = p v r`. Gadgets are classified against three labelled shapes
//! and their duals.

use std::fmt;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::element_set::ElementSet;
use crate::error::{Error, Result};
use crate::fixtures::{fixture, fixture_generators};
use crate::iso::{extend_generator_map, find_isomorphism, generators_isomorphic};
use crate::lattice::Lattice;
use crate::poset::birkhoff_poset;
use crate::predicates::{doubly_reducible, is_distributive, linear_decomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetClass {
    Case1,
    Case2,
    Case3,
    Case1Dual,
    Case2Dual,
    Case3Dual,
}

impl GadgetClass {
    pub const ALL: [GadgetClass; 6] = [
        GadgetClass::Case1,
        GadgetClass::Case2,
        GadgetClass::Case3,
        GadgetClass::Case1Dual,
        GadgetClass::Case2Dual,
        GadgetClass::Case3Dual,
    ];

    pub fn dual(self) -> GadgetClass {
        use GadgetClass::*;
        match self {
            Case1 => Case1Dual,
            Case2 => Case2Dual,
            Case3 => Case3Dual,
            Case1Dual => Case1,
            Case2Dual => Case2,
            Case3Dual => Case3,
        }
    }

    pub fn as_str(self) -> &'static str {
        use GadgetClass::*;
        match self {
            Case1 => "case1",
            Case2 => "case2",
            Case3 => "case3",
            Case1Dual => "case1_dual",
            Case2Dual => "case2_dual",
            Case3Dual => "case3_dual",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SharedBound {
    Meet,
    Join,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetWitness {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub shared: SharedBound,
    pub generated: ElementSet,
    pub class: GadgetClass,
}

/// A labelled shape: lattice plus generators `(p, q, r)`.
struct Shape {
    class: GadgetClass,
    lattice: Lattice,
    generators: [usize; 3],
}

/// The six shapes; a case-1 gadget is self-dual, so its dual entry comes
/// after case 1 and is never reached.
fn shapes() -> &'static [Shape] {
    static SHAPES: OnceLock<Vec<Shape>> = OnceLock::new();
    SHAPES.get_or_init(|| {
        let mut out = Vec::new();
        let cases = [
            (GadgetClass::Case1, "gadget_case1"),
            (GadgetClass::Case2, "gadget_case2"),
            (GadgetClass::Case3, "gadget_case3"),
        ];
        for (class, name) in cases {
            let lattice = fixture(name).expect("shipped fixture");
            let g = fixture_generators(name).expect("shipped fixture");
            out.push(Shape { class, lattice, generators: [g[0], g[1], g[2]] });
        }
        for i in 0..3 {
            let s = &out[i];
            let [p, q, r] = s.generators;
            let dual = Shape { class: s.class.dual(), lattice: s.lattice.dual(), generators: [p, r, q] };
            out.push(dual);
        }
        out
    })
}

/// Classifies the gadget on `(p, q, r)` by a generator-preserving
/// isomorphism onto one of the labelled shapes.
pub fn classify_gadget(l: &Lattice, p: usize, q: usize, r: usize) -> Result<GadgetClass> {
    shapes()
        .iter()
        .find(|s| generators_isomorphic(l, &[p, q, r], &s.lattice, &s.generators))
        .map(|s| s.class)
        .ok_or(Error::UnclassifiableGadget { p, q, r })
}

/// The shape lattice and its generators for a class.
pub fn gadget_shape(class: GadgetClass) -> (Lattice, [usize; 3]) {
    let s = shapes().iter().find(|s| s.class == class).expect("all six classes present");
    (s.lattice.clone(), s.generators)
}

/// Every gadget triple, ordered by `(p, q, r)`.
pub fn find_gadgets(l: &Lattice) -> Result<Vec<GadgetWitness>> {
    let mut out = Vec::new();
    for p in l.elements() {
        for q in l.elements() {
            if l.comparable(p, q) {
                continue;
            }
            for r in l.elements() {
                if !l.lt(q, r) || l.comparable(p, r) {
                    continue;
                }
                let meet = l.meet(p, q) == l.meet(p, r);
                let join = l.join(p, q) == l.join(p, r);
                let shared = match (meet, join) {
                    (true, true) => SharedBound::Both,
                    (true, false) => SharedBound::Meet,
                    (false, true) => SharedBound::Join,
                    (false, false) => continue,
                };
                let generated = l.generated_sublattice(&ElementSet::from_indices(l.len(), [p, q, r]));
                let class = classify_gadget(l, p, q, r)?;
                out.push(GadgetWitness { p, q, r, shared, generated, class });
            }
        }
    }
    Ok(out)
}

/// Gadget counts per class, in class order.
pub fn gadget_census(gadgets: &[GadgetWitness]) -> Vec<(GadgetClass, usize)> {
    GadgetClass::ALL
        .iter()
        .map(|&c| (c, gadgets.iter().filter(|g| g.class == c).count()))
        .filter(|&(_, n)| n > 0)
        .collect()
}

/// Whether the assignment `a, b, c -> p, q, r` of the generators of the
/// lattice freely generated by `a` and `b < c` extends to a homomorphism;
/// the image is then the sublattice generated by `p, q, r`.
pub fn is_fl_1_2_image(l: &Lattice, p: usize, q: usize, r: usize) -> bool {
    static FL: OnceLock<(Lattice, Vec<usize>)> = OnceLock::new();
    let (fl, gens) = FL.get_or_init(|| {
        (fixture("fl_1_2").expect("shipped fixture"), fixture_generators("fl_1_2").expect("shipped fixture"))
    });
    l.leq(q, r) && extend_generator_map(fl, gens, l, &[p, q, r]).is_some()
}

/// The sublattice generated by an antichain with one common pairwise meet,
/// when it is a boolean algebra on the antichain's elements.
pub fn boolean_from_antichain(l: &Lattice, a: &ElementSet) -> Option<Lattice> {
    let xs = a.to_vec();
    if xs.len() < 2 || !l.is_antichain(a) {
        return None;
    }
    let z = l.meet(xs[0], xs[1]);
    if xs.iter().enumerate().any(|(i, &x)| xs[i + 1..].iter().any(|&y| l.meet(x, y) != z)) {
        return None;
    }
    let generated = l.generated_sublattice(a);
    if generated.len() != 1 << xs.len() {
        return None;
    }
    let (sub, _) = l.induced(&generated);
    let cube = crate::constructors::boolean(xs.len()).ok()?;
    find_isomorphism(&sub, &cube).map(|_| sub)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockTag {
    Singleton,
    Cube,
    /// `2 x k`.
    TwoByChain(usize),
}

impl fmt::Display for BlockTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockTag::Singleton => f.write_str("singleton"),
            BlockTag::Cube => f.write_str("cube"),
            BlockTag::TwoByChain(k) => write!(f, "two_by_chain({k})"),
        }
    }
}

impl Serialize for BlockTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GjBlock {
    pub elements: ElementSet,
    pub tag: BlockTag,
    /// Component sizes of the block's poset of join-irreducibles, ascending.
    pub poset_components: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GjDecomposition {
    pub blocks: Vec<GjBlock>,
}

impl GjDecomposition {
    pub fn tags(&self) -> Vec<BlockTag> {
        self.blocks.iter().map(|b| b.tag).collect()
    }
}

/// Reads a block's shape off its poset of join-irreducibles: empty for a
/// point, a 3-antichain for the cube, a point beside a `(k-1)`-chain for
/// `2 x k`.
fn classify_block(block: &Lattice) -> Result<(Option<BlockTag>, Vec<usize>)> {
    let (poset, _) = birkhoff_poset(block)?;
    let components = poset.components();
    let mut sizes: Vec<usize> = components.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    let tag = if poset.is_empty() {
        Some(BlockTag::Singleton)
    } else if poset.len() == 3 && poset.is_antichain() {
        Some(BlockTag::Cube)
    } else if sizes.len() == 2 && sizes[0] == 1 && components.iter().all(|c| poset.restrict(c).is_chain()) {
        Some(BlockTag::TwoByChain(sizes[1] + 1))
    } else {
        None
    };
    Ok((tag, sizes))
}

/// The shape of a linearly indecomposable distributive lattice, if it is one
/// of the three.
pub fn block_tag(block: &Lattice) -> Option<BlockTag> {
    if !is_distributive(block).holds() {
        return None;
    }
    classify_block(block).ok()?.0
}

/// The finest linear decomposition with every block a point, a cube or
/// `2 x k`, or `None` when some block is none of these. With
/// `require_no_doubly_reducible`, lattices with a doubly reducible element
/// are rejected before any block is examined.
pub fn theorem2_decompose(l: &Lattice, require_no_doubly_reducible: bool) -> Result<Option<GjDecomposition>> {
    if let Some((x, y, z)) = is_distributive(l).violation {
        return Err(Error::NotDistributive { x, y, z });
    }
    if require_no_doubly_reducible && !doubly_reducible(l).is_empty() {
        return Ok(None);
    }
    let d = linear_decomposition(l);
    let mut blocks = Vec::with_capacity(d.len());
    for (elements, block) in d.blocks.iter().zip(d.block_lattices(l)) {
        let (tag, poset_components) = classify_block(&block)?;
        let Some(tag) = tag else {
            return Ok(None);
        };
        blocks.push(GjBlock { elements: elements.clone(), tag, poset_components });
    }
    Ok(Some(GjDecomposition { blocks }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "reason")]
pub enum Obstruction {
    DoublyReducible { element: usize },
    /// A block that is not a point, a cube or `2 x k`.
    NonConformingBlock { block: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum Verdict {
    Embeddable { decomposition: GjDecomposition },
    NotEmbeddable { obstruction: Obstruction },
    /// Only distributive lattices are decided.
    OutOfScope { distributivity_violation: (usize, usize, usize) },
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Embeddable { .. } => "embeddable",
            Verdict::NotEmbeddable { .. } => "not_embeddable",
            Verdict::OutOfScope { .. } => "out_of_scope",
        }
    }
}

/// Decides whether a finite distributive lattice is a sublattice of a free
/// lattice: exactly when it has no doubly reducible element, in which case
/// it is a linear sum of points, cubes and `2 x k` blocks.
pub fn decide_free_embeddable(l: &Lattice) -> Verdict {
    if let Some(v) = is_distributive(l).violation {
        return Verdict::OutOfScope { distributivity_violation: v };
    }
    if let Some(element) = doubly_reducible(l).first() {
        return Verdict::NotEmbeddable { obstruction: Obstruction::DoublyReducible { element } };
    }
    let d = linear_decomposition(l);
    let mut blocks = Vec::with_capacity(d.len());
    for (i, (elements, block)) in d.blocks.iter().zip(d.block_lattices(l)).enumerate() {
        let (tag, poset_components) = classify_block(&block).expect("blocks of a distributive lattice are distributive");
        match tag {
            Some(tag) => blocks.push(GjBlock { elements: elements.clone(), tag, poset_components }),
            None => return Verdict::NotEmbeddable { obstruction: Obstruction::NonConformingBlock { block: i } },
        }
    }
    Verdict::Embeddable { decomposition: GjDecomposition { blocks } }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{boolean, chain, linear_sum, product};

    fn two_by(k: usize) -> Lattice {
        product(&chain(2).unwrap(), &chain(k).unwrap()).unwrap()
    }

    #[test]
    fn fixtures_classify_as_themselves() {
        for class in GadgetClass::ALL {
            let (l, [p, q, r]) = gadget_shape(class);
            let expected = if class == GadgetClass::Case1Dual { GadgetClass::Case1 } else { class };
            assert_eq!(classify_gadget(&l, p, q, r).unwrap(), expected);
        }
    }

    #[test]
    fn n5_gadgets() {
        let n5 = fixture("n5").unwrap();
        let gadgets = find_gadgets(&n5).unwrap();
        assert!(!gadgets.is_empty());
        let c = n5.element("c").unwrap();
        assert!(gadgets.iter().all(|g| g.p == c && g.class == GadgetClass::Case1));
        assert!(gadgets.iter().all(|g| g.shared == SharedBound::Both && g.generated.len() == 5));
    }

    #[test]
    fn two_by_three_gadget() {
        let l = two_by(3);
        let idx = |i: usize, k: usize| l.element(&format!("({i},{k})")).unwrap();
        let gadgets = find_gadgets(&l).unwrap();
        let g = gadgets.iter().find(|g| (g.p, g.q, g.r) == (idx(1, 0), idx(0, 1), idx(0, 2))).unwrap();
        assert_eq!(g.class, GadgetClass::Case2);
        assert_eq!(g.generated.len(), 6);
        assert!(gadgets.iter().all(|g| matches!(g.class, GadgetClass::Case2 | GadgetClass::Case2Dual)));
        assert!(find_gadgets(&chain(6).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn dual_gadgets_swap_classes() {
        for l in [fixture("gadget_case3").unwrap(), two_by(4), fixture("fl_1_2").unwrap()] {
            let here = find_gadgets(&l).unwrap();
            let there = find_gadgets(&l.dual()).unwrap();
            assert_eq!(here.len(), there.len());
            for g in &here {
                let d = there.iter().find(|d| (d.p, d.q, d.r) == (g.p, g.r, g.q)).unwrap();
                let expected = if g.class == GadgetClass::Case1 { GadgetClass::Case1 } else { g.class.dual() };
                assert_eq!(d.class, expected);
            }
        }
    }

    #[test]
    fn gadget_shapes_are_fl_1_2_images() {
        for class in [GadgetClass::Case1, GadgetClass::Case2, GadgetClass::Case3] {
            let (l, [p, q, r]) = gadget_shape(class);
            assert!(is_fl_1_2_image(&l, p, q, r));
            assert_eq!(l.generated_sublattice(&ElementSet::from_indices(l.len(), [p, q, r])).len(), l.len());
        }
        let m3 = fixture("m3").unwrap();
        assert!(!is_fl_1_2_image(&m3, 1, 3, 2));
    }

    #[test]
    fn boolean_generation() {
        let b3 = boolean(3).unwrap();
        assert_eq!(boolean_from_antichain(&b3, &ElementSet::from_indices(8, [1, 2, 4])).unwrap().len(), 8);
        let b4 = boolean(4).unwrap();
        assert_eq!(boolean_from_antichain(&b4, &ElementSet::from_indices(16, [1, 2, 4, 8])).unwrap().len(), 16);
        assert!(boolean_from_antichain(&chain(4).unwrap(), &ElementSet::from_indices(4, [1, 2])).is_none());
        let m3 = fixture("m3").unwrap();
        assert!(boolean_from_antichain(&m3, &ElementSet::from_indices(5, [1, 2, 3])).is_none());
    }

    #[test]
    fn decompositions() {
        let one = chain(1).unwrap();
        let l = linear_sum(&[&one, &boolean(3).unwrap(), &two_by(4)]).unwrap();
        let d = theorem2_decompose(&l, true).unwrap().unwrap();
        assert_eq!(d.tags(), vec![BlockTag::Singleton, BlockTag::Cube, BlockTag::TwoByChain(4)]);
        let bad = product(&boolean(2).unwrap(), &chain(3).unwrap()).unwrap();
        assert!(theorem2_decompose(&bad, false).unwrap().is_none());
        assert!(theorem2_decompose(&bad, true).unwrap().is_none());
        let c4 = theorem2_decompose(&chain(4).unwrap(), false).unwrap().unwrap();
        assert_eq!(c4.tags(), vec![BlockTag::Singleton; 4]);
        assert!(matches!(theorem2_decompose(&fixture("n5").unwrap(), false), Err(Error::NotDistributive { .. })));
        assert_eq!(BlockTag::TwoByChain(4).to_string(), "two_by_chain(4)");
    }

    #[test]
    fn verdicts() {
        match decide_free_embeddable(&boolean(3).unwrap()) {
            Verdict::Embeddable { decomposition } => assert_eq!(decomposition.tags(), vec![BlockTag::Cube]),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            decide_free_embeddable(&boolean(4).unwrap()),
            Verdict::NotEmbeddable { obstruction: Obstruction::DoublyReducible { .. } }
        ));
        assert!(matches!(decide_free_embeddable(&fixture("n5").unwrap()), Verdict::OutOfScope { .. }));
        assert_eq!(decide_free_embeddable(&chain(1).unwrap()).as_str(), "embeddable");
    }
}
