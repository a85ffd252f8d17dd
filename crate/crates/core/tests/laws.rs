use latkit::congruence::{kernel, principal_congruence, quotient};
use latkit::constructors::{chain, linear_sum, product};
use latkit::document::LatticeDocument;
use latkit::enumerate::lattices_up_to;
use latkit::gj::{find_gadgets, GadgetClass};
use latkit::iso::isomorphic;
use latkit::Lattice;
use proptest::prelude::*;

fn corpus(max: usize) -> Vec<Lattice> {
    lattices_up_to(max, max).unwrap().into_iter().flatten().collect()
}

#[test]
fn lattice_axioms_hold_on_small_lattices() {
    for l in corpus(6) {
        for x in l.elements() {
            for y in l.elements() {
                assert_eq!(l.join(x, l.meet(x, y)), x);
                assert_eq!(l.meet(x, l.join(x, y)), x);
                assert_eq!(l.leq(x, y), l.join(x, y) == y);
                for z in l.elements() {
                    assert_eq!(l.join(l.join(x, y), z), l.join(x, l.join(y, z)));
                    assert_eq!(l.meet(l.meet(x, y), z), l.meet(x, l.meet(y, z)));
                }
            }
        }
    }
}

#[test]
fn gadgets_of_the_dual_are_dual_gadgets() {
    for l in corpus(7) {
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
fn projections_have_their_congruence_as_kernel() {
    for l in corpus(6) {
        for (a, b) in l.covers() {
            let c = principal_congruence(&l, a, b).unwrap();
            let q = quotient(&l, &c).unwrap();
            let k = kernel(&l, &q.lattice, &q.projection).unwrap();
            assert_eq!(k.classes(), c.classes());
        }
    }
}

fn block() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=3, 1usize..=4)
}

proptest! {
    #[test]
    fn documents_round_trip(blocks in proptest::collection::vec(block(), 1..4)) {
        let parts: Vec<Lattice> = blocks.iter().map(|&(a, b)| product(&chain(a).unwrap(), &chain(b).unwrap()).unwrap()).collect();
        let l = linear_sum(&parts.iter().collect::<Vec<_>>()).unwrap();
        let json = LatticeDocument::from_lattice(&l).to_json();
        let back = LatticeDocument::from_json(&json).unwrap().to_lattice().unwrap();
        prop_assert!(isomorphic(&back, &l));
        prop_assert_eq!(back.names(), l.names());
    }

    #[test]
    fn dual_is_an_involution(a in 1usize..4, b in 1usize..5) {
        let l = product(&chain(a).unwrap(), &chain(b).unwrap()).unwrap();
        prop_assert_eq!(l.dual().dual().covers(), l.covers());
    }
}
