//! Decidable structure tests: distributivity, modularity, semidistributivity,
//! Whitman's condition, reducibility, width and linear decomposition.

mod decomposition;
mod width;

pub use decomposition::{linear_decomposition, LinearDecomposition};
pub use width::{max_antichain_within, reducible_antichain_bound, reducible_antichain_bound_within, width, Width};

use serde::Serialize;

use crate::element_set::ElementSet;
use crate::lattice::Lattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    M3,
    N5,
}

/// A five-element sublattice isomorphic to M3 or N5.
///
/// For N5 the elements are `[bottom, a, c, b, top]` with `a < c` and `b`
/// incomparable to both; for M3 they are `[bottom, x, y, z, top]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapeWitness {
    pub shape: Shape,
    pub elements: [usize; 5],
}

/// Outcome of an exhaustive law check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawCheck {
    /// Lexicographically least failing triple.
    pub violation: Option<(usize, usize, usize)>,
    /// A forbidden sublattice, present exactly when the law fails.
    pub sublattice: Option<ShapeWitness>,
}

impl LawCheck {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

fn first_triple(l: &Lattice, fails: impl Fn(usize, usize, usize) -> bool) -> Option<(usize, usize, usize)> {
    let n = l.len();
    (0..n)
        .flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
        .find(|&(x, y, z)| fails(x, y, z))
}

/// `x < c` and `b` with equal meets and joins against both: an N5.
pub fn find_n5(l: &Lattice) -> Option<ShapeWitness> {
    for a in l.elements() {
        for c in l.elements() {
            if !l.lt(a, c) {
                continue;
            }
            for b in l.elements() {
                if l.comparable(a, b) || l.comparable(c, b) {
                    continue;
                }
                if l.meet(a, b) == l.meet(c, b) && l.join(a, b) == l.join(c, b) {
                    return Some(ShapeWitness {
                        shape: Shape::N5,
                        elements: [l.meet(a, b), a, c, b, l.join(a, b)],
                    });
                }
            }
        }
    }
    None
}

/// Three pairwise incomparable elements with one common pairwise meet and
/// one common pairwise join.
pub fn find_m3(l: &Lattice) -> Option<ShapeWitness> {
    let n = l.len();
    for x in 0..n {
        for y in x + 1..n {
            if l.comparable(x, y) {
                continue;
            }
            let (lo, hi) = (l.meet(x, y), l.join(x, y));
            for z in y + 1..n {
                if !l.comparable(x, z)
                    && !l.comparable(y, z)
                    && l.meet(x, z) == lo
                    && l.meet(y, z) == lo
                    && l.join(x, z) == hi
                    && l.join(y, z) == hi
                {
                    return Some(ShapeWitness { shape: Shape::M3, elements: [lo, x, y, z, hi] });
                }
            }
        }
    }
    None
}

/// `x ^ (y v z) = (x ^ y) v (x ^ z)` for all triples.
pub fn is_distributive(l: &Lattice) -> LawCheck {
    let violation = first_triple(l, |x, y, z| l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)));
    let sublattice = violation.and_then(|_| find_n5(l).or_else(|| find_m3(l)));
    LawCheck { violation, sublattice }
}

/// `x <= z` implies `x v (y ^ z) = (x v y) ^ z`.
pub fn is_modular(l: &Lattice) -> LawCheck {
    let violation =
        first_triple(l, |x, y, z| l.leq(x, z) && l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), z));
    let sublattice = violation.and_then(|_| find_n5(l));
    LawCheck { violation, sublattice }
}

/// SD-meet: `a ^ b = a ^ c` implies `a ^ b = a ^ (b v c)`. Returns the least
/// failing `(a, b, c)`.
pub fn semidistributive_meet_violation(l: &Lattice) -> Option<(usize, usize, usize)> {
    first_triple(l, |a, b, c| {
        let m = l.meet(a, b);
        m == l.meet(a, c) && m != l.meet(a, l.join(b, c))
    })
}

pub fn semidistributive_join_violation(l: &Lattice) -> Option<(usize, usize, usize)> {
    first_triple(l, |a, b, c| {
        let j = l.join(a, b);
        j == l.join(a, c) && j != l.join(a, l.meet(b, c))
    })
}

pub fn is_semidistributive_meet(l: &Lattice) -> bool {
    semidistributive_meet_violation(l).is_none()
}

pub fn is_semidistributive_join(l: &Lattice) -> bool {
    semidistributive_join_violation(l).is_none()
}

/// The least quadruple `(x, y, u, v)` with `x ^ y <= u v v` where none of
/// `x <= u v v`, `y <= u v v`, `x ^ y <= u`, `x ^ y <= v` holds.
///
/// Comparable pairs on either side satisfy the condition trivially, so only
/// incomparable pairs are scanned.
pub fn whitman_violation(l: &Lattice) -> Option<(usize, usize, usize, usize)> {
    let n = l.len();
    for x in 0..n {
        for y in x + 1..n {
            if l.comparable(x, y) {
                continue;
            }
            let m = l.meet(x, y);
            for u in 0..n {
                if l.leq(m, u) {
                    continue;
                }
                for v in u + 1..n {
                    if l.leq(m, v) {
                        continue;
                    }
                    let j = l.join(u, v);
                    if l.leq(m, j) && !l.leq(x, j) && !l.leq(y, j) {
                        return Some((x, y, u, v));
                    }
                }
            }
        }
    }
    None
}

pub fn whitman(l: &Lattice) -> bool {
    whitman_violation(l).is_none()
}

/// Elements with at least two lower covers and at least two upper covers.
pub fn doubly_reducible(l: &Lattice) -> ElementSet {
    ElementSet::from_indices(l.len(), l.elements().filter(|&x| l.is_join_reducible(x) && l.is_meet_reducible(x)))
}

pub fn is_doubly_irreducible(l: &Lattice, x: usize) -> bool {
    !l.is_join_reducible(x) && !l.is_meet_reducible(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{boolean, chain, linear_sum, product};
    use crate::fd::free_distributive;
    use crate::fixtures::fixture;

    /// Whitman's condition checked over every quadruple, no pruning.
    fn whitman_brute(l: &Lattice) -> bool {
        let n = l.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|u| {
                    (0..n).all(|v| {
                        let m = l.meet(x, y);
                        let j = l.join(u, v);
                        !l.leq(m, j) || l.leq(x, j) || l.leq(y, j) || l.leq(m, u) || l.leq(m, v)
                    })
                })
            })
        })
    }

    #[test]
    fn n5_and_m3_laws() {
        let n5 = fixture("n5").unwrap();
        let d = is_distributive(&n5);
        assert!(!d.holds());
        assert_eq!(d.sublattice.as_ref().unwrap().shape, Shape::N5);
        assert!(!is_modular(&n5).holds());

        let m3 = fixture("m3").unwrap();
        assert!(is_modular(&m3).holds());
        let d = is_distributive(&m3);
        assert!(!d.holds());
        assert_eq!(d.sublattice.unwrap().shape, Shape::M3);

        assert!(is_distributive(&free_distributive(3).unwrap().lattice).holds());
    }

    #[test]
    fn n5_witness_is_a_sublattice() {
        let n5 = fixture("n5").unwrap();
        let w = find_n5(&n5).unwrap();
        let set = ElementSet::from_indices(5, w.elements);
        assert_eq!(set.len(), 5);
        assert!(n5.is_sublattice(&set));
    }

    #[test]
    fn semidistributivity() {
        let n5 = fixture("n5").unwrap();
        assert!(is_semidistributive_meet(&n5) && is_semidistributive_join(&n5));
        let m3 = fixture("m3").unwrap();
        let (a, b, c) = semidistributive_meet_violation(&m3).unwrap();
        assert_eq!(m3.meet(a, b), m3.bottom());
        assert_eq!(m3.meet(a, c), m3.bottom());
        assert_eq!(m3.meet(a, m3.join(b, c)), a);
        assert!(!is_semidistributive_join(&m3));
        assert!(is_semidistributive_meet(&chain(5).unwrap()));
    }

    #[test]
    fn whitman_examples() {
        let one = chain(1).unwrap();
        let blocks = linear_sum(&[
            &one,
            &boolean(3).unwrap(),
            &product(&chain(2).unwrap(), &chain(5).unwrap()).unwrap(),
        ])
        .unwrap();
        assert!(whitman(&blocks));
        let bad = product(&boolean(2).unwrap(), &chain(3).unwrap()).unwrap();
        assert!(!whitman(&bad));
        assert!(whitman(&chain(6).unwrap()));
        for l in [blocks, bad, boolean(4).unwrap(), fixture("m3").unwrap(), fixture("n5").unwrap()] {
            assert_eq!(whitman(&l), whitman_brute(&l));
        }
    }

    #[test]
    fn doubly_reducible_examples() {
        assert!(!doubly_reducible(&boolean(4).unwrap()).is_empty());
        assert!(doubly_reducible(&boolean(3).unwrap()).is_empty());
        assert!(!doubly_reducible(&product(&boolean(2).unwrap(), &chain(3).unwrap()).unwrap()).is_empty());
        assert!(doubly_reducible(&chain(7).unwrap()).is_empty());
    }

    #[test]
    fn fd3_generators_are_doubly_irreducible() {
        let fd = free_distributive(3).unwrap();
        for &g in &fd.generators {
            assert!(is_doubly_irreducible(&fd.lattice, g));
        }
    }
}
