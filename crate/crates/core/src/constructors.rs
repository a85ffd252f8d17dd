//! Standard lattice constructions: chains, boolean algebras, products,
//! linear and lexicographic sums, and windows of the infinite lattice 2 x Z.

use std::collections::HashSet;

use crate::element_set::ElementSet;
use crate::error::{Error, Result};
use crate::lattice::{validate, Lattice, Relation};
use crate::poset::Poset;

/// Hard ceiling on constructed carriers.
pub const MAX_ELEMENTS: usize = 10_000;

fn check_cap(requested: usize) -> Result<()> {
    if requested > MAX_ELEMENTS {
        Err(Error::CapExceeded { requested, cap: MAX_ELEMENTS })
    } else {
        Ok(())
    }
}

/// The chain `0 < 1 < ... < n-1`.
pub fn chain(n: usize) -> Result<Lattice> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    check_cap(n)?;
    let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Lattice::from_covers(Lattice::numbered(n), &covers)
}

/// The boolean algebra on `n` atoms `a1..an`; elements are named by the
/// atoms below them, the bottom is `0`.
pub fn boolean(n: usize) -> Result<Lattice> {
    if n >= usize::BITS as usize - 1 || (1usize << n) > MAX_ELEMENTS {
        return Err(Error::CapExceeded {
            requested: 1usize.checked_shl(n as u32).unwrap_or(usize::MAX),
            cap: MAX_ELEMENTS,
        });
    }
    let size = 1usize << n;
    let names = (0..size)
        .map(|mask| {
            if mask == 0 {
                "0".to_string()
            } else {
                (0..n).filter(|i| mask >> i & 1 == 1).map(|i| format!("a{}", i + 1)).collect()
            }
        })
        .collect();
    Lattice::from_leq(names, |x, y| x & y == x)
}

/// Direct product with componentwise order; element `(x, y)` sits at index
/// `x * |b| + y`.
pub fn product(a: &Lattice, b: &Lattice) -> Result<Lattice> {
    let nb = b.len();
    check_cap(a.len().saturating_mul(nb))?;
    let names = a
        .elements()
        .flat_map(|x| b.elements().map(move |y| (x, y)))
        .map(|(x, y)| format!("({},{})", a.name(x), b.name(y)))
        .collect();
    Lattice::from_leq(names, |i, j| a.leq(i / nb, j / nb) && b.leq(i % nb, j % nb))
}

/// Names for a disjoint union: kept when globally unique, otherwise
/// prefixed with the block position.
fn union_names(blocks: &[&Lattice]) -> Vec<String> {
    let mut seen = HashSet::new();
    let unique = blocks
        .iter()
        .flat_map(|b| b.names().iter())
        .all(|n| seen.insert(n.as_str()));
    blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| {
            b.names().iter().map(move |n| if unique { n.clone() } else { format!("{i}:{n}") })
        })
        .collect()
}

/// Offsets of each block in the disjoint union, plus the total size.
fn offsets(blocks: &[&Lattice]) -> (Vec<usize>, usize) {
    let mut out = Vec::with_capacity(blocks.len());
    let mut total = 0usize;
    for b in blocks {
        out.push(total);
        total += b.len();
    }
    (out, total)
}

/// Stacks the blocks: each block keeps its order and lies entirely below
/// every later block.
pub fn linear_sum(blocks: &[&Lattice]) -> Result<Lattice> {
    if blocks.is_empty() {
        return Err(Error::EmptyCarrier);
    }
    let (offs, total) = offsets(blocks);
    check_cap(total)?;
    let block_of: Vec<usize> = blocks.iter().enumerate().flat_map(|(i, b)| std::iter::repeat_n(i, b.len())).collect();
    Lattice::from_leq(union_names(blocks), |x, y| {
        let (bx, by) = (block_of[x], block_of[y]);
        bx < by || (bx == by && blocks[bx].leq(x - offs[bx], y - offs[bx]))
    })
}

/// The lexicographic sum of `blocks` over `index`: blocks keep their order
/// and `p <= q` whenever `p`'s block index lies strictly below `q`'s. The
/// result is validated, since non-chain indices can break the lattice axioms.
pub fn lexicographic_sum(index: &Poset, blocks: &[&Lattice]) -> Result<Lattice> {
    if index.len() != blocks.len() {
        return Err(Error::InvalidArgument(format!(
            "index has {} elements but {} blocks were given",
            index.len(),
            blocks.len()
        )));
    }
    if blocks.is_empty() {
        return Err(Error::EmptyCarrier);
    }
    let (offs, total) = offsets(blocks);
    check_cap(total)?;
    let mut pairs = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        pairs.extend(b.covers().into_iter().map(|(x, y)| (x + offs[i], y + offs[i])));
    }
    for (i, j) in index.strict_pairs() {
        for x in 0..blocks[i].len() {
            for y in 0..blocks[j].len() {
                pairs.push((x + offs[i], y + offs[j]));
            }
        }
    }
    validate(union_names(blocks), Relation::Order(pairs))
}

/// A point `(column, level)` of 2 x Z, column in {0, 1}.
pub type Coord = (u8, i64);

/// The infinite lattice 2 x Z with componentwise order, computed from
/// coordinates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ImplicitTwoByZ;

impl ImplicitTwoByZ {
    pub fn leq(&self, a: Coord, b: Coord) -> bool {
        a.0 <= b.0 && a.1 <= b.1
    }

    pub fn join(&self, a: Coord, b: Coord) -> Coord {
        (a.0.max(b.0), a.1.max(b.1))
    }

    pub fn meet(&self, a: Coord, b: Coord) -> Coord {
        (a.0.min(b.0), a.1.min(b.1))
    }

    /// `(0,k) < (1,k)`, `(0,k) < (0,k+1)` and `(1,k) < (1,k+1)` are the
    /// only covers.
    pub fn is_cover(&self, a: Coord, b: Coord) -> bool {
        (a.0 == 0 && b.0 == 1 && a.1 == b.1) || (a.0 == b.0 && b.1 == a.1 + 1)
    }

    pub fn upper_covers(&self, a: Coord) -> Vec<Coord> {
        let mut out = vec![(a.0, a.1 + 1)];
        if a.0 == 0 {
            out.push((1, a.1));
        }
        out
    }

    pub fn lower_covers(&self, a: Coord) -> Vec<Coord> {
        let mut out = vec![(a.0, a.1 - 1)];
        if a.0 == 1 {
            out.push((0, a.1));
        }
        out
    }

    pub fn is_valid(&self, a: Coord) -> bool {
        a.0 <= 1
    }
}

/// A materialized window `{(i,k) : lo <= k <= hi}` of 2 x Z. It is a
/// sublattice of the whole, but not an interval: elements in the boundary
/// columns have covers outside the window.
#[derive(Debug, Clone)]
pub struct TwoByZWindow {
    pub lattice: Lattice,
    pub coords: Vec<Coord>,
    pub lo: i64,
    pub hi: i64,
}

pub fn two_by_z_window(lo: i64, hi: i64) -> Result<TwoByZWindow> {
    if lo > hi {
        return Err(Error::InvalidArgument(format!("window [{lo}, {hi}] is empty")));
    }
    let width = usize::try_from(hi - lo + 1).map_err(|_| Error::CapExceeded { requested: usize::MAX, cap: MAX_ELEMENTS })?;
    check_cap(width.saturating_mul(2))?;
    let coords: Vec<Coord> = (lo..=hi).flat_map(|k| [(0u8, k), (1u8, k)]).collect();
    let names = coords.iter().map(|(i, k)| format!("({i},{k})")).collect();
    let z = ImplicitTwoByZ;
    let lattice = Lattice::from_leq(names, |x, y| z.leq(coords[x], coords[y]))?;
    Ok(TwoByZWindow { lattice, coords, lo, hi })
}

impl TwoByZWindow {
    pub fn index(&self, c: Coord) -> Option<usize> {
        if c.0 > 1 || c.1 < self.lo || c.1 > self.hi {
            return None;
        }
        Some(((c.1 - self.lo) * 2) as usize + c.0 as usize)
    }

    /// Elements whose covers in 2 x Z all lie inside the window.
    pub fn interior(&self) -> ElementSet {
        ElementSet::from_indices(
            self.lattice.len(),
            self.coords
                .iter()
                .enumerate()
                .filter(|(_, c)| c.1 > self.lo && c.1 < self.hi)
                .map(|(i, _)| i),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::isomorphic;
    use crate::predicates::width;

    #[test]
    fn products_of_chains() {
        let c2 = chain(2).unwrap();
        assert!(isomorphic(&product(&c2, &c2).unwrap(), &boolean(2).unwrap()));
    }

    #[test]
    fn boolean_cube_shape() {
        let b = boolean(3).unwrap();
        assert_eq!(b.len(), 8);
        assert_eq!(b.upper_covers(b.bottom()).len(), 3);
        assert_eq!(width(&b).size, 3);
        assert_eq!(b.name(1), "a1");
        assert_eq!(b.name(7), "a1a2a3");
    }

    #[test]
    fn linear_sums() {
        let one = chain(1).unwrap();
        assert!(isomorphic(&linear_sum(&[&one, &one, &one]).unwrap(), &chain(3).unwrap()));
        let b3 = boolean(3).unwrap();
        assert_eq!(linear_sum(&[&b3]).unwrap(), b3);
        let two_by_four = product(&chain(2).unwrap(), &chain(4).unwrap()).unwrap();
        let l = linear_sum(&[&one, &b3, &two_by_four]).unwrap();
        assert_eq!(l.len(), 17);
        assert!(l.name(0).starts_with("0:"));
    }

    #[test]
    fn lexicographic_sums() {
        let one = chain(1).unwrap();
        let b3 = boolean(3).unwrap();
        let over_chain = lexicographic_sum(&Poset::chain(2), &[&one, &b3]).unwrap();
        assert_eq!(over_chain, linear_sum(&[&one, &b3]).unwrap());
        assert!(matches!(
            lexicographic_sum(&Poset::antichain(2), &[&one, &one]),
            Err(Error::NotALattice { x: 0, y: 1, .. })
        ));
        assert_eq!(lexicographic_sum(&Poset::chain(1), &[&b3]).unwrap(), b3);
    }

    #[test]
    fn caps() {
        assert!(matches!(chain(20_000), Err(Error::CapExceeded { .. })));
        assert!(matches!(boolean(14), Err(Error::CapExceeded { .. })));
        assert!(matches!(boolean(200), Err(Error::CapExceeded { .. })));
        assert_eq!(chain(0).unwrap_err(), Error::EmptyCarrier);
    }

    #[test]
    fn windows_are_two_by_chains() {
        let w = two_by_z_window(0, 0).unwrap();
        assert!(isomorphic(&w.lattice, &chain(2).unwrap()));
        for (lo, hi) in [(0, 1), (0, 3), (-3, 3), (5, 9)] {
            let w = two_by_z_window(lo, hi).unwrap();
            let expected = product(&chain(2).unwrap(), &chain((hi - lo + 1) as usize).unwrap()).unwrap();
            assert!(isomorphic(&w.lattice, &expected), "window {lo}..{hi}");
        }
        assert!(two_by_z_window(2, 1).is_err());
    }

    #[test]
    fn window_covers_match_coordinates() {
        let z = ImplicitTwoByZ;
        for len in 1..=20 {
            let w = two_by_z_window(-7, -7 + len - 1).unwrap();
            for x in w.lattice.elements() {
                for y in w.lattice.elements() {
                    assert_eq!(w.lattice.is_cover(x, y), z.is_cover(w.coords[x], w.coords[y]));
                    assert_eq!(w.lattice.join(x, y), w.index(z.join(w.coords[x], w.coords[y])).unwrap());
                }
            }
        }
    }
}
