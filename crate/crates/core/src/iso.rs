//! Isomorphism search between small lattices.
//!
//! Candidates are pruned by a colour refinement seeded with
//! (height, depth, cover degrees, down/up-set sizes); the remaining
//! choices are resolved by backtracking over a bottom-up element order.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// Default element bound for [`is_isomorphic`].
pub const DEFAULT_SEARCH_BOUND: usize = 64;

const REFINEMENT_ROUNDS: usize = 3;

/// Returns an isomorphism `a -> b` (as `map[x_in_a] = y_in_b`) if one exists.
pub fn is_isomorphic(a: &Lattice, b: &Lattice) -> Result<Option<Vec<usize>>> {
    is_isomorphic_bounded(a, b, DEFAULT_SEARCH_BOUND)
}

pub fn is_isomorphic_bounded(a: &Lattice, b: &Lattice, bound: usize) -> Result<Option<Vec<usize>>> {
    for l in [a, b] {
        if l.len() > bound {
            return Err(Error::SizeGuard { size: l.len(), bound });
        }
    }
    Ok(find_isomorphism(a, b))
}

/// Shorthand for tests and internal checks on small lattices.
pub fn isomorphic(a: &Lattice, b: &Lattice) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Unbounded search; callers are responsible for keeping inputs small.
pub(crate) fn find_isomorphism(a: &Lattice, b: &Lattice) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.cover_count() != b.cover_count() {
        return None;
    }
    let ca = colours(a);
    let cb = colours(b);
    let mut sa = ca.clone();
    let mut sb = cb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }

    let order = search_order(a);
    let mut by_colour: HashMap<u64, Vec<usize>> = HashMap::new();
    for y in b.elements() {
        by_colour.entry(cb[y]).or_default().push(y);
    }
    let mut map = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    if extend(a, b, &order, 0, &ca, &by_colour, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Lattice,
    b: &Lattice,
    order: &[usize],
    depth: usize,
    ca: &[u64],
    by_colour: &HashMap<u64, Vec<usize>>,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(depth) else {
        return true;
    };
    for &y in &by_colour[&ca[x]] {
        if used[y] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&w| {
            let v = map[w];
            a.leq(w, x) == b.leq(v, y) && a.leq(x, w) == b.leq(y, v)
        });
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(a, b, order, depth + 1, ca, by_colour, map, used) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}

/// Bottom-up order: each element after at least one of its lower covers.
fn search_order(l: &Lattice) -> Vec<usize> {
    let h = l.heights();
    let mut order: Vec<usize> = l.elements().collect();
    order.sort_by_key(|&x| (h[x], x));
    order
}

/// Refined per-element colours; equal multisets are necessary for isomorphism.
pub fn colours(l: &Lattice) -> Vec<u64> {
    let heights = l.heights();
    let depths = l.dual().heights();
    let mut colour: Vec<u64> = l
        .elements()
        .map(|x| {
            hash_of(&(
                heights[x],
                depths[x],
                l.lower_covers(x).len(),
                l.upper_covers(x).len(),
                l.down_set(x).len(),
                l.up_set(x).len(),
            ))
        })
        .collect();
    for _ in 0..REFINEMENT_ROUNDS {
        colour = l
            .elements()
            .map(|x| {
                let mut below: Vec<u64> = l.lower_covers(x).iter().map(|&y| colour[y]).collect();
                let mut above: Vec<u64> = l.upper_covers(x).iter().map(|&y| colour[y]).collect();
                below.sort_unstable();
                above.sort_unstable();
                hash_of(&(colour[x], below, above))
            })
            .collect();
    }
    colour
}

/// An isomorphism-invariant summary used to bucket lattices before search.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    size: usize,
    covers: usize,
    colours: Vec<u64>,
}

pub fn fingerprint(l: &Lattice) -> Fingerprint {
    let mut colours = colours(l);
    colours.sort_unstable();
    Fingerprint {
        size: l.len(),
        covers: l.cover_count(),
        colours,
    }
}

fn hash_of<T: Hash>(value: &T) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

/// Closes `seeds` under componentwise join and meet inside `a x b`.
///
/// The result is the sublattice of the product generated by the seed pairs.
/// It is the graph of a homomorphism from the sublattice of `a` generated
/// by the first coordinates exactly when no first coordinate repeats.
pub fn paired_closure(a: &Lattice, b: &Lattice, seeds: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    let mut seen: BTreeSet<(usize, usize)> = seeds.iter().copied().collect();
    let mut members: Vec<(usize, usize)> = seen.iter().copied().collect();
    let mut i = 0;
    while i < members.len() {
        let (x1, y1) = members[i];
        for j in 0..=i {
            let (x2, y2) = members[j];
            for pair in [(a.join(x1, x2), b.join(y1, y2)), (a.meet(x1, x2), b.meet(y1, y2))] {
                if seen.insert(pair) {
                    members.push(pair);
                }
            }
        }
        i += 1;
    }
    seen
}

/// The homomorphism `<gens_a> -> b` sending `gens_a[i]` to `gens_b[i]`, as a
/// map on the generated sublattice of `a`, or `None` when the assignment
/// does not extend.
pub fn extend_generator_map(
    a: &Lattice,
    gens_a: &[usize],
    b: &Lattice,
    gens_b: &[usize],
) -> Option<Vec<(usize, usize)>> {
    assert_eq!(gens_a.len(), gens_b.len());
    let seeds: Vec<(usize, usize)> = gens_a.iter().copied().zip(gens_b.iter().copied()).collect();
    let graph = paired_closure(a, b, &seeds);
    let mut out: Vec<(usize, usize)> = Vec::with_capacity(graph.len());
    for (x, y) in graph {
        if out.last().is_some_and(|&(px, _)| px == x) {
            return None;
        }
        out.push((x, y));
    }
    Some(out)
}

/// True when sending `gens_a[i]` to `gens_b[i]` extends to an isomorphism
/// between the generated sublattices.
pub fn generators_isomorphic(a: &Lattice, gens_a: &[usize], b: &Lattice, gens_b: &[usize]) -> bool {
    let Some(forward) = extend_generator_map(a, gens_a, b, gens_b) else {
        return false;
    };
    let mut images: Vec<usize> = forward.iter().map(|&(_, y)| y).collect();
    images.sort_unstable();
    images.windows(2).all(|w| w[0] != w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Lattice {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Lattice::from_covers(Lattice::numbered(n), &covers).unwrap()
    }

    fn square() -> Lattice {
        Lattice::from_covers(Lattice::numbered(4), &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn chains_are_identically_isomorphic() {
        assert_eq!(is_isomorphic(&chain(3), &chain(3)).unwrap(), Some(vec![0, 1, 2]));
    }

    #[test]
    fn square_is_not_a_chain() {
        assert_eq!(is_isomorphic(&square(), &chain(4)).unwrap(), None);
    }

    #[test]
    fn relabelled_copy_is_found() {
        let l = square().permuted(&[3, 1, 0, 2]);
        let map = is_isomorphic(&square(), &l).unwrap().unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(square().leq(x, y), l.leq(map[x], map[y]));
            }
        }
    }

    #[test]
    fn size_guard() {
        let big = chain(70);
        assert_eq!(
            is_isomorphic(&big, &big).unwrap_err(),
            Error::SizeGuard { size: 70, bound: 64 }
        );
        assert!(is_isomorphic_bounded(&big, &big, 100).unwrap().is_some());
    }

    #[test]
    fn generator_maps() {
        let s = square();
        // atoms of the square onto the two ends of a 2-chain collapse the square
        let c = chain(2);
        let hom = extend_generator_map(&s, &[1, 2], &c, &[0, 1]).unwrap();
        assert_eq!(hom, vec![(0, 0), (1, 0), (2, 1), (3, 1)]);
        assert!(!generators_isomorphic(&s, &[1, 2], &c, &[0, 1]));
        assert!(generators_isomorphic(&s, &[1, 2], &s, &[2, 1]));
        // an order-violating assignment does not extend
        assert!(extend_generator_map(&c, &[0, 1], &s, &[3, 0]).is_none());
        assert!(extend_generator_map(&s, &[0, 3], &c, &[1, 0]).is_none());
    }
}
