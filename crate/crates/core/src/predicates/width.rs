//! Width by Dilworth's theorem: a maximum matching in the strict-order
//! bipartite graph gives a minimum chain cover, and König's construction
//! turns it into a maximum antichain.

use serde::Serialize;

use crate::element_set::ElementSet;
use crate::lattice::Lattice;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Width {
    pub size: usize,
    /// Lexicographically least maximum antichain, ascending.
    pub antichain: Vec<usize>,
    /// A chain cover with `size` chains, each listed bottom-up.
    pub chains: Vec<Vec<usize>>,
}

struct Matching {
    /// `next[i] = j` when the edge `members[i] < members[j]` is matched.
    next: Vec<Option<usize>>,
    prev: Vec<Option<usize>>,
    size: usize,
}

fn matching(l: &Lattice, members: &[usize]) -> Matching {
    let k = members.len();
    let adj: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..k).filter(|&j| l.lt(members[i], members[j])).collect())
        .collect();
    let mut next = vec![None; k];
    let mut prev = vec![None; k];
    let mut size = 0;
    for start in 0..k {
        let mut visited = vec![false; k];
        if augment(start, &adj, &mut visited, &mut next, &mut prev) {
            size += 1;
        }
    }
    Matching { next, prev, size }
}

fn augment(
    i: usize,
    adj: &[Vec<usize>],
    visited: &mut [bool],
    next: &mut [Option<usize>],
    prev: &mut [Option<usize>],
) -> bool {
    for &j in &adj[i] {
        if visited[j] {
            continue;
        }
        visited[j] = true;
        if prev[j].is_none_or(|i2| augment(i2, adj, visited, next, prev)) {
            next[i] = Some(j);
            prev[j] = Some(i);
            return true;
        }
    }
    false
}

fn antichain_size(l: &Lattice, members: &[usize]) -> usize {
    members.len() - matching(l, members).size
}

/// The lexicographically least maximum antichain inside `within`.
pub fn max_antichain_within(l: &Lattice, within: &ElementSet) -> Vec<usize> {
    let members = within.to_vec();
    let target = antichain_size(l, &members);
    let mut chosen: Vec<usize> = Vec::with_capacity(target);
    for (pos, &x) in members.iter().enumerate() {
        if chosen.len() == target {
            break;
        }
        if chosen.iter().any(|&c| l.comparable(c, x)) {
            continue;
        }
        let rest: Vec<usize> = members[pos + 1..]
            .iter()
            .copied()
            .filter(|&y| !l.comparable(x, y) && chosen.iter().all(|&c| !l.comparable(c, y)))
            .collect();
        if chosen.len() + 1 + antichain_size(l, &rest) == target {
            chosen.push(x);
        }
    }
    chosen
}

pub fn width(l: &Lattice) -> Width {
    let members: Vec<usize> = l.elements().collect();
    let m = matching(l, &members);
    let chains = (0..members.len())
        .filter(|&i| m.prev[i].is_none())
        .map(|start| {
            let mut chain = vec![members[start]];
            let mut at = start;
            while let Some(j) = m.next[at] {
                chain.push(members[j]);
                at = j;
            }
            chain
        })
        .collect::<Vec<_>>();
    let antichain = max_antichain_within(l, &ElementSet::full(l.len()));
    Width { size: members.len() - m.size, antichain, chains }
}

/// Largest antichain of elements that are join-reducible or meet-reducible.
pub fn reducible_antichain_bound(l: &Lattice) -> usize {
    reducible_antichain_bound_within(l, &ElementSet::full(l.len()))
}

/// As [`reducible_antichain_bound`], restricted to `candidates`; used on
/// finite windows where boundary elements cannot be judged.
pub fn reducible_antichain_bound_within(l: &Lattice, candidates: &ElementSet) -> usize {
    let reducible = ElementSet::from_indices(
        l.len(),
        candidates.iter().filter(|&x| l.is_join_reducible(x) || l.is_meet_reducible(x)),
    );
    max_antichain_within(l, &reducible).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{boolean, chain, product, two_by_z_window};
    use crate::fd::free_distributive;
    use crate::fixtures::fixture;

    /// Every subset, keeping the largest antichains; returns the size and the
    /// lexicographically least one.
    fn brute(l: &Lattice, within: &[usize]) -> (usize, Vec<usize>) {
        let k = within.len();
        let mut best: (usize, Vec<usize>) = (0, vec![]);
        for mask in 0u32..(1 << k) {
            let set: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| within[i]).collect();
            let anti = set.iter().enumerate().all(|(i, &x)| set[i + 1..].iter().all(|&y| !l.comparable(x, y)));
            if anti && (set.len() > best.0 || (set.len() == best.0 && set < best.1)) {
                best = (set.len(), set);
            }
        }
        best
    }

    #[test]
    fn agrees_with_brute_force() {
        let samples = [
            boolean(3).unwrap(),
            chain(6).unwrap(),
            fixture("m3").unwrap(),
            fixture("n5").unwrap(),
            fixture("gadget_case3").unwrap(),
            fixture("fd3_quotient3").unwrap(),
            product(&chain(2).unwrap(), &chain(5).unwrap()).unwrap(),
            product(&chain(3).unwrap(), &chain(4).unwrap()).unwrap(),
        ];
        for l in &samples {
            let all: Vec<usize> = l.elements().collect();
            let (size, anti) = brute(l, &all);
            let w = width(l);
            assert_eq!((w.size, &w.antichain), (size, &anti));
            assert_eq!(w.chains.len(), w.size);
            let mut covered: Vec<usize> = w.chains.iter().flatten().copied().collect();
            covered.sort_unstable();
            assert_eq!(covered, all);
            for c in &w.chains {
                assert!(c.windows(2).all(|p| l.lt(p[0], p[1])));
            }
        }
    }

    #[test]
    fn known_widths() {
        let b3 = boolean(3).unwrap();
        assert_eq!(width(&b3).antichain, vec![1, 2, 4]);
        assert_eq!(width(&chain(9).unwrap()).size, 1);
        // fd3 has 18 elements; too many for the subset scan above, so scan
        // the 2^18 subsets here once.
        let fd = free_distributive(3).unwrap();
        let all: Vec<usize> = fd.lattice.elements().collect();
        let (size, anti) = brute(&fd.lattice, &all);
        assert_eq!(size, 4);
        assert_eq!(width(&fd.lattice).size, size);
        assert_eq!(width(&fd.lattice).antichain, anti);
    }

    #[test]
    fn reducible_bounds() {
        let w = two_by_z_window(-3, 3).unwrap();
        assert_eq!(reducible_antichain_bound_within(&w.lattice, &w.interior()), 2);
        for n in 1..8 {
            assert_eq!(reducible_antichain_bound(&chain(n).unwrap()), 0);
        }
        let b3 = boolean(3).unwrap();
        let reducible: Vec<usize> =
            b3.elements().filter(|&x| b3.is_join_reducible(x) || b3.is_meet_reducible(x)).collect();
        assert_eq!(reducible_antichain_bound(&b3), brute(&b3, &reducible).0);
        assert_eq!(reducible_antichain_bound(&b3), 3);
    }
}
