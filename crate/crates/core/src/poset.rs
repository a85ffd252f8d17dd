//! Finite posets, Birkhoff's representation, and down-set lattices.

use std::collections::BTreeSet;

use crate::element_set::ElementSet;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::predicates;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    up: Vec<ElementSet>,
}

impl Poset {
    /// Builds a poset from `(lower, upper)` pairs, closing transitively.
    pub fn from_pairs(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset> {
        let n = names.len();
        let mut up: Vec<ElementSet> = (0..n).map(|x| ElementSet::singleton(n, x)).collect();
        for &(a, b) in pairs {
            for idx in [a, b] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, size: n });
                }
            }
            up[a].insert(b);
        }
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for x in 0..n {
            for y in up[x].iter() {
                if y != x && up[y].contains(x) {
                    return Err(Error::NotAPartialOrder { a: x.min(y), b: x.max(y) });
                }
            }
        }
        Ok(Poset { names, up })
    }

    pub fn antichain(n: usize) -> Poset {
        Poset::from_pairs(Lattice::numbered(n), &[]).expect("antichain")
    }

    pub fn chain(n: usize) -> Poset {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_pairs(Lattice::numbered(n), &pairs).expect("chain")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Strict order pairs `(x, y)` with `x < y`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|x| self.up[x].iter().filter(move |&y| y != x).map(move |y| (x, y)))
            .collect()
    }

    pub fn is_antichain(&self) -> bool {
        self.strict_pairs().is_empty()
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|x| (0..self.len()).all(|y| self.comparable(x, y)))
    }

    /// Connected components of the comparability graph, each sorted, ordered
    /// by least member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                for y in 0..n {
                    if !seen[y] && self.comparable(x, y) {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The subposet induced on `members`.
    pub fn restrict(&self, members: &[usize]) -> Poset {
        let names = members.iter().map(|&x| self.names[x].clone()).collect();
        let pairs: Vec<(usize, usize)> = (0..members.len())
            .flat_map(|i| (0..members.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && self.leq(members[i], members[j]))
            .collect();
        Poset::from_pairs(names, &pairs).expect("restriction of a poset")
    }

    /// All down-sets, ordered by size and then by membership bits.
    pub fn down_sets(&self) -> Vec<ElementSet> {
        let n = self.len();
        let down: Vec<ElementSet> = (0..n)
            .map(|y| ElementSet::from_indices(n, (0..n).filter(|&x| self.leq(x, y))))
            .collect();
        let mut found: BTreeSet<(usize, ElementSet)> = BTreeSet::new();
        let empty = ElementSet::new(n);
        found.insert((0, empty.clone()));
        let mut frontier = vec![empty];
        while let Some(d) = frontier.pop() {
            for x in 0..n {
                if d.contains(x) {
                    continue;
                }
                let mut below = down[x].clone();
                below.remove(x);
                if below.is_subset(&d) {
                    let mut next = d.clone();
                    next.insert(x);
                    if found.insert((next.len(), next.clone())) {
                        frontier.push(next);
                    }
                }
            }
        }
        found.into_iter().map(|(_, s)| s).collect()
    }
}

/// The poset of join-irreducible elements of a distributive lattice, with
/// the names and order inherited from `l`. Also returns the lattice index
/// of each poset element.
pub fn birkhoff_poset(l: &Lattice) -> Result<(Poset, Vec<usize>)> {
    if let Some((x, y, z)) = predicates::is_distributive(l).violation {
        return Err(Error::NotDistributive { x, y, z });
    }
    let members = l.join_irreducibles().to_vec();
    let names = members.iter().map(|&x| l.name(x).to_string()).collect();
    let pairs: Vec<(usize, usize)> = (0..members.len())
        .flat_map(|i| (0..members.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && l.leq(members[i], members[j]))
        .collect();
    Ok((Poset::from_pairs(names, &pairs)?, members))
}

/// The lattice of down-sets of `p` ordered by inclusion.
pub fn downset_lattice(p: &Poset) -> Lattice {
    let sets = p.down_sets();
    let names = sets
        .iter()
        .map(|s| {
            let inner: Vec<&str> = s.iter().map(|x| p.names()[x].as_str()).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    Lattice::from_leq(names, |i, j| sets[i].is_subset(&sets[j])).expect("down-sets form a lattice")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{boolean, chain, product};
    use crate::iso::isomorphic;

    #[test]
    fn empty_poset_gives_one_element() {
        let l = downset_lattice(&Poset::antichain(0));
        assert_eq!(l.len(), 1);
        assert_eq!(l.name(0), "{}");
    }

    #[test]
    fn boolean_cube_has_antichain_of_three() {
        let (p, _) = birkhoff_poset(&boolean(3).unwrap()).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.is_antichain());
    }

    #[test]
    fn two_by_four_has_point_plus_three_chain() {
        let l = product(&chain(2).unwrap(), &chain(4).unwrap()).unwrap();
        let (p, _) = birkhoff_poset(&l).unwrap();
        let mut sizes: Vec<usize> = p.components().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3]);
        for comp in p.components() {
            assert!(p.restrict(&comp).is_chain());
        }
        assert!(isomorphic(&downset_lattice(&p), &l));
    }

    #[test]
    fn nondistributive_input_is_rejected() {
        let m3 = Lattice::from_covers(Lattice::numbered(5), &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
            .unwrap();
        assert!(matches!(birkhoff_poset(&m3), Err(Error::NotDistributive { .. })));
    }

    #[test]
    fn down_set_counts() {
        assert_eq!(Poset::antichain(3).down_sets().len(), 8);
        assert_eq!(Poset::chain(4).down_sets().len(), 5);
    }
}
