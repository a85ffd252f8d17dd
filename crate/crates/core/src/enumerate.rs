//! Lattices up to isomorphism.
//!
//! Removing a join-irreducible element from a finite lattice leaves a
//! lattice, so every lattice on `n + 1` elements arises from one on `n` by
//! inserting a new join-irreducible `j`: pick its lower cover `c` and the
//! up-set `U` of elements strictly above it (inside `up(c) \ {c}`).
//! Candidates are validated and deduplicated by fingerprint and
//! isomorphism search.
//!
//! Distributive lattices are enumerated separately through their posets of
//! join-irreducibles, which is far cheaper and reaches larger sizes.

use std::collections::HashMap;

use crate::element_set::ElementSet;
use crate::error::{Error, Result};
use crate::iso::{find_isomorphism, fingerprint, Fingerprint};
use crate::lattice::Lattice;
use crate::poset::{downset_lattice, Poset};

/// Default size cap for [`enumerate_lattices`].
pub const DEFAULT_ENUMERATION_CAP: usize = 8;

/// Size cap for [`enumerate_distributive`].
pub const DISTRIBUTIVE_CAP: usize = 24;

/// Representatives of each isomorphism class of `n`-element lattices.
pub fn enumerate_lattices(n: usize) -> Result<Vec<Lattice>> {
    enumerate_lattices_with_cap(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_lattices_with_cap(n: usize, cap: usize) -> Result<Vec<Lattice>> {
    Ok(lattices_up_to(n, cap)?.pop().unwrap_or_default())
}

/// `result[k]` holds the lattices with `k` elements, for `k <= n`.
pub fn lattices_up_to(n: usize, cap: usize) -> Result<Vec<Vec<Lattice>>> {
    if n > cap {
        return Err(Error::CapExceeded { requested: n, cap });
    }
    let mut by_size: Vec<Vec<Lattice>> = vec![Vec::new()];
    if n == 0 {
        return Ok(by_size);
    }
    by_size.push(vec![Lattice::from_covers(Lattice::numbered(1), &[]).expect("one element")]);
    for size in 2..=n {
        let mut classes = Classes::default();
        for k in &by_size[size - 1] {
            for c in k.elements() {
                for above in extensions_above(k, c) {
                    if let Some(l) = insert_join_irreducible(k, c, &above) {
                        classes.offer(l);
                    }
                }
            }
        }
        by_size.push(classes.into_lattices());
    }
    Ok(by_size)
}

/// Up-sets `U` of `k` inside `up(c) \ {c}`; the empty set only when `c` is
/// the top, since otherwise the new element would be a second maximal one.
fn extensions_above(k: &Lattice, c: usize) -> Vec<ElementSet> {
    let mut strictly_above = k.up_set(c).clone();
    strictly_above.remove(c);
    let candidates = strictly_above.to_vec();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    antichains(k, &candidates, 0, &mut chosen, &mut out);
    out.into_iter()
        .map(|minimal: Vec<usize>| {
            let mut up = ElementSet::new(k.len());
            for m in minimal {
                up.union_with(k.up_set(m));
            }
            up
        })
        .filter(|u| !u.is_empty() || c == k.top())
        .collect()
}

fn antichains(k: &Lattice, candidates: &[usize], from: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(chosen.clone());
    for i in from..candidates.len() {
        let x = candidates[i];
        if chosen.iter().all(|&y| !k.comparable(x, y)) {
            chosen.push(x);
            antichains(k, candidates, i + 1, chosen, out);
            chosen.pop();
        }
    }
}

/// `k` plus a new element `j` with `down(j) = down(c) u {j}` and
/// `up(j) = above u {j}`, relabelled along a linear extension.
fn insert_join_irreducible(k: &Lattice, c: usize, above: &ElementSet) -> Option<Lattice> {
    let j = k.len();
    let leq = |x: usize, y: usize| match (x == j, y == j) {
        (true, true) => true,
        (true, false) => above.contains(y),
        (false, true) => k.leq(x, c),
        (false, false) => k.leq(x, y),
    };
    let l = Lattice::from_leq(Lattice::numbered(j + 1), leq).ok()?;
    Some(canonical_labels(&l))
}

/// Relabels so that indices follow a linear extension and names are the
/// indices.
fn canonical_labels(l: &Lattice) -> Lattice {
    let order = l.linear_extension();
    l.permuted(&order).renamed(Lattice::numbered(l.len())).expect("fresh names are distinct")
}

/// Isomorphism classes in discovery order.
#[derive(Default)]
struct Classes {
    reps: Vec<Lattice>,
    buckets: HashMap<Fingerprint, Vec<usize>>,
}

impl Classes {
    fn offer(&mut self, l: Lattice) -> bool {
        let bucket = self.buckets.entry(fingerprint(&l)).or_default();
        if bucket.iter().any(|&i| find_isomorphism(&self.reps[i], &l).is_some()) {
            return false;
        }
        bucket.push(self.reps.len());
        self.reps.push(l);
        true
    }

    fn into_lattices(self) -> Vec<Lattice> {
        self.reps
    }
}

/// Distributive lattices with exactly `n` elements, up to isomorphism.
pub fn enumerate_distributive(n: usize) -> Result<Vec<Lattice>> {
    Ok(distributive_up_to(n)?.pop().unwrap_or_default())
}

/// `result[k]` holds the distributive lattices with `k` elements.
///
/// Posets are grown by adding a maximal element over one of their down-sets;
/// a poset with too many down-sets only gains more by growing, so it is
/// dropped.
pub fn distributive_up_to(n: usize) -> Result<Vec<Vec<Lattice>>> {
    if n > DISTRIBUTIVE_CAP {
        return Err(Error::CapExceeded { requested: n, cap: DISTRIBUTIVE_CAP });
    }
    let mut by_size: Vec<Classes> = (0..=n).map(|_| Classes::default()).collect();
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut layer: Vec<Poset> = vec![Poset::antichain(0)];
    by_size[1].offer(canonical_labels(&downset_lattice(&layer[0])));
    while !layer.is_empty() {
        let mut seen = Classes::default();
        let mut next = Vec::new();
        for p in &layer {
            for below in p.down_sets() {
                let grown = add_maximal(p, &below);
                let lattice = canonical_labels(&downset_lattice(&grown));
                if lattice.len() <= n && seen.offer(lattice.clone()) {
                    by_size[lattice.len()].offer(lattice);
                    next.push(grown);
                }
            }
        }
        layer = next;
    }
    Ok(by_size.into_iter().map(Classes::into_lattices).collect())
}

fn add_maximal(p: &Poset, below: &ElementSet) -> Poset {
    let k = p.len();
    let mut names = p.names().to_vec();
    names.push(k.to_string());
    let mut pairs = p.strict_pairs();
    pairs.extend(below.iter().map(|x| (x, k)));
    Poset::from_pairs(names, &pairs).expect("adding a maximal element keeps a poset")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicates::is_distributive;

    /// Lattices on `n` elements from scratch: bottom `0`, top `n - 1`, and
    /// every naturally labelled partial order on the elements between.
    fn naive(n: usize) -> Vec<Lattice> {
        if n <= 2 {
            let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            return vec![Lattice::from_covers(Lattice::numbered(n), &covers).unwrap()];
        }
        let m = n - 2;
        let slots: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
        let mut classes = Classes::default();
        for mask in 0u64..(1 << slots.len()) {
            let rel = |i: usize, j: usize| i == j || (i < j && mask >> slots.iter().position(|&s| s == (i, j)).unwrap() & 1 == 1);
            let transitive = (0..m).all(|i| (0..m).all(|j| (0..m).all(|k| !(rel(i, j) && rel(j, k)) || rel(i, k))));
            if !transitive {
                continue;
            }
            let leq = |x: usize, y: usize| x == 0 || y == n - 1 || (x != n - 1 && y != 0 && rel(x - 1, y - 1));
            if let Ok(l) = Lattice::from_leq(Lattice::numbered(n), leq) {
                classes.offer(l);
            }
        }
        classes.into_lattices()
    }

    fn no_duplicates(ls: &[Lattice]) -> bool {
        ls.iter().enumerate().all(|(i, a)| ls[i + 1..].iter().all(|b| find_isomorphism(a, b).is_none()))
    }

    #[test]
    fn counts_match_naive_oracle() {
        let by_size = lattices_up_to(7, 8).unwrap();
        for n in 1..=7 {
            let oracle = naive(n);
            assert_eq!(by_size[n].len(), oracle.len(), "size {n}");
            for l in &oracle {
                assert!(by_size[n].iter().any(|k| find_isomorphism(k, l).is_some()));
            }
            assert!(no_duplicates(&by_size[n]));
        }
        let counts: Vec<usize> = by_size.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![0, 1, 1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn deterministic_and_capped() {
        assert_eq!(enumerate_lattices(6).unwrap(), enumerate_lattices(6).unwrap());
        assert!(matches!(enumerate_lattices(9), Err(Error::CapExceeded { requested: 9, cap: 8 })));
        assert!(enumerate_lattices(0).unwrap().is_empty());
        for l in enumerate_lattices(6).unwrap() {
            assert_eq!(l.bottom(), 0);
            assert_eq!(l.top(), 5);
        }
    }

    #[test]
    fn distributive_counts() {
        let by_size = distributive_up_to(12).unwrap();
        let counts: Vec<usize> = by_size.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![0, 1, 1, 1, 2, 3, 5, 8, 15, 26, 47, 82, 151]);
        let general = lattices_up_to(8, 8).unwrap();
        for n in 1..=8 {
            let filtered: Vec<&Lattice> = general[n].iter().filter(|l| is_distributive(l).holds()).collect();
            assert_eq!(filtered.len(), by_size[n].len(), "size {n}");
            for l in &by_size[n] {
                assert!(is_distributive(l).holds());
                assert!(filtered.iter().any(|k| find_isomorphism(k, l).is_some()));
            }
        }
    }
}
