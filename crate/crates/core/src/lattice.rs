//! Finite lattices with precomputed order, cover, join and meet tables.
//!
//! Elements are dense indices `0..n`. Names are display metadata and must be
//! unique within one lattice. Every [`Lattice`] value has passed validation:
//! its order is a partial order and every pair has a join and a meet.

use std::collections::HashMap;

use crate::element_set::ElementSet;
use crate::error::{BoundKind, Error, Result};

/// The input to [`validate`]: a relation on `0..n` given either as cover
/// pairs or as arbitrary order pairs. Both are closed reflexively and
/// transitively before checking.
#[derive(Debug, Clone)]
pub enum Relation {
    Covers(Vec<(usize, usize)>),
    Order(Vec<(usize, usize)>),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    names: Vec<String>,
    up: Vec<ElementSet>,
    down: Vec<ElementSet>,
    join: Vec<u32>,
    meet: Vec<u32>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Lattice")
            .field("size", &self.len())
            .field("names", &self.names)
            .field("covers", &self.covers())
            .finish()
    }
}

/// Builds a lattice from a candidate relation on `names.len()` elements.
pub fn validate(names: Vec<String>, relation: Relation) -> Result<Lattice> {
    let n = names.len();
    let pairs = match relation {
        Relation::Covers(p) | Relation::Order(p) => p,
    };
    let mut up: Vec<ElementSet> = (0..n).map(|x| ElementSet::singleton(n, x)).collect();
    for &(a, b) in &pairs {
        for idx in [a, b] {
            if idx >= n {
                return Err(Error::IndexOutOfRange { index: idx, size: n });
            }
        }
        up[a].insert(b);
    }
    Lattice::from_up_sets(names, up)
}

impl Lattice {
    pub fn from_covers(names: Vec<String>, covers: &[(usize, usize)]) -> Result<Lattice> {
        validate(names, Relation::Covers(covers.to_vec()))
    }

    /// Builds a lattice from a predicate `leq(x, y)` on `0..names.len()`.
    pub fn from_leq(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Lattice> {
        let n = names.len();
        let up = (0..n)
            .map(|x| ElementSet::from_indices(n, (0..n).filter(|&y| x == y || leq(x, y))))
            .collect();
        Lattice::from_up_sets(names, up)
    }

    /// Numbered names `"0"`, `"1"`, ...
    pub fn numbered(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    fn from_up_sets(names: Vec<String>, mut up: Vec<ElementSet>) -> Result<Lattice> {
        let n = names.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        let mut seen = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
        }

        // Transitive closure (Warshall over bitset rows).
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }

        let mut down: Vec<ElementSet> = (0..n).map(|_| ElementSet::new(n)).collect();
        for (x, row) in up.iter().enumerate() {
            for y in row {
                down[y].insert(x);
            }
        }
        for x in 0..n {
            for y in up[x].iter() {
                if y != x && up[y].contains(x) {
                    return Err(Error::NotAPartialOrder { a: x.min(y), b: x.max(y) });
                }
            }
        }

        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for x in 0..n {
            for y in x..n {
                let j = least_of(&up, &up[x].intersection(&up[y]))
                    .ok_or(Error::NotALattice { x, y, kind: BoundKind::Join })?;
                let m = least_of(&down, &down[x].intersection(&down[y]))
                    .ok_or(Error::NotALattice { x, y, kind: BoundKind::Meet })?;
                join[x * n + y] = j as u32;
                join[y * n + x] = j as u32;
                meet[x * n + y] = m as u32;
                meet[y * n + x] = m as u32;
            }
        }

        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for y in 0..n {
            for x in down[y].iter() {
                if x != y && up[x].intersection_len(&down[y]) == 2 {
                    lower_covers[y].push(x);
                    upper_covers[x].push(y);
                }
            }
        }
        for list in upper_covers.iter_mut() {
            list.sort_unstable();
        }

        let bottom = (0..n).find(|&x| up[x].len() == n).expect("lattice has a bottom");
        let top = (0..n).find(|&x| down[x].len() == n).expect("lattice has a top");
        Ok(Lattice {
            names,
            up,
            down,
            join,
            meet,
            lower_covers,
            upper_covers,
            bottom,
            top,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false: lattices have at least one element.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Resolves a name, failing with [`Error::UnknownName`].
    pub fn element(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// Returns a copy with new display names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Lattice> {
        if names.len() != self.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} names, got {}",
                self.len(),
                names.len()
            )));
        }
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        Ok(Lattice { names, ..self.clone() })
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y] as usize
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y] as usize
    }

    /// Join of a family; the bottom for an empty family.
    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of a family; the top for an empty family.
    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn up_set(&self, x: usize) -> &ElementSet {
        &self.up[x]
    }

    pub fn down_set(&self, x: usize) -> &ElementSet {
        &self.down[x]
    }

    /// The interval `[p, q]`; empty when `p` is not below `q`.
    pub fn interval(&self, p: usize, q: usize) -> ElementSet {
        self.up[p].intersection(&self.down[q])
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn is_cover(&self, lower: usize, upper: usize) -> bool {
        self.lower_covers[upper].contains(&lower)
    }

    /// All cover pairs `(lower, upper)` sorted lexicographically.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|x| self.upper_covers[x].iter().map(move |&y| (x, y)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn cover_count(&self) -> usize {
        self.upper_covers.iter().map(Vec::len).sum()
    }

    /// Join reducible: the join of two strictly smaller elements, i.e. at
    /// least two lower covers.
    pub fn is_join_reducible(&self, x: usize) -> bool {
        self.lower_covers[x].len() >= 2
    }

    pub fn is_meet_reducible(&self, x: usize) -> bool {
        self.upper_covers[x].len() >= 2
    }

    /// Elements with exactly one lower cover (the bottom is excluded).
    pub fn join_irreducibles(&self) -> ElementSet {
        ElementSet::from_indices(self.len(), self.elements().filter(|&x| self.lower_covers[x].len() == 1))
    }

    /// Elements with exactly one upper cover (the top is excluded).
    pub fn meet_irreducibles(&self) -> ElementSet {
        ElementSet::from_indices(self.len(), self.elements().filter(|&x| self.upper_covers[x].len() == 1))
    }

    /// Order-dual: same indices and names, order reversed.
    pub fn dual(&self) -> Lattice {
        Lattice {
            names: self.names.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            join: self.meet.clone(),
            meet: self.join.clone(),
            lower_covers: self.upper_covers.clone(),
            upper_covers: self.lower_covers.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    /// Length of the longest chain from the bottom to each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.len()];
        for x in self.linear_extension() {
            h[x] = self.lower_covers[x].iter().map(|&y| h[y] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Elements sorted so that every element follows everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = self.elements().collect();
        order.sort_by_key(|&x| (self.down[x].len(), x));
        order
    }

    pub fn is_antichain(&self, set: &ElementSet) -> bool {
        let xs = set.to_vec();
        xs.iter()
            .enumerate()
            .all(|(i, &x)| xs[i + 1..].iter().all(|&y| !self.comparable(x, y)))
    }

    pub fn is_chain(&self, set: &ElementSet) -> bool {
        let xs = set.to_vec();
        xs.iter()
            .enumerate()
            .all(|(i, &x)| xs[i + 1..].iter().all(|&y| self.comparable(x, y)))
    }

    pub fn is_sublattice(&self, set: &ElementSet) -> bool {
        !set.is_empty()
            && set.iter().all(|x| {
                set.iter()
                    .all(|y| set.contains(self.join(x, y)) && set.contains(self.meet(x, y)))
            })
    }

    /// Least subset containing `generators` that is closed under join and meet.
    pub fn generated_sublattice(&self, generators: &ElementSet) -> ElementSet {
        let mut closed = generators.clone();
        let mut members = closed.to_vec();
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for j in 0..=i {
                let y = members[j];
                for z in [self.join(x, y), self.meet(x, y)] {
                    if closed.insert(z) {
                        members.push(z);
                    }
                }
            }
            i += 1;
        }
        closed
    }

    /// The sublattice on `set` as a standalone lattice, plus the map from
    /// new indices to old ones (ascending).
    pub fn sublattice(&self, set: &ElementSet) -> Result<(Lattice, Vec<usize>)> {
        if !self.is_sublattice(set) {
            return Err(Error::InvalidArgument("subset is not closed under join and meet".into()));
        }
        Ok(self.induced(set))
    }

    /// The induced subposet on `set`; a lattice whenever `set` is a
    /// sublattice, an interval, or otherwise lattice-ordered.
    pub(crate) fn induced(&self, set: &ElementSet) -> (Lattice, Vec<usize>) {
        let map = set.to_vec();
        let names = map.iter().map(|&x| self.names[x].clone()).collect();
        let l = Lattice::from_leq(names, |i, j| self.leq(map[i], map[j]))
            .expect("induced order of a sublattice is a lattice");
        (l, map)
    }

    /// Relabels elements so that index `i` of the result is `order[i]` here.
    pub fn permuted(&self, order: &[usize]) -> Lattice {
        assert_eq!(order.len(), self.len());
        let names = order.iter().map(|&x| self.names[x].clone()).collect();
        Lattice::from_leq(names, |i, j| self.leq(order[i], order[j])).expect("relabeling keeps the lattice")
    }
}

/// The element of `set` whose up-set (or down-set, by the table passed)
/// contains all of `set`.
fn least_of(rows: &[ElementSet], set: &ElementSet) -> Option<usize> {
    let count = set.len();
    set.iter().find(|&m| rows[m].intersection_len(set) == count)
}
