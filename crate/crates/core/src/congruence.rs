//! Congruences as partitions, principal congruences by union-find closure,
//! quotients, kernels, and homomorphisms out of free distributive lattices.

use crate::element_set::ElementSet;
use crate::error::{Error, Result};
use crate::fd::FreeDistributive;
use crate::lattice::Lattice;
use crate::predicates;

/// Largest carrier for [`all_congruences`].
pub const MAX_ENUMERATED_CARRIER: usize = 6;

/// A partition of the carrier compatible with join and meet. Each element
/// is labelled by the least index in its class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    labels: Vec<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes; the smaller root survives. False if already merged.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (keep, drop) = (rx.min(ry), rx.max(ry));
        self.parent[drop] = keep;
        true
    }
}

impl Congruence {
    pub fn identity(n: usize) -> Self {
        Congruence { labels: (0..n).collect() }
    }

    pub fn all(n: usize) -> Self {
        Congruence { labels: vec![0; n] }
    }

    /// Least congruence of `l` containing every pair in `pairs`.
    pub fn generated(l: &Lattice, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = l.len();
        for &(a, b) in pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::IndexOutOfRange { index: x, size: n });
                }
            }
        }
        Ok(close(l, UnionFind::new(n), pairs.to_vec()))
    }

    /// Validates a partition given as classes; every element must appear once.
    pub fn from_classes(l: &Lattice, classes: &[Vec<usize>]) -> Result<Self> {
        let n = l.len();
        let mut labels = vec![usize::MAX; n];
        for class in classes {
            let least = *class.iter().min().ok_or_else(|| Error::InvalidArgument("empty class".into()))?;
            for &x in class {
                if x >= n {
                    return Err(Error::IndexOutOfRange { index: x, size: n });
                }
                if labels[x] != usize::MAX {
                    return Err(Error::InvalidArgument(format!("element {x} appears in two classes")));
                }
                labels[x] = least;
            }
        }
        if let Some(x) = labels.iter().position(|&v| v == usize::MAX) {
            return Err(Error::InvalidArgument(format!("element {x} is in no class")));
        }
        let c = Congruence { labels };
        match c.compatibility_violation(l) {
            Some((x, y, z)) => Err(Error::NotACongruence { x, y, z }),
            None => Ok(c),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> usize {
        self.labels[x]
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.labels[x] == self.labels[y]
    }

    pub fn class_count(&self) -> usize {
        self.labels.iter().enumerate().filter(|&(x, &v)| x == v).count()
    }

    /// Classes ordered by least member, each ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.len()];
        for (x, &v) in self.labels.iter().enumerate() {
            if slot[v] == usize::MAX {
                slot[v] = out.len();
                out.push(Vec::new());
            }
            out[slot[v]].push(x);
        }
        out
    }

    /// Whether every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        self.len() == other.len() && (0..self.len()).all(|x| other.related(x, self.labels[x]))
    }

    /// The least `(x, y, z)` with `x ~ y` but `x^z`, `y^z` or `xvz`, `yvz`
    /// in different classes.
    pub fn compatibility_violation(&self, l: &Lattice) -> Option<(usize, usize, usize)> {
        let n = l.len();
        for x in 0..n {
            for y in x + 1..n {
                if !self.related(x, y) {
                    continue;
                }
                for z in 0..n {
                    if !self.related(l.meet(x, z), l.meet(y, z)) || !self.related(l.join(x, z), l.join(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    fn union_find(&self) -> UnionFind {
        UnionFind { parent: self.labels.clone() }
    }
}

fn close(l: &Lattice, mut uf: UnionFind, mut pending: Vec<(usize, usize)>) -> Congruence {
    let n = l.len();
    for &(a, b) in &pending.clone() {
        uf.union(a, b);
    }
    while let Some((x, y)) = pending.pop() {
        for z in 0..n {
            for (p, q) in [(l.meet(x, z), l.meet(y, z)), (l.join(x, z), l.join(y, z))] {
                if uf.union(p, q) {
                    pending.push((p, q));
                }
            }
        }
    }
    let labels = (0..n).map(|x| uf.find(x)).collect();
    Congruence { labels }
}

/// `con(a, b)`: the least congruence identifying `a` and `b`.
pub fn principal_congruence(l: &Lattice, a: usize, b: usize) -> Result<Congruence> {
    Congruence::generated(l, &[(a, b)])
}

/// Least congruence containing both arguments.
pub fn congruence_join(l: &Lattice, c1: &Congruence, c2: &Congruence) -> Result<Congruence> {
    for c in [c1, c2] {
        if c.len() != l.len() {
            return Err(Error::CarrierMismatch { left: l.len(), right: c.len() });
        }
    }
    let pairs: Vec<(usize, usize)> = (0..l.len()).filter(|&x| c2.label(x) != x).map(|x| (x, c2.label(x))).collect();
    Ok(close(l, c1.union_find(), pairs))
}

#[derive(Debug, Clone)]
pub struct Quotient {
    pub lattice: Lattice,
    /// Class index of each element of the original lattice.
    pub projection: Vec<usize>,
    /// Members of each class.
    pub classes: Vec<Vec<usize>>,
}

/// `L / c`. Classes appear in order of least member and take the name of
/// their least element under the lattice order.
pub fn quotient(l: &Lattice, c: &Congruence) -> Result<Quotient> {
    if c.len() != l.len() {
        return Err(Error::CarrierMismatch { left: l.len(), right: c.len() });
    }
    let classes = c.classes();
    let mut projection = vec![0; l.len()];
    for (i, class) in classes.iter().enumerate() {
        for &x in class {
            projection[x] = i;
        }
    }
    let reps: Vec<usize> = classes.iter().map(|class| l.meet_all(class.iter().copied())).collect();
    let names = reps.iter().map(|&r| l.name(r).to_string()).collect();
    let lattice = Lattice::from_leq(names, |i, j| projection[l.meet(reps[i], reps[j])] == i)?;
    Ok(Quotient { lattice, projection, classes })
}

/// A map out of a free distributive lattice fixed by generator images.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    pub map: Vec<usize>,
    /// False when the target is not distributive; the assignment need not
    /// then extend to a homomorphism and `map` is only the join-of-meets
    /// evaluation.
    pub target_distributive: bool,
}

impl Homomorphism {
    pub fn image(&self, target: &Lattice) -> ElementSet {
        ElementSet::from_indices(target.len(), self.map.iter().copied())
    }
}

/// Evaluates every normal form of `source` at the generator `images`.
pub fn hom_from_generators(source: &FreeDistributive, target: &Lattice, images: &[usize]) -> Result<Homomorphism> {
    if images.len() != source.generator_count() {
        return Err(Error::InvalidArgument(format!(
            "{} images given for {} generators",
            images.len(),
            source.generator_count()
        )));
    }
    if let Some(&bad) = images.iter().find(|&&x| x >= target.len()) {
        return Err(Error::IndexOutOfRange { index: bad, size: target.len() });
    }
    let map = source
        .elements
        .iter()
        .map(|e| {
            target.join_all(e.members().iter().map(|&mask| {
                target.meet_all((0..images.len()).filter(|i| mask >> i & 1 == 1).map(|i| images[i]))
            }))
        })
        .collect();
    Ok(Homomorphism { map, target_distributive: predicates::is_distributive(target).holds() })
}

/// The first pair `(x, y)` where `f` fails to preserve join or meet.
pub fn homomorphism_violation(source: &Lattice, target: &Lattice, f: &[usize]) -> Option<(usize, usize)> {
    let n = source.len();
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| {
        f[source.join(x, y)] != target.join(f[x], f[y]) || f[source.meet(x, y)] != target.meet(f[x], f[y])
    })
}

/// `s ~ t` iff `f(s) = f(t)`.
pub fn kernel(source: &Lattice, target: &Lattice, f: &[usize]) -> Result<Congruence> {
    if f.len() != source.len() {
        return Err(Error::CarrierMismatch { left: source.len(), right: f.len() });
    }
    if let Some(&bad) = f.iter().find(|&&y| y >= target.len()) {
        return Err(Error::IndexOutOfRange { index: bad, size: target.len() });
    }
    if let Some((x, y)) = homomorphism_violation(source, target, f) {
        return Err(Error::NotAHomomorphism { x, y });
    }
    let mut first = vec![usize::MAX; target.len()];
    let labels = f
        .iter()
        .enumerate()
        .map(|(x, &y)| {
            if first[y] == usize::MAX {
                first[y] = x;
            }
            first[y]
        })
        .collect();
    Ok(Congruence { labels })
}

/// Every congruence of a lattice with at most six elements, by scanning all
/// set partitions.
pub fn all_congruences(l: &Lattice) -> Result<Vec<Congruence>> {
    let n = l.len();
    if n > MAX_ENUMERATED_CARRIER {
        return Err(Error::CapExceeded { requested: n, cap: MAX_ENUMERATED_CARRIER });
    }
    let mut out = Vec::new();
    let mut growth = vec![0usize; n];
    partitions(l, 1, 0, &mut growth, &mut out);
    Ok(out)
}

fn partitions(l: &Lattice, pos: usize, max_block: usize, growth: &mut Vec<usize>, out: &mut Vec<Congruence>) {
    let n = growth.len();
    if pos >= n {
        let mut first = vec![usize::MAX; n];
        let labels = growth
            .iter()
            .enumerate()
            .map(|(x, &b)| {
                if first[b] == usize::MAX {
                    first[b] = x;
                }
                first[b]
            })
            .collect();
        let c = Congruence { labels };
        if c.compatibility_violation(l).is_none() {
            out.push(c);
        }
        return;
    }
    for b in 0..=max_block + 1 {
        growth[pos] = b;
        partitions(l, pos + 1, max_block.max(b), growth, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{boolean, chain};
    use crate::fd::{free_distributive, AntichainElement};
    use crate::fixtures::fixture;
    use crate::iso::isomorphic;

    /// The congruence generated by `pairs`, by iterating the relation matrix:
    /// add translates, symmetry and transitivity until nothing changes.
    fn matrix_closure(l: &Lattice, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
        let n = l.len();
        let mut r = vec![vec![false; n]; n];
        for (x, row) in r.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(a, b) in pairs {
            r[a][b] = true;
            r[b][a] = true;
        }
        loop {
            let mut changed = false;
            for x in 0..n {
                for y in 0..n {
                    if !r[x][y] {
                        continue;
                    }
                    for z in 0..n {
                        for (p, q) in [(l.meet(x, z), l.meet(y, z)), (l.join(x, z), l.join(y, z)), (y, x)] {
                            if !r[p][q] {
                                r[p][q] = true;
                                changed = true;
                            }
                        }
                        if r[y][z] && !r[x][z] {
                            r[x][z] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return r;
            }
        }
    }

    fn same_relation(c: &Congruence, r: &[Vec<bool>]) -> bool {
        (0..c.len()).all(|x| (0..c.len()).all(|y| c.related(x, y) == r[x][y]))
    }

    fn fd_element(fd: &FreeDistributive, masks: &[u8]) -> usize {
        fd.index_of(&AntichainElement::new(masks.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn trivial_principal_congruences() {
        let l = fixture("n5").unwrap();
        assert_eq!(principal_congruence(&l, l.bottom(), l.top()).unwrap(), Congruence::all(5));
        assert_eq!(principal_congruence(&l, 2, 2).unwrap(), Congruence::identity(5));
    }

    #[test]
    fn principal_matches_matrix_closure_on_fd3() {
        let fd = free_distributive(3).unwrap();
        let l = &fd.lattice;
        for a in l.elements() {
            for b in (a + 1..l.len()).step_by(5) {
                let c = principal_congruence(l, a, b).unwrap();
                assert!(same_relation(&c, &matrix_closure(l, &[(a, b)])), "con({a},{b})");
                assert!(c.compatibility_violation(l).is_none());
            }
        }
    }

    #[test]
    fn principal_is_least_among_all_congruences() {
        for l in [fixture("n5").unwrap(), fixture("m3").unwrap(), boolean(2).unwrap(), chain(6).unwrap()] {
            let all = all_congruences(&l).unwrap();
            for a in l.elements() {
                for b in l.elements() {
                    let p = principal_congruence(&l, a, b).unwrap();
                    assert!(all.contains(&p));
                    for c in all.iter().filter(|c| c.related(a, b)) {
                        assert!(p.refines(c));
                    }
                }
            }
        }
        // M3 is simple, N5 has five congruences, a 6-chain has 2^5.
        assert_eq!(all_congruences(&fixture("m3").unwrap()).unwrap().len(), 2);
        assert_eq!(all_congruences(&fixture("n5").unwrap()).unwrap().len(), 5);
        assert_eq!(all_congruences(&chain(6).unwrap()).unwrap().len(), 32);
    }

    #[test]
    fn joins() {
        let fd = free_distributive(3).unwrap();
        let l = &fd.lattice;
        let id = Congruence::identity(l.len());
        let c1 = principal_congruence(l, 3, 9).unwrap();
        let c2 = principal_congruence(l, 5, 12).unwrap();
        assert_eq!(congruence_join(l, &c1, &id).unwrap(), c1);
        let j = congruence_join(l, &c1, &c2).unwrap();
        assert_eq!(j, congruence_join(l, &c2, &c1).unwrap());
        assert!(same_relation(&j, &matrix_closure(l, &[(3, 9), (5, 12)])));
        assert!(matches!(
            congruence_join(l, &c1, &Congruence::identity(3)),
            Err(Error::CarrierMismatch { .. })
        ));
    }

    #[test]
    fn fd3_quotient_chain() {
        let fd = free_distributive(3).unwrap();
        let l = &fd.lattice;
        let (a, b, c) = (0b001, 0b010, 0b100);
        let z = fd_element(&fd, &[a | b, b | c, a | c]);
        let ab_ac = fd_element(&fd, &[a | b, a | c]);
        let ac_bc = fd_element(&fd, &[a | c, b | c]);
        let y = fd_element(&fd, &[b, a | c]);
        let c1 = principal_congruence(l, z, ab_ac).unwrap();
        let c2 = congruence_join(l, &c1, &principal_congruence(l, z, ac_bc).unwrap()).unwrap();
        let c3 = congruence_join(l, &c2, &principal_congruence(l, y, fd.generators[1]).unwrap()).unwrap();
        let counts: Vec<usize> = [&c1, &c2, &c3].iter().map(|c| c.class_count()).collect();
        assert_eq!(counts, vec![13, 10, 8]);
        for (c, name) in [(&c1, "fd3_quotient1"), (&c2, "fd3_quotient2"), (&c3, "fd3_quotient3")] {
            let q = quotient(l, c).unwrap();
            assert!(isomorphic(&q.lattice, &fixture(name).unwrap()), "{name}");
        }
        assert!(isomorphic(&quotient(l, &c3).unwrap().lattice, &boolean(3).unwrap()));
    }

    #[test]
    fn classes_are_convex_sublattices() {
        let fd = free_distributive(3).unwrap();
        let l = &fd.lattice;
        for (a, b) in [(0, 17), (2, 7), (4, 11), (9, 10)] {
            let c = principal_congruence(l, a, b).unwrap();
            for class in c.classes() {
                let set = ElementSet::from_indices(l.len(), class.iter().copied());
                assert!(l.is_sublattice(&set));
                let (lo, hi) = (l.meet_all(class.iter().copied()), l.join_all(class.iter().copied()));
                assert_eq!(l.interval(lo, hi), set);
            }
        }
    }

    #[test]
    fn quotient_edges() {
        let l = fixture("n5").unwrap();
        assert!(isomorphic(&quotient(&l, &Congruence::identity(5)).unwrap().lattice, &l));
        assert_eq!(quotient(&l, &Congruence::all(5)).unwrap().lattice.len(), 1);
    }

    #[test]
    fn homomorphisms_and_kernels() {
        let fd = free_distributive(3).unwrap();
        let id = hom_from_generators(&fd, &fd.lattice, &fd.generators).unwrap();
        assert_eq!(id.map, (0..18).collect::<Vec<_>>());
        assert_eq!(kernel(&fd.lattice, &fd.lattice, &id.map).unwrap(), Congruence::identity(18));

        let b3 = boolean(3).unwrap();
        let h = hom_from_generators(&fd, &b3, &[1, 2, 4]).unwrap();
        assert!(h.target_distributive);
        assert_eq!(h.image(&b3).len(), 8);
        let k = kernel(&fd.lattice, &b3, &h.map).unwrap();
        assert!(isomorphic(&quotient(&fd.lattice, &k).unwrap().lattice, &b3));

        let c4 = chain(4).unwrap();
        let h = hom_from_generators(&fd, &c4, &[0, 1, 3]).unwrap();
        assert!(c4.is_chain(&h.image(&c4)));

        let constant = vec![2; 18];
        assert_eq!(kernel(&fd.lattice, &c4, &constant).unwrap(), Congruence::all(18));

        let m3 = fixture("m3").unwrap();
        let h = hom_from_generators(&fd, &m3, &[1, 2, 3]).unwrap();
        assert!(!h.target_distributive);
        assert!(matches!(kernel(&fd.lattice, &m3, &h.map), Err(Error::NotAHomomorphism { .. })));
    }

    #[test]
    fn partitions_are_checked() {
        let l = fixture("n5").unwrap();
        let e = |name: &str| l.element(name).unwrap();
        let mut rest: Vec<Vec<usize>> = ["a", "b", "1"].iter().map(|&n| vec![e(n)]).collect();
        rest.push(vec![e("0"), e("c")]);
        assert!(matches!(Congruence::from_classes(&l, &rest), Err(Error::NotACongruence { .. })));
        let c = principal_congruence(&l, 1, 2).unwrap();
        assert_eq!(Congruence::from_classes(&l, &c.classes()).unwrap(), c);
        assert!(Congruence::from_classes(&l, &[vec![0, 1, 2, 3]]).is_err());
    }
}
