//! Boundedness of finite lattices through the join-dependency relation.
//!
//! For join-irreducibles `p != q`, `p D q` iff some `x` has `p <= q v x`
//! but not `p <= q_* v x`, where `q_*` is the lower cover of `q`. A finite
//! lattice is lower bounded iff `D` has no cycle, upper bounded iff the
//! dual relation has none, and bounded iff both.

use serde::Serialize;

use crate::lattice::Lattice;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dependency {
    /// Join-irreducibles ordered so that every edge `p D q` has `q` first.
    Acyclic(Vec<usize>),
    /// A cycle `p0 D p1 D ... D p0`, listed without repeating `p0`.
    Cycle(Vec<usize>),
}

impl Dependency {
    pub fn is_acyclic(&self) -> bool {
        matches!(self, Dependency::Acyclic(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Boundedness {
    /// `D` on join-irreducibles.
    pub lower: Dependency,
    /// The dual relation on meet-irreducibles.
    pub upper: Dependency,
}

impl Boundedness {
    pub fn bounded(&self) -> bool {
        self.lower.is_acyclic() && self.upper.is_acyclic()
    }
}

/// All pairs `(p, q)` with `p D q`, sorted.
pub fn join_dependency(l: &Lattice) -> Vec<(usize, usize)> {
    let irreducibles = l.join_irreducibles().to_vec();
    let mut edges = Vec::new();
    for &p in &irreducibles {
        for &q in &irreducibles {
            if p == q {
                continue;
            }
            let q_low = l.lower_covers(q)[0];
            if l.elements().any(|x| l.leq(p, l.join(q, x)) && !l.leq(p, l.join(q_low, x))) {
                edges.push((p, q));
            }
        }
    }
    edges
}

fn classify(nodes: &[usize], edges: &[(usize, usize)], universe: usize) -> Dependency {
    let mut succ = vec![Vec::new(); universe];
    for &(p, q) in edges {
        succ[p].push(q);
    }
    // 0 unvisited, 1 on stack, 2 done.
    let mut state = vec![0u8; universe];
    let mut stack: Vec<usize> = Vec::new();
    for &start in nodes {
        if state[start] == 0 {
            if let Some(cycle) = dfs(start, &succ, &mut state, &mut stack) {
                return Dependency::Cycle(cycle);
            }
        }
    }
    // Kahn's algorithm on reversed edges, least index first.
    let mut pending = vec![0usize; universe];
    for &(p, _) in edges {
        pending[p] += 1;
    }
    let mut preds = vec![Vec::new(); universe];
    for &(p, q) in edges {
        preds[q].push(p);
    }
    let mut ready: std::collections::BTreeSet<usize> = nodes.iter().copied().filter(|&x| pending[x] == 0).collect();
    let mut order = Vec::with_capacity(nodes.len());
    while let Some(x) = ready.pop_first() {
        order.push(x);
        for &p in &preds[x] {
            pending[p] -= 1;
            if pending[p] == 0 {
                ready.insert(p);
            }
        }
    }
    Dependency::Acyclic(order)
}

fn dfs(x: usize, succ: &[Vec<usize>], state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
    state[x] = 1;
    stack.push(x);
    for &y in &succ[x] {
        match state[y] {
            1 => {
                let at = stack.iter().position(|&s| s == y).expect("on stack");
                return Some(stack[at..].to_vec());
            }
            0 => {
                if let Some(c) = dfs(y, succ, state, stack) {
                    return Some(c);
                }
            }
            _ => {}
        }
    }
    stack.pop();
    state[x] = 2;
    None
}

pub fn is_bounded(l: &Lattice) -> Boundedness {
    let lower = classify(&l.join_irreducibles().to_vec(), &join_dependency(l), l.len());
    let dual = l.dual();
    let upper = classify(&dual.join_irreducibles().to_vec(), &join_dependency(&dual), l.len());
    Boundedness { lower, upper }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{boolean, chain, product};
    use crate::enumerate::lattices_up_to;
    use crate::fixtures::fixture;
    use crate::predicates::is_distributive;

    /// `p D q` read off the minimal nontrivial join covers of `p`, found by
    /// scanning every antichain of join-irreducibles.
    fn dependency_by_covers(l: &Lattice) -> Vec<(usize, usize)> {
        let ji = l.join_irreducibles().to_vec();
        let k = ji.len();
        let sets: Vec<Vec<usize>> = (1u32..(1 << k))
            .map(|m| (0..k).filter(|i| m >> i & 1 == 1).map(|i| ji[i]).collect::<Vec<_>>())
            .filter(|s| s.iter().enumerate().all(|(i, &a)| s[i + 1..].iter().all(|&b| !l.comparable(a, b))))
            .collect();
        let refines = |a: &[usize], b: &[usize]| a.iter().all(|&x| b.iter().any(|&y| l.leq(x, y)));
        let mut edges = Vec::new();
        for &p in &ji {
            let covers: Vec<&Vec<usize>> = sets
                .iter()
                .filter(|s| l.leq(p, l.join_all(s.iter().copied())) && s.iter().all(|&a| !l.leq(p, a)))
                .collect();
            for a in &covers {
                let minimal = covers.iter().all(|b| !refines(b, a) || a.iter().all(|x| b.contains(x)));
                if minimal {
                    edges.extend(a.iter().filter(|&&q| q != p).map(|&q| (p, q)));
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    #[test]
    fn cover_characterization_matches_minimal_join_covers() {
        for layer in lattices_up_to(7, 8).unwrap() {
            for l in &layer {
                assert_eq!(join_dependency(l), dependency_by_covers(l));
            }
        }
        for l in [boolean(3).unwrap(), product(&chain(2).unwrap(), &chain(4).unwrap()).unwrap()] {
            assert_eq!(join_dependency(&l), dependency_by_covers(&l));
        }
    }

    #[test]
    fn examples() {
        let m3 = fixture("m3").unwrap();
        let b = is_bounded(&m3);
        assert!(!b.bounded());
        let Dependency::Cycle(cycle) = b.lower else { panic!("m3 has a cycle") };
        assert!(cycle.len() >= 2);
        assert!(cycle.iter().all(|&x| m3.is_cover(m3.bottom(), x)));
        assert!(is_bounded(&fixture("n5").unwrap()).bounded());
        for layer in lattices_up_to(8, 8).unwrap() {
            for l in layer.iter().filter(|l| is_distributive(l).holds()) {
                assert!(is_bounded(l).bounded());
            }
        }
    }

    #[test]
    fn orders_respect_edges() {
        let l = fixture("gadget_case3").unwrap();
        let Dependency::Acyclic(order) = is_bounded(&l).lower else { panic!("bounded") };
        let position = |x: usize| order.iter().position(|&y| y == x).unwrap();
        for (p, q) in join_dependency(&l) {
            assert!(position(q) < position(p));
        }
    }
}
