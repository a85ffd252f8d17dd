//! Day's doubling construction, the reverse search for interval-doubling
//! sequences, boundedness by join-dependency, and the Whitman guard for
//! doubled regions.

mod bounded;

pub use bounded::{is_bounded, join_dependency, Boundedness, Dependency};

use std::collections::HashMap;

use serde::Serialize;

use crate::congruence::{principal_congruence, quotient};
use crate::element_set::ElementSet;
use crate::error::{Error, Result};
use crate::iso::{find_isomorphism, fingerprint, Fingerprint};
use crate::lattice::Lattice;

/// Default element bound for [`undouble_search`].
pub const DEFAULT_UNDOUBLE_BOUND: usize = 16;

/// The least `(low, middle, high)` with `low, high` in `s`, `low <= middle
/// <= high` and `middle` outside `s`.
pub fn convexity_violation(l: &Lattice, s: &ElementSet) -> Option<(usize, usize, usize)> {
    for low in s.iter() {
        for high in s.iter() {
            if !l.leq(low, high) {
                continue;
            }
            if let Some(middle) = l.interval(low, high).difference(s).first() {
                return Some((low, middle, high));
            }
        }
    }
    None
}

pub fn is_convex(l: &Lattice, s: &ElementSet) -> bool {
    convexity_violation(l, s).is_none()
}

/// A convex region of `base` to be doubled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublingSpec {
    pub base: Lattice,
    pub region: ElementSet,
    /// Endpoints `(p, q)` when the region is the interval `[p, q]`.
    pub interval: Option<(usize, usize)>,
}

impl DoublingSpec {
    pub fn region(base: &Lattice, region: ElementSet) -> Result<DoublingSpec> {
        if region.universe() != base.len() {
            return Err(Error::CarrierMismatch { left: base.len(), right: region.universe() });
        }
        if region.is_empty() {
            return Err(Error::InvalidArgument("doubled region must be nonempty".into()));
        }
        if let Some((low, middle, high)) = convexity_violation(base, &region) {
            return Err(Error::NotConvex { low, middle, high });
        }
        let lo = base.meet_all(region.iter());
        let hi = base.join_all(region.iter());
        let interval = (base.interval(lo, hi) == region).then_some((lo, hi));
        Ok(DoublingSpec { base: base.clone(), region, interval })
    }

    pub fn interval(base: &Lattice, p: usize, q: usize) -> Result<DoublingSpec> {
        for x in [p, q] {
            if x >= base.len() {
                return Err(Error::IndexOutOfRange { index: x, size: base.len() });
            }
        }
        if !base.leq(p, q) {
            return Err(Error::InvalidArgument(format!("interval endpoints {p} and {q} are not ordered")));
        }
        Ok(DoublingSpec { base: base.clone(), region: base.interval(p, q), interval: Some((p, q)) })
    }
}

/// `L[C]` together with where each base element went.
#[derive(Debug, Clone)]
pub struct Doubled {
    pub lattice: Lattice,
    /// `lower[u]` is `(u, 0)` for `u` in the region and `u` itself otherwise.
    pub lower: Vec<usize>,
    /// `upper[u]` is `(u, 1)` for `u` in the region and `u` itself otherwise.
    pub upper: Vec<usize>,
    /// The base element under each element of the double.
    pub projection: Vec<usize>,
}

/// Builds `L[C]` on `(L \ C) u (C x 2)` with the four defining clauses:
/// order from `L` outside `C`, product order on `C x 2`, and `L`-order on
/// first coordinates between the two parts.
pub fn day_double(spec: &DoublingSpec) -> Result<Doubled> {
    let base = &spec.base;
    if let Some((low, middle, high)) = convexity_violation(base, &spec.region) {
        return Err(Error::NotConvex { low, middle, high });
    }
    let mut lower = vec![0; base.len()];
    let mut upper = vec![0; base.len()];
    let mut projection = Vec::with_capacity(base.len() + spec.region.len());
    let mut copy = Vec::with_capacity(base.len() + spec.region.len());
    let mut names = Vec::with_capacity(base.len() + spec.region.len());
    for u in base.elements() {
        lower[u] = projection.len();
        if spec.region.contains(u) {
            for i in 0..2u8 {
                projection.push(u);
                copy.push(Some(i));
                names.push(format!("({},{i})", base.name(u)));
            }
        } else {
            projection.push(u);
            copy.push(None);
            names.push(base.name(u).to_string());
        }
        upper[u] = projection.len() - 1;
    }
    let mut unique = names.clone();
    unique.sort_unstable();
    unique.dedup();
    if unique.len() != names.len() {
        names = Lattice::numbered(names.len());
    }
    let leq = |x: usize, y: usize| {
        let (u, v) = (projection[x], projection[y]);
        match (copy[x], copy[y]) {
            (Some(i), Some(j)) => base.leq(u, v) && i <= j,
            _ => base.leq(u, v),
        }
    };
    let lattice = Lattice::from_leq(names, leq)?;
    Ok(Doubled { lattice, lower, upper, projection })
}

/// One interval doubling: `before[[p, q]]`.
#[derive(Debug, Clone)]
pub struct DoublingStep {
    pub before: Lattice,
    pub interval: (usize, usize),
}

impl DoublingStep {
    pub fn apply(&self) -> Result<Lattice> {
        let (p, q) = self.interval;
        Ok(day_double(&DoublingSpec::interval(&self.before, p, q)?)?.lattice)
    }
}

/// Interval-doubling sequence from the one-element lattice to something
/// isomorphic to `l`, with at most [`DEFAULT_UNDOUBLE_BOUND`] elements.
pub fn undouble_search(l: &Lattice, budget: usize) -> Result<Option<Vec<DoublingStep>>> {
    undouble_search_bounded(l, budget, DEFAULT_UNDOUBLE_BOUND)
}

/// Works backwards: a cover `a < b` whose principal congruence has classes
/// of size at most two, collapsing to an interval `C` of the quotient `K`
/// with `K[C] = l`, reduces the problem to `K`. Larger regions are tried
/// first; lattices already known to fail are remembered up to isomorphism.
/// `budget` bounds the number of lattices expanded.
pub fn undouble_search_bounded(l: &Lattice, budget: usize, max_size: usize) -> Result<Option<Vec<DoublingStep>>> {
    if l.len() > max_size {
        return Err(Error::SizeGuard { size: l.len(), bound: max_size });
    }
    let mut search = Search { budget, expanded: 0, dead: HashMap::new() };
    let mut steps = Vec::new();
    if search.run(l, &mut steps)? {
        steps.reverse();
        Ok(Some(steps))
    } else {
        Ok(None)
    }
}

struct Search {
    budget: usize,
    expanded: usize,
    dead: HashMap<Fingerprint, Vec<Lattice>>,
}

impl Search {
    fn run(&mut self, l: &Lattice, steps: &mut Vec<DoublingStep>) -> Result<bool> {
        if l.len() == 1 {
            return Ok(true);
        }
        let print = fingerprint(l);
        if self.dead.get(&print).is_some_and(|ls| ls.iter().any(|d| find_isomorphism(d, l).is_some())) {
            return Ok(false);
        }
        self.expanded += 1;
        if self.expanded > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        for (k, interval) in undoublings(l)? {
            steps.push(DoublingStep { before: k.clone(), interval });
            if self.run(&k, steps)? {
                return Ok(true);
            }
            steps.pop();
        }
        self.dead.entry(print).or_default().push(l.clone());
        Ok(false)
    }
}

/// Every way to write `l` as `K[[p, q]]`, largest interval first, with
/// duplicate congruences skipped.
fn undoublings(l: &Lattice) -> Result<Vec<(Lattice, (usize, usize))>> {
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for (a, b) in l.covers() {
        let theta = principal_congruence(l, a, b)?;
        if seen.contains(&theta) {
            continue;
        }
        seen.push(theta.clone());
        let classes = theta.classes();
        if classes.iter().any(|c| c.len() > 2) {
            continue;
        }
        let q = quotient(l, &theta)?;
        let k = q.lattice;
        let region = ElementSet::from_indices(
            k.len(),
            classes.iter().enumerate().filter(|(_, c)| c.len() == 2).map(|(i, _)| i),
        );
        let (p, top) = (k.meet_all(region.iter()), k.join_all(region.iter()));
        if k.interval(p, top) != region {
            continue;
        }
        let doubled = day_double(&DoublingSpec::interval(&k, p, top)?)?;
        if find_isomorphism(&doubled.lattice, l).is_some() {
            out.push((k, (p, top), region.len()));
        }
    }
    out.sort_by_key(|&(_, _, size)| std::cmp::Reverse(size));
    Ok(out.into_iter().map(|(k, i, _)| (k, i)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GuardCheck {
    pub holds: bool,
    /// Least element of the region that is neither maximal nor minimal in
    /// it and is join- or meet-reducible in the lattice.
    pub witness: Option<usize>,
}

/// Necessary condition for `L[C]` to satisfy Whitman's condition: elements
/// of `C` that are neither maximal nor minimal in `C` are doubly
/// irreducible in `L`.
pub fn whitman_doubling_guard(l: &Lattice, c: &ElementSet) -> Result<GuardCheck> {
    if let Some((low, middle, high)) = convexity_violation(l, c) {
        return Err(Error::NotConvex { low, middle, high });
    }
    let witness = c.iter().find(|&x| {
        let maximal = c.iter().all(|y| !l.lt(x, y));
        let minimal = c.iter().all(|y| !l.lt(y, x));
        !maximal && !minimal && (l.is_join_reducible(x) || l.is_meet_reducible(x))
    });
    Ok(GuardCheck { holds: witness.is_none(), witness })
}
