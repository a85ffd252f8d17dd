//! Spanning pairs and finite-window checkers around them.
//!
//! A spanning pair `|p,q|` is a cover `p < q` with a strictly increasing
//! chain over `p` that has no upper bound and never climbs over `q`, and a
//! strictly decreasing chain under `q` with no lower bound that never sinks
//! under `p`. Only finite prefixes can be checked; unboundedness is reported
//! three-valued.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::constructors::{two_by_z_window, Coord, ImplicitTwoByZ, TwoByZWindow};
use crate::doubling::{day_double, DoublingSpec};
use crate::element_set::ElementSet;
use crate::error::{Error, Result};
use crate::iso::isomorphic;
use crate::lattice::Lattice;
use crate::predicates::reducible_antichain_bound_within;

/// Order-theoretic access to a lattice that may be infinite.
pub trait Presentation {
    type Element: Copy + PartialEq + fmt::Debug;

    fn contains(&self, x: Self::Element) -> bool;
    fn leq(&self, x: Self::Element, y: Self::Element) -> bool;
    fn is_cover(&self, x: Self::Element, y: Self::Element) -> bool;
    fn describe(&self, x: Self::Element) -> String;
    fn top(&self) -> Option<Self::Element>;
    fn bottom(&self) -> Option<Self::Element>;

    /// `m`-th element of the canonical increasing chain over `p`.
    fn canonical_ascending(&self, _p: Self::Element, _m: usize) -> Option<Self::Element> {
        None
    }

    /// `n`-th element of the canonical decreasing chain under `q`.
    fn canonical_descending(&self, _q: Self::Element, _n: usize) -> Option<Self::Element> {
        None
    }

    /// Whether canonical chains are unbounded by construction.
    fn canonical_unbounded(&self) -> bool {
        false
    }
}

impl Presentation for Lattice {
    type Element = usize;

    fn contains(&self, x: usize) -> bool {
        x < self.len()
    }
    fn leq(&self, x: usize, y: usize) -> bool {
        Lattice::leq(self, x, y)
    }
    fn is_cover(&self, x: usize, y: usize) -> bool {
        Lattice::is_cover(self, x, y)
    }
    fn describe(&self, x: usize) -> String {
        self.name(x).to_string()
    }
    fn top(&self) -> Option<usize> {
        (!self.is_empty()).then(|| Lattice::top(self))
    }
    fn bottom(&self) -> Option<usize> {
        (!self.is_empty()).then(|| Lattice::bottom(self))
    }
}

fn shift(c: Coord, by: i64) -> Option<Coord> {
    c.1.checked_add(by).map(|k| (c.0, k))
}

fn describe_coord(c: Coord) -> String {
    format!("({},{})", c.0, c.1)
}

impl Presentation for ImplicitTwoByZ {
    type Element = Coord;

    fn contains(&self, x: Coord) -> bool {
        self.is_valid(x)
    }
    fn leq(&self, x: Coord, y: Coord) -> bool {
        ImplicitTwoByZ::leq(self, x, y)
    }
    fn is_cover(&self, x: Coord, y: Coord) -> bool {
        ImplicitTwoByZ::is_cover(self, x, y)
    }
    fn describe(&self, x: Coord) -> String {
        describe_coord(x)
    }
    fn top(&self) -> Option<Coord> {
        None
    }
    fn bottom(&self) -> Option<Coord> {
        None
    }
    fn canonical_ascending(&self, p: Coord, m: usize) -> Option<Coord> {
        shift(p, i64::try_from(m).ok()?)
    }
    fn canonical_descending(&self, q: Coord, n: usize) -> Option<Coord> {
        shift(q, -i64::try_from(n).ok()?)
    }
    /// The level coordinate of `(i, k + m)` outgrows every element.
    fn canonical_unbounded(&self) -> bool {
        true
    }
}

impl Presentation for TwoByZWindow {
    type Element = Coord;

    fn contains(&self, x: Coord) -> bool {
        self.index(x).is_some()
    }
    fn leq(&self, x: Coord, y: Coord) -> bool {
        ImplicitTwoByZ.leq(x, y)
    }
    fn is_cover(&self, x: Coord, y: Coord) -> bool {
        match (self.index(x), self.index(y)) {
            (Some(a), Some(b)) => self.lattice.is_cover(a, b),
            _ => false,
        }
    }
    fn describe(&self, x: Coord) -> String {
        describe_coord(x)
    }
    fn top(&self) -> Option<Coord> {
        Some((1, self.hi))
    }
    fn bottom(&self) -> Option<Coord> {
        Some((0, self.lo))
    }
    fn canonical_ascending(&self, p: Coord, m: usize) -> Option<Coord> {
        ImplicitTwoByZ.canonical_ascending(p, m)
    }
    fn canonical_descending(&self, q: Coord, n: usize) -> Option<Coord> {
        ImplicitTwoByZ.canonical_descending(q, n)
    }
}

/// The order dual of a presentation.
#[derive(Debug, Clone, Copy)]
pub struct DualView<P>(pub P);

impl<P: Presentation> Presentation for DualView<P> {
    type Element = P::Element;

    fn contains(&self, x: P::Element) -> bool {
        self.0.contains(x)
    }
    fn leq(&self, x: P::Element, y: P::Element) -> bool {
        self.0.leq(y, x)
    }
    fn is_cover(&self, x: P::Element, y: P::Element) -> bool {
        self.0.is_cover(y, x)
    }
    fn describe(&self, x: P::Element) -> String {
        self.0.describe(x)
    }
    fn top(&self) -> Option<P::Element> {
        self.0.bottom()
    }
    fn bottom(&self) -> Option<P::Element> {
        self.0.top()
    }
    fn canonical_ascending(&self, p: P::Element, m: usize) -> Option<P::Element> {
        self.0.canonical_descending(p, m)
    }
    fn canonical_descending(&self, q: P::Element, n: usize) -> Option<P::Element> {
        self.0.canonical_ascending(q, n)
    }
    fn canonical_unbounded(&self) -> bool {
        self.0.canonical_unbounded()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EscortChain<E> {
    /// `[p_1, p_2, ...]`; index 0 holds the first element after the pair.
    Explicit(Vec<E>),
    /// `p_m = (i, k + m)` over `p = (i, k)`, and `q_n = (j, l - n)` under
    /// `q = (j, l)`.
    #[serde(rename = "two_by_z_canonical")]
    Canonical,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanningPairWitness<E> {
    pub p: E,
    pub q: E,
    pub ascending: EscortChain<E>,
    pub descending: EscortChain<E>,
}

impl SpanningPairWitness<Coord> {
    /// `|(0,0),(1,0)|` with `p_m = (0,m)` and `q_n = (1,-n)`.
    pub fn two_by_z_canonical() -> Self {
        SpanningPairWitness { p: (0, 0), q: (1, 0), ascending: EscortChain::Canonical, descending: EscortChain::Canonical }
    }
}

impl<E: Clone> SpanningPairWitness<E> {
    /// The same pair read in the order dual.
    pub fn dual(&self) -> Self {
        SpanningPairWitness {
            p: self.q.clone(),
            q: self.p.clone(),
            ascending: self.descending.clone(),
            descending: self.ascending.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Unboundedness {
    /// Certified by the presentation's structure.
    Verified,
    /// A bound exists.
    Refuted { bound: String },
    /// Neither certified nor refuted.
    Unverifiable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "clause", content = "index")]
pub enum SpanningViolation {
    NotACover,
    AscendingNotIncreasing(usize),
    DescendingNotDecreasing(usize),
    /// `q <= p_m`.
    QBelowAscending(usize),
    /// `q_n <= p`.
    PAboveDescending(usize),
}

impl SpanningViolation {
    pub fn dual(self) -> Self {
        use SpanningViolation::*;
        match self {
            NotACover => NotACover,
            AscendingNotIncreasing(m) => DescendingNotDecreasing(m),
            DescendingNotDecreasing(n) => AscendingNotIncreasing(n),
            QBelowAscending(m) => PAboveDescending(m),
            PAboveDescending(n) => QBelowAscending(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanningReport {
    pub prefix: usize,
    pub violations: Vec<SpanningViolation>,
    /// No upper bound for the increasing chain.
    pub unbounded_above: Unboundedness,
    /// No lower bound for the decreasing chain.
    pub unbounded_below: Unboundedness,
}

impl SpanningReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
            && self.unbounded_above == Unboundedness::Verified
            && self.unbounded_below == Unboundedness::Verified
    }
}

fn resolve<P: Presentation>(
    l: &P,
    start: P::Element,
    chain: &EscortChain<P::Element>,
    prefix: usize,
    canonical: impl Fn(P::Element, usize) -> Option<P::Element>,
) -> Result<Vec<P::Element>> {
    let mut out = Vec::with_capacity(prefix);
    for i in 1..=prefix {
        let x = match chain {
            EscortChain::Explicit(xs) => *xs.get(i - 1).ok_or_else(|| {
                Error::InvalidArgument(format!("escort chain lists {} elements, prefix {prefix} requested", xs.len()))
            })?,
            EscortChain::Canonical => canonical(start, i)
                .ok_or_else(|| Error::InvalidArgument("presentation has no canonical escort chains".into()))?,
        };
        if !l.contains(x) {
            return Err(Error::ElementOutOfWindow(format!("{x:?}")));
        }
        out.push(x);
    }
    Ok(out)
}

fn unboundedness<P: Presentation>(l: &P, chain: &EscortChain<P::Element>, bound: Option<P::Element>) -> Unboundedness {
    match bound {
        Some(b) => Unboundedness::Refuted { bound: l.describe(b) },
        None if matches!(chain, EscortChain::Canonical) && l.canonical_unbounded() => Unboundedness::Verified,
        None => Unboundedness::Unverifiable,
    }
}

/// Checks the first `prefix` elements of both escort chains.
pub fn verify_spanning_pair<P: Presentation>(
    l: &P,
    w: &SpanningPairWitness<P::Element>,
    prefix: usize,
) -> Result<SpanningReport> {
    for x in [w.p, w.q] {
        if !l.contains(x) {
            return Err(Error::ElementOutOfWindow(format!("{x:?}")));
        }
    }
    let up = resolve(l, w.p, &w.ascending, prefix, |p, m| l.canonical_ascending(p, m))?;
    let down = resolve(l, w.q, &w.descending, prefix, |q, n| l.canonical_descending(q, n))?;

    let mut violations = Vec::new();
    if !l.is_cover(w.p, w.q) {
        violations.push(SpanningViolation::NotACover);
    }
    let mut previous = w.p;
    for (m, &x) in up.iter().enumerate() {
        if !l.leq(previous, x) || previous == x {
            violations.push(SpanningViolation::AscendingNotIncreasing(m + 1));
        }
        if l.leq(w.q, x) {
            violations.push(SpanningViolation::QBelowAscending(m + 1));
        }
        previous = x;
    }
    let mut previous = w.q;
    for (n, &x) in down.iter().enumerate() {
        if !l.leq(x, previous) || previous == x {
            violations.push(SpanningViolation::DescendingNotDecreasing(n + 1));
        }
        if l.leq(x, w.p) {
            violations.push(SpanningViolation::PAboveDescending(n + 1));
        }
        previous = x;
    }
    Ok(SpanningReport {
        prefix,
        violations,
        unbounded_above: unboundedness(l, &w.ascending, l.top()),
        unbounded_below: unboundedness(l, &w.descending, l.bottom()),
    })
}

/// A finite lattice with the elements whose covers are all known.
#[derive(Debug, Clone)]
pub struct Window {
    pub lattice: Lattice,
    pub interior: ElementSet,
}

impl Window {
    /// A finite lattice taken as its own window.
    pub fn whole(lattice: Lattice) -> Window {
        let interior = ElementSet::full(lattice.len());
        Window { lattice, interior }
    }
}

impl From<&TwoByZWindow> for Window {
    fn from(w: &TwoByZWindow) -> Window {
        Window { lattice: w.lattice.clone(), interior: w.interior() }
    }
}

/// Whether every antichain of reducible interior elements has at most
/// `n_claim` elements.
pub fn check_theorem6_hypothesis(window: &Window, n_claim: usize) -> bool {
    reducible_antichain_bound_within(&window.lattice, &window.interior) <= n_claim
}

/// A map from the window `{0,1} x [lo, hi]` of 2 x Z into a finite lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingWindow {
    pub lo: i64,
    pub hi: i64,
    /// `map[k - lo] = [f(0,k), f(1,k)]`.
    pub map: Vec<[usize; 2]>,
}

impl EmbeddingWindow {
    pub fn new(lo: i64, hi: i64, map: Vec<[usize; 2]>) -> Result<EmbeddingWindow> {
        if lo > hi || map.len() as i64 != hi - lo + 1 {
            return Err(Error::InvalidArgument(format!("map has {} levels for window [{lo}, {hi}]", map.len())));
        }
        Ok(EmbeddingWindow { lo, hi, map })
    }

    /// The identity on a materialized window.
    pub fn identity(w: &TwoByZWindow) -> EmbeddingWindow {
        let map = (w.lo..=w.hi).map(|k| [w.index((0, k)).unwrap(), w.index((1, k)).unwrap()]).collect();
        EmbeddingWindow { lo: w.lo, hi: w.hi, map }
    }

    pub fn apply(&self, c: Coord) -> usize {
        self.map[(c.1 - self.lo) as usize][c.0 as usize]
    }

    pub fn coords(&self) -> Vec<Coord> {
        (self.lo..=self.hi).flat_map(|k| [(0u8, k), (1u8, k)]).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum EmbeddingFailure {
    OutOfRange { coord: Coord },
    NotInjective { a: Coord, b: Coord },
    JoinNotPreserved { a: Coord, b: Coord },
    MeetNotPreserved { a: Coord, b: Coord },
}

/// An element outside the image strictly between `f(0,m)` and `f(1,n)`
/// that is neither below `f(0,n)` nor above `f(1,m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BetweenWitness {
    pub r: usize,
    pub m: i64,
    pub n: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem6Report {
    pub embedding: Option<EmbeddingFailure>,
    /// A level `k` with `f(0,k)` not covered by `f(1,k)`.
    pub cover: Option<i64>,
    pub between: Option<BetweenWitness>,
}

impl Theorem6Report {
    pub fn passes(&self) -> bool {
        self.embedding.is_none() && self.cover.is_none() && self.between.is_none()
    }
}

fn embedding_failure(l: &Lattice, f: &EmbeddingWindow) -> Option<EmbeddingFailure> {
    let coords = f.coords();
    for &c in &coords {
        if f.apply(c) >= l.len() {
            return Some(EmbeddingFailure::OutOfRange { coord: c });
        }
    }
    let z = ImplicitTwoByZ;
    for (i, &a) in coords.iter().enumerate() {
        for &b in &coords[i + 1..] {
            let (x, y) = (f.apply(a), f.apply(b));
            if x == y {
                return Some(EmbeddingFailure::NotInjective { a, b });
            }
            if l.join(x, y) != f.apply(z.join(a, b)) {
                return Some(EmbeddingFailure::JoinNotPreserved { a, b });
            }
            if l.meet(x, y) != f.apply(z.meet(a, b)) {
                return Some(EmbeddingFailure::MeetNotPreserved { a, b });
            }
        }
    }
    None
}

/// Checks that `f` is a lattice embedding of the window, that `f(0,k)` is
/// covered by `f(1,k)` at interior levels, and that elements off the image
/// between `f(0,m)` and `f(1,n)` sit below `f(0,n)` or above `f(1,m)`.
pub fn check_theorem6_conclusion(l: &Lattice, f: &EmbeddingWindow) -> Theorem6Report {
    let embedding = embedding_failure(l, f);
    if embedding.is_some() {
        return Theorem6Report { embedding, cover: None, between: None };
    }
    let cover = (f.lo + 1..f.hi).find(|&k| !l.is_cover(f.apply((0, k)), f.apply((1, k))));
    let image = ElementSet::from_indices(l.len(), f.coords().into_iter().map(|c| f.apply(c)));
    let mut between = None;
    'search: for r in l.elements().filter(|&r| !image.contains(r)) {
        for m in f.lo..=f.hi {
            for n in m..=f.hi {
                let (low, high) = (f.apply((0, m)), f.apply((1, n)));
                if l.lt(low, r) && l.lt(r, high) && !l.leq(r, f.apply((0, n))) && !l.leq(f.apply((1, m)), r) {
                    between = Some(BetweenWitness { r, m, n });
                    break 'search;
                }
            }
        }
    }
    Theorem6Report { embedding: None, cover, between }
}

/// Where the extra point of [`two_by_z_with_pendant`] sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pendant {
    /// Between `(0,0)` and `(0,1)`.
    OnLeftColumn,
    /// Above `(0,0)`, below `(1,1)`, incomparable to `(0,1)` and `(1,0)`.
    Incomparable,
}

/// A window of 2 x Z with one element `r` added, and the inclusion of the
/// window. Needs `lo <= 0` and `hi >= 1`.
pub fn two_by_z_with_pendant(lo: i64, hi: i64, pendant: Pendant) -> Result<(Lattice, EmbeddingWindow, usize)> {
    if lo > 0 || hi < 1 {
        return Err(Error::InvalidArgument(format!("window [{lo}, {hi}] must contain levels 0 and 1")));
    }
    let w = two_by_z_window(lo, hi)?;
    let r = w.lattice.len();
    let z = ImplicitTwoByZ;
    let (below, above) = match pendant {
        Pendant::OnLeftColumn => ((0, 0), (0, 1)),
        Pendant::Incomparable => ((0, 0), (1, 1)),
    };
    let coords = w.coords.clone();
    let leq = |x: usize, y: usize| match (x == r, y == r) {
        (true, true) => true,
        (true, false) => z.leq(above, coords[y]),
        (false, true) => z.leq(coords[x], below),
        (false, false) => z.leq(coords[x], coords[y]),
    };
    let mut names = w.lattice.names().to_vec();
    names.push("r".into());
    let l = Lattice::from_leq(names, leq)?;
    Ok((l, EmbeddingWindow::identity(&w), r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem5Clause {
    Convexity,
    Isomorphism,
    CopyPair,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem5Report {
    /// The first premise clause that fails.
    pub failed: Option<Theorem5Clause>,
    /// The `c` whose two copies are `f(p)` and `f(q)`.
    pub copy_of: Option<usize>,
    /// Whether `L` is `2 x k` for a chain `k`; only computed when the
    /// premise holds.
    pub two_by_chain: Option<bool>,
}

/// Checks that `C` is convex in `L'`, that `iso` is an isomorphism from `L`
/// onto `L'[C]`, and that `iso(p), iso(q)` are the two copies of one `c`.
pub fn check_theorem5_premise(
    l: &Lattice,
    l_prime: &Lattice,
    c: &ElementSet,
    iso: &[usize],
    p: usize,
    q: usize,
) -> Result<Theorem5Report> {
    let fail = |clause| Ok(Theorem5Report { failed: Some(clause), copy_of: None, two_by_chain: None });
    let spec = match DoublingSpec::region(l_prime, c.clone()) {
        Ok(spec) => spec,
        Err(Error::NotConvex { .. }) => return fail(Theorem5Clause::Convexity),
        Err(e) => return Err(e),
    };
    let doubled = day_double(&spec)?;
    if !is_isomorphism(l, &doubled.lattice, iso) {
        return fail(Theorem5Clause::Isomorphism);
    }
    if p >= l.len() || q >= l.len() {
        return fail(Theorem5Clause::CopyPair);
    }
    let copy_of = c.iter().find(|&x| doubled.lower[x] == iso[p] && doubled.upper[x] == iso[q]);
    let Some(copy_of) = copy_of else {
        return fail(Theorem5Clause::CopyPair);
    };
    let two_by_chain = l.len().is_multiple_of(2) && {
        let k = l.len() / 2;
        let shape = crate::constructors::product(&crate::constructors::chain(2)?, &crate::constructors::chain(k)?)?;
        isomorphic(l, &shape)
    };
    Ok(Theorem5Report { failed: None, copy_of: Some(copy_of), two_by_chain: Some(two_by_chain) })
}

fn is_isomorphism(a: &Lattice, b: &Lattice, f: &[usize]) -> bool {
    if a.len() != b.len() || f.len() != a.len() || f.iter().any(|&x| x >= b.len()) {
        return false;
    }
    let mut seen = vec![false; b.len()];
    for &x in f {
        if std::mem::replace(&mut seen[x], true) {
            return false;
        }
    }
    a.elements().all(|x| a.elements().all(|y| a.leq(x, y) == b.leq(f[x], f[y])))
}
