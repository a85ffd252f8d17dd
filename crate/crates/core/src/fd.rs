//! Free distributive lattices in antichain normal form.
//!
//! An element of FD(n) is a nonempty antichain of nonempty subsets of the
//! generators, read as the join of the meets of its members. `A <= B` iff
//! every member of `A` contains some member of `B`.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// Largest generator count accepted by [`free_distributive`].
pub const MAX_GENERATORS: usize = 4;

const GENERATOR_NAMES: [&str; MAX_GENERATORS] = ["a", "b", "c", "d"];

/// A normal-form element: generator subsets as bitmasks, sorted, pairwise
/// incomparable under inclusion.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AntichainElement(Vec<u8>);

impl AntichainElement {
    /// Reduces `members` to its inclusion-minimal masks.
    pub fn new(members: impl IntoIterator<Item = u8>) -> Result<Self> {
        let mut masks: Vec<u8> = members.into_iter().collect();
        if masks.is_empty() || masks.contains(&0) {
            return Err(Error::InvalidArgument("antichain members must be nonempty and there must be at least one".into()));
        }
        masks.sort_unstable();
        masks.dedup();
        let minimal = masks
            .iter()
            .copied()
            .filter(|&m| !masks.iter().any(|&o| o != m && o & m == o))
            .collect();
        Ok(AntichainElement(minimal))
    }

    pub fn generator(i: usize) -> Self {
        AntichainElement(vec![1 << i])
    }

    pub fn members(&self) -> &[u8] {
        &self.0
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.0.iter().all(|&a| other.0.iter().any(|&b| b & a == b))
    }

    pub fn join(&self, other: &Self) -> Self {
        AntichainElement::new(self.0.iter().chain(&other.0).copied()).expect("nonempty")
    }

    pub fn meet(&self, other: &Self) -> Self {
        AntichainElement::new(self.0.iter().flat_map(|&a| other.0.iter().map(move |&b| a | b))).expect("nonempty")
    }
}

impl fmt::Debug for AntichainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Join-of-meets notation: `a^b v c`.
impl fmt::Display for AntichainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&m| {
                (0..MAX_GENERATORS)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| GENERATOR_NAMES[i])
                    .collect::<Vec<_>>()
                    .join("^")
            })
            .collect();
        f.write_str(&parts.join(" v "))
    }
}

/// FD(n) together with the normal form of each element.
#[derive(Debug, Clone)]
pub struct FreeDistributive {
    pub lattice: Lattice,
    pub elements: Vec<AntichainElement>,
    /// Lattice index of each generator, in generator order.
    pub generators: Vec<usize>,
}

impl FreeDistributive {
    pub fn index_of(&self, e: &AntichainElement) -> Option<usize> {
        self.elements.binary_search(e).ok()
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }
}

/// The free distributive lattice on `n` generators named `a`, `b`, `c`, `d`.
pub fn free_distributive(n: usize) -> Result<FreeDistributive> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    if n > MAX_GENERATORS {
        return Err(Error::CapExceeded { requested: n, cap: MAX_GENERATORS });
    }
    let subsets: Vec<u8> = (1u8..(1 << n)).collect();
    let mut elements = Vec::new();
    // Every family of nonempty subsets, kept when it is an antichain.
    for family in 1u32..(1 << subsets.len()) {
        let members: Vec<u8> = (0..subsets.len()).filter(|i| family >> i & 1 == 1).map(|i| subsets[i]).collect();
        let antichain = members
            .iter()
            .all(|&a| members.iter().all(|&b| a == b || (a & b != a && a & b != b)));
        if antichain {
            elements.push(AntichainElement(members));
        }
    }
    elements.sort();
    let names = elements.iter().map(ToString::to_string).collect();
    let lattice = Lattice::from_leq(names, |x, y| elements[x].leq(&elements[y]))?;
    let generators = (0..n)
        .map(|i| elements.binary_search(&AntichainElement::generator(i)).expect("generator present"))
        .collect();
    Ok(FreeDistributive { lattice, elements, generators })
}
