//! Finest decomposition of a lattice as a linear sum of sublattices.
//!
//! `L = A (+) B` exactly when some cover `x < y` has `L = down(x) u up(y)`.
//! Such cuts are prefixes of every linear extension, so one pass over a
//! linear extension finds them all.

use serde::Serialize;

use crate::element_set::ElementSet;
use crate::lattice::Lattice;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearDecomposition {
    /// Blocks bottom-up; each is an interval of the lattice.
    pub blocks: Vec<ElementSet>,
}

impl LinearDecomposition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_indecomposable(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Each block as a standalone lattice.
    pub fn block_lattices(&self, l: &Lattice) -> Vec<Lattice> {
        self.blocks.iter().map(|b| l.induced(b).0).collect()
    }
}

pub fn linear_decomposition(l: &Lattice) -> LinearDecomposition {
    let n = l.len();
    let order = l.linear_extension();
    let mut blocks = Vec::new();
    let mut start = 0;
    for cut in 1..n {
        let high = l.join_all(order[..cut].iter().copied());
        let low = l.meet_all(order[cut..].iter().copied());
        if l.down_set(high).len() == cut && l.up_set(low).len() == n - cut && l.lt(high, low) {
            blocks.push(ElementSet::from_indices(n, order[start..cut].iter().copied()));
            start = cut;
        }
    }
    blocks.push(ElementSet::from_indices(n, order[start..].iter().copied()));
    LinearDecomposition { blocks }
}
