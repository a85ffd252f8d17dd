//! Exact computation with finite lattices.
//!
//! Lattices are immutable values over dense element indices with
//! precomputed join and meet tables. On top of that sit constructions
//! (chains, products, sums, free distributive lattices, doubling),
//! structural predicates, congruences and quotients, lattice terms and
//! identities, gadget classification, the decision procedure for finite
//! distributive sublattices of free lattices, and finite-window checkers for
//! spanning pairs in `2 x Z`.

pub mod congruence;
pub mod constructors;
pub mod document;
pub mod doubling;
pub mod element_set;
pub mod enumerate;
pub mod error;
pub mod fd;
pub mod fixtures;
pub mod gj;
pub mod iso;
pub mod lattice;
pub mod poset;
pub mod predicates;
pub mod spanning;
pub mod terms;

pub use element_set::ElementSet;
pub use error::{Error, Result};
pub use lattice::{validate, Lattice, Relation};
