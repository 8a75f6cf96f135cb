//! Finite order theory for n-filters: posets and their algebraic signatures,
//! n-filter predicates and generation, structures with strict homomorphisms,
//! a Horn-rule engine over structures, and filter-class membership.

pub mod bitset;
pub mod classlab;
pub mod horn;
pub mod error;
pub mod limits;
pub mod nfilter;
pub mod poset;
pub mod structures;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use poset::{Elem, FinitePoset};
