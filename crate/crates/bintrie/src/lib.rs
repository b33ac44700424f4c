//! Persistent finite maps keyed by binary positive numbers.
//!
//! Keys are positive integers read as bit strings; a map is a binary trie
//! that spends one branch per key bit. Three representations share one
//! interface:
//!
//! * [`OriginalTree`]: one node form with an optional value and two
//!   optional children. Simple, but many shapes denote the same map, so
//!   structural equality is weaker than extensional equality.
//! * [`Node01Tree`]: splits nodes into value-free and value-carrying forms,
//!   saving a word per empty slot. Still not canonical.
//! * [`CanonicalTree`]: seven node forms, one per nonempty combination of
//!   (left child, value, right child). Empty components are unrepresentable,
//!   every map has exactly one shape, and `==` decides extensional equality.
//!   Carrying a well-formedness proof alongside the loose representation
//!   achieves the same in a prover but degenerates to the loose form once
//!   proofs are erased; the seven-form type keeps canonicity as a runtime
//!   fact.
//!
//! The supporting cast: [`MapOracle`] is a deliberately naive reference
//! implementation, `laws` states the map algebra as runnable checks,
//! `script`/`differential` replay randomized operation sequences against
//! the oracle, [`Dict`] keys any of the maps by byte strings, and
//! [`DiffSet`] repeats the canonicity trick for sets of positives using
//! difference lists.

pub mod canonical;
pub mod count;
pub mod dict;
pub mod differential;
pub mod diffset;
pub mod laws;
pub mod map;
pub mod node01;
pub mod oracle;
pub mod original;
pub mod positive;
pub mod script;

pub use canonical::{CanonicalNE, CanonicalTree, View};
pub use count::{Count, Counter, NoCount};
pub use dict::Dict;
pub use diffset::DiffSet;
pub use map::FiniteMap;
pub use node01::Node01Tree;
pub use oracle::MapOracle;
pub use original::OriginalTree;
pub use positive::{MalformedEncodingError, NotPositiveError, Positive};
