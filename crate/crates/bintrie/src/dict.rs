//! Byte-string dictionaries over any trie backing.
//!
//! A [`Dict`] is nothing but a trie whose keys are produced by
//! [`Positive::encode_bytes`]. The encoding is injective, so canonicity
//! lifts: with a canonical backing, two dicts holding the same bindings are
//! structurally equal. Conversion stays unfused by design; fusing it into
//! the trie descent is a known optimization, not part of the behavior
//! specified here.
//!
//! Iteration order is encoded-key order, not lexicographic byte order: the
//! encoding lays bytes out least significant first, so "b" sorts after "a"
//! but "ab" sorts after both (longer strings encode to longer numbers).

use crate::count::Count;
use crate::map::FiniteMap;
use crate::positive::Positive;

#[derive(Debug, Clone, PartialEq)]
pub struct Dict<M> {
    backing: M,
}

impl<M: FiniteMap> Dict<M> {
    pub fn empty() -> Self {
        Dict { backing: M::empty() }
    }

    pub fn backing(&self) -> &M {
        &self.backing
    }

    pub fn get(&self, key: &[u8]) -> Option<&M::Value> {
        self.backing.get(&Positive::encode_bytes(key))
    }

    pub fn set(&self, key: &[u8], value: M::Value) -> Self {
        Dict { backing: self.backing.set(&Positive::encode_bytes(key), value) }
    }

    pub fn remove(&self, key: &[u8]) -> Self {
        Dict { backing: self.backing.remove(&Positive::encode_bytes(key)) }
    }

    /// Bindings in encoded-key order. Every key in the backing came from
    /// `encode_bytes`, so decoding cannot fail.
    pub fn elements(&self) -> Vec<(Vec<u8>, M::Value)> {
        self.backing
            .elements()
            .into_iter()
            .map(|(k, v)| {
                let bytes = k
                    .decode_bytes()
                    .expect("dictionary keys are byte encodings");
                (bytes, v)
            })
            .collect()
    }

    pub fn structural_eq(&self, other: &Self) -> bool {
        self.backing.structural_eq(&other.backing)
    }
}

/// Counted insertion for the instrumented benchmarks; only meaningful for
/// backings that expose a counted set.
impl<V: Clone + PartialEq> Dict<crate::canonical::CanonicalTree<V>> {
    pub fn set_counted<C: Count>(&self, key: &[u8], value: V, counter: &C) -> Self {
        Dict {
            backing: self
                .backing
                .set_counted(&Positive::encode_bytes(key), value, counter),
        }
    }
}

impl<V: Clone + PartialEq> Dict<crate::original::OriginalTree<V>> {
    pub fn set_counted<C: Count>(&self, key: &[u8], value: V, counter: &C) -> Self {
        Dict {
            backing: self
                .backing
                .set_counted(&Positive::encode_bytes(key), value, counter),
        }
    }
}

impl<V: Clone + PartialEq> Dict<crate::node01::Node01Tree<V>> {
    pub fn set_counted<C: Count>(&self, key: &[u8], value: V, counter: &C) -> Self {
        Dict {
            backing: self
                .backing
                .set_counted(&Positive::encode_bytes(key), value, counter),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::CanonicalTree;
    use crate::original::OriginalTree;

    #[test]
    fn lookup_follows_the_encoding() {
        let d = Dict::<CanonicalTree<u64>>::empty();
        assert_eq!(d.get(b"cat"), None);
        let d = d.set(b"cat", 1);
        assert_eq!(d.get(b"cat"), Some(&1));
        assert_eq!(d.get(b"cats"), None);
        // Raw bytes are fine; nothing restricts keys to ASCII.
        let d = d.set(&[0u8, 255], 2);
        assert_eq!(d.get(&[0u8, 255]), Some(&2));
    }

    #[test]
    fn elements_decode_and_follow_encoded_order() {
        let d = Dict::<OriginalTree<u64>>::empty()
            .set(b"b", 2)
            .set(b"a", 1)
            .set(b"ab", 3);
        let got: Vec<(Vec<u8>, u64)> = d.elements();
        // One byte encodes below two bytes regardless of content.
        assert_eq!(
            got,
            vec![
                (b"a".to_vec(), 1),
                (b"b".to_vec(), 2),
                (b"ab".to_vec(), 3)
            ]
        );
    }

    #[test]
    fn canonical_backing_is_insertion_order_independent() {
        let a = Dict::<CanonicalTree<u64>>::empty()
            .set(b"wren", 1)
            .set(b"jay", 2)
            .set(b"owl", 3);
        let b = Dict::<CanonicalTree<u64>>::empty()
            .set(b"owl", 3)
            .set(b"wren", 1)
            .set(b"jay", 2);
        assert!(a.structural_eq(&b));
    }

    #[test]
    fn the_empty_string_is_a_key() {
        let d = Dict::<CanonicalTree<u64>>::empty().set(b"", 7);
        assert_eq!(d.get(b""), Some(&7));
        assert_eq!(d.elements(), vec![(Vec::new(), 7)]);
    }
}
