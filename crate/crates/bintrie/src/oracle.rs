//! A deliberately naive reference map.
//!
//! [`MapOracle`] keeps its bindings in a sorted vector and answers every
//! operation by linear scan or full rebuild. Nothing here shares code with
//! the trie representations; the whole point is that a disagreement between
//! a trie and the oracle implicates the trie. Performance is irrelevant and
//! intentionally unaddressed.

use crate::map::FiniteMap;
use crate::positive::Positive;

#[derive(Debug, Clone, PartialEq)]
pub struct MapOracle<V> {
    // Sorted by key, no duplicates.
    bindings: Vec<(Positive, V)>,
}

impl<V> MapOracle<V> {
    pub fn new() -> Self {
        MapOracle { bindings: Vec::new() }
    }

    pub fn bindings(&self) -> &[(Positive, V)] {
        &self.bindings
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    fn position(&self, key: &Positive) -> Result<usize, usize> {
        // A binary search would also do; scanning keeps the oracle too
        // simple to be wrong in the same way as anything it checks.
        for (i, (k, _)) in self.bindings.iter().enumerate() {
            if k == key {
                return Ok(i);
            }
            if k > key {
                return Err(i);
            }
        }
        Err(self.bindings.len())
    }
}

impl<V> Default for MapOracle<V> {
    fn default() -> Self {
        MapOracle::new()
    }
}

impl<V: Clone + PartialEq> FiniteMap for MapOracle<V> {
    type Value = V;

    fn empty() -> Self {
        MapOracle::new()
    }

    fn get(&self, key: &Positive) -> Option<&V> {
        match self.position(key) {
            Ok(i) => Some(&self.bindings[i].1),
            Err(_) => None,
        }
    }

    fn set(&self, key: &Positive, value: V) -> Self {
        let mut next = self.clone();
        match next.position(key) {
            Ok(i) => next.bindings[i].1 = value,
            Err(i) => next.bindings.insert(i, (key.clone(), value)),
        }
        next
    }

    fn remove(&self, key: &Positive) -> Self {
        let mut next = self.clone();
        if let Ok(i) = next.position(key) {
            next.bindings.remove(i);
        }
        next
    }

    fn elements(&self) -> Vec<(Positive, V)> {
        self.bindings.clone()
    }

    fn map_filter<F: Fn(&V) -> Option<V>>(&self, f: F) -> Self {
        MapOracle {
            bindings: self
                .bindings
                .iter()
                .filter_map(|(k, v)| f(v).map(|v| (k.clone(), v)))
                .collect(),
        }
    }

    fn combine<F: Fn(Option<&V>, Option<&V>) -> Option<V>>(&self, other: &Self, f: F) -> Self {
        // Walk the union of both sorted key sequences.
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.bindings.len() || j < other.bindings.len() {
            let (key, a, b) = match (self.bindings.get(i), other.bindings.get(j)) {
                (Some((ka, va)), Some((kb, vb))) => {
                    if ka < kb {
                        i += 1;
                        (ka, Some(va), None)
                    } else if kb < ka {
                        j += 1;
                        (kb, None, Some(vb))
                    } else {
                        i += 1;
                        j += 1;
                        (ka, Some(va), Some(vb))
                    }
                }
                (Some((ka, va)), None) => {
                    i += 1;
                    (ka, Some(va), None)
                }
                (None, Some((kb, vb))) => {
                    j += 1;
                    (kb, None, Some(vb))
                }
                (None, None) => unreachable!(),
            };
            if let Some(v) = f(a, b) {
                out.push((key.clone(), v));
            }
        }
        MapOracle { bindings: out }
    }

    fn structural_eq(&self, other: &Self) -> bool {
        self == other
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(n: u64) -> Positive {
        Positive::try_from(n).unwrap()
    }

    #[test]
    fn bindings_stay_sorted_and_unique() {
        let m = MapOracle::new()
            .set(&pos(9), 9)
            .set(&pos(2), 2)
            .set(&pos(31), 31)
            .set(&pos(2), 20);
        let keys: Vec<u64> = m.bindings().iter().map(|(k, _)| k.to_u64().unwrap()).collect();
        assert_eq!(keys, vec![2, 9, 31]);
        assert_eq!(m.get(&pos(2)), Some(&20));
    }

    #[test]
    fn remove_is_exact() {
        let m = MapOracle::new().set(&pos(5), 1).set(&pos(6), 2);
        assert_eq!(m.remove(&pos(5)).elements().len(), 1);
        assert_eq!(m.remove(&pos(99)), m);
    }

    #[test]
    fn combine_walks_the_key_union() {
        let a = MapOracle::new().set(&pos(1), 1).set(&pos(3), 3);
        let b = MapOracle::new().set(&pos(3), 30).set(&pos(8), 80);
        let sum = a.combine(&b, |x, y| match (x, y) {
            (None, None) => None,
            _ => Some(x.copied().unwrap_or(0) + y.copied().unwrap_or(0)),
        });
        assert_eq!(
            sum.elements()
                .into_iter()
                .map(|(k, v)| (k.to_u64().unwrap(), v))
                .collect::<Vec<_>>(),
            vec![(1, 1), (3, 33), (8, 80)]
        );
    }
}
