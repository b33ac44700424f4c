//! The three-form binary trie: payload presence is part of the node form.
//!
//! `Node0` has two children and no payload slot; `Node1` has two children and
//! always a payload. Lookup and update behave exactly like
//! [`crate::original::OriginalTree`]; the representation just never pays for
//! an absent payload, so its payload slots equal its bindings one for one.
//! It is still not canonical: a `Node0` over two empty children denotes the
//! empty map.

use std::sync::Arc;

use crate::count::{Count, Counter, NoCount};
use crate::map::FiniteMap;
use crate::positive::Positive;

pub struct Node01Tree<V>(Option<Arc<N01<V>>>);

#[derive(Debug, PartialEq)]
enum N01<V> {
    Node0(Node01Tree<V>, Node01Tree<V>),
    Node1(Node01Tree<V>, V, Node01Tree<V>),
}

impl<V> Clone for Node01Tree<V> {
    fn clone(&self) -> Self {
        Node01Tree(self.0.clone())
    }
}

impl<V: PartialEq> PartialEq for Node01Tree<V> {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (None, None) => true,
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl<V: std::fmt::Debug> std::fmt::Debug for Node01Tree<V> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.0 {
            None => write!(f, "Leaf"),
            Some(n) => match &**n {
                N01::Node0(l, r) => write!(f, "Node0({l:?}, {r:?})"),
                N01::Node1(l, v, r) => write!(f, "Node1({l:?}, {v:?}, {r:?})"),
            },
        }
    }
}

impl<V> N01<V> {
    fn left(&self) -> &Node01Tree<V> {
        match self {
            N01::Node0(l, _) | N01::Node1(l, _, _) => l,
        }
    }

    fn right(&self) -> &Node01Tree<V> {
        match self {
            N01::Node0(_, r) | N01::Node1(_, _, r) => r,
        }
    }

    fn value(&self) -> Option<&V> {
        match self {
            N01::Node0(_, _) => None,
            N01::Node1(_, v, _) => Some(v),
        }
    }

    // Header plus fields: no slot at all when there is no payload.
    fn words(&self) -> u64 {
        match self {
            N01::Node0(_, _) => 3,
            N01::Node1(_, _, _) => 4,
        }
    }
}

impl<V> Node01Tree<V> {
    pub fn empty() -> Self {
        Node01Tree(None)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    pub fn node0(left: Self, right: Self) -> Self {
        Node01Tree(Some(Arc::new(N01::Node0(left, right))))
    }

    pub fn node1(left: Self, value: V, right: Self) -> Self {
        Node01Tree(Some(Arc::new(N01::Node1(left, value, right))))
    }

    /// Form selection plus the empty-shape collapse in one place.
    pub fn node_smart(left: Self, value: Option<V>, right: Self) -> Self {
        match value {
            Some(v) => Node01Tree::node1(left, v, right),
            None if left.is_empty() && right.is_empty() => Node01Tree::empty(),
            None => Node01Tree::node0(left, right),
        }
    }

    fn link(&self) -> Option<&Arc<N01<V>>> {
        self.0.as_ref()
    }

    pub fn get(&self, key: &Positive) -> Option<&V> {
        let mut node = self.0.as_ref()?;
        for &bit in key.bits() {
            let child = if bit { node.right() } else { node.left() };
            node = child.0.as_ref()?;
        }
        node.value()
    }

    pub fn node_count(&self) -> u64 {
        fn rec<V>(link: Option<&Arc<N01<V>>>) -> u64 {
            match link {
                None => 0,
                Some(n) => 1 + rec(n.left().link()) + rec(n.right().link()),
            }
        }
        rec(self.link())
    }

    pub fn word_count(&self) -> u64 {
        fn rec<V>(link: Option<&Arc<N01<V>>>) -> u64 {
            match link {
                None => 0,
                Some(n) => n.words() + rec(n.left().link()) + rec(n.right().link()),
            }
        }
        rec(self.link())
    }

    /// Slots exist only on `Node1`, and a `Node1` slot is always filled, so
    /// this equals the binding count.
    pub fn payload_slots(&self) -> u64 {
        fn rec<V>(link: Option<&Arc<N01<V>>>) -> u64 {
            match link {
                None => 0,
                Some(n) => {
                    u64::from(n.value().is_some()) + rec(n.left().link()) + rec(n.right().link())
                }
            }
        }
        rec(self.link())
    }

    pub fn binding_count(&self) -> u64 {
        self.payload_slots()
    }
}

impl<V: Clone> Node01Tree<V> {
    pub fn set(&self, key: &Positive, value: V) -> Self {
        self.set_counted(key, value, &NoCount)
    }

    pub fn set_counted<C: Count>(&self, key: &Positive, value: V, counter: &C) -> Self {
        fn build<V, C: Count>(
            c: &C,
            left: Node01Tree<V>,
            value: Option<V>,
            right: Node01Tree<V>,
        ) -> Node01Tree<V> {
            let node = match value {
                Some(v) => N01::Node1(left, v, right),
                None => N01::Node0(left, right),
            };
            c.record(node.words());
            Node01Tree(Some(Arc::new(node)))
        }
        fn rec<V: Clone, C: Count>(
            link: Option<&Arc<N01<V>>>,
            bits: &[bool],
            value: V,
            c: &C,
        ) -> Node01Tree<V> {
            match (link, bits.split_first()) {
                (None, None) => build(c, Node01Tree::empty(), Some(value), Node01Tree::empty()),
                (None, Some((&bit, rest))) => {
                    let child = rec(None, rest, value, c);
                    if bit {
                        build(c, Node01Tree::empty(), None, child)
                    } else {
                        build(c, child, None, Node01Tree::empty())
                    }
                }
                (Some(n), None) => build(c, n.left().clone(), Some(value), n.right().clone()),
                (Some(n), Some((&bit, rest))) => {
                    let payload = n.value().cloned();
                    if bit {
                        let right = rec(n.right().link(), rest, value, c);
                        build(c, n.left().clone(), payload, right)
                    } else {
                        let left = rec(n.left().link(), rest, value, c);
                        build(c, left, payload, n.right().clone())
                    }
                }
            }
        }
        rec(self.link(), key.bits(), value, counter)
    }

    pub fn remove(&self, key: &Positive) -> Self {
        fn rec<V: Clone>(link: Option<&Arc<N01<V>>>, bits: &[bool]) -> Node01Tree<V> {
            match (link, bits.split_first()) {
                (None, _) => Node01Tree::empty(),
                (Some(n), None) => {
                    Node01Tree::node_smart(n.left().clone(), None, n.right().clone())
                }
                (Some(n), Some((&bit, rest))) => {
                    let payload = n.value().cloned();
                    if bit {
                        let right = rec(n.right().link(), rest);
                        Node01Tree::node_smart(n.left().clone(), payload, right)
                    } else {
                        let left = rec(n.left().link(), rest);
                        Node01Tree::node_smart(left, payload, n.right().clone())
                    }
                }
            }
        }
        rec(self.link(), key.bits())
    }

    pub fn elements(&self) -> Vec<(Positive, V)> {
        self.elements_counted(&NoCount)
    }

    pub fn elements_counted<C: Count>(&self, counter: &C) -> Vec<(Positive, V)> {
        fn walk<V: Clone, C: Count>(
            link: Option<&Arc<N01<V>>>,
            path: &mut Vec<bool>,
            out: &mut Vec<(Positive, V)>,
            c: &C,
        ) {
            let Some(n) = link else { return };
            c.record(n.words());
            path.push(false);
            walk(n.left().link(), path, out, c);
            path.pop();
            if let Some(v) = n.value() {
                out.push((Positive::from_bits(path.clone()), v.clone()));
            }
            path.push(true);
            walk(n.right().link(), path, out, c);
            path.pop();
        }
        let mut out = Vec::new();
        walk(self.link(), &mut Vec::new(), &mut out, counter);
        out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn map_filter<B, F: Fn(&V) -> Option<B>>(&self, f: F) -> Node01Tree<B> {
        map_filter_rec(self.link(), &f)
    }

    /// Same contract as [`OriginalTree::combine`][crate::original::OriginalTree::combine]:
    /// one-sided sweeps after either operand is exhausted, `f(None, None)`
    /// must be `None`.
    pub fn combine<B, C2, F>(&self, other: &Node01Tree<B>, f: F) -> Node01Tree<C2>
    where
        F: Fn(Option<&V>, Option<&B>) -> Option<C2>,
    {
        fn rec<A, B, C2, F>(
            a: Option<&Arc<N01<A>>>,
            b: Option<&Arc<N01<B>>>,
            f: &F,
        ) -> Node01Tree<C2>
        where
            F: Fn(Option<&A>, Option<&B>) -> Option<C2>,
        {
            match (a, b) {
                (None, _) => map_filter_rec(b, &|v| f(None, Some(v))),
                (_, None) => map_filter_rec(a, &|v| f(Some(v), None)),
                (Some(n1), Some(n2)) => Node01Tree::node_smart(
                    rec(n1.left().link(), n2.left().link(), f),
                    f(n1.value(), n2.value()),
                    rec(n1.right().link(), n2.right().link(), f),
                ),
            }
        }
        rec(self.link(), other.link(), &f)
    }

    pub fn elements_with_visits(&self) -> (Vec<(Positive, V)>, u64) {
        let counter = Counter::new();
        let out = self.elements_counted(&counter);
        (out, counter.nodes())
    }
}

fn map_filter_rec<A, B, F: Fn(&A) -> Option<B>>(
    link: Option<&Arc<N01<A>>>,
    f: &F,
) -> Node01Tree<B> {
    match link {
        None => Node01Tree::empty(),
        Some(n) => Node01Tree::node_smart(
            map_filter_rec(n.left().link(), f),
            n.value().and_then(f),
            map_filter_rec(n.right().link(), f),
        ),
    }
}

impl<V: Clone + PartialEq> FiniteMap for Node01Tree<V> {
    type Value = V;

    fn empty() -> Self {
        Node01Tree::empty()
    }

    fn get(&self, key: &Positive) -> Option<&V> {
        Node01Tree::get(self, key)
    }

    fn set(&self, key: &Positive, value: V) -> Self {
        Node01Tree::set(self, key, value)
    }

    fn remove(&self, key: &Positive) -> Self {
        Node01Tree::remove(self, key)
    }

    fn elements(&self) -> Vec<(Positive, V)> {
        Node01Tree::elements(self)
    }

    fn map_filter<F: Fn(&V) -> Option<V>>(&self, f: F) -> Self {
        Node01Tree::map_filter(self, f)
    }

    fn combine<F: Fn(Option<&V>, Option<&V>) -> Option<V>>(&self, other: &Self, f: F) -> Self {
        Node01Tree::combine(self, other, f)
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

    fn leaf() -> Node01Tree<u64> {
        Node01Tree::empty()
    }

    #[test]
    fn set_at_the_root_is_a_payload_node() {
        assert_eq!(
            leaf().set(&pos(1), 5),
            Node01Tree::node1(leaf(), 5, leaf())
        );
    }

    #[test]
    fn set_upgrades_a_bare_node_in_place() {
        let t = leaf().set(&pos(2), 2);
        assert_eq!(
            t,
            Node01Tree::node0(Node01Tree::node1(leaf(), 2, leaf()), leaf())
        );
        let both = t.set(&pos(1), 1);
        assert_eq!(
            both,
            Node01Tree::node1(Node01Tree::node1(leaf(), 2, leaf()), 1, leaf())
        );
    }

    #[test]
    fn get_distinguishes_bare_and_payload_nodes() {
        let t = leaf().set(&pos(4), 4);
        assert_eq!(t.get(&pos(4)), Some(&4));
        assert_eq!(t.get(&pos(2)), None);
        assert_eq!(t.get(&pos(1)), None);
    }

    #[test]
    fn payload_slots_equal_bindings_on_a_dense_map() {
        let mut t = leaf();
        for n in 1..=128u64 {
            t = t.set(&pos(n), n);
        }
        assert_eq!(t.payload_slots(), 128);
        assert_eq!(t.binding_count(), 128);
    }

    #[test]
    fn dense_maps_take_fewer_words_than_the_two_form_trie() {
        use crate::original::OriginalTree;
        let mut ours = leaf();
        let mut theirs = OriginalTree::empty();
        for n in 1..=128u64 {
            ours = ours.set(&pos(n), n);
            theirs = theirs.set(&pos(n), n);
        }
        assert_eq!(ours.node_count(), theirs.node_count());
        assert!(ours.word_count() < theirs.word_count());
    }

    #[test]
    fn remove_collapses_bare_spines() {
        let t = leaf().set(&pos(4), 4);
        assert_eq!(t.remove(&pos(4)), leaf());
        let two = leaf().set(&pos(4), 4).set(&pos(2), 2);
        assert_eq!(two.remove(&pos(4)), leaf().set(&pos(2), 2));
    }

    #[test]
    fn elements_and_filters_mirror_the_bindings() {
        let t = leaf().set(&pos(3), 3).set(&pos(8), 8).set(&pos(2), 2);
        let keys: Vec<u64> = t.elements().iter().map(|(k, _)| k.to_u64().unwrap()).collect();
        assert_eq!(keys, vec![2, 3, 8]);

        let trimmed = t.map_filter(|v| if *v > 2 { Some(*v) } else { None });
        assert_eq!(trimmed.elements().len(), 2);
        assert_eq!(t.map_filter(|_: &u64| None::<u64>), leaf());
    }

    #[test]
    fn combine_agrees_with_pointwise_merge() {
        let a = leaf().set(&pos(1), 1).set(&pos(6), 6);
        let b = leaf().set(&pos(6), 60).set(&pos(9), 9);
        let summed = a.combine(&b, |x, y| match (x, y) {
            (None, None) => None,
            _ => Some(x.copied().unwrap_or(0) + y.copied().unwrap_or(0)),
        });
        assert_eq!(summed.get(&pos(1)), Some(&1));
        assert_eq!(summed.get(&pos(6)), Some(&66));
        assert_eq!(summed.get(&pos(9)), Some(&9));
        assert_eq!(summed.elements().len(), 3);
    }
}
