//! The canonical binary trie: one representation per map, so structural
//! equality *is* extensional equality.
//!
//! The two-form trie leaks because a node can be empty in any combination of
//! its three components. Here the combination is promoted into the
//! constructor: a nonempty tree is one of seven forms named by three digits
//! for the presence of left child, middle value, and right child
//! ([`CanonicalNE::Node011`] has a value and a right child, nothing on the
//! left), and the empty map is a separate wrapper state. Empty components
//! are never stored, so no tree contains a trivially-empty shape, every
//! distinct map value has exactly one shape, and small nodes pay for exactly
//! what they hold.
//!
//! The price is case count: lookup and update branch over 3 key constructors
//! times 7 node forms. [`CanonicalTree::node`] and [`CanonicalTree::view`]
//! recover the comfortable three-component reading (build a tree from parts,
//! decompose a tree into parts) so the remaining operations are written
//! against that interface instead of 7- or 49-way matches. Richer routes to
//! the same end, such as carrying well-formedness evidence in the type,
//! collapse back to the leaky representation once the evidence is erased;
//! only the canonical shape keeps its guarantees at runtime, which is why it
//! is the one provided here.

use std::sync::Arc;

use crate::count::{Count, Counter, NoCount};
use crate::map::FiniteMap;
use crate::positive::Positive;

/// A nonempty canonical trie. The digits name presence of (left, value,
/// right).
#[derive(Debug, PartialEq)]
pub enum CanonicalNE<V> {
    Node001(Arc<CanonicalNE<V>>),
    Node010(V),
    Node011(V, Arc<CanonicalNE<V>>),
    Node100(Arc<CanonicalNE<V>>),
    Node101(Arc<CanonicalNE<V>>, Arc<CanonicalNE<V>>),
    Node110(Arc<CanonicalNE<V>>, V),
    Node111(Arc<CanonicalNE<V>>, V, Arc<CanonicalNE<V>>),
}

#[derive(Debug, PartialEq)]
pub enum CanonicalTree<V> {
    Empty,
    Nodes(Arc<CanonicalNE<V>>),
}

/// A tree decomposed into (left, value, right), the shape-agnostic reading
/// produced by [`CanonicalTree::view`].
#[derive(Debug, PartialEq)]
pub enum View<V> {
    Empty,
    Node(CanonicalTree<V>, Option<V>, CanonicalTree<V>),
}

/// True unless all three components are absent. [`CanonicalTree::node`] maps
/// exactly the trivially-empty triple to `Empty`, so on every other triple
/// it is inverted by [`CanonicalTree::view`].
pub fn not_trivially_empty<V>(
    left: &CanonicalTree<V>,
    value: &Option<V>,
    right: &CanonicalTree<V>,
) -> bool {
    !(left.is_empty() && value.is_none() && right.is_empty())
}

impl<V> Clone for CanonicalTree<V> {
    fn clone(&self) -> Self {
        match self {
            CanonicalTree::Empty => CanonicalTree::Empty,
            CanonicalTree::Nodes(m) => CanonicalTree::Nodes(m.clone()),
        }
    }
}

impl<V> CanonicalNE<V> {
    fn parts(&self) -> (Option<&Arc<Self>>, Option<&V>, Option<&Arc<Self>>) {
        use CanonicalNE::*;
        match self {
            Node001(r) => (None, None, Some(r)),
            Node010(x) => (None, Some(x), None),
            Node011(x, r) => (None, Some(x), Some(r)),
            Node100(l) => (Some(l), None, None),
            Node101(l, r) => (Some(l), None, Some(r)),
            Node110(l, x) => (Some(l), Some(x), None),
            Node111(l, x, r) => (Some(l), Some(x), Some(r)),
        }
    }

    // Header plus one word per present component.
    fn words(&self) -> u64 {
        use CanonicalNE::*;
        match self {
            Node010(_) | Node001(_) | Node100(_) => 2,
            Node011(_, _) | Node101(_, _) | Node110(_, _) => 3,
            Node111(_, _, _) => 4,
        }
    }

    /// The single-branch tree binding exactly `key`.
    pub fn singleton(key: &Positive, value: V) -> Self {
        singleton_ne(key.bits(), value, &NoCount)
    }
}

fn singleton_ne<V, C: Count>(bits: &[bool], value: V, c: &C) -> CanonicalNE<V> {
    use CanonicalNE::*;
    let ne = match bits.split_first() {
        None => Node010(value),
        Some((&false, q)) => Node100(Arc::new(singleton_ne(q, value, c))),
        Some((&true, q)) => Node001(Arc::new(singleton_ne(q, value, c))),
    };
    c.record(ne.words());
    ne
}

fn set_ne<V: Clone, C: Count>(
    m: &CanonicalNE<V>,
    bits: &[bool],
    value: V,
    c: &C,
) -> CanonicalNE<V> {
    use CanonicalNE::*;
    let ne = match (bits.split_first(), m) {
        (None, Node001(r)) => Node011(value, r.clone()),
        (None, Node010(_)) => Node010(value),
        (None, Node011(_, r)) => Node011(value, r.clone()),
        (None, Node100(l)) => Node110(l.clone(), value),
        (None, Node101(l, r)) => Node111(l.clone(), value, r.clone()),
        (None, Node110(l, _)) => Node110(l.clone(), value),
        (None, Node111(l, _, r)) => Node111(l.clone(), value, r.clone()),
        (Some((&false, q)), Node001(r)) => {
            Node101(Arc::new(singleton_ne(q, value, c)), r.clone())
        }
        (Some((&false, q)), Node010(y)) => {
            Node110(Arc::new(singleton_ne(q, value, c)), y.clone())
        }
        (Some((&false, q)), Node011(y, r)) => {
            Node111(Arc::new(singleton_ne(q, value, c)), y.clone(), r.clone())
        }
        (Some((&false, q)), Node100(l)) => Node100(Arc::new(set_ne(l, q, value, c))),
        (Some((&false, q)), Node101(l, r)) => {
            Node101(Arc::new(set_ne(l, q, value, c)), r.clone())
        }
        (Some((&false, q)), Node110(l, y)) => {
            Node110(Arc::new(set_ne(l, q, value, c)), y.clone())
        }
        (Some((&false, q)), Node111(l, y, r)) => {
            Node111(Arc::new(set_ne(l, q, value, c)), y.clone(), r.clone())
        }
        (Some((&true, q)), Node001(r)) => Node001(Arc::new(set_ne(r, q, value, c))),
        (Some((&true, q)), Node010(y)) => {
            Node011(y.clone(), Arc::new(singleton_ne(q, value, c)))
        }
        (Some((&true, q)), Node011(y, r)) => {
            Node011(y.clone(), Arc::new(set_ne(r, q, value, c)))
        }
        (Some((&true, q)), Node100(l)) => {
            Node101(l.clone(), Arc::new(singleton_ne(q, value, c)))
        }
        (Some((&true, q)), Node101(l, r)) => {
            Node101(l.clone(), Arc::new(set_ne(r, q, value, c)))
        }
        (Some((&true, q)), Node110(l, y)) => {
            Node111(l.clone(), y.clone(), Arc::new(singleton_ne(q, value, c)))
        }
        (Some((&true, q)), Node111(l, y, r)) => {
            Node111(l.clone(), y.clone(), Arc::new(set_ne(r, q, value, c)))
        }
    };
    c.record(ne.words());
    ne
}

fn map_filter_ne<A, B, F: Fn(&A) -> Option<B>>(m: &CanonicalNE<A>, f: &F) -> CanonicalTree<B> {
    use CanonicalNE::*;
    let empty = CanonicalTree::empty;
    match m {
        Node001(r) => CanonicalTree::node(empty(), None, map_filter_ne(r, f)),
        Node010(x) => CanonicalTree::node(empty(), f(x), empty()),
        Node011(x, r) => CanonicalTree::node(empty(), f(x), map_filter_ne(r, f)),
        Node100(l) => CanonicalTree::node(map_filter_ne(l, f), None, empty()),
        Node101(l, r) => CanonicalTree::node(map_filter_ne(l, f), None, map_filter_ne(r, f)),
        Node110(l, x) => CanonicalTree::node(map_filter_ne(l, f), f(x), empty()),
        Node111(l, x, r) => CanonicalTree::node(map_filter_ne(l, f), f(x), map_filter_ne(r, f)),
    }
}

/// One-sided sweep once the right operand is exhausted.
fn combine_left<A, B, C2, F>(m: &CanonicalNE<A>, f: &F) -> CanonicalTree<C2>
where
    F: Fn(Option<&A>, Option<&B>) -> Option<C2>,
{
    map_filter_ne(m, &|a| f(Some(a), None))
}

/// One-sided sweep once the left operand is exhausted.
fn combine_right<A, B, C2, F>(m: &CanonicalNE<B>, f: &F) -> CanonicalTree<C2>
where
    F: Fn(Option<&A>, Option<&B>) -> Option<C2>,
{
    map_filter_ne(m, &|b| f(None, Some(b)))
}

fn combine_ne<A, B, C2, F>(m1: &CanonicalNE<A>, m2: &CanonicalNE<B>, f: &F) -> CanonicalTree<C2>
where
    F: Fn(Option<&A>, Option<&B>) -> Option<C2>,
{
    let (l1, o1, r1) = m1.parts();
    let (l2, o2, r2) = m2.parts();
    let left = match (l1, l2) {
        (None, None) => CanonicalTree::empty(),
        (Some(a), None) => combine_left(a, f),
        (None, Some(b)) => combine_right(b, f),
        (Some(a), Some(b)) => combine_ne(a, b, f),
    };
    let value = match (o1, o2) {
        (None, None) => None,
        _ => f(o1, o2),
    };
    let right = match (r1, r2) {
        (None, None) => CanonicalTree::empty(),
        (Some(a), None) => combine_left(a, f),
        (None, Some(b)) => combine_right(b, f),
        (Some(a), Some(b)) => combine_ne(a, b, f),
    };
    CanonicalTree::node(left, value, right)
}

impl<V> CanonicalTree<V> {
    pub fn empty() -> Self {
        CanonicalTree::Empty
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, CanonicalTree::Empty)
    }

    /// Builds the tree whose components are `(left, value, right)`, choosing
    /// the node form by presence; the all-absent triple is the empty tree.
    /// Total and canonical: the result never stores an empty component.
    pub fn node(left: Self, value: Option<V>, right: Self) -> Self {
        use CanonicalNE::*;
        use CanonicalTree::*;
        match (left, value, right) {
            (Empty, None, Empty) => Empty,
            (Empty, None, Nodes(r)) => Nodes(Arc::new(Node001(r))),
            (Empty, Some(x), Empty) => Nodes(Arc::new(Node010(x))),
            (Empty, Some(x), Nodes(r)) => Nodes(Arc::new(Node011(x, r))),
            (Nodes(l), None, Empty) => Nodes(Arc::new(Node100(l))),
            (Nodes(l), None, Nodes(r)) => Nodes(Arc::new(Node101(l, r))),
            (Nodes(l), Some(x), Empty) => Nodes(Arc::new(Node110(l, x))),
            (Nodes(l), Some(x), Nodes(r)) => Nodes(Arc::new(Node111(l, x, r))),
        }
    }

    pub fn get(&self, key: &Positive) -> Option<&V> {
        use CanonicalNE::*;
        let CanonicalTree::Nodes(root) = self else {
            return None;
        };
        let mut node: &CanonicalNE<V> = root;
        for &bit in key.bits() {
            node = match (bit, node) {
                (false, Node100(l) | Node101(l, _) | Node110(l, _) | Node111(l, _, _)) => l,
                (true, Node001(r) | Node011(_, r) | Node101(_, r) | Node111(_, _, r)) => r,
                _ => return None,
            };
        }
        match node {
            Node010(x) | Node011(x, _) | Node110(_, x) | Node111(_, x, _) => Some(x),
            Node001(_) | Node100(_) | Node101(_, _) => None,
        }
    }

    pub fn node_count(&self) -> u64 {
        fn rec<V>(m: &CanonicalNE<V>) -> u64 {
            let (l, _, r) = m.parts();
            1 + l.map_or(0, |l| rec(l)) + r.map_or(0, |r| rec(r))
        }
        match self {
            CanonicalTree::Empty => 0,
            CanonicalTree::Nodes(m) => rec(m),
        }
    }

    pub fn word_count(&self) -> u64 {
        fn rec<V>(m: &CanonicalNE<V>) -> u64 {
            let (l, _, r) = m.parts();
            m.words() + l.map_or(0, |l| rec(l)) + r.map_or(0, |r| rec(r))
        }
        match self {
            CanonicalTree::Empty => 0,
            CanonicalTree::Nodes(m) => rec(m),
        }
    }

    /// A slot exists only in value-bearing forms, so this equals the binding
    /// count.
    pub fn payload_slots(&self) -> u64 {
        fn rec<V>(m: &CanonicalNE<V>) -> u64 {
            let (l, o, r) = m.parts();
            u64::from(o.is_some()) + l.map_or(0, |l| rec(l)) + r.map_or(0, |r| rec(r))
        }
        match self {
            CanonicalTree::Empty => 0,
            CanonicalTree::Nodes(m) => rec(m),
        }
    }

    pub fn binding_count(&self) -> u64 {
        self.payload_slots()
    }
}

impl<V: Clone> CanonicalTree<V> {
    /// Decomposes into `(left, value, right)`. Inverse of
    /// [`CanonicalTree::node`] on every triple passing
    /// [`not_trivially_empty`].
    pub fn view(&self) -> View<V> {
        use CanonicalNE::*;
        use CanonicalTree::*;
        match self {
            Empty => View::Empty,
            Nodes(m) => match &**m {
                Node001(r) => View::Node(Empty, None, Nodes(r.clone())),
                Node010(x) => View::Node(Empty, Some(x.clone()), Empty),
                Node011(x, r) => View::Node(Empty, Some(x.clone()), Nodes(r.clone())),
                Node100(l) => View::Node(Nodes(l.clone()), None, Empty),
                Node101(l, r) => View::Node(Nodes(l.clone()), None, Nodes(r.clone())),
                Node110(l, x) => View::Node(Nodes(l.clone()), Some(x.clone()), Empty),
                Node111(l, x, r) => View::Node(Nodes(l.clone()), Some(x.clone()), Nodes(r.clone())),
            },
        }
    }

    pub fn set(&self, key: &Positive, value: V) -> Self {
        self.set_counted(key, value, &NoCount)
    }

    pub fn set_counted<C: Count>(&self, key: &Positive, value: V, counter: &C) -> Self {
        let ne = match self {
            CanonicalTree::Empty => singleton_ne(key.bits(), value, counter),
            CanonicalTree::Nodes(m) => set_ne(m, key.bits(), value, counter),
        };
        CanonicalTree::Nodes(Arc::new(ne))
    }

    /// Removing an absent key returns the receiver itself (shared, not
    /// rebuilt); otherwise the spine is rebuilt through
    /// [`CanonicalTree::node`], which keeps the result canonical.
    pub fn remove(&self, key: &Positive) -> Self {
        if self.get(key).is_none() {
            return self.clone();
        }
        fn rec<V: Clone>(m: &CanonicalTree<V>, bits: &[bool]) -> CanonicalTree<V> {
            match m.view() {
                View::Empty => CanonicalTree::Empty,
                View::Node(l, o, r) => match bits.split_first() {
                    None => CanonicalTree::node(l, None, r),
                    Some((&false, q)) => {
                        let l = rec(&l, q);
                        CanonicalTree::node(l, o, r)
                    }
                    Some((&true, q)) => {
                        let r = rec(&r, q);
                        CanonicalTree::node(l, o, r)
                    }
                },
            }
        }
        rec(self, key.bits())
    }

    pub fn elements(&self) -> Vec<(Positive, V)> {
        self.elements_counted(&NoCount)
    }

    /// `counter` records one hit per visited node; each node is visited
    /// exactly once and the result is sorted into numeric key order.
    pub fn elements_counted<C: Count>(&self, counter: &C) -> Vec<(Positive, V)> {
        fn walk<V: Clone, C: Count>(
            m: &CanonicalNE<V>,
            path: &mut Vec<bool>,
            out: &mut Vec<(Positive, V)>,
            c: &C,
        ) {
            c.record(m.words());
            let (l, o, r) = m.parts();
            if let Some(l) = l {
                path.push(false);
                walk(l, path, out, c);
                path.pop();
            }
            if let Some(x) = o {
                out.push((Positive::from_bits(path.clone()), x.clone()));
            }
            if let Some(r) = r {
                path.push(true);
                walk(r, path, out, c);
                path.pop();
            }
        }
        let mut out = Vec::new();
        if let CanonicalTree::Nodes(m) = self {
            walk(m, &mut Vec::new(), &mut out, counter);
        }
        out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn elements_with_visits(&self) -> (Vec<(Positive, V)>, u64) {
        let counter = Counter::new();
        let out = self.elements_counted(&counter);
        (out, counter.nodes())
    }

    pub fn map_filter<B, F: Fn(&V) -> Option<B>>(&self, f: F) -> CanonicalTree<B> {
        match self {
            CanonicalTree::Empty => CanonicalTree::Empty,
            CanonicalTree::Nodes(m) => map_filter_ne(m, &f),
        }
    }

    /// Pointwise merge over the key-set union; canonical in, canonical out.
    /// Once either operand is exhausted the merge switches to a one-sided
    /// sweep and never reinspects the exhausted side. `f(None, None)` must
    /// be `None`.
    pub fn combine<B, C2, F>(&self, other: &CanonicalTree<B>, f: F) -> CanonicalTree<C2>
    where
        F: Fn(Option<&V>, Option<&B>) -> Option<C2>,
    {
        use CanonicalTree::*;
        match (self, other) {
            (Empty, Empty) => Empty,
            (Empty, Nodes(m2)) => combine_right(m2, &f),
            (Nodes(m1), Empty) => combine_left(m1, &f),
            (Nodes(m1), Nodes(m2)) => combine_ne(m1, m2, &f),
        }
    }
}

impl<V: Clone + PartialEq> FiniteMap for CanonicalTree<V> {
    type Value = V;

    fn empty() -> Self {
        CanonicalTree::empty()
    }

    fn get(&self, key: &Positive) -> Option<&V> {
        CanonicalTree::get(self, key)
    }

    fn set(&self, key: &Positive, value: V) -> Self {
        CanonicalTree::set(self, key, value)
    }

    fn remove(&self, key: &Positive) -> Self {
        CanonicalTree::remove(self, key)
    }

    fn elements(&self) -> Vec<(Positive, V)> {
        CanonicalTree::elements(self)
    }

    fn map_filter<F: Fn(&V) -> Option<V>>(&self, f: F) -> Self {
        CanonicalTree::map_filter(self, f)
    }

    fn combine<F: Fn(Option<&V>, Option<&V>) -> Option<V>>(&self, other: &Self, f: F) -> Self {
        CanonicalTree::combine(self, other, f)
    }

    fn structural_eq(&self, other: &Self) -> bool {
        self == other
    }
}

#[cfg(test)]
mod tests {
    use super::CanonicalNE::*;
    use super::CanonicalTree::*;
    use super::*;

    fn pos(n: u64) -> Positive {
        Positive::try_from(n).unwrap()
    }

    fn arc(ne: CanonicalNE<u64>) -> Arc<CanonicalNE<u64>> {
        Arc::new(ne)
    }

    fn from_pairs(pairs: &[(u64, u64)]) -> CanonicalTree<u64> {
        pairs.iter().fold(CanonicalTree::empty(), |m, &(k, v)| {
            m.set(&pos(k), v)
        })
    }

    #[test]
    fn get_reads_the_root_value_form() {
        assert_eq!(Nodes(arc(Node010(7))).get(&pos(1)), Some(&7));
        let both_children = Nodes(arc(Node101(arc(Node010(1)), arc(Node010(2)))));
        assert_eq!(both_children.get(&pos(1)), None);
        assert_eq!(both_children.get(&pos(2)), Some(&1));
        assert_eq!(both_children.get(&pos(3)), Some(&2));
        assert_eq!(CanonicalTree::<u64>::empty().get(&pos(5)), None);
    }

    #[test]
    fn singleton_grows_one_branch() {
        assert_eq!(CanonicalNE::singleton(&pos(1), 9u64), Node010(9));
        assert_eq!(
            CanonicalNE::singleton(&pos(2), 9u64),
            Node100(arc(Node010(9)))
        );
        assert_eq!(
            CanonicalNE::singleton(&pos(3), 9u64),
            Node001(arc(Node010(9)))
        );
        // 13 descends right, left, right.
        assert_eq!(
            CanonicalNE::singleton(&pos(13), 9u64),
            Node001(arc(Node100(arc(Node001(arc(Node010(9)))))))
        );
        let m = CanonicalTree::empty().set(&pos(13), 9);
        assert_eq!(
            m.elements()
                .into_iter()
                .map(|(k, v)| (k.to_u64().unwrap(), v))
                .collect::<Vec<_>>(),
            vec![(13, 9)]
        );
    }

    #[test]
    fn set_at_the_root_fills_the_value_slot() {
        let m = Nodes(arc(Node101(arc(Node010(1)), arc(Node010(2)))));
        let m2 = m.set(&pos(1), 42);
        assert_eq!(
            m2,
            Nodes(arc(Node111(arc(Node010(1)), 42, arc(Node010(2)))))
        );
    }

    #[test]
    fn overwrite_keeps_the_shape() {
        let a = from_pairs(&[(5, 1), (2, 2), (9, 3)]);
        let b = a.set(&pos(5), 100);
        assert_eq!(a.node_count(), b.node_count());
        assert_eq!(b.get(&pos(5)), Some(&100));
    }

    #[test]
    fn insertion_order_cannot_be_observed() {
        let a = from_pairs(&[(1, 10), (4, 40), (9, 90), (11, 110)]);
        let b = from_pairs(&[(11, 110), (9, 90), (1, 10), (4, 40)]);
        assert_eq!(a, b);

        let with_detour = from_pairs(&[(7, 999), (1, 10), (4, 40), (9, 90), (11, 110)])
            .remove(&pos(7));
        assert_eq!(with_detour, a);
    }

    #[test]
    fn node_collapses_only_the_all_absent_triple() {
        assert_eq!(
            CanonicalTree::<u64>::node(Empty, None, Empty),
            CanonicalTree::Empty
        );
        let r = arc(Node010(3));
        assert_eq!(
            CanonicalTree::node(Empty, Some(1), Nodes(r.clone())),
            Nodes(arc(Node011(1, r.clone())))
        );
        assert_eq!(
            CanonicalTree::node(Nodes(r.clone()), None, Empty),
            Nodes(arc(Node100(r)))
        );
    }

    #[test]
    fn view_splits_a_node_into_its_components() {
        let l = arc(Node010(1));
        let m = Nodes(arc(Node110(l.clone(), 5)));
        assert_eq!(m.view(), View::Node(Nodes(l), Some(5), Empty));
        assert_eq!(CanonicalTree::<u64>::empty().view(), View::Empty);
    }

    #[test]
    fn view_inverts_node_on_nontrivial_triples() {
        let samples = [
            (Empty, None, Empty),
            (Empty, Some(1), Empty),
            (Nodes(arc(Node010(2))), None, Nodes(arc(Node010(3)))),
            (Nodes(arc(Node010(4))), Some(5), Empty),
        ];
        for (l, o, r) in samples {
            let built = CanonicalTree::node(l.clone(), o, r.clone());
            match built.view() {
                View::Empty => assert!(!not_trivially_empty(&l, &o, &r)),
                View::Node(l2, o2, r2) => {
                    assert_eq!((l2, o2, r2), (l, o, r));
                }
            }
        }
    }

    #[test]
    fn node_inverts_view() {
        let m = from_pairs(&[(1, 1), (6, 6), (13, 13), (2, 2)]);
        let View::Node(l, o, r) = m.view() else {
            panic!("nonempty map must view as a node");
        };
        assert_eq!(CanonicalTree::node(l, o, r), m);
    }

    #[test]
    fn remove_returns_the_same_allocation_for_absent_keys() {
        let m = from_pairs(&[(3, 3), (8, 8)]);
        let same = m.remove(&pos(100));
        let (Nodes(a), Nodes(b)) = (&m, &same) else {
            panic!("both maps are nonempty");
        };
        assert!(Arc::ptr_eq(a, b));
    }

    #[test]
    fn remove_rebuilds_canonically() {
        let m = from_pairs(&[(1, 1), (4, 4)]);
        assert_eq!(m.remove(&pos(4)), from_pairs(&[(1, 1)]));
        assert_eq!(m.remove(&pos(1)).remove(&pos(4)), CanonicalTree::empty());
    }

    #[test]
    fn elements_of_one_through_seven_are_seven_nodes_in_order() {
        let m = from_pairs(&[(4, 4), (1, 1), (7, 7), (2, 2), (6, 6), (3, 3), (5, 5)]);
        assert_eq!(m.node_count(), 7);
        // Three full nodes and four value-only leaves.
        assert_eq!(m.word_count(), 3 * 4 + 4 * 2);
        let keys: Vec<u64> = m.elements().iter().map(|(k, _)| k.to_u64().unwrap()).collect();
        assert_eq!(keys, vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn map_filter_rewrites_value_forms() {
        let single = Nodes(arc(Node010(4)));
        assert_eq!(
            single.map_filter(|v| Some(v * 10)),
            Nodes(arc(Node010(40)))
        );
        assert_eq!(single.map_filter(|_| None::<u64>), CanonicalTree::Empty);

        let m = from_pairs(&[(1, 1), (2, 2), (3, 3), (12, 12)]);
        let evens = m.map_filter(|v| if v % 2 == 0 { Some(*v) } else { None });
        assert_eq!(evens, from_pairs(&[(2, 2), (12, 12)]));
    }

    #[test]
    fn combine_sees_one_sided_values() {
        // Left operand has children but no root value; right has a root
        // value and a right child. The merged root value is f(None, Some _).
        let m1 = Nodes(arc(Node101(arc(Node010(1)), arc(Node010(2)))));
        let m2 = Nodes(arc(Node011(20, arc(Node010(30)))));
        let merged = m1.combine(&m2, |a, b| match (a, b) {
            (None, None) => None,
            _ => Some(a.copied().unwrap_or(0) * 100 + b.copied().unwrap_or(0)),
        });
        assert_eq!(merged.get(&pos(1)), Some(&20));
        assert_eq!(merged.get(&pos(2)), Some(&100));
        assert_eq!(merged.get(&pos(3)), Some(&(200 + 30)));
    }

    #[test]
    fn combine_is_canonical_and_pointwise() {
        let a = from_pairs(&[(1, 1), (5, 5), (9, 9)]);
        let b = from_pairs(&[(5, 50), (2, 20)]);
        let keep_left = a.combine(&b, |x, y| x.or(y).copied());
        assert_eq!(
            keep_left,
            from_pairs(&[(1, 1), (5, 5), (9, 9), (2, 20)])
        );
        let intersection = a.combine(&b, |x, y| match (x, y) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        });
        assert_eq!(intersection, from_pairs(&[(5, 55)]));
        let empty: CanonicalTree<u64> = CanonicalTree::empty();
        assert_eq!(empty.combine(&empty, |x, y| x.or(y).copied()), empty);
    }

    #[test]
    fn structural_equality_is_extensional_equality() {
        let a = from_pairs(&[(2, 1), (700, 2), (31, 3)]);
        let b = from_pairs(&[(31, 3), (2, 1), (700, 2)]);
        assert!(a.structural_eq(&b));
        assert!(!a.structural_eq(&b.remove(&pos(31))));
    }
}
