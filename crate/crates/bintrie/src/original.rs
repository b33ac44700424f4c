//! The two-form binary trie: a node always has a left child, an optional
//! payload, and a right child.
//!
//! Lookup walks the key's bit path, left on 0 and right on 1, and reads the
//! payload where the path ends. The representation is leaky: a node with two
//! empty children and no payload denotes the same map as an empty tree, so
//! structural equality is strictly finer than extensional equality. The
//! smart constructor [`OriginalTree::node_smart`] collapses exactly that
//! trivially-empty shape, and [`OriginalTree::is_well_formed`] checks a tree
//! contains none; the raw [`OriginalTree::node`] stays available so the leak
//! itself can be exhibited.

use std::sync::Arc;

use crate::count::{Count, Counter, NoCount};
use crate::map::FiniteMap;
use crate::positive::Positive;

pub struct OriginalTree<V>(Option<Arc<OrigNode<V>>>);

#[derive(Debug, PartialEq)]
struct OrigNode<V> {
    left: OriginalTree<V>,
    value: Option<V>,
    right: OriginalTree<V>,
}

impl<V> Clone for OriginalTree<V> {
    fn clone(&self) -> Self {
        OriginalTree(self.0.clone())
    }
}

impl<V: PartialEq> PartialEq for OriginalTree<V> {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (None, None) => true,
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl<V: std::fmt::Debug> std::fmt::Debug for OriginalTree<V> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.0 {
            None => write!(f, "Leaf"),
            Some(n) => write!(f, "Node({:?}, {:?}, {:?})", n.left, n.value, n.right),
        }
    }
}

impl<V> OrigNode<V> {
    // Header plus three fields, plus a two-word box when a payload is present.
    fn words(&self) -> u64 {
        4 + if self.value.is_some() { 2 } else { 0 }
    }
}

impl<V> OriginalTree<V> {
    pub fn empty() -> Self {
        OriginalTree(None)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    /// Raw constructor; builds whatever shape it is given, including the
    /// trivially-empty node.
    pub fn node(left: Self, value: Option<V>, right: Self) -> Self {
        OriginalTree(Some(Arc::new(OrigNode { left, value, right })))
    }

    /// Collapses the trivially-empty shape to the empty tree; otherwise a
    /// plain node. Rebuilding exclusively through this keeps a tree
    /// well-formed.
    pub fn node_smart(left: Self, value: Option<V>, right: Self) -> Self {
        if value.is_none() && left.is_empty() && right.is_empty() {
            OriginalTree::empty()
        } else {
            OriginalTree::node(left, value, right)
        }
    }

    fn link(&self) -> Option<&Arc<OrigNode<V>>> {
        self.0.as_ref()
    }

    pub fn get(&self, key: &Positive) -> Option<&V> {
        let mut node = self.0.as_ref()?;
        for &bit in key.bits() {
            let child = if bit { &node.right } else { &node.left };
            node = child.0.as_ref()?;
        }
        node.value.as_ref()
    }

    /// True when no subtree is the trivially-empty node. The raw [`node`]
    /// constructor can build such debris; the operations never do.
    ///
    /// [`node`]: OriginalTree::node
    pub fn is_well_formed(&self) -> bool {
        fn rec<V>(link: Option<&Arc<OrigNode<V>>>) -> bool {
            match link {
                None => true,
                Some(n) => {
                    let trivially_empty =
                        n.value.is_none() && n.left.is_empty() && n.right.is_empty();
                    !trivially_empty && rec(n.left.link()) && rec(n.right.link())
                }
            }
        }
        rec(self.link())
    }

    pub fn node_count(&self) -> u64 {
        fn rec<V>(link: Option<&Arc<OrigNode<V>>>) -> u64 {
            match link {
                None => 0,
                Some(n) => 1 + rec(n.left.link()) + rec(n.right.link()),
            }
        }
        rec(self.link())
    }

    pub fn word_count(&self) -> u64 {
        fn rec<V>(link: Option<&Arc<OrigNode<V>>>) -> u64 {
            match link {
                None => 0,
                Some(n) => n.words() + rec(n.left.link()) + rec(n.right.link()),
            }
        }
        rec(self.link())
    }

    /// Every node carries a payload slot whether or not it is filled; this
    /// representation's slot count is its node count.
    pub fn payload_slots(&self) -> u64 {
        self.node_count()
    }

    pub fn binding_count(&self) -> u64 {
        fn rec<V>(link: Option<&Arc<OrigNode<V>>>) -> u64 {
            match link {
                None => 0,
                Some(n) => {
                    u64::from(n.value.is_some()) + rec(n.left.link()) + rec(n.right.link())
                }
            }
        }
        rec(self.link())
    }
}

impl<V: Clone> OriginalTree<V> {
    /// No node along an untouched path is created or revisited; the new tree
    /// shares everything off the key's path with the receiver.
    pub fn set(&self, key: &Positive, value: V) -> Self {
        self.set_counted(key, value, &NoCount)
    }

    pub fn set_counted<C: Count>(&self, key: &Positive, value: V, counter: &C) -> Self {
        fn rec<V: Clone, C: Count>(
            link: Option<&Arc<OrigNode<V>>>,
            bits: &[bool],
            value: V,
            c: &C,
        ) -> OriginalTree<V> {
            match (link, bits.split_first()) {
                (None, None) => new_node(c, OriginalTree::empty(), Some(value), OriginalTree::empty()),
                (None, Some((&bit, rest))) => {
                    let child = rec(None, rest, value, c);
                    if bit {
                        new_node(c, OriginalTree::empty(), None, child)
                    } else {
                        new_node(c, child, None, OriginalTree::empty())
                    }
                }
                (Some(n), None) => new_node(c, n.left.clone(), Some(value), n.right.clone()),
                (Some(n), Some((&bit, rest))) => {
                    if bit {
                        let right = rec(n.right.link(), rest, value, c);
                        new_node(c, n.left.clone(), n.value.clone(), right)
                    } else {
                        let left = rec(n.left.link(), rest, value, c);
                        new_node(c, left, n.value.clone(), n.right.clone())
                    }
                }
            }
        }
        fn new_node<V, C: Count>(
            c: &C,
            left: OriginalTree<V>,
            value: Option<V>,
            right: OriginalTree<V>,
        ) -> OriginalTree<V> {
            let t = OriginalTree::node(left, value, right);
            c.record(t.0.as_ref().expect("just built").words());
            t
        }
        rec(self.link(), key.bits(), value, counter)
    }

    /// Rebuilds the key's spine through the smart constructor, so removal
    /// never leaves a trivially-empty node behind.
    pub fn remove(&self, key: &Positive) -> Self {
        fn rec<V: Clone>(link: Option<&Arc<OrigNode<V>>>, bits: &[bool]) -> OriginalTree<V> {
            match (link, bits.split_first()) {
                (None, _) => OriginalTree::empty(),
                (Some(n), None) => {
                    OriginalTree::node_smart(n.left.clone(), None, n.right.clone())
                }
                (Some(n), Some((&bit, rest))) => {
                    if bit {
                        let right = rec(n.right.link(), rest);
                        OriginalTree::node_smart(n.left.clone(), n.value.clone(), right)
                    } else {
                        let left = rec(n.left.link(), rest);
                        OriginalTree::node_smart(left, n.value.clone(), n.right.clone())
                    }
                }
            }
        }
        rec(self.link(), key.bits())
    }

    pub fn elements(&self) -> Vec<(Positive, V)> {
        self.elements_counted(&NoCount)
    }

    /// `counter` records one hit per visited node. The traversal visits each
    /// node exactly once; it emits keys in path order (low bits weigh
    /// heaviest early), so a final sort establishes numeric key order.
    pub fn elements_counted<C: Count>(&self, counter: &C) -> Vec<(Positive, V)> {
        fn walk<V: Clone, C: Count>(
            link: Option<&Arc<OrigNode<V>>>,
            path: &mut Vec<bool>,
            out: &mut Vec<(Positive, V)>,
            c: &C,
        ) {
            let Some(n) = link else { return };
            c.record(n.words());
            path.push(false);
            walk(n.left.link(), path, out, c);
            path.pop();
            if let Some(v) = &n.value {
                out.push((Positive::from_bits(path.clone()), v.clone()));
            }
            path.push(true);
            walk(n.right.link(), path, out, c);
            path.pop();
        }
        let mut out = Vec::new();
        walk(self.link(), &mut Vec::new(), &mut out, counter);
        out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn map_filter<B, F: Fn(&V) -> Option<B>>(&self, f: F) -> OriginalTree<B> {
        map_filter_rec(self.link(), &f)
    }

    /// Pointwise merge over the key-set union. Once either side runs out of
    /// nodes the merge switches to a one-sided sweep of the survivor and
    /// never reinspects the exhausted side. `f(None, None)` must be `None`:
    /// inner nodes can be payload-free on both sides, and a combining
    /// function inventing values there would have no key-set meaning.
    pub fn combine<B, C2, F>(&self, other: &OriginalTree<B>, f: F) -> OriginalTree<C2>
    where
        F: Fn(Option<&V>, Option<&B>) -> Option<C2>,
    {
        fn rec<A, B, C2, F>(
            a: Option<&Arc<OrigNode<A>>>,
            b: Option<&Arc<OrigNode<B>>>,
            f: &F,
        ) -> OriginalTree<C2>
        where
            F: Fn(Option<&A>, Option<&B>) -> Option<C2>,
        {
            match (a, b) {
                (None, _) => map_filter_rec(b, &|v| f(None, Some(v))),
                (_, None) => map_filter_rec(a, &|v| f(Some(v), None)),
                (Some(n1), Some(n2)) => OriginalTree::node_smart(
                    rec(n1.left.link(), n2.left.link(), f),
                    f(n1.value.as_ref(), n2.value.as_ref()),
                    rec(n1.right.link(), n2.right.link(), f),
                ),
            }
        }
        rec(self.link(), other.link(), &f)
    }

    /// [`OriginalTree::elements_counted`] with a throwaway counter, returning
    /// the visit count alongside the bindings.
    pub fn elements_with_visits(&self) -> (Vec<(Positive, V)>, u64) {
        let counter = Counter::new();
        let out = self.elements_counted(&counter);
        (out, counter.nodes())
    }
}

fn map_filter_rec<A, B, F: Fn(&A) -> Option<B>>(
    link: Option<&Arc<OrigNode<A>>>,
    f: &F,
) -> OriginalTree<B> {
    match link {
        None => OriginalTree::empty(),
        Some(n) => OriginalTree::node_smart(
            map_filter_rec(n.left.link(), f),
            n.value.as_ref().and_then(f),
            map_filter_rec(n.right.link(), f),
        ),
    }
}

impl<V: Clone + PartialEq> FiniteMap for OriginalTree<V> {
    type Value = V;

    fn empty() -> Self {
        OriginalTree::empty()
    }

    fn get(&self, key: &Positive) -> Option<&V> {
        OriginalTree::get(self, key)
    }

    fn set(&self, key: &Positive, value: V) -> Self {
        OriginalTree::set(self, key, value)
    }

    fn remove(&self, key: &Positive) -> Self {
        OriginalTree::remove(self, key)
    }

    fn elements(&self) -> Vec<(Positive, V)> {
        OriginalTree::elements(self)
    }

    fn map_filter<F: Fn(&V) -> Option<V>>(&self, f: F) -> Self {
        OriginalTree::map_filter(self, f)
    }

    fn combine<F: Fn(Option<&V>, Option<&V>) -> Option<V>>(&self, other: &Self, f: F) -> Self {
        OriginalTree::combine(self, other, f)
    }

    fn structural_eq(&self, other: &Self) -> bool {
        self == other
    }
}
