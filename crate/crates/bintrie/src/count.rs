//! Instrumentation hooks for node allocation and traversal measurements.
//!
//! Trie operations that allocate are written once, generic over a [`Count`]
//! sink. Timing runs pass [`NoCount`], which monomorphizes to nothing, so an
//! uninstrumented call carries zero counting overhead. Instrumented runs pass
//! a [`Counter`] and read it afterwards.
//!
//! Counts come in two units:
//!
//! * `nodes`: one per constructed (or, for element enumeration, visited) node.
//! * `words`: the node's field count plus a header word, the footprint the
//!   node would have in a pointer-based runtime. Node counts are blind to
//!   representation (two maps with the same bindings have the same number of
//!   nodes in every representation here), so memory comparisons use words.

use std::cell::Cell;

pub trait Count {
    fn record(&self, words: u64);
}

/// Zero-cost sink for uninstrumented runs.
pub struct NoCount;

impl Count for NoCount {
    #[inline(always)]
    fn record(&self, _words: u64) {}
}

/// Accumulating sink. Single-threaded by design; instrumented runs are
/// sequential.
#[derive(Debug, Default)]
pub struct Counter {
    nodes: Cell<u64>,
    words: Cell<u64>,
}

impl Counter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.get()
    }

    pub fn words(&self) -> u64 {
        self.words.get()
    }

    pub fn reset(&self) {
        self.nodes.set(0);
        self.words.set(0);
    }
}

impl Count for Counter {
    #[inline]
    fn record(&self, words: u64) {
        self.nodes.set(self.nodes.get() + 1);
        self.words.set(self.words.get() + words);
    }
}
