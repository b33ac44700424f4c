//! Workload runners.
//!
//! Each runner follows the same protocol: a correctness pass with hard
//! assertions, then timed repetitions until one second has accumulated or
//! ten repetitions have run, then one instrumented pass that counts node
//! constructions. Timing and counting never share a pass, so the timed code
//! carries a zero-size counter that compiles to nothing.
//!
//! The baseline is the standard library's ordered map. It stands in for a
//! conventional balanced-tree library, keyed by `Positive` for the keyed
//! workloads and by the raw strings for the dictionary workload; it is
//! reported informationally and never instrumented.

use std::collections::BTreeMap;
use std::fmt;
use std::hint::black_box;
use std::time::Instant;

use anyhow::{bail, ensure, Result};
use bintrie::{
    CanonicalTree, Count, Counter, Dict, FiniteMap, NoCount, Node01Tree, OriginalTree, Positive,
};

use crate::report::BenchReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImplTag {
    Original,
    Node01,
    Canonical,
    Baseline,
}

impl fmt::Display for ImplTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ImplTag::Original => "original",
            ImplTag::Node01 => "node01",
            ImplTag::Canonical => "canonical",
            ImplTag::Baseline => "baseline",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WorkloadTag {
    Dense,
    Sparse,
    Repeated,
    Dict,
}

impl fmt::Display for WorkloadTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WorkloadTag::Dense => "dense",
            WorkloadTag::Sparse => "sparse",
            WorkloadTag::Repeated => "repeated",
            WorkloadTag::Dict => "dict",
        })
    }
}

/// The slice of the map interface the runners need, uniform across the
/// three trie representations.
trait Trie: Clone {
    fn empty() -> Self;
    fn set_c<C: Count>(&self, key: &Positive, value: u64, counter: &C) -> Self;
    fn get(&self, key: &Positive) -> Option<&u64>;
    fn node_count(&self) -> u64;
    fn word_count(&self) -> u64;
    /// Nodes that carry a value; equals the binding count in every
    /// representation.
    fn value_nodes(&self) -> u64;
    fn well_formed(&self) -> bool {
        true
    }
}

impl Trie for OriginalTree<u64> {
    fn empty() -> Self {
        OriginalTree::empty()
    }
    fn set_c<C: Count>(&self, key: &Positive, value: u64, counter: &C) -> Self {
        self.set_counted(key, value, counter)
    }
    fn get(&self, key: &Positive) -> Option<&u64> {
        OriginalTree::get(self, key)
    }
    fn node_count(&self) -> u64 {
        OriginalTree::node_count(self)
    }
    fn word_count(&self) -> u64 {
        OriginalTree::word_count(self)
    }
    fn value_nodes(&self) -> u64 {
        self.binding_count()
    }
    fn well_formed(&self) -> bool {
        self.is_well_formed()
    }
}

impl Trie for Node01Tree<u64> {
    fn empty() -> Self {
        Node01Tree::empty()
    }
    fn set_c<C: Count>(&self, key: &Positive, value: u64, counter: &C) -> Self {
        self.set_counted(key, value, counter)
    }
    fn get(&self, key: &Positive) -> Option<&u64> {
        Node01Tree::get(self, key)
    }
    fn node_count(&self) -> u64 {
        Node01Tree::node_count(self)
    }
    fn word_count(&self) -> u64 {
        Node01Tree::word_count(self)
    }
    fn value_nodes(&self) -> u64 {
        self.binding_count()
    }
}

impl Trie for CanonicalTree<u64> {
    fn empty() -> Self {
        CanonicalTree::empty()
    }
    fn set_c<C: Count>(&self, key: &Positive, value: u64, counter: &C) -> Self {
        self.set_counted(key, value, counter)
    }
    fn get(&self, key: &Positive) -> Option<&u64> {
        CanonicalTree::get(self, key)
    }
    fn node_count(&self) -> u64 {
        CanonicalTree::node_count(self)
    }
    fn word_count(&self) -> u64 {
        CanonicalTree::word_count(self)
    }
    fn value_nodes(&self) -> u64 {
        self.payload_slots()
    }
}

/// Repeat `work` until one second accumulates or ten repetitions finish.
fn time_reps<F: FnMut()>(mut work: F) -> Vec<f64> {
    let mut times = Vec::new();
    let mut total = 0.0;
    loop {
        let start = Instant::now();
        work();
        let elapsed = start.elapsed().as_secs_f64();
        times.push(elapsed);
        total += elapsed;
        if total >= 1.0 || times.len() >= 10 {
            return times;
        }
    }
}

fn build<T: Trie, C: Count>(keys: &[Positive], counter: &C) -> T {
    let mut map = T::empty();
    for (i, key) in keys.iter().enumerate() {
        map = map.set_c(key, i as u64, counter);
    }
    map
}

/// Insert every key, then look every key up: the dense and sparse
/// workloads, differing only in where the keys came from.
fn keyed_workload<T: Trie>(
    tag: ImplTag,
    workload: WorkloadTag,
    keys: &[Positive],
) -> Result<BenchReport> {
    let map: T = build(keys, &NoCount);
    for (i, key) in keys.iter().enumerate() {
        ensure!(
            map.get(key) == Some(&(i as u64)),
            "{tag}/{workload}: key {key} lost after insertion"
        );
    }

    let times = time_reps(|| {
        let map: T = build(keys, &NoCount);
        for key in keys {
            black_box(map.get(key));
        }
    });

    let counter = Counter::new();
    let counted: T = build(keys, &counter);
    let mut report = BenchReport::from_reps(tag, workload, times);
    report.allocated_nodes = Some(counter.nodes());
    report.allocated_words = Some(counter.words());
    report.live_nodes = Some(counted.node_count());
    report.live_words = Some(counted.word_count());
    Ok(report)
}

fn keyed_baseline(workload: WorkloadTag, keys: &[Positive]) -> Result<BenchReport> {
    let mut map = BTreeMap::new();
    for (i, key) in keys.iter().enumerate() {
        map.insert(key.clone(), i as u64);
    }
    for (i, key) in keys.iter().enumerate() {
        ensure!(
            map.get(key) == Some(&(i as u64)),
            "baseline/{workload}: key {key} lost after insertion"
        );
    }
    let times = time_reps(|| {
        let mut map = BTreeMap::new();
        for (i, key) in keys.iter().enumerate() {
            map.insert(key.clone(), i as u64);
        }
        for key in keys {
            black_box(map.get(key));
        }
    });
    Ok(BenchReport::from_reps(ImplTag::Baseline, workload, times))
}

fn dense_keys(n: u64) -> Vec<Positive> {
    (1..=n).map(|i| Positive::try_from(i).unwrap()).collect()
}

pub fn run_dense(tag: ImplTag, n: u64) -> Result<BenchReport> {
    ensure!(n >= 1, "dense key count must be at least 1");
    let keys = dense_keys(n);
    match tag {
        ImplTag::Original => keyed_workload::<OriginalTree<u64>>(tag, WorkloadTag::Dense, &keys),
        ImplTag::Node01 => keyed_workload::<Node01Tree<u64>>(tag, WorkloadTag::Dense, &keys),
        ImplTag::Canonical => keyed_workload::<CanonicalTree<u64>>(tag, WorkloadTag::Dense, &keys),
        ImplTag::Baseline => keyed_baseline(WorkloadTag::Dense, &keys),
    }
}

pub fn run_sparse(tag: ImplTag, words: &[String]) -> Result<BenchReport> {
    ensure!(!words.is_empty(), "sparse corpus is empty");
    let keys: Vec<Positive> = words
        .iter()
        .map(|w| Positive::encode_bytes(w.as_bytes()))
        .collect();
    match tag {
        ImplTag::Original => keyed_workload::<OriginalTree<u64>>(tag, WorkloadTag::Sparse, &keys),
        ImplTag::Node01 => keyed_workload::<Node01Tree<u64>>(tag, WorkloadTag::Sparse, &keys),
        ImplTag::Canonical => {
            keyed_workload::<CanonicalTree<u64>>(tag, WorkloadTag::Sparse, &keys)
        }
        ImplTag::Baseline => keyed_baseline(WorkloadTag::Sparse, &keys),
    }
}

/// Keys 1..=7 overwritten round-robin for `iterations` insertions. The live
/// structure must stay at the minimal seven nodes; unbounded growth here is
/// the failure mode this workload exists to catch.
const REPEATED_KEYS: u64 = 7;

fn repeated_generic<T: Trie>(tag: ImplTag, iterations: u64) -> Result<BenchReport> {
    let keys = dense_keys(REPEATED_KEYS);
    let cycle = |counter: &dyn Fn(&T, &Positive, u64) -> T| {
        let mut map = T::empty();
        for i in 0..iterations {
            map = counter(&map, &keys[(i % REPEATED_KEYS) as usize], i);
        }
        map
    };

    let map = cycle(&|m, k, i| m.set_c(k, i, &NoCount));
    ensure!(
        map.node_count() <= REPEATED_KEYS,
        "{tag}/repeated: {} live nodes after overwrites, expected at most {REPEATED_KEYS}",
        map.node_count()
    );
    ensure!(
        map.value_nodes() == REPEATED_KEYS,
        "{tag}/repeated: {} value-bearing nodes, expected {REPEATED_KEYS}",
        map.value_nodes()
    );
    ensure!(map.well_formed(), "{tag}/repeated: tree not well formed");

    let times = time_reps(|| {
        black_box(cycle(&|m, k, i| m.set_c(k, i, &NoCount)));
    });

    let counter = Counter::new();
    let counted = cycle(&|m, k, i| m.set_c(k, i, &counter));
    let mut report = BenchReport::from_reps(tag, WorkloadTag::Repeated, times);
    report.allocated_nodes = Some(counter.nodes());
    report.allocated_words = Some(counter.words());
    report.live_nodes = Some(counted.node_count());
    report.live_words = Some(counted.word_count());
    Ok(report)
}

pub fn run_repeated(tag: ImplTag, iterations: u64) -> Result<BenchReport> {
    ensure!(iterations >= 1, "iteration count must be at least 1");
    match tag {
        ImplTag::Original => repeated_generic::<OriginalTree<u64>>(tag, iterations),
        ImplTag::Node01 => repeated_generic::<Node01Tree<u64>>(tag, iterations),
        ImplTag::Canonical => repeated_generic::<CanonicalTree<u64>>(tag, iterations),
        ImplTag::Baseline => {
            let keys = dense_keys(REPEATED_KEYS);
            let mut map = BTreeMap::new();
            for i in 0..iterations {
                map.insert(keys[(i % REPEATED_KEYS) as usize].clone(), i);
            }
            ensure!(map.len() as u64 == REPEATED_KEYS);
            let times = time_reps(|| {
                let mut map = BTreeMap::new();
                for i in 0..iterations {
                    map.insert(keys[(i % REPEATED_KEYS) as usize].clone(), i);
                }
                black_box(map.len());
            });
            Ok(BenchReport::from_reps(
                ImplTag::Baseline,
                WorkloadTag::Repeated,
                times,
            ))
        }
    }
}

/// String keys converted on the fly; the conversion cost is part of the
/// workload by design.
fn dict_generic<T>(tag: ImplTag, words: &[String]) -> Result<BenchReport>
where
    T: Trie + FiniteMap<Value = u64>,
{
    let mut dict = Dict::<T>::empty();
    for (i, w) in words.iter().enumerate() {
        dict = dict.set(w.as_bytes(), i as u64);
    }
    for (i, w) in words.iter().enumerate() {
        ensure!(
            dict.get(w.as_bytes()) == Some(&(i as u64)),
            "{tag}/dict: word `{w}` lost after insertion"
        );
    }

    let times = time_reps(|| {
        let mut dict = Dict::<T>::empty();
        for (i, w) in words.iter().enumerate() {
            dict = dict.set(w.as_bytes(), i as u64);
        }
        for w in words {
            black_box(dict.get(w.as_bytes()));
        }
    });

    // Counting goes through the backing directly; the dictionary layer adds
    // no constructions of its own.
    let counter = Counter::new();
    let keys: Vec<Positive> = words
        .iter()
        .map(|w| Positive::encode_bytes(w.as_bytes()))
        .collect();
    let counted: T = build(&keys, &counter);
    let mut report = BenchReport::from_reps(tag, WorkloadTag::Dict, times);
    report.allocated_nodes = Some(counter.nodes());
    report.allocated_words = Some(counter.words());
    report.live_nodes = Some(counted.node_count());
    report.live_words = Some(counted.word_count());
    Ok(report)
}

pub fn run_dict(tag: ImplTag, words: &[String]) -> Result<BenchReport> {
    ensure!(!words.is_empty(), "dictionary corpus is empty");
    match tag {
        ImplTag::Original => dict_generic::<OriginalTree<u64>>(tag, words),
        ImplTag::Canonical => dict_generic::<CanonicalTree<u64>>(tag, words),
        ImplTag::Baseline => {
            let mut map = BTreeMap::new();
            for (i, w) in words.iter().enumerate() {
                map.insert(w.clone(), i as u64);
            }
            for (i, w) in words.iter().enumerate() {
                ensure!(map.get(w) == Some(&(i as u64)));
            }
            let times = time_reps(|| {
                let mut map = BTreeMap::new();
                for (i, w) in words.iter().enumerate() {
                    map.insert(w.clone(), i as u64);
                }
                for w in words {
                    black_box(map.get(w));
                }
            });
            Ok(BenchReport::from_reps(
                ImplTag::Baseline,
                WorkloadTag::Dict,
                times,
            ))
        }
        ImplTag::Node01 => bail!("the dict workload runs original, canonical, or baseline"),
    }
}
