//! Randomized operation scripts and their text form.
//!
//! A script is a replayable sequence of map operations. The differential
//! driver runs one against an implementation and the oracle side by side;
//! when it finds a divergence it shrinks the script and prints it in a
//! line-oriented text form that can be replayed later from a file.
//!
//! Value-transforming steps cannot carry closures through a text file, so
//! filters and merge functions are drawn from small named registries and
//! referenced by id. Merge functions are decision tables over operand
//! presence with the all-absent case hardwired to absent, which makes the
//! combine precondition hold by construction. A combine step carries the
//! second operand's bindings inline, keeping scripts self-contained.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::laws::{sample_key, DENSE_KEY_BOUND};
use crate::positive::Positive;

/// A named value filter for `MapFilter` steps.
pub struct FilterTable {
    pub name: &'static str,
    pub apply: fn(&u64) -> Option<u64>,
}

pub const FILTER_TABLES: &[FilterTable] = &[
    FilterTable {
        name: "increment",
        apply: |v| Some(v.wrapping_add(1)),
    },
    FilterTable {
        name: "keep_even",
        apply: |v| (v % 2 == 0).then_some(*v),
    },
    FilterTable {
        name: "halve_or_drop",
        apply: |v| (v % 2 == 0).then_some(v / 2),
    },
    FilterTable {
        name: "drop_all",
        apply: |_| None,
    },
];

/// A named merge function for `Combine` steps, split by operand presence.
/// The all-absent case is not representable, so `apply(None, None)` is
/// always absent.
pub struct CombineTable {
    pub name: &'static str,
    pub left_only: fn(u64) -> Option<u64>,
    pub right_only: fn(u64) -> Option<u64>,
    pub both: fn(u64, u64) -> Option<u64>,
}

impl CombineTable {
    pub fn apply(&self, a: Option<&u64>, b: Option<&u64>) -> Option<u64> {
        match (a, b) {
            (None, None) => None,
            (Some(a), None) => (self.left_only)(*a),
            (None, Some(b)) => (self.right_only)(*b),
            (Some(a), Some(b)) => (self.both)(*a, *b),
        }
    }
}

pub const COMBINE_TABLES: &[CombineTable] = &[
    CombineTable {
        name: "left_biased_union",
        left_only: Some,
        right_only: Some,
        both: |a, _| Some(a),
    },
    CombineTable {
        name: "sum_union",
        left_only: Some,
        right_only: Some,
        both: |a, b| Some(a.wrapping_add(b)),
    },
    CombineTable {
        name: "intersection_sum",
        left_only: |_| None,
        right_only: |_| None,
        both: |a, b| Some(a.wrapping_add(b)),
    },
    CombineTable {
        name: "symmetric_difference",
        left_only: Some,
        right_only: Some,
        both: |_, _| None,
    },
];

#[derive(Debug, Clone, PartialEq)]
pub enum Step {
    Set(Positive, u64),
    Remove(Positive),
    Get(Positive),
    Elements,
    /// Index into [`FILTER_TABLES`].
    MapFilter(usize),
    /// Index into [`COMBINE_TABLES`] and the second operand's bindings.
    Combine(usize, Vec<(Positive, u64)>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperationScript {
    pub seed: u64,
    pub steps: Vec<Step>,
}

impl OperationScript {
    pub fn empty() -> Self {
        OperationScript { seed: 0, steps: Vec::new() }
    }

    /// One step per line. `SEED` and `#` comment lines are tolerated by the
    /// parser; keys and values print in decimal.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "SEED {}", self.seed);
        for step in &self.steps {
            match step {
                Step::Set(k, v) => {
                    let _ = writeln!(out, "SET {k} {v}");
                }
                Step::Remove(k) => {
                    let _ = writeln!(out, "DEL {k}");
                }
                Step::Get(k) => {
                    let _ = writeln!(out, "GET {k}");
                }
                Step::Elements => {
                    let _ = writeln!(out, "ELEMS");
                }
                Step::MapFilter(id) => {
                    let _ = writeln!(out, "MAPFILTER {id}");
                }
                Step::Combine(id, aux) => {
                    let bindings: Vec<String> =
                        aux.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    if bindings.is_empty() {
                        let _ = writeln!(out, "COMBINE {id}");
                    } else {
                        let _ = writeln!(out, "COMBINE {id} {}", bindings.join(","));
                    }
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<OperationScript, ScriptParseError> {
        let fail = |line: usize, message: String| ScriptParseError { line, message };
        let mut script = OperationScript::empty();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut words = line.split_whitespace();
            let op = words.next().unwrap();
            let key_arg = |words: &mut std::str::SplitWhitespace| {
                words
                    .next()
                    .ok_or_else(|| fail(line_no, format!("{op} needs a key")))?
                    .parse::<Positive>()
                    .map_err(|e| fail(line_no, format!("bad key: {e}")))
            };
            let step = match op {
                "SEED" => {
                    script.seed = words
                        .next()
                        .ok_or_else(|| fail(line_no, "SEED needs a value".into()))?
                        .parse()
                        .map_err(|e| fail(line_no, format!("bad seed: {e}")))?;
                    continue;
                }
                "SET" => {
                    let key = key_arg(&mut words)?;
                    let value = words
                        .next()
                        .ok_or_else(|| fail(line_no, "SET needs a value".into()))?
                        .parse()
                        .map_err(|e| fail(line_no, format!("bad value: {e}")))?;
                    Step::Set(key, value)
                }
                "DEL" => Step::Remove(key_arg(&mut words)?),
                "GET" => Step::Get(key_arg(&mut words)?),
                "ELEMS" => Step::Elements,
                "MAPFILTER" => {
                    let id: usize = words
                        .next()
                        .ok_or_else(|| fail(line_no, "MAPFILTER needs a table id".into()))?
                        .parse()
                        .map_err(|e| fail(line_no, format!("bad table id: {e}")))?;
                    if id >= FILTER_TABLES.len() {
                        return Err(fail(line_no, format!("unknown filter table {id}")));
                    }
                    Step::MapFilter(id)
                }
                "COMBINE" => {
                    let id: usize = words
                        .next()
                        .ok_or_else(|| fail(line_no, "COMBINE needs a table id".into()))?
                        .parse()
                        .map_err(|e| fail(line_no, format!("bad table id: {e}")))?;
                    if id >= COMBINE_TABLES.len() {
                        return Err(fail(line_no, format!("unknown combine table {id}")));
                    }
                    let mut aux = Vec::new();
                    if let Some(list) = words.next() {
                        for pair in list.split(',') {
                            let (k, v) = pair.split_once('=').ok_or_else(|| {
                                fail(line_no, format!("binding `{pair}` is not key=value"))
                            })?;
                            let key = k
                                .parse::<Positive>()
                                .map_err(|e| fail(line_no, format!("bad key: {e}")))?;
                            let value = v
                                .parse()
                                .map_err(|e| fail(line_no, format!("bad value: {e}")))?;
                            aux.push((key, value));
                        }
                    }
                    Step::Combine(id, aux)
                }
                other => return Err(fail(line_no, format!("unknown operation `{other}`"))),
            };
            if let Some(extra) = words.next() {
                return Err(fail(line_no, format!("trailing input `{extra}`")));
            }
            script.steps.push(step);
        }
        Ok(script)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScriptParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ScriptParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ScriptParseError {}

/// Generates a random script of `len` steps, deterministic in `seed`.
///
/// Keys come from a small per-script pool (a dense range slice plus a few
/// string-encoded stragglers) so that overwrites, hits, and removals of
/// present keys all occur often; an unbounded key stream would almost never
/// collide with itself.
pub fn generate_script(seed: u64, len: usize) -> OperationScript {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<Positive> = (0..64)
        .map(|_| Positive::try_from(rng.gen_range(1..DENSE_KEY_BOUND)).unwrap())
        .collect();
    for _ in 0..16 {
        pool.push(sample_key(&mut rng));
    }
    let mut steps = Vec::with_capacity(len);
    for _ in 0..len {
        let step = match rng.gen_range(0..100u32) {
            0..=39 => {
                let k = pool.choose(&mut rng).unwrap().clone();
                Step::Set(k, rng.gen())
            }
            40..=57 => Step::Remove(pool.choose(&mut rng).unwrap().clone()),
            58..=82 => Step::Get(pool.choose(&mut rng).unwrap().clone()),
            83..=87 => Step::Elements,
            88..=94 => Step::MapFilter(rng.gen_range(0..FILTER_TABLES.len())),
            _ => {
                let id = rng.gen_range(0..COMBINE_TABLES.len());
                let n = rng.gen_range(0..=8);
                let aux = (0..n)
                    .map(|_| (pool.choose(&mut rng).unwrap().clone(), rng.gen()))
                    .collect();
                Step::Combine(id, aux)
            }
        };
        steps.push(step);
    }
    OperationScript { seed, steps }
}
