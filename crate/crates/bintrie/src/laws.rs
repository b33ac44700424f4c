//! Executable statements of the map laws, plus the samplers that feed them.
//!
//! Each checker replays one algebraic law over caller-supplied samples and
//! tallies violations into a [`LawReport`]. The laws are their own oracles:
//! `get` after `set` has a known answer, `combine` must agree with pointwise
//! evaluation of its merge function, and so on. Samplers draw keys from a
//! mixture of a small dense range and sparse string-encoded values so both
//! shallow and deep tree paths are exercised.

use std::error::Error;
use std::fmt;

use rand::Rng;

use crate::map::FiniteMap;
use crate::positive::Positive;

/// Outcome of replaying one law over a batch of samples.
#[derive(Debug, Clone, PartialEq)]
pub struct LawReport {
    pub law: String,
    pub trials: u64,
    pub failures: u64,
    /// Description of the first failing sample, if any.
    pub first_failure: Option<String>,
}

impl LawReport {
    fn new(law: &str) -> Self {
        LawReport {
            law: law.to_string(),
            trials: 0,
            failures: 0,
            first_failure: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn trial(&mut self, failure: Option<String>) {
        self.trials += 1;
        if let Some(detail) = failure {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail);
            }
        }
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} trials, {} failures", self.law, self.trials, self.failures)?;
        if let Some(detail) = &self.first_failure {
            write!(f, " (first: {detail})")?;
        }
        Ok(())
    }
}

/// A sample violated a checker's stated precondition; no law was tested.
#[derive(Debug, Clone, PartialEq)]
pub struct PreconditionError(pub String);

impl fmt::Display for PreconditionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "precondition violated: {}", self.0)
    }
}

impl Error for PreconditionError {}

/// Law: `get(k, empty)` is absent for every key.
pub fn check_get_empty<M: FiniteMap>(keys: &[Positive]) -> LawReport {
    let mut report = LawReport::new("get_empty");
    let empty = M::empty();
    for key in keys {
        report.trial(
            empty
                .get(key)
                .map(|_| format!("key {key}: get on empty returned a value")),
        );
    }
    report
}

/// Law: `get(k, set(k, v, m))` is exactly `v`.
pub fn check_get_set_same<M: FiniteMap<Value = u64>>(
    samples: &[(Positive, u64, M)],
) -> LawReport {
    let mut report = LawReport::new("get_set_same");
    for (key, value, map) in samples {
        let got = map.set(key, *value).get(key).copied();
        report.trial(if got == Some(*value) {
            None
        } else {
            Some(format!("key {key}: set {value} then get returned {got:?}"))
        });
    }
    report
}

/// Law: for `i != j`, `get(i, set(j, v, m)) = get(i, m)`. Samples are
/// `(i, j, v, m)`; any sample with `i = j` is a precondition error.
pub fn check_get_set_other<M: FiniteMap<Value = u64>>(
    samples: &[(Positive, Positive, u64, M)],
) -> Result<LawReport, PreconditionError> {
    if let Some((i, _, _, _)) = samples.iter().find(|(i, j, _, _)| i == j) {
        return Err(PreconditionError(format!(
            "get_set_other requires distinct keys, got i = j = {i}"
        )));
    }
    let mut report = LawReport::new("get_set_other");
    for (probe, target, value, map) in samples {
        let before = map.get(probe).copied();
        let after = map.set(target, *value).get(probe).copied();
        report.trial(if before == after {
            None
        } else {
            Some(format!(
                "probe {probe} after set({target}): before={before:?} after={after:?}"
            ))
        });
    }
    Ok(report)
}

/// Law: `get(k, map_filter(f, m))` equals `f` applied through `get(k, m)`.
/// Samples carry the probe keys to evaluate at.
pub fn check_map_filter<M, F>(f: F, samples: &[(M, Vec<Positive>)]) -> LawReport
where
    M: FiniteMap<Value = u64>,
    F: Fn(&u64) -> Option<u64>,
{
    let mut report = LawReport::new("map_filter");
    for (map, probes) in samples {
        let filtered = map.map_filter(&f);
        let bad = probes.iter().find_map(|k| {
            let direct = filtered.get(k).copied();
            let pointwise = map.get(k).and_then(&f);
            (direct != pointwise).then(|| {
                format!("key {k}: map_filter gave {direct:?}, pointwise gives {pointwise:?}")
            })
        });
        report.trial(bad);
    }
    report
}

/// Law: `get(k, combine(f, a, b)) = f(get(k, a), get(k, b))`. The merge
/// function must send the all-absent case to absent; that is validated once
/// up front and rejected as a precondition error.
pub fn check_combine<M, F>(
    f: F,
    samples: &[(M, M, Vec<Positive>)],
) -> Result<LawReport, PreconditionError>
where
    M: FiniteMap<Value = u64>,
    F: Fn(Option<&u64>, Option<&u64>) -> Option<u64>,
{
    if f(None, None).is_some() {
        return Err(PreconditionError(
            "combine merge function maps (absent, absent) to a value".to_string(),
        ));
    }
    let mut report = LawReport::new("combine");
    for (a, b, probes) in samples {
        let merged = a.combine(b, &f);
        let bad = probes.iter().find_map(|k| {
            let direct = merged.get(k).copied();
            let pointwise = f(a.get(k), b.get(k));
            (direct != pointwise).then(|| {
                format!("key {k}: combine gave {direct:?}, pointwise gives {pointwise:?}")
            })
        });
        report.trial(bad);
    }
    Ok(report)
}

/// Upper bound (exclusive) of the dense key range used by the samplers.
pub const DENSE_KEY_BOUND: u64 = 1 << 11;

/// One key from the mixed distribution: half uniform over a small dense
/// range, half byte encodings of short random words, whose values are far
/// apart and force deep right-heavy paths.
pub fn sample_key<R: Rng>(rng: &mut R) -> Positive {
    if rng.gen_bool(0.5) {
        Positive::try_from(rng.gen_range(1..DENSE_KEY_BOUND)).unwrap()
    } else {
        let len = rng.gen_range(1..=8);
        let word: Vec<u8> = (0..len).map(|_| rng.gen_range(b'a'..=b'z')).collect();
        Positive::encode_bytes(&word)
    }
}

/// A map built from random bindings, together with the keys that went in
/// (useful as probes that are known to be present).
pub struct SampledMap<M> {
    pub map: M,
    pub keys: Vec<Positive>,
}

pub fn sample_map<M, R>(rng: &mut R, size: usize) -> SampledMap<M>
where
    M: FiniteMap<Value = u64>,
    R: Rng,
{
    let mut map = M::empty();
    let mut keys = Vec::with_capacity(size);
    for _ in 0..size {
        let key = sample_key(rng);
        map = map.set(&key, rng.gen());
        keys.push(key);
    }
    SampledMap { map, keys }
}

/// Probe keys for a pair of maps: everything known to be in either, plus a
/// few fresh draws likely to be absent.
pub fn probes_for<R: Rng>(rng: &mut R, in_keys: &[&[Positive]], extra: usize) -> Vec<Positive> {
    let mut probes: Vec<Positive> = in_keys.iter().flat_map(|ks| ks.iter().cloned()).collect();
    probes.extend((0..extra).map(|_| sample_key(rng)));
    probes
}
