//! Replay a script against an implementation and the oracle side by side.
//!
//! Every step is applied to both maps; any observable disagreement is a
//! divergence. `Get` steps compare lookups directly, and the whole binding
//! sequence is compared against the oracle on a configurable cadence (every
//! step by default, which also proves `elements` stays sorted and complete
//! after every operation). Mutating steps additionally re-query the
//! pre-step map to confirm persistence: the old value must still answer as
//! it did before.
//!
//! On divergence the driver shrinks the script by greedy chunk removal
//! until no single step can be dropped, and reports the minimal script's
//! text form so it can be replayed from a file.

use crate::laws::LawReport;
use crate::map::FiniteMap;
use crate::oracle::MapOracle;
use crate::script::{OperationScript, Step, COMBINE_TABLES, FILTER_TABLES};

#[derive(Debug, Clone)]
pub struct DiffOptions {
    /// Compare the full binding sequence after every n-th step; `0` defers
    /// the comparison to the end of the script only.
    pub elements_every: usize,
    /// Re-query pre-step snapshots after `Set`/`Remove`.
    pub persistence_checks: bool,
}

impl Default for DiffOptions {
    fn default() -> Self {
        DiffOptions { elements_every: 1, persistence_checks: true }
    }
}

/// First divergence, if any: step index (or `steps.len()` for the final
/// sweep) and a description.
fn replay<M: FiniteMap<Value = u64>>(
    script: &OperationScript,
    opts: &DiffOptions,
) -> Option<(usize, String)> {
    let mut map = M::empty();
    let mut oracle = MapOracle::<u64>::empty();

    let compare_elements = |map: &M, oracle: &MapOracle<u64>| -> Option<String> {
        let got = map.elements();
        let want = oracle.bindings();
        for pair in got.windows(2) {
            if pair[0].0 >= pair[1].0 {
                return Some(format!(
                    "elements out of order: {} before {}",
                    pair[0].0, pair[1].0
                ));
            }
        }
        if got.len() != want.len() {
            return Some(format!(
                "elements has {} bindings, oracle has {}",
                got.len(),
                want.len()
            ));
        }
        got.iter().zip(want).find_map(|(g, w)| {
            (g != w).then(|| {
                format!(
                    "binding mismatch: impl ({} -> {}), oracle ({} -> {})",
                    g.0, g.1, w.0, w.1
                )
            })
        })
    };

    for (i, step) in script.steps.iter().enumerate() {
        match step {
            Step::Set(k, v) => {
                let before = map.get(k).copied();
                let next = map.set(k, *v);
                if opts.persistence_checks && map.get(k).copied() != before {
                    return Some((i, format!("set({k}) mutated the input map")));
                }
                map = next;
                oracle = oracle.set(k, *v);
            }
            Step::Remove(k) => {
                let before = map.get(k).copied();
                let next = map.remove(k);
                if opts.persistence_checks && map.get(k).copied() != before {
                    return Some((i, format!("remove({k}) mutated the input map")));
                }
                map = next;
                oracle = oracle.remove(k);
            }
            Step::Get(k) => {
                let got = map.get(k).copied();
                let want = oracle.get(k).copied();
                if got != want {
                    return Some((i, format!("get({k}): impl {got:?}, oracle {want:?}")));
                }
            }
            Step::Elements => {
                if let Some(msg) = compare_elements(&map, &oracle) {
                    return Some((i, msg));
                }
            }
            Step::MapFilter(id) => {
                let f = FILTER_TABLES[*id].apply;
                map = map.map_filter(f);
                oracle = oracle.map_filter(f);
            }
            Step::Combine(id, aux) => {
                let table = &COMBINE_TABLES[*id];
                let mut aux_map = M::empty();
                let mut aux_oracle = MapOracle::empty();
                for (k, v) in aux {
                    aux_map = aux_map.set(k, *v);
                    aux_oracle = aux_oracle.set(k, *v);
                }
                map = map.combine(&aux_map, |a, b| table.apply(a, b));
                oracle = oracle.combine(&aux_oracle, |a, b| table.apply(a, b));
            }
        }
        if opts.elements_every > 0 && (i + 1) % opts.elements_every == 0 {
            if let Some(msg) = compare_elements(&map, &oracle) {
                return Some((i, msg));
            }
        }
    }
    compare_elements(&map, &oracle).map(|msg| (script.steps.len(), msg))
}

/// Greedy chunk removal: repeatedly drop the largest spans that keep the
/// script failing, down to spans of one step. The result still fails and is
/// locally minimal.
fn shrink<M: FiniteMap<Value = u64>>(
    script: &OperationScript,
    opts: &DiffOptions,
) -> OperationScript {
    let mut current = script.clone();
    let mut chunk = (current.steps.len() / 2).max(1);
    loop {
        let mut i = 0;
        while i < current.steps.len() {
            let mut candidate = current.clone();
            let end = (i + chunk).min(candidate.steps.len());
            candidate.steps.drain(i..end);
            if replay::<M>(&candidate, opts).is_some() {
                current = candidate;
            } else {
                i += chunk;
            }
        }
        if chunk == 1 {
            return current;
        }
        chunk /= 2;
    }
}

pub fn run_differential<M: FiniteMap<Value = u64>>(script: &OperationScript) -> LawReport {
    run_differential_with::<M>(script, &DiffOptions::default())
}

pub fn run_differential_with<M: FiniteMap<Value = u64>>(
    script: &OperationScript,
    opts: &DiffOptions,
) -> LawReport {
    let mut report = LawReport {
        law: "differential".to_string(),
        trials: 1,
        failures: 0,
        first_failure: None,
    };
    if let Some((step, msg)) = replay::<M>(script, opts) {
        let minimal = shrink::<M>(script, opts);
        report.failures = 1;
        report.first_failure = Some(format!(
            "step {step}: {msg}; minimal script:\n{}",
            minimal.to_text()
        ));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::CanonicalTree;
    use crate::node01::Node01Tree;
    use crate::original::OriginalTree;
    use crate::positive::Positive;
    use crate::script::generate_script;

    fn pos(n: u64) -> Positive {
        Positive::try_from(n).unwrap()
    }

    #[test]
    fn empty_script_has_no_divergences() {
        let report = run_differential::<CanonicalTree<u64>>(&OperationScript::empty());
        assert!(report.passed());
    }

    #[test]
    fn random_scripts_agree_with_the_oracle() {
        for seed in 0..4 {
            let script = generate_script(seed, 800);
            assert!(run_differential::<OriginalTree<u64>>(&script).passed());
            assert!(run_differential::<Node01Tree<u64>>(&script).passed());
            assert!(run_differential::<CanonicalTree<u64>>(&script).passed());
        }
    }

    /// A map whose `set` silently drops bindings at even keys. The driver
    /// must notice, and with the binding sweep deferred to the end of the
    /// script the first reported divergence is the first `Get` of a dropped
    /// key.
    #[derive(Clone)]
    struct DropsEvenSets(MapOracle<u64>);

    impl FiniteMap for DropsEvenSets {
        type Value = u64;

        fn empty() -> Self {
            DropsEvenSets(MapOracle::empty())
        }
        fn get(&self, key: &Positive) -> Option<&u64> {
            self.0.get(key)
        }
        fn set(&self, key: &Positive, value: u64) -> Self {
            let even = key.bits().first() == Some(&false);
            if even {
                self.clone()
            } else {
                DropsEvenSets(self.0.set(key, value))
            }
        }
        fn remove(&self, key: &Positive) -> Self {
            DropsEvenSets(self.0.remove(key))
        }
        fn elements(&self) -> Vec<(Positive, u64)> {
            self.0.elements()
        }
        fn map_filter<F: Fn(&u64) -> Option<u64>>(&self, f: F) -> Self {
            DropsEvenSets(self.0.map_filter(f))
        }
        fn combine<F: Fn(Option<&u64>, Option<&u64>) -> Option<u64>>(
            &self,
            other: &Self,
            f: F,
        ) -> Self {
            DropsEvenSets(self.0.combine(&other.0, f))
        }
        fn structural_eq(&self, other: &Self) -> bool {
            self.0.structural_eq(&other.0)
        }
    }

    #[test]
    fn a_dropped_set_is_caught_at_the_first_get() {
        let script = OperationScript {
            seed: 0,
            steps: vec![
                Step::Set(pos(7), 1),
                Step::Set(pos(2), 5),
                Step::Get(pos(7)),
                Step::Get(pos(2)),
                Step::Set(pos(3), 9),
            ],
        };
        let end_only = DiffOptions { elements_every: 0, persistence_checks: false };
        let report = run_differential_with::<DropsEvenSets>(&script, &end_only);
        assert_eq!(report.failures, 1);
        let detail = report.first_failure.unwrap();
        assert!(detail.starts_with("step 3: get(2)"), "{detail}");
        // The shrunk script needs only the bad set; the final sweep sees it.
        let minimal_text = detail.split("minimal script:\n").nth(1).unwrap();
        let minimal = OperationScript::parse(minimal_text).unwrap();
        assert_eq!(minimal.steps, vec![Step::Set(pos(2), 5)]);
    }

    #[test]
    fn per_step_cadence_catches_the_drop_at_the_set() {
        let script = OperationScript {
            seed: 0,
            steps: vec![Step::Set(pos(7), 1), Step::Set(pos(2), 5), Step::Get(pos(2))],
        };
        let report = run_differential::<DropsEvenSets>(&script);
        let detail = report.first_failure.unwrap();
        assert!(detail.starts_with("step 1:"), "{detail}");
    }
}
