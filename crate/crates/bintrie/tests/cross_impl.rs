//! Cross-representation agreement: the three tries and the oracle expose
//! the same map, and the canonical tree equals a rebuild from sorted
//! bindings regardless of the route taken.

use bintrie::differential::run_differential;
use bintrie::script::{generate_script, OperationScript, Step, COMBINE_TABLES, FILTER_TABLES};
use bintrie::{CanonicalTree, FiniteMap, MapOracle, Node01Tree, OriginalTree, Positive};

fn final_state<M: FiniteMap<Value = u64>>(script: &OperationScript) -> M {
    let mut map = M::empty();
    for step in &script.steps {
        match step {
            Step::Set(k, v) => map = map.set(k, *v),
            Step::Remove(k) => map = map.remove(k),
            Step::Get(_) | Step::Elements => {}
            Step::MapFilter(id) => map = map.map_filter(FILTER_TABLES[*id].apply),
            Step::Combine(id, aux) => {
                let table = &COMBINE_TABLES[*id];
                let other = aux
                    .iter()
                    .fold(M::empty(), |m, (k, v)| m.set(k, *v));
                map = map.combine(&other, |a, b| table.apply(a, b));
            }
        }
    }
    map
}

#[test]
fn all_representations_expose_the_same_bindings() {
    for seed in [3, 77, 2024] {
        let script = generate_script(seed, 400);
        let original = final_state::<OriginalTree<u64>>(&script).elements();
        let node01 = final_state::<Node01Tree<u64>>(&script).elements();
        let canonical = final_state::<CanonicalTree<u64>>(&script).elements();
        let oracle = final_state::<MapOracle<u64>>(&script).elements();
        assert_eq!(original, oracle);
        assert_eq!(node01, oracle);
        assert_eq!(canonical, oracle);
    }
}

#[test]
fn the_differential_driver_accepts_every_representation() {
    let script = generate_script(5, 600);
    assert!(run_differential::<OriginalTree<u64>>(&script).passed());
    assert!(run_differential::<Node01Tree<u64>>(&script).passed());
    assert!(run_differential::<CanonicalTree<u64>>(&script).passed());
}

#[test]
fn canonical_trees_equal_their_sorted_rebuild() {
    for seed in 0..8 {
        let script = generate_script(seed, 300);
        let tree = final_state::<CanonicalTree<u64>>(&script);
        let oracle = final_state::<MapOracle<u64>>(&script);
        let rebuilt = oracle
            .elements()
            .into_iter()
            .fold(CanonicalTree::empty(), |m, (k, v)| m.set(&k, v));
        assert!(tree.structural_eq(&rebuilt), "seed {seed}");
    }
}

#[test]
fn a_failing_script_replays_from_its_text_form() {
    let script = generate_script(11, 200);
    let text = script.to_text();
    let reparsed = OperationScript::parse(&text).unwrap();
    assert_eq!(reparsed, script);
    let original = final_state::<OriginalTree<u64>>(&script).elements();
    let replayed = final_state::<OriginalTree<u64>>(&reparsed).elements();
    assert_eq!(original, replayed);
}

#[test]
fn the_loose_type_admits_aliases_the_operations_never_make() {
    // The operations keep loose trees tidy: a detour through an extra key
    // comes back to the same shape.
    let pos = |n: u64| Positive::try_from(n).unwrap();
    let leaf = OriginalTree::<u64>::empty;
    let pairs = [(1u64, 1u64), (5, 2), (7, 2)];
    let build = |order: &[usize]| {
        order.iter().fold(leaf(), |m, &i| {
            let (k, v) = pairs[i];
            m.set(&pos(k), v)
        })
    };
    let forward = build(&[0, 1, 2]);
    let with_detour = build(&[2, 1, 0]).set(&pos(9), 9).remove(&pos(9));
    assert!(forward.structural_eq(&with_detour));
    assert!(with_detour.is_well_formed());

    // But the type itself cannot promise that: a raw build can hide a
    // value-free node on an empty path, giving a second shape for the same
    // three bindings. No canonical tree with a second shape can exist, so
    // the same trick is unwritable against CanonicalTree.
    let branch = |v| OriginalTree::node(leaf(), Some(v), leaf());
    let right = OriginalTree::node(branch(2), None, branch(2));
    let alias = OriginalTree::node(
        OriginalTree::node(leaf(), None, leaf()),
        Some(1),
        right.clone(),
    );
    let straight = OriginalTree::node(leaf(), Some(1), right);
    assert_eq!(straight.elements(), alias.elements());
    assert_eq!(straight.elements(), forward.elements());
    assert!(!straight.structural_eq(&alias));
    assert!(straight.is_well_formed());
    assert!(!alias.is_well_formed());
}
