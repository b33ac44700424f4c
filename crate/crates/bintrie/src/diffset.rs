//! Canonical sets of positive numbers as difference lists.
//!
//! A set is stored as the gap sequence of its sorted elements: the first
//! element, then each following element minus its predecessor. Every gap is
//! at least 1, so it is itself a [`Positive`], the decoded elements are
//! strictly increasing by construction, and no second representation of the
//! same set exists. Structural equality of gap sequences coincides with set
//! equality, the same canonicity property the seven-form trie has, reached
//! here with nothing but arithmetic.
//!
//! Gaps are never larger than the elements they stand between, so a
//! difference list also never takes more bits to write down than the sorted
//! element list it encodes.

use num_bigint::BigUint;

use crate::positive::{NotPositiveError, Positive};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffSet {
    gaps: Vec<Positive>,
}

impl DiffSet {
    pub fn empty() -> Self {
        DiffSet { gaps: Vec::new() }
    }

    pub fn gaps(&self) -> &[Positive] {
        &self.gaps
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    /// Sorts, deduplicates, and stores the gaps. Accepts any order and
    /// duplicates; the result is canonical.
    pub fn of_elements<I: IntoIterator<Item = Positive>>(elements: I) -> Self {
        let mut sorted: Vec<Positive> = elements.into_iter().collect();
        sorted.sort_unstable();
        sorted.dedup();
        let mut gaps = Vec::with_capacity(sorted.len());
        let mut prev = BigUint::ZERO;
        for e in sorted {
            let n = e.to_biguint();
            // n > prev, so the gap is at least 1.
            gaps.push(Positive::try_from(n.clone() - &prev).unwrap());
            prev = n;
        }
        DiffSet { gaps }
    }

    /// Convenience over machine integers; zero is not an element of any set
    /// of positives.
    pub fn from_u64s(elements: &[u64]) -> Result<Self, NotPositiveError> {
        let parsed: Result<Vec<Positive>, _> =
            elements.iter().map(|&n| Positive::try_from(n)).collect();
        Ok(DiffSet::of_elements(parsed?))
    }

    /// Running sums of the gaps; inverse of [`DiffSet::of_elements`].
    pub fn elements(&self) -> Vec<Positive> {
        let mut acc = BigUint::ZERO;
        self.gaps
            .iter()
            .map(|gap| {
                acc += gap.to_biguint();
                Positive::try_from(&acc).unwrap()
            })
            .collect()
    }

    pub fn member(&self, x: &Positive) -> bool {
        let target = x.to_biguint();
        let mut acc = BigUint::ZERO;
        for gap in &self.gaps {
            acc += gap.to_biguint();
            if acc == target {
                return true;
            }
            if acc > target {
                return false;
            }
        }
        false
    }

    pub fn insert(&self, x: &Positive) -> Self {
        let mut elements = self.elements();
        elements.push(x.clone());
        DiffSet::of_elements(elements)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut elements = self.elements();
        elements.extend(other.elements());
        DiffSet::of_elements(elements)
    }

    /// Total bits stored across all gaps, for comparing against the sorted
    /// element list's total.
    pub fn gap_bits(&self) -> u64 {
        self.gaps.iter().map(|g| g.bit_length() as u64).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set_of(elements: &[u64]) -> DiffSet {
        DiffSet::from_u64s(elements).unwrap()
    }

    fn gaps_of(s: &DiffSet) -> Vec<u64> {
        s.gaps().iter().map(|g| g.to_u64().unwrap()).collect()
    }

    #[test]
    fn the_set_1_4_9_11_is_the_gaps_1_3_5_2() {
        let s = set_of(&[1, 4, 9, 11]);
        assert_eq!(gaps_of(&s), vec![1, 3, 5, 2]);
        let decoded: Vec<u64> = s.elements().iter().map(|e| e.to_u64().unwrap()).collect();
        assert_eq!(decoded, vec![1, 4, 9, 11]);
    }

    #[test]
    fn duplicates_and_order_do_not_matter() {
        assert_eq!(set_of(&[11, 4, 1, 9, 4]), set_of(&[1, 4, 9, 11]));
        assert_eq!(set_of(&[]), DiffSet::empty());
    }

    #[test]
    fn zero_is_rejected() {
        assert!(DiffSet::from_u64s(&[1, 0, 4]).is_err());
    }

    #[test]
    fn membership_walks_the_running_sum() {
        let s = set_of(&[1, 4, 9, 11]);
        assert!(s.member(&Positive::try_from(9u64).unwrap()));
        assert!(!s.member(&Positive::try_from(2u64).unwrap()));
        assert!(!s.member(&Positive::try_from(100u64).unwrap()));
        assert!(!DiffSet::empty().member(&Positive::one()));
    }

    #[test]
    fn insert_is_idempotent_and_union_merges() {
        let s = set_of(&[1, 4, 9, 11]);
        assert_eq!(s.insert(&Positive::try_from(4u64).unwrap()), s);
        assert_eq!(
            gaps_of(&s.insert(&Positive::try_from(5u64).unwrap())),
            vec![1, 3, 1, 4, 2]
        );
        assert_eq!(set_of(&[1, 4]).union(&set_of(&[4, 9, 11])), s);
    }

    proptest! {
        #[test]
        fn roundtrip_and_permutation_canonicity(mut xs in proptest::collection::vec(1..5000u64, 0..40)) {
            let forward = set_of(&xs);
            let decoded: Vec<u64> = forward.elements().iter().map(|e| e.to_u64().unwrap()).collect();
            let mut expect = xs.clone();
            expect.sort_unstable();
            expect.dedup();
            prop_assert_eq!(decoded, expect);

            xs.reverse();
            xs.extend(xs.clone());
            prop_assert_eq!(set_of(&xs), forward);
        }

        #[test]
        fn gaps_never_cost_more_bits_than_elements(xs in proptest::collection::vec(1..u64::MAX, 1..40)) {
            let s = set_of(&xs);
            let element_bits: u64 = s.elements().iter().map(|e| e.bit_length() as u64).sum();
            prop_assert!(s.gap_bits() <= element_bits);
        }
    }
}
