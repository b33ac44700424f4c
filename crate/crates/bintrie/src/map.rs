//! The operation set every map representation in this crate provides.
//!
//! All operations are persistent: they leave their receiver untouched and
//! return a new map that shares structure with it. The law and differential
//! suites are written against this trait so each representation is tested
//! through the same lens as the reference model.

use crate::positive::Positive;

pub trait FiniteMap: Clone {
    type Value: Clone + PartialEq;

    /// The map with no bindings.
    fn empty() -> Self;

    /// The value bound to `key`, if any.
    fn get(&self, key: &Positive) -> Option<&Self::Value>;

    /// Binds `key` to `value`, replacing any previous binding.
    fn set(&self, key: &Positive, value: Self::Value) -> Self;

    /// Drops the binding for `key`; absent keys leave the map unchanged.
    fn remove(&self, key: &Positive) -> Self;

    /// All bindings in strictly increasing key order.
    fn elements(&self) -> Vec<(Positive, Self::Value)>;

    /// Keeps the bindings where `f` returns a value, rebinding them to it.
    fn map_filter<F: Fn(&Self::Value) -> Option<Self::Value>>(&self, f: F) -> Self;

    /// Merges pointwise over the union of key sets. Callers must supply an
    /// `f` with `f(None, None) == None`; keys absent from both maps are never
    /// materialized, so such an `f` has no coherent meaning here.
    fn combine<F: Fn(Option<&Self::Value>, Option<&Self::Value>) -> Option<Self::Value>>(
        &self,
        other: &Self,
        f: F,
    ) -> Self;

    /// Representation equality, not extensional equality. The two coincide
    /// only for representations that are canonical.
    fn structural_eq(&self, other: &Self) -> bool;
}
