//! Crystals `B(λ)`, their tensor products, and highest-weight decomposition.
//!
//! Everything goes through the [`Crystal`] trait, which is deliberately
//! context-based: the crystal object owns whatever tables or root data an
//! element needs, and elements themselves are plain values. Three
//! implementations exist — raw Littelmann paths ([`PathCrystal`]), the
//! precomputed graph of one `B(λ)` ([`CrystalGraph`]), and tensor products of
//! either ([`TensorCrystal`]).

mod graph;
mod path;
mod tensor;

use std::collections::{BTreeMap, HashSet};
use std::hash::Hash;
use std::sync::Arc;

use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::rootsys::Weight;

pub use graph::{CrystalGraph, DEFAULT_BUDGET};
pub use path::{PathCrystal, PathElement, Segment};
pub use tensor::TensorCrystal;

/// Dominant weight `ν` ↦ multiplicity. Zero entries are never stored.
pub type MultiplicityTable = BTreeMap<Weight, u64>;

/// Kashiwara crystal with 1-based labels `1..=rank`.
pub trait Crystal {
    type Elem: Clone + Eq + Hash;

    fn rank(&self) -> usize;
    fn f(&self, b: &Self::Elem, i: usize) -> Option<Self::Elem>;
    fn e(&self, b: &Self::Elem, i: usize) -> Option<Self::Elem>;
    fn epsilon(&self, b: &Self::Elem, i: usize) -> i64;
    fn phi(&self, b: &Self::Elem, i: usize) -> i64;
    fn wt(&self, b: &Self::Elem) -> Weight;

    /// `f_i^k b`, or `None` once the string runs out.
    fn f_pow(&self, b: &Self::Elem, i: usize, k: i64) -> Option<Self::Elem> {
        let mut cur = b.clone();
        for _ in 0..k {
            cur = self.f(&cur, i)?;
        }
        Some(cur)
    }

    fn e_pow(&self, b: &Self::Elem, i: usize, k: i64) -> Option<Self::Elem> {
        let mut cur = b.clone();
        for _ in 0..k {
            cur = self.e(&cur, i)?;
        }
        Some(cur)
    }

    fn is_highest(&self, b: &Self::Elem) -> bool {
        (1..=self.rank()).all(|i| self.epsilon(b, i) == 0)
    }
}

impl<C: Crystal> Crystal for Arc<C> {
    type Elem = C::Elem;

    fn rank(&self) -> usize {
        (**self).rank()
    }
    fn f(&self, b: &C::Elem, i: usize) -> Option<C::Elem> {
        (**self).f(b, i)
    }
    fn e(&self, b: &C::Elem, i: usize) -> Option<C::Elem> {
        (**self).e(b, i)
    }
    fn epsilon(&self, b: &C::Elem, i: usize) -> i64 {
        (**self).epsilon(b, i)
    }
    fn phi(&self, b: &C::Elem, i: usize) -> i64 {
        (**self).phi(b, i)
    }
    fn wt(&self, b: &C::Elem) -> Weight {
        (**self).wt(b)
    }
}

/// Breadth-first closure of `seeds` under `f_i` for `i ∈ labels`.
///
/// Labels are tried in the given order and the frontier is FIFO, so the
/// resulting indexing is deterministic.
pub fn f_closure<C: Crystal>(
    crystal: &C,
    seeds: impl IntoIterator<Item = C::Elem>,
    labels: &[usize],
    budget: usize,
) -> Result<IndexSet<C::Elem>> {
    let mut seen: IndexSet<C::Elem> = IndexSet::new();
    for s in seeds {
        seen.insert(s);
    }
    if seen.len() > budget {
        return Err(Error::BudgetExceeded(budget));
    }
    let mut head = 0;
    while head < seen.len() {
        let b = seen[head].clone();
        head += 1;
        for &i in labels {
            if let Some(next) = crystal.f(&b, i) {
                if seen.insert(next) && seen.len() > budget {
                    return Err(Error::BudgetExceeded(budget));
                }
            }
        }
    }
    Ok(seen)
}

/// Highest weights of the connected components of a finite, `e`-closed set.
pub fn highest_weight_decompose<C: Crystal>(
    crystal: &C,
    elements: &[C::Elem],
) -> Result<MultiplicityTable> {
    let set: HashSet<&C::Elem> = elements.iter().collect();
    let mut table = MultiplicityTable::new();
    for b in elements {
        let mut highest = true;
        for i in 1..=crystal.rank() {
            if let Some(up) = crystal.e(b, i) {
                if !set.contains(&up) {
                    return Err(Error::NotEClosed(i));
                }
                highest = false;
            }
        }
        if highest {
            *table.entry(crystal.wt(b)).or_insert(0) += 1;
        }
    }
    Ok(table)
}

/// Splits a finite set closed under `e` and `f` into connected components,
/// each listed in the order elements first appear in `elements`.
pub fn connected_components<C: Crystal>(crystal: &C, elements: &[C::Elem]) -> Vec<Vec<C::Elem>> {
    let index: IndexSet<&C::Elem> = elements.iter().collect();
    let mut component = vec![usize::MAX; elements.len()];
    let mut out: Vec<Vec<C::Elem>> = Vec::new();
    for start in 0..elements.len() {
        if component[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        component[start] = id;
        let mut head = 0;
        while head < members.len() {
            let b = &elements[members[head]];
            head += 1;
            for i in 1..=crystal.rank() {
                for next in [crystal.f(b, i), crystal.e(b, i)].into_iter().flatten() {
                    if let Some(k) = index.get_index_of(&next) {
                        if component[k] == usize::MAX {
                            component[k] = id;
                            members.push(k);
                        }
                    }
                }
            }
        }
        members.sort_unstable();
        out.push(members.into_iter().map(|k| elements[k].clone()).collect());
    }
    out
}
