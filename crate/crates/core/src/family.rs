//! Set-family kernels on raw bitmasks.
//!
//! These work on slices of [`ElementSet`] over a fixed bit layout, so the
//! minor sweeps can run without re-indexing the ground set.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::set::ElementSet;

/// Default guard on the size of intermediate antichains in [`blocker`].
pub const DEFAULT_BLOCKER_CAP: usize = 100_000;

/// Inclusion-minimal members of `sets`, deduplicated, in canonical order.
pub fn minimalize(sets: impl IntoIterator<Item = ElementSet>) -> Vec<ElementSet> {
    let mut all: Vec<ElementSet> = sets.into_iter().collect();
    all.sort_unstable();
    all.dedup();
    let mut kept: Vec<ElementSet> = Vec::with_capacity(all.len());
    for s in all {
        // Canonical order puts every proper subset of `s` before it.
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept
}

/// Berge's sequential transversal computation.
///
/// Returns the inclusion-minimal sets meeting every member of `edges`. The
/// empty family yields `{∅}`; a family containing `∅` yields the empty
/// family.
pub fn blocker(edges: &[ElementSet], cap: usize) -> Result<Vec<ElementSet>> {
    let mut order = edges.to_vec();
    order.sort_unstable();
    order.dedup();
    blocker_extend(vec![ElementSet::EMPTY], &order, cap)
}

/// Continue Berge's method: given the blocker of some family, return the
/// blocker of that family together with `edges`.
pub fn blocker_extend(start: Vec<ElementSet>, edges: &[ElementSet], cap: usize) -> Result<Vec<ElementSet>> {
    let mut current = start;
    for &h in edges {
        let (hit, miss): (Vec<ElementSet>, Vec<ElementSet>) = current.iter().partition(|b| b.intersects(h));
        if miss.is_empty() {
            continue;
        }
        let mut next = hit.clone();
        for b in miss {
            for e in h {
                let cand = b.with(e);
                if !hit.iter().any(|k| k.is_subset(cand)) {
                    next.push(cand);
                }
            }
        }
        current = minimalize(next);
        if current.len() > cap {
            return Err(Error::CapExceeded {
                what: "blocker antichain",
                limit: cap,
            });
        }
    }
    current.sort_unstable();
    Ok(current)
}

/// Minimum cardinality of a member of `transversals`, i.e. the blocking
/// number when `transversals` is a blocker.
pub fn min_size(transversals: &[ElementSet]) -> ExtendedCount {
    transversals
        .iter()
        .map(|t| ExtendedCount::Finite(t.len()))
        .min()
        .unwrap_or(ExtendedCount::Infinite)
}

/// All minimum-cardinality transversals of `edges`, found directly by
/// iterative deepening without enumerating the whole blocker.
///
/// Returns `None` when some edge is empty (no transversal exists).
pub fn minimum_transversals(edges: &[ElementSet], cap: usize) -> Result<Option<Vec<ElementSet>>> {
    if edges.iter().any(|e| e.is_empty()) {
        return Ok(None);
    }
    for k in 0.. {
        let mut found = Vec::new();
        hitting_sets(edges, ElementSet::EMPTY, ElementSet::EMPTY, k, &mut found, cap)?;
        if !found.is_empty() {
            found.sort_unstable();
            found.dedup();
            return Ok(Some(found));
        }
    }
    unreachable!()
}

/// Extend `chosen` by at most `budget` elements outside `banned`, branching
/// on the elements of the first unhit edge; each set is produced once.
fn hitting_sets(
    edges: &[ElementSet],
    chosen: ElementSet,
    banned: ElementSet,
    budget: usize,
    out: &mut Vec<ElementSet>,
    cap: usize,
) -> Result<()> {
    let Some(&unhit) = edges.iter().find(|e| !e.intersects(chosen)) else {
        out.push(chosen);
        if out.len() > cap {
            return Err(Error::CapExceeded {
                what: "minimum transversals",
                limit: cap,
            });
        }
        return Ok(());
    };
    if budget == 0 {
        return Ok(());
    }
    let mut banned = banned;
    for a in unhit.difference(banned).iter() {
        hitting_sets(edges, chosen.with(a), banned, budget - 1, out, cap)?;
        banned = banned.with(a);
    }
    Ok(())
}

/// Maximum number of pairwise disjoint members, by branch and bound.
///
/// A family containing `∅` packs arbitrarily many copies of it.
pub fn packing_number(edges: &[ElementSet]) -> ExtendedCount {
    if edges.iter().any(|e| e.is_empty()) {
        return ExtendedCount::Infinite;
    }
    let mut order = edges.to_vec();
    order.sort_unstable();
    let mut best = 0;
    packing_branch(&order, 0, ElementSet::EMPTY, 0, &mut best);
    ExtendedCount::Finite(best)
}

fn packing_branch(edges: &[ElementSet], from: usize, used: ElementSet, count: usize, best: &mut usize) {
    if count > *best {
        *best = count;
    }
    let rest: Vec<usize> = (from..edges.len()).filter(|&j| edges[j].is_disjoint(used)).collect();
    if count + rest.len() <= *best {
        return;
    }
    for (pos, &j) in rest.iter().enumerate() {
        if count + (rest.len() - pos) <= *best {
            return;
        }
        packing_branch(edges, j + 1, used.union(edges[j]), count + 1, best);
    }
}

/// `min {X - a : X in edges}`, on the same bit layout.
pub fn contract(edges: &[ElementSet], a: ElementSet) -> Vec<ElementSet> {
    minimalize(edges.iter().map(|x| x.difference(a)))
}

/// `{X in edges : X ∩ a = ∅}`.
pub fn delete(edges: &[ElementSet], a: ElementSet) -> Vec<ElementSet> {
    edges.iter().copied().filter(|x| x.is_disjoint(a)).collect()
}

/// The minor `edges / a \ b` on the same bit layout.
pub fn minor(edges: &[ElementSet], contract_set: ElementSet, delete_set: ElementSet) -> Vec<ElementSet> {
    minimalize(
        edges
            .iter()
            .filter(|x| x.is_disjoint(delete_set))
            .map(|x| x.difference(contract_set)),
    )
}

/// A nonnegative count that may be infinite.
///
/// Blocking numbers of clutters containing `∅` and packing numbers of such
/// clutters are infinite; everything else is finite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedCount {
    Finite(usize),
    Infinite,
}

impl ExtendedCount {
    pub fn finite(self) -> Option<usize> {
        match self {
            ExtendedCount::Finite(n) => Some(n),
            ExtendedCount::Infinite => None,
        }
    }
}

impl fmt::Display for ExtendedCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedCount::Finite(n) => write!(f, "{n}"),
            ExtendedCount::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtendedCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedCount::Finite(n) => s.serialize_u64(*n as u64),
            ExtendedCount::Infinite => s.serialize_str("inf"),
        }
    }
}
