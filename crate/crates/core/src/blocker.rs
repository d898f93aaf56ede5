//! Blockers, minimum transversals, packing/blocking numbers and the tilde
//! operation.

use crate::clutter::Clutter;
use crate::error::{Error, Result};
use crate::family::{self, ExtendedCount, DEFAULT_BLOCKER_CAP};
use crate::set::ElementSet;

/// The clutter of all (inclusion-minimal) transversals of `c`.
///
/// `b({}) = {∅}` and `b({∅}) = {}`.
pub fn blocker(c: &Clutter) -> Result<Clutter> {
    blocker_with_cap(c, DEFAULT_BLOCKER_CAP)
}

pub fn blocker_with_cap(c: &Clutter, cap: usize) -> Result<Clutter> {
    let edges = family::blocker(c.edges(), cap)?;
    Ok(c.with_edges(edges).expect("blocker of a clutter is a clutter"))
}

/// Minimum-cardinality transversals, in canonical order.
pub fn min_transversals(c: &Clutter) -> Result<Vec<ElementSet>> {
    c.require_nondegenerate()?;
    Ok(minimum_members(blocker(c)?.edges()))
}

pub(crate) fn minimum_members(sets: &[ElementSet]) -> Vec<ElementSet> {
    let Some(m) = sets.iter().map(|s| s.len()).min() else {
        return Vec::new();
    };
    sets.iter().copied().filter(|s| s.len() == m).collect()
}

pub fn blocking_number(c: &Clutter) -> Result<usize> {
    c.require_nondegenerate()?;
    let b = blocker(c)?;
    Ok(b.edges()
        .iter()
        .map(|s| s.len())
        .min()
        .expect("nondegenerate clutter has a transversal"))
}

pub fn packing_number(c: &Clutter) -> Result<usize> {
    c.require_nondegenerate()?;
    match family::packing_number(c.edges()) {
        ExtendedCount::Finite(n) => Ok(n),
        ExtendedCount::Infinite => unreachable!("nondegenerate"),
    }
}

/// `pn(C) = bn(C)`.
pub fn packs(c: &Clutter) -> Result<bool> {
    Ok(packing_number(c)? == blocking_number(c)?)
}

/// Edges meeting every minimum transversal in exactly one element.
pub fn tilde(c: &Clutter) -> Result<Clutter> {
    let minb = min_transversals(c)?;
    Ok(tilde_from(c, &minb))
}

pub(crate) fn tilde_from(c: &Clutter, minb: &[ElementSet]) -> Clutter {
    let edges = c
        .edges()
        .iter()
        .copied()
        .filter(|&h| minb.iter().all(|&b| b.meet(h) == 1))
        .collect();
    c.with_edges(edges).expect("subfamily of a clutter")
}

/// The union of the minimum transversals is the whole ground set.
pub fn is_minimum_transversal_covered(c: &Clutter) -> Result<bool> {
    let cover = min_transversals(c)?
        .into_iter()
        .fold(ElementSet::EMPTY, ElementSet::union);
    Ok(cover == c.ground_set())
}

/// Elements not covered by any minimum transversal.
pub fn uncovered_elements(c: &Clutter) -> Result<ElementSet> {
    let cover = min_transversals(c)?
        .into_iter()
        .fold(ElementSet::EMPTY, ElementSet::union);
    Ok(c.ground_set().difference(cover))
}

pub(crate) fn same_ground(a: &Clutter, b: &Clutter) -> Result<()> {
    if a.same_ground(b) {
        Ok(())
    } else {
        Err(Error::GroundMismatch)
    }
}
