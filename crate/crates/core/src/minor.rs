//! Contraction, deletion, restriction and exhaustive minor sweeps.

use std::collections::HashMap;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::clutter::Clutter;
use crate::error::{Error, Result};
use crate::family::{self, ExtendedCount, DEFAULT_BLOCKER_CAP};
use crate::set::ElementSet;

/// Default guard on `|E|` for sweeps over all `3^|E|` minors.
pub const DEFAULT_SWEEP_MAX_ELEMENTS: usize = 14;

/// `C / A`, on the ground set `E - A`.
pub fn contract(c: &Clutter, a: ElementSet) -> Clutter {
    let keep = c.ground_set().difference(a);
    c.reground(keep, c.edges().iter().map(|x| x.difference(a)))
}

/// `C \ A`, on the ground set `E - A`.
pub fn delete(c: &Clutter, a: ElementSet) -> Clutter {
    let keep = c.ground_set().difference(a);
    c.reground(keep, family::delete(c.edges(), a))
}

/// `C[A] = C \ (E - A)`, on the ground set `A`.
pub fn restrict(c: &Clutter, a: ElementSet) -> Clutter {
    let complement = c.ground_set().difference(a);
    c.reground(a, family::delete(c.edges(), complement))
}

/// `C / A \ B` for disjoint `A`, `B`.
pub fn minor(c: &Clutter, contract_set: ElementSet, delete_set: ElementSet) -> Clutter {
    let keep = c.ground_set().difference(contract_set.union(delete_set));
    c.reground(keep, family::minor(c.edges(), contract_set, delete_set))
}

/// Blocking and packing numbers of one minor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinorNumbers {
    pub blocking: ExtendedCount,
    pub packing: ExtendedCount,
}

impl MinorNumbers {
    pub fn packs(&self) -> bool {
        self.blocking == self.packing
    }
}

/// Memoized minor statistics of one clutter, keyed by the `(A, B)` pair.
///
/// Blocking numbers come from the blocker of the parent through
/// `b(C/A\B) = min{T - B : T in b(C), T ∩ A = ∅}`, so only packing
/// numbers need the minor itself.
pub struct MinorTable<'a> {
    clutter: &'a Clutter,
    transversals: Vec<ElementSet>,
    cache: HashMap<(u64, u64), MinorNumbers>,
}

impl<'a> MinorTable<'a> {
    pub fn new(clutter: &'a Clutter) -> Result<Self> {
        let transversals = family::blocker(clutter.edges(), DEFAULT_BLOCKER_CAP)?;
        Ok(MinorTable {
            clutter,
            transversals,
            cache: HashMap::new(),
        })
    }

    pub fn clutter(&self) -> &'a Clutter {
        self.clutter
    }

    pub fn blocking_number(&self, contract_set: ElementSet, delete_set: ElementSet) -> ExtendedCount {
        self.transversals
            .iter()
            .filter(|t| t.is_disjoint(contract_set))
            .map(|t| ExtendedCount::Finite(t.difference(delete_set).len()))
            .min()
            .unwrap_or(ExtendedCount::Infinite)
    }

    pub fn numbers(&mut self, contract_set: ElementSet, delete_set: ElementSet) -> MinorNumbers {
        let key = (contract_set.bits(), delete_set.bits());
        if let Some(n) = self.cache.get(&key) {
            return *n;
        }
        let blocking = self.blocking_number(contract_set, delete_set);
        let packing = family::packing_number(&family::minor(self.clutter.edges(), contract_set, delete_set));
        let n = MinorNumbers { blocking, packing };
        self.cache.insert(key, n);
        n
    }

    pub fn cached(&self) -> usize {
        self.cache.len()
    }
}

/// Visit every disjoint pair `(A, B)` with `A ∪ B ≠ ∅` over `n` elements,
/// in a fixed order (base-3 counting, element 0 least significant; digit 1
/// puts the element in `A`, digit 2 in `B`).
pub fn for_each_proper_minor<T>(n: usize, mut f: impl FnMut(ElementSet, ElementSet) -> ControlFlow<T>) -> Option<T> {
    let mut digits = vec![0u8; n];
    let (mut a, mut b) = (ElementSet::EMPTY, ElementSet::EMPTY);
    loop {
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            match digits[i] {
                0 => {
                    digits[i] = 1;
                    a = a.with(i);
                    break;
                }
                1 => {
                    digits[i] = 2;
                    a = a.without(i);
                    b = b.with(i);
                    break;
                }
                _ => {
                    digits[i] = 0;
                    b = b.without(i);
                    i += 1;
                }
            }
        }
        if let ControlFlow::Break(t) = f(a, b) {
            return Some(t);
        }
    }
}

pub(crate) fn guard_sweep(c: &Clutter, max_elements: usize) -> Result<()> {
    if c.ground_size() > max_elements {
        Err(Error::CapExceeded {
            what: "ground set size for a minor sweep",
            limit: max_elements,
        })
    } else {
        Ok(())
    }
}

/// A minor `C / contract \ delete` reported as a counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorWitness {
    pub contract: Vec<String>,
    pub delete: Vec<String>,
    pub blocking_number: ExtendedCount,
    pub packing_number: ExtendedCount,
    #[serde(skip)]
    pub contract_set: ElementSet,
    #[serde(skip)]
    pub delete_set: ElementSet,
}

impl MinorWitness {
    pub(crate) fn new(c: &Clutter, a: ElementSet, b: ElementSet, n: MinorNumbers) -> Self {
        MinorWitness {
            contract: c.labels_of(a),
            delete: c.labels_of(b),
            blocking_number: n.blocking,
            packing_number: n.packing,
            contract_set: a,
            delete_set: b,
        }
    }
}

/// Result of a minor-closed property check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorCheck {
    pub holds: bool,
    /// The offending minor; `(∅, ∅)` stands for the clutter itself.
    pub witness: Option<MinorWitness>,
}

/// Does not pack, while every proper minor packs.
pub fn is_minimally_non_packing(c: &Clutter) -> Result<MinorCheck> {
    let mut table = MinorTable::new(c)?;
    is_minimally_non_packing_with(&mut table, DEFAULT_SWEEP_MAX_ELEMENTS)
}

pub fn is_minimally_non_packing_with(table: &mut MinorTable<'_>, max_elements: usize) -> Result<MinorCheck> {
    let c = table.clutter();
    c.require_nondegenerate()?;
    guard_sweep(c, max_elements)?;
    let whole = table.numbers(ElementSet::EMPTY, ElementSet::EMPTY);
    if whole.packs() {
        return Ok(MinorCheck {
            holds: false,
            witness: Some(MinorWitness::new(c, ElementSet::EMPTY, ElementSet::EMPTY, whole)),
        });
    }
    Ok(proper_minors_pack(table))
}

/// `C` and every minor of `C` pack.
pub fn has_packing_property(c: &Clutter) -> Result<MinorCheck> {
    c.require_nondegenerate()?;
    guard_sweep(c, DEFAULT_SWEEP_MAX_ELEMENTS)?;
    let mut table = MinorTable::new(c)?;
    let whole = table.numbers(ElementSet::EMPTY, ElementSet::EMPTY);
    if !whole.packs() {
        return Ok(MinorCheck {
            holds: false,
            witness: Some(MinorWitness::new(c, ElementSet::EMPTY, ElementSet::EMPTY, whole)),
        });
    }
    Ok(proper_minors_pack(&mut table))
}

fn proper_minors_pack(table: &mut MinorTable<'_>) -> MinorCheck {
    let n = table.clutter().ground_size();
    let found = for_each_proper_minor(n, |a, b| {
        let numbers = table.numbers(a, b);
        if numbers.packs() {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break((a, b, numbers))
        }
    });
    match found {
        None => MinorCheck {
            holds: true,
            witness: None,
        },
        Some((a, b, numbers)) => MinorCheck {
            holds: false,
            witness: Some(MinorWitness::new(table.clutter(), a, b, numbers)),
        },
    }
}
