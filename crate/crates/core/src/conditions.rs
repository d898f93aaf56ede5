//! Necessary conditions on a candidate core: integral blocking,
//! tilde-invariance, the tilde-full and dimension conditions,
//! (hyperedge-)separability, facet transversals, and the combined
//! precore report.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::blocker::{blocker, is_minimum_transversal_covered, minimum_members, tilde_from, uncovered_elements};
use crate::clutter::Clutter;
use crate::error::{Error, Result};
use crate::family::{self, ExtendedCount};
use crate::minor::{self, for_each_proper_minor, MinorTable};
use crate::packing::{self, edge_in_some_max_packing, fpn};
use crate::polytope::{self, build_ic};
use crate::rational::{self, int, Rational, RationalVector};
use crate::set::ElementSet;

/// Version of the JSON layout of the reports in this crate.
pub const SCHEMA_VERSION: u32 = 1;

/// Outcome of a check that may not apply to the input.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum Verdict<T> {
    Pass(T),
    Fail(T),
    NotApplicable(String),
}

impl<T> Verdict<T> {
    fn from_bool(holds: bool, detail: T) -> Self {
        if holds {
            Verdict::Pass(detail)
        } else {
            Verdict::Fail(detail)
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass(_))
    }

    pub fn holds(&self) -> Option<bool> {
        match self {
            Verdict::Pass(_) => Some(true),
            Verdict::Fail(_) => Some(false),
            Verdict::NotApplicable(_) => None,
        }
    }

    pub fn detail(&self) -> Option<&T> {
        match self {
            Verdict::Pass(d) | Verdict::Fail(d) => Some(d),
            Verdict::NotApplicable(_) => None,
        }
    }
}

fn vector_json<S: serde::Serializer>(v: &Option<RationalVector>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => rational::serialize_ratio_vec(v, s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IbcCheck {
    pub holds: bool,
    #[serde(serialize_with = "rational::serialize_ratio")]
    pub fpn: Rational,
    pub bn: usize,
}

/// `fpn(C) = bn(C)`.
pub fn integral_blocking(c: &Clutter) -> Result<IbcCheck> {
    c.require_nondegenerate()?;
    let bn = crate::blocker::blocking_number(c)?;
    let fpn = fpn(c)?;
    Ok(IbcCheck {
        holds: fpn == int(bn as i64),
        fpn,
        bn,
    })
}

/// `C = tilde(C)` and the integral blocking condition.
pub fn is_tilde_invariant(c: &Clutter) -> Result<bool> {
    let t = crate::blocker::tilde(c)?;
    Ok(t.len() == c.len() && integral_blocking(c)?.holds)
}

/// The integral blocking condition and `tilde(C)` tilde-invariant.
pub fn is_weak_tilde_invariant(c: &Clutter) -> Result<bool> {
    if !integral_blocking(c)?.holds {
        return Ok(false);
    }
    let t = crate::blocker::tilde(c)?;
    if t.is_empty() {
        return Ok(false);
    }
    is_tilde_invariant(&t)
}

/// Why the tilde-full condition fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum TildeFullFailure {
    NotCovered { uncovered: Vec<String> },
    IntegralBlocking,
    UnsupportedEdge { edge: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TildeFull {
    pub holds: bool,
    pub failure: Option<TildeFullFailure>,
}

/// Minimum-transversal-covered, integral blocking, and every edge of
/// `tilde(C)` in the support of some maximum fractional packing.
pub fn tilde_full(c: &Clutter) -> Result<TildeFull> {
    let fail = |f| {
        Ok(TildeFull {
            holds: false,
            failure: Some(f),
        })
    };
    let uncovered = uncovered_elements(c)?;
    if !uncovered.is_empty() {
        return fail(TildeFullFailure::NotCovered {
            uncovered: c.labels_of(uncovered),
        });
    }
    if !integral_blocking(c)?.holds {
        return fail(TildeFullFailure::IntegralBlocking);
    }
    for &h in crate::blocker::tilde(c)?.edges() {
        if !edge_in_some_max_packing(c, h)? {
            return fail(TildeFullFailure::UnsupportedEdge { edge: c.labels_of(h) });
        }
    }
    Ok(TildeFull {
        holds: true,
        failure: None,
    })
}

fn incidence(n: usize, sets: &[ElementSet]) -> Vec<RationalVector> {
    sets.iter()
        .map(|s| (0..n).map(|i| if s.contains(i) { int(1) } else { int(0) }).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionCheck {
    pub tilde_dimension: usize,
    pub minb_dimension: usize,
    pub ground_size: usize,
}

/// `dim aff tilde(C) + dim aff minb(tilde(C)) = |E| - 1`.
pub fn dimension_condition(c: &Clutter) -> Result<Verdict<DimensionCheck>> {
    let t = crate::blocker::tilde(c)?;
    if t.is_empty() {
        return Ok(Verdict::NotApplicable("tilde(C) is empty".into()));
    }
    let minb = minimum_members(blocker(&t)?.edges());
    let n = c.ground_size();
    let check = DimensionCheck {
        tilde_dimension: rational::affine_dimension(&incidence(n, t.edges()))?,
        minb_dimension: rational::affine_dimension(&incidence(n, &minb))?,
        ground_size: n,
    };
    Ok(Verdict::from_bool(
        check.tilde_dimension + check.minb_dimension + 1 == n,
        check,
    ))
}

/// Guard on `|E|` for the exhaustive partition scan.
pub const SEPARABILITY_MAX_ELEMENTS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub first: Vec<String>,
    pub second: Vec<String>,
    pub first_blocking_number: usize,
    pub second_blocking_number: usize,
    #[serde(skip)]
    pub first_set: ElementSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparabilityCheck {
    pub separable: bool,
    pub witness: Option<Separation>,
}

/// `bn(C[S])`, or infinite when no edge lies inside `S`.
fn restricted_blocking_number(c: &Clutter, table: &MinorTable<'_>, s: ElementSet) -> ExtendedCount {
    if !c.edges().iter().any(|e| e.is_subset(s)) {
        return ExtendedCount::Infinite;
    }
    table.blocking_number(ElementSet::EMPTY, c.ground_set().difference(s))
}

/// Search every partition `{E1, E2}` for `bn(C[E1]) + bn(C[E2]) = bn(C)`.
/// A side containing no edge never certifies separability.
pub fn is_separable(c: &Clutter) -> Result<SeparabilityCheck> {
    c.require_nondegenerate()?;
    let n = c.ground_size();
    if n > SEPARABILITY_MAX_ELEMENTS {
        return Err(Error::CapExceeded {
            what: "separability ground set",
            limit: SEPARABILITY_MAX_ELEMENTS,
        });
    }
    if n < 2 {
        return Err(Error::NotApplicable("separability needs at least two elements".into()));
    }
    let table = MinorTable::new(c)?;
    let bn = ExtendedCount::Finite(crate::blocker::blocking_number(c)?);
    let rest = c.ground_set().without(0);
    // Element 0 always sits in E1; E2 ranges over nonempty subsets of the rest.
    for bits in 1..(1u64 << (n - 1)) {
        let e2 = ElementSet::from_bits(bits << 1).intersection(rest);
        let e1 = c.ground_set().difference(e2);
        let (ExtendedCount::Finite(b1), ExtendedCount::Finite(b2)) = (
            restricted_blocking_number(c, &table, e1),
            restricted_blocking_number(c, &table, e2),
        ) else {
            continue;
        };
        if ExtendedCount::Finite(b1 + b2) == bn {
            return Ok(SeparabilityCheck {
                separable: true,
                witness: Some(Separation {
                    first: c.labels_of(e1),
                    second: c.labels_of(e2),
                    first_blocking_number: b1,
                    second_blocking_number: b2,
                    first_set: e1,
                }),
            });
        }
    }
    Ok(SeparabilityCheck {
        separable: false,
        witness: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeDeletion {
    pub edge: Vec<String>,
    pub blocking_number: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperedgeSeparability {
    pub separable: bool,
    pub witness: Option<Vec<String>>,
    /// `bn(C \ H)` for every `H` in `tilde(C)`.
    pub deletions: Vec<EdgeDeletion>,
}

/// Some `H` in `tilde(C)` with `bn(C \ H) = bn(C) - 1`. Only defined for
/// minimum-transversal-covered clutters with the integral blocking
/// condition.
pub fn is_hyperedge_separable(c: &Clutter) -> Result<Verdict<HyperedgeSeparability>> {
    if !is_minimum_transversal_covered(c)? || !integral_blocking(c)?.holds {
        return Ok(Verdict::NotApplicable(
            "requires a minimum-transversal-covered clutter with the integral blocking condition".into(),
        ));
    }
    let table = MinorTable::new(c)?;
    let bn = crate::blocker::blocking_number(c)?;
    let t = crate::blocker::tilde(c)?;
    let mut deletions = Vec::new();
    let mut witness = None;
    for &h in t.edges() {
        let b = table
            .blocking_number(ElementSet::EMPTY, h)
            .finite()
            .expect("deletion of a nondegenerate clutter has a transversal");
        if witness.is_none() && b + 1 == bn {
            witness = Some(c.labels_of(h));
        }
        deletions.push(EdgeDeletion {
            edge: c.labels_of(h),
            blocking_number: b,
        });
    }
    let separable = witness.is_some();
    // Separable verdicts are reported as failures of non-separability.
    Ok(Verdict::from_bool(
        !separable,
        HyperedgeSeparability {
            separable,
            witness,
            deletions,
        },
    ))
}

/// Transversals `B` of `tilde(C)` with `|H ∩ B| > 1`, `|B - H| <= bn - 2`
/// and `|H' ∩ B| = 1` for every other `H'` in `tilde(C)`.
pub fn facet_transversals(c: &Clutter, h: ElementSet) -> Result<Vec<ElementSet>> {
    let t = crate::blocker::tilde(c)?;
    if !t.contains_edge(h) {
        return Err(Error::Invalid(format!("{} is not in tilde(C)", c.render(h))));
    }
    let bn = crate::blocker::blocking_number(c)?;
    let b = blocker(&t)?;
    Ok(facet_transversals_from(&t, b.edges(), h, bn))
}

fn facet_transversals_from(t: &Clutter, transversals: &[ElementSet], h: ElementSet, bn: usize) -> Vec<ElementSet> {
    let Some(limit) = bn.checked_sub(2) else {
        return Vec::new();
    };
    transversals
        .iter()
        .copied()
        .filter(|b| {
            b.meet(h) > 1
                && b.difference(h).len() <= limit
                && t.edges().iter().filter(|&&g| g != h).all(|&g| g.meet(*b) == 1)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplexCharacterization {
    /// `I(C)` is an integral simplex and `C` is hyperedge-nonseparable.
    pub lhs: bool,
    /// Dimension condition and a facet transversal for every edge.
    pub rhs: bool,
    pub integral: bool,
    pub simplex: bool,
    pub hyperedge_nonseparable: bool,
    pub dimension_condition: bool,
    /// First edge without a facet transversal.
    pub edge_without_facet_transversal: Option<Vec<String>>,
}

/// Both sides of the equivalence between "integral simplex and
/// hyperedge-nonseparable" and "dimension condition and facet transversals
/// everywhere", for a covered tilde-invariant clutter.
pub fn simplex_characterization(c: &Clutter) -> Result<SimplexCharacterization> {
    if !is_minimum_transversal_covered(c)? || !is_tilde_invariant(c)? {
        return Err(Error::NotApplicable(
            "requires a minimum-transversal-covered tilde-invariant clutter".into(),
        ));
    }
    let v = polytope::vertices(&build_ic(c)?)?;
    let integral = v.points.iter().all(|x| rational::is_integer_vector(x));
    let simplex = polytope::vertex_set_is_simplex(&v);
    let hyperedge_nonseparable = is_hyperedge_separable(c)?.is_pass();
    let dimension_condition = dimension_condition(c)?.is_pass();
    let bn = crate::blocker::blocking_number(c)?;
    let b = blocker(c)?;
    let missing = c
        .edges()
        .iter()
        .copied()
        .find(|&h| facet_transversals_from(c, b.edges(), h, bn).is_empty());
    Ok(SimplexCharacterization {
        lhs: integral && simplex && hyperedge_nonseparable,
        rhs: dimension_condition && missing.is_none(),
        integral,
        simplex,
        hyperedge_nonseparable,
        dimension_condition,
        edge_without_facet_transversal: missing.map(|h| c.labels_of(h)),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IcIntegrality {
    pub vertex_count: usize,
    pub dimension: Option<usize>,
    #[serde(serialize_with = "vector_json")]
    pub fractional_vertex: Option<RationalVector>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrecoreReport {
    pub schema_version: u32,
    pub mtc: bool,
    pub uncovered: Vec<String>,
    pub ibc: IbcCheck,
    pub tilde_fixed: bool,
    /// Edges of `C` outside `tilde(C)`.
    pub dropped_by_tilde: Vec<Vec<String>>,
    pub ic_integral: Verdict<IcIntegrality>,
    pub nonseparable: Verdict<SeparabilityCheck>,
    pub tilde_full: TildeFull,
    pub dimension_condition: Verdict<DimensionCheck>,
    pub hyperedge_nonseparable: Verdict<HyperedgeSeparability>,
    pub unique_max_packing: bool,
    /// `tilde_fixed`, `ibc`, `ic_integral` and `nonseparable` all hold.
    pub is_precore: bool,
}

fn ic_integrality(c: &Clutter) -> Result<Verdict<IcIntegrality>> {
    match polytope::vertices(&build_ic(c)?) {
        Ok(v) if v.is_empty() => Ok(Verdict::Fail(IcIntegrality {
            vertex_count: 0,
            dimension: None,
            fractional_vertex: None,
        })),
        Ok(v) => {
            let fractional = v.points.iter().find(|x| !rational::is_integer_vector(x)).cloned();
            Ok(Verdict::from_bool(
                fractional.is_none(),
                IcIntegrality {
                    vertex_count: v.len(),
                    dimension: Some(rational::affine_dimension(&v.points)?),
                    fractional_vertex: fractional,
                },
            ))
        }
        Err(Error::UnboundedPolyhedron) => Ok(Verdict::NotApplicable("I(C) is unbounded".into())),
        Err(e) => Err(e),
    }
}

/// Every precore condition with witnesses.
pub fn is_precore(c: &Clutter) -> Result<PrecoreReport> {
    c.require_nondegenerate()?;
    let b = blocker(c)?;
    let minb = minimum_members(b.edges());
    let t = tilde_from(c, &minb);
    let uncovered = uncovered_elements(c)?;
    let mtc = uncovered.is_empty();
    let ibc = integral_blocking(c)?;
    let tilde_fixed = t.len() == c.len();
    let dropped_by_tilde = c
        .edges()
        .iter()
        .filter(|&&h| !t.contains_edge(h))
        .map(|&h| c.labels_of(h))
        .collect();
    let ic_integral = ic_integrality(c)?;
    let nonseparable = if c.ground_size() < 2 {
        Verdict::NotApplicable("fewer than two elements".into())
    } else {
        let s = is_separable(c)?;
        Verdict::from_bool(!s.separable, s)
    };
    let tilde_full = tilde_full(c)?;
    let dimension_condition = dimension_condition(c)?;
    let hyperedge_nonseparable = is_hyperedge_separable(c)?;
    let unique_max_packing = packing::is_unique_max_packing(c)?;
    // A single element cannot be split, so it counts as non-separable.
    let nonseparable_ok = nonseparable.holds().unwrap_or(true);
    let is_precore = tilde_fixed && ibc.holds && ic_integral.is_pass() && nonseparable_ok;
    Ok(PrecoreReport {
        schema_version: SCHEMA_VERSION,
        mtc,
        uncovered: c.labels_of(uncovered),
        ibc,
        tilde_fixed,
        dropped_by_tilde,
        ic_integral,
        nonseparable,
        tilde_full,
        dimension_condition,
        hyperedge_nonseparable,
        unique_max_packing,
        is_precore,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IbcViolation {
    pub contract: Vec<String>,
    pub delete: Vec<String>,
    #[serde(serialize_with = "rational::serialize_ratio")]
    pub fpn: Rational,
    pub bn: usize,
    #[serde(skip)]
    pub contract_set: ElementSet,
    #[serde(skip)]
    pub delete_set: ElementSet,
}

/// First minor (the clutter itself included) with `fpn > bn`. Degenerate
/// minors are skipped.
pub fn ibc_violating_minor(c: &Clutter) -> Result<Option<IbcViolation>> {
    c.require_nondegenerate()?;
    minor::guard_sweep(c, minor::DEFAULT_SWEEP_MAX_ELEMENTS)?;
    let check = |a: ElementSet, d: ElementSet| -> Result<Option<IbcViolation>> {
        let m = minor::minor(c, a, d);
        if m.is_degenerate() {
            return Ok(None);
        }
        let bn = crate::blocker::blocking_number(&m)?;
        let f = fpn(&m)?;
        Ok((f != int(bn as i64)).then(|| IbcViolation {
            contract: c.labels_of(a),
            delete: c.labels_of(d),
            fpn: f,
            bn,
            contract_set: a,
            delete_set: d,
        }))
    };
    if let Some(v) = check(ElementSet::EMPTY, ElementSet::EMPTY)? {
        return Ok(Some(v));
    }
    let found = for_each_proper_minor(c.ground_size(), |a, d| match check(a, d) {
        Ok(None) => ControlFlow::Continue(()),
        Ok(Some(v)) => ControlFlow::Break(Ok(v)),
        Err(e) => ControlFlow::Break(Err(e)),
    });
    found.transpose()
}

/// Blocking number through the direct minimum-transversal search, used as
/// a second route in tests.
pub fn blocking_number_direct(c: &Clutter) -> Result<ExtendedCount> {
    Ok(
        match family::minimum_transversals(c.edges(), family::DEFAULT_BLOCKER_CAP)? {
            Some(m) => ExtendedCount::Finite(m[0].len()),
            None => ExtendedCount::Infinite,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clutter::make_clutter;
    use crate::rational::ratio;

    fn letters(ground: &str, edges: &str) -> Clutter {
        let g: Vec<String> = ground.chars().map(String::from).collect();
        let e: Vec<Vec<String>> = edges
            .split(',')
            .map(|w| w.chars().map(String::from).collect())
            .collect();
        make_clutter(g, e).unwrap()
    }

    #[test]
    fn kyou_example() {
        let c = letters("abcdef", "abc,de,ef,df,af,bd,ce");
        assert!(is_minimum_transversal_covered(&c).unwrap());
        assert!(integral_blocking(&c).unwrap().holds);
        assert!(!is_weak_tilde_invariant(&c).unwrap());
        assert!(!is_tilde_invariant(&c).unwrap());
        assert!(!is_precore(&c).unwrap().is_precore);
    }

    #[test]
    fn path_example() {
        let c = letters("abcd", "ac,bc,bd");
        assert!(!is_tilde_invariant(&c).unwrap());
        assert!(is_weak_tilde_invariant(&c).unwrap());
    }

    #[test]
    fn two_disjoint_pairs() {
        let c = letters("abcd", "ab,cd");
        let h = is_hyperedge_separable(&c).unwrap();
        assert_eq!(h.holds(), Some(false));
        assert!(h.detail().unwrap().separable);
        assert!(is_separable(&c).unwrap().separable);
        let ab = c.set_from_labels(["a", "b"]).unwrap();
        assert!(facet_transversals(&c, ab).unwrap().is_empty());
        let s = simplex_characterization(&c).unwrap();
        assert!(!s.lhs && !s.rhs);
    }

    #[test]
    fn singletons_separable() {
        let c = letters("ab", "a,b");
        let s = is_separable(&c).unwrap();
        assert!(s.separable);
        let w = s.witness.unwrap();
        assert_eq!((w.first_blocking_number, w.second_blocking_number), (1, 1));
    }

    #[test]
    fn single_edge() {
        let c = letters("a", "a");
        let d = dimension_condition(&c).unwrap();
        assert!(d.is_pass());
        let r = is_precore(&c).unwrap();
        assert!(r.is_precore);
    }

    #[test]
    fn not_covered() {
        let c = letters("abc", "ab");
        let t = tilde_full(&c).unwrap();
        assert!(!t.holds);
        assert!(matches!(t.failure, Some(TildeFullFailure::NotCovered { .. })));
        assert!(is_hyperedge_separable(&c).unwrap().holds().is_none());
    }

    #[test]
    fn odd_triangle_violates_ibc() {
        let c = letters("abc", "ab,bc,ac");
        let ibc = integral_blocking(&c).unwrap();
        assert_eq!((ibc.fpn.clone(), ibc.bn), (ratio(3, 2), 2));
        let v = ibc_violating_minor(&c).unwrap().unwrap();
        assert!(v.contract.is_empty() && v.delete.is_empty());
    }

    #[test]
    fn direct_blocking_number_matches() {
        let c = letters("abcdef", "abc,de,ef,df,af,bd,ce");
        assert_eq!(blocking_number_direct(&c).unwrap(), ExtendedCount::Finite(3));
    }
}
