//! Conditions on a candidate solution clutter `D` for a precore `C`
//! (`tilde(D) = C`), the combined solution report, a bounded search over
//! supersets of `C`, and the affine-plane obstruction analysis.

mod obstruction;
mod search;

use std::ops::ControlFlow;

use serde::Serialize;

pub use obstruction::{
    affine_obstruction, affine_obstruction_with, Candidate, Kill, ObstructionReport, Star, TripleAnalysis,
};
pub use search::{search_solutions, SearchLimits, SearchOutcome, SearchStatus};

use crate::blocker::{blocker, minimum_members, same_ground};
use crate::clutter::Clutter;
use crate::conditions::{self, SCHEMA_VERSION};
use crate::error::Result;
use crate::family::{self, ExtendedCount};
use crate::minor::{self, for_each_proper_minor, MinorCheck, MinorTable};
use crate::polytope::{self, FacetStructure, IdealCheck};
use crate::rational::{self, int, RationalVector};
use crate::set::ElementSet;

fn incidence(n: usize, s: ElementSet) -> RationalVector {
    (0..n).map(|i| if s.contains(i) { int(1) } else { int(0) }).collect()
}

/// Data about `C` shared by every candidate `D`.
pub struct CoreData<'a> {
    clutter: &'a Clutter,
    minb: Vec<ElementSet>,
    minb_points: Vec<RationalVector>,
    facets: Option<FacetStructure>,
    /// Vertices of `I(C)` as sets, when they are all 0/1 vectors.
    vertex_sets: Option<Vec<ElementSet>>,
    transversals: Vec<ElementSet>,
    table: MinorTable<'a>,
}

impl<'a> CoreData<'a> {
    pub fn new(c: &'a Clutter) -> Result<Self> {
        c.require_nondegenerate()?;
        let transversals = blocker(c)?.edges().to_vec();
        let minb = minimum_members(&transversals);
        let n = c.ground_size();
        let facets = match polytope::facets_of_ic(c) {
            Ok(f) => Some(f),
            Err(crate::Error::UnboundedPolyhedron) | Err(crate::Error::NotApplicable(_)) => None,
            Err(e) => return Err(e),
        };
        let vertex_sets = facets.as_ref().and_then(|f| {
            f.vertices
                .points
                .iter()
                .map(|x| {
                    x.iter().enumerate().try_fold(ElementSet::EMPTY, |s, (i, v)| match v {
                        v if *v == int(0) => Some(s),
                        v if *v == int(1) => Some(s.with(i)),
                        _ => None,
                    })
                })
                .collect::<Option<Vec<_>>>()
        });
        Ok(CoreData {
            clutter: c,
            minb_points: minb.iter().map(|&b| incidence(n, b)).collect(),
            minb,
            facets,
            vertex_sets,
            transversals,
            table: MinorTable::new(c)?,
        })
    }

    pub fn clutter(&self) -> &'a Clutter {
        self.clutter
    }

    pub fn minb(&self) -> &[ElementSet] {
        &self.minb
    }

    /// Transversals of `C ∪ added`, extending the blocker of `C`.
    pub fn blocker_with(&self, added: &[ElementSet]) -> Result<Vec<ElementSet>> {
        family::blocker_extend(self.transversals.clone(), added, family::DEFAULT_BLOCKER_CAP)
    }

    /// Indices of the vertices of `I(C)` on which `⟨1_B, x⟩ = 1`.
    fn tight_vertices(&self, fs: &FacetStructure, b: ElementSet) -> Vec<usize> {
        match &self.vertex_sets {
            Some(sets) => (0..sets.len()).filter(|&i| sets[i].meet(b) == 1).collect(),
            None => {
                let ones = incidence(self.clutter.ground_size(), b);
                (0..fs.vertices.len())
                    .filter(|&i| rational::dot(&ones, &fs.vertices.points[i]) == int(1))
                    .collect()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImCheck {
    pub holds: bool,
    /// A minimum transversal of one clutter outside the affine hull of the
    /// other's.
    pub witness: Option<ImWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImWitness {
    /// `"C"` or `"D"`: whose minimum transversal escapes.
    pub from: &'static str,
    pub transversal: Vec<String>,
}

/// The affine hulls of the minimum transversals of `C` and `D` coincide.
pub fn condition_im(c: &Clutter, d: &Clutter) -> Result<ImCheck> {
    same_ground(c, d)?;
    let core = CoreData::new(c)?;
    d.require_nondegenerate()?;
    let minb_d = minimum_members(blocker(d)?.edges());
    Ok(im_against(&core, d, &minb_d))
}

fn im_against(core: &CoreData<'_>, d: &Clutter, minb_d: &[ElementSet]) -> ImCheck {
    let n = d.ground_size();
    let points_d: Vec<RationalVector> = minb_d.iter().map(|&b| incidence(n, b)).collect();
    let escape = |from: &'static str, sets: &[ElementSet], hull: &[RationalVector]| {
        sets.iter()
            .find(|&&b| !rational::in_affine_hull(hull, &incidence(n, b)))
            .map(|&b| ImWitness {
                from,
                transversal: d.labels_of(b),
            })
    };
    let witness = escape("C", &core.minb, &points_d).or_else(|| escape("D", minb_d, &core.minb_points));
    ImCheck {
        holds: witness.is_none(),
        witness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum IfFailure {
    /// No transversal of `D` has exactly this tight vertex set.
    FacetNotDefined {
        /// The facet's vertices, as hyperedges of `C`.
        vertices: Vec<Vec<String>>,
        /// A transversal of `C` defining it.
        defined_by: Vec<String>,
    },
    TransversalMissesEdge {
        transversal: Vec<String>,
        edge: Vec<String>,
    },
    /// `I(C)` is not a polytope, so its facets are not available.
    NoFacets,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IfCheck {
    pub holds: bool,
    pub failure: Option<IfFailure>,
    /// Facets of `I(C)` defined by some transversal of `C`.
    pub transversal_facets: usize,
}

/// Every facet of `I(C)` defined by a transversal of `C` is defined by a
/// transversal of `D`, and every transversal of `D` meets every edge of `C`.
pub fn condition_if(c: &Clutter, d: &Clutter) -> Result<IfCheck> {
    same_ground(c, d)?;
    let core = CoreData::new(c)?;
    d.require_nondegenerate()?;
    let b_d = blocker(d)?;
    Ok(if_against(&core, b_d.edges()))
}

fn if_against(core: &CoreData<'_>, b_d: &[ElementSet]) -> IfCheck {
    let c = core.clutter;
    let fail = |failure, transversal_facets| IfCheck {
        holds: false,
        failure: Some(failure),
        transversal_facets,
    };
    let Some(fs) = &core.facets else {
        return fail(IfFailure::NoFacets, 0);
    };
    let relevant: Vec<&polytope::Facet> = fs.facets.iter().filter(|f| !f.transversals.is_empty()).collect();
    for &b in b_d {
        if let Some(&h) = c.edges().iter().find(|h| !h.intersects(b)) {
            return fail(
                IfFailure::TransversalMissesEdge {
                    transversal: c.labels_of(b),
                    edge: c.labels_of(h),
                },
                relevant.len(),
            );
        }
    }
    let tight_sets: Vec<Vec<usize>> = b_d.iter().map(|&b| core.tight_vertices(fs, b)).collect();
    for f in &relevant {
        if !tight_sets.contains(&f.vertices) {
            let vertices = f
                .vertices
                .iter()
                .map(|&i| {
                    let x = &fs.vertices.points[i];
                    let s: ElementSet = (0..x.len()).filter(|&a| x[a] != int(0)).collect();
                    c.labels_of(s)
                })
                .collect();
            return fail(
                IfFailure::FacetNotDefined {
                    vertices,
                    defined_by: c.labels_of(f.transversals[0]),
                },
                relevant.len(),
            );
        }
    }
    IfCheck {
        holds: true,
        failure: None,
        transversal_facets: relevant.len(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum HFailure {
    /// An edge of `C` that is not an edge of `D`.
    NotContained { edge: Vec<String> },
    /// An edge of `D - C` meeting every minimum transversal of `C` at most once.
    NoDoubleHit { edge: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HCheck {
    pub holds: bool,
    pub failure: Option<HFailure>,
}

/// `C ⊆ D`, and each edge of `D - C` meets some minimum transversal of `C`
/// at least twice.
pub fn condition_h(c: &Clutter, d: &Clutter) -> Result<HCheck> {
    same_ground(c, d)?;
    c.require_nondegenerate()?;
    let minb = minimum_members(blocker(c)?.edges());
    Ok(h_against(c, &minb, d))
}

fn h_against(c: &Clutter, minb: &[ElementSet], d: &Clutter) -> HCheck {
    let failure = if let Some(&h) = c.edges().iter().find(|&&h| !d.contains_edge(h)) {
        Some(HFailure::NotContained { edge: c.labels_of(h) })
    } else {
        d.edges()
            .iter()
            .find(|&&h| !c.contains_edge(h) && !minb.iter().any(|b| b.meet(h) >= 2))
            .map(|&h| HFailure::NoDoubleHit { edge: c.labels_of(h) })
    };
    HCheck {
        holds: failure.is_none(),
        failure,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BWitness {
    pub contract: Vec<String>,
    pub delete: Vec<String>,
    /// `bn(C / A \ B)`.
    pub blocking_number: ExtendedCount,
    /// `pn(D / A \ B)`.
    pub packing_number: ExtendedCount,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BCheck {
    pub holds: bool,
    pub witness: Option<BWitness>,
    /// Minors visited before stopping.
    pub minors_checked: u64,
}

/// `bn(C / A \ B) <= pn(D / A \ B)` for all disjoint `A`, `B` with
/// `A ∪ B ≠ ∅`, in the fixed sweep order; stops at the first violation.
pub fn condition_b(c: &Clutter, d: &Clutter) -> Result<BCheck> {
    same_ground(c, d)?;
    minor::guard_sweep(c, minor::DEFAULT_SWEEP_MAX_ELEMENTS)?;
    let core = CoreData::new(c)?;
    Ok(b_against(&core, d))
}

fn b_against(core: &CoreData<'_>, d: &Clutter) -> BCheck {
    let mut checked = 0u64;
    let found = for_each_proper_minor(d.ground_size(), |a, b| {
        checked += 1;
        let bn = core.table.blocking_number(a, b);
        if bn == ExtendedCount::Finite(0) {
            return ControlFlow::Continue(());
        }
        let pn = family::packing_number(&family::minor(d.edges(), a, b));
        if bn <= pn {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break((a, b, bn, pn))
        }
    });
    BCheck {
        holds: found.is_none(),
        witness: found.map(|(a, b, bn, pn)| BWitness {
            contract: d.labels_of(a),
            delete: d.labels_of(b),
            blocking_number: bn,
            packing_number: pn,
        }),
        minors_checked: checked,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionReport {
    pub schema_version: u32,
    /// Whether `C` passed the precore checks (the conditions presuppose it).
    pub core_is_precore: bool,
    /// `tilde(D) = C`.
    pub tilde_matches: bool,
    pub ideal: IdealCheck,
    pub mnp: MinorCheck,
    pub im: ImCheck,
    #[serde(rename = "if")]
    pub if_: IfCheck,
    pub h: HCheck,
    pub b: BCheck,
}

impl SolutionReport {
    /// Every gate passed.
    pub fn all_pass(&self) -> bool {
        self.tilde_matches
            && self.ideal.ideal
            && self.mnp.holds
            && self.im.holds
            && self.if_.holds
            && self.h.holds
            && self.b.holds
    }

    /// The necessary conditions hold whenever their hypotheses do: an ideal
    /// solution of a precore clutter satisfies IM, IF and H, and if it is
    /// also minimally non-packing it satisfies B.
    pub fn implications_hold(&self) -> bool {
        if !(self.core_is_precore && self.tilde_matches && self.ideal.ideal) {
            return true;
        }
        self.im.holds && self.if_.holds && self.h.holds && (!self.mnp.holds || self.b.holds)
    }
}

/// Evaluate every solution condition for `D` over `C`.
pub fn check_solution(c: &Clutter, d: &Clutter) -> Result<SolutionReport> {
    same_ground(c, d)?;
    d.require_nondegenerate()?;
    minor::guard_sweep(d, minor::DEFAULT_SWEEP_MAX_ELEMENTS)?;
    let core = CoreData::new(c)?;
    let core_is_precore = conditions::is_precore(c)?.is_precore;
    let b_d = blocker(d)?;
    let minb_d = minimum_members(b_d.edges());
    let tilde_d = crate::blocker::tilde_from(d, &minb_d);
    Ok(SolutionReport {
        schema_version: SCHEMA_VERSION,
        core_is_precore,
        tilde_matches: tilde_d.edges() == c.edges(),
        ideal: polytope::is_ideal(d)?,
        mnp: minor::is_minimally_non_packing(d)?,
        im: im_against(&core, d, &minb_d),
        if_: if_against(&core, b_d.edges()),
        h: h_against(c, &core.minb, d),
        b: b_against(&core, d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::q6;

    #[test]
    fn q6_is_its_own_solution() {
        let c = q6();
        let r = check_solution(&c, &c).unwrap();
        assert!(r.core_is_precore);
        assert!(r.all_pass(), "{r:?}");
        assert!(r.implications_hold());
    }

    #[test]
    fn h_detects_missing_edge() {
        let c = q6();
        let d = c.with_edges(c.edges()[1..].to_vec()).unwrap();
        let h = condition_h(&c, &d).unwrap();
        assert!(matches!(h.failure, Some(HFailure::NotContained { .. })));
    }

    #[test]
    fn h_accepts_double_hit() {
        let c = q6();
        let extra = c.set_from_labels(["1", "2", "3"]).unwrap();
        let mut edges = c.edges().to_vec();
        edges.push(extra);
        let d = c.with_edges(edges).unwrap();
        assert!(condition_h(&c, &d).unwrap().holds);
    }

    #[test]
    fn trivial_ground() {
        let c = crate::clutter::make_clutter(["a"], [["a"]]).unwrap();
        let b = condition_b(&c, &c).unwrap();
        assert!(b.holds);
        assert_eq!(b.minors_checked, 2);
    }
}
