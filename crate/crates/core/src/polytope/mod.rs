//! Exact polyhedra: `I(C)`, the blocking polyhedron, vertex enumeration,
//! integrality, simplices, facets and idealness.

mod dd;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::blocker::{blocker, minimum_members};
use crate::clutter::Clutter;
use crate::error::{Error, Result};
use crate::lp::{solve_lp, Sense};
use crate::rational::{self, dot, Rational, RationalVector};
use crate::set::ElementSet;

/// Refuse polyhedral work above this many coordinates.
pub const DEFAULT_MAX_DIMENSION: usize = 16;
/// Refuse double description runs above this many intermediate rays.
pub const DEFAULT_RAY_CAP: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintTag {
    /// `⟨1_B, x⟩ = 1` for a minimum transversal (equalities only).
    MinTransversal,
    /// `⟨1_B, x⟩ >= 1` for a non-minimum transversal.
    Transversal,
    /// `⟨1_H, x⟩ >= 1` for a hyperedge (blocking polyhedron rows).
    Hyperedge,
    /// `x_a >= 0`.
    NonNeg,
    /// `⟨1_S, x⟩ <= rhs`.
    Box,
}

/// `⟨1_support, x⟩ = rhs`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Equality {
    #[serde(serialize_with = "serialize_ids")]
    pub support: ElementSet,
    #[serde(serialize_with = "rational::serialize_ratio")]
    pub rhs: Rational,
    pub tag: ConstraintTag,
}

/// `⟨1_support, x⟩ >= rhs`, or `<=` for [`ConstraintTag::Box`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Inequality {
    #[serde(serialize_with = "serialize_ids")]
    pub support: ElementSet,
    #[serde(serialize_with = "rational::serialize_ratio")]
    pub rhs: Rational,
    pub tag: ConstraintTag,
}

fn serialize_ids<S: serde::Serializer>(s: &ElementSet, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(s.iter())
}

impl Inequality {
    /// Oriented as `a·x >= b`.
    fn dense(&self, dim: usize) -> (RationalVector, Rational) {
        let sign = if self.tag == ConstraintTag::Box {
            -Rational::one()
        } else {
            Rational::one()
        };
        let a = (0..dim)
            .map(|i| {
                if self.support.contains(i) {
                    sign.clone()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        (a, sign * &self.rhs)
    }
}

/// A polyhedron in `R^ambient_dim` whose constraint rows are 0/1 vectors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HPolyhedron {
    pub equalities: Vec<Equality>,
    pub inequalities: Vec<Inequality>,
    pub ambient_dim: usize,
}

impl HPolyhedron {
    pub fn new(ambient_dim: usize) -> Self {
        HPolyhedron {
            equalities: Vec::new(),
            inequalities: Vec::new(),
            ambient_dim,
        }
    }

    pub fn equality(mut self, support: ElementSet, rhs: Rational, tag: ConstraintTag) -> Self {
        self.equalities.push(Equality { support, rhs, tag });
        self
    }

    pub fn inequality(mut self, support: ElementSet, rhs: Rational, tag: ConstraintTag) -> Self {
        self.inequalities.push(Inequality { support, rhs, tag });
        self
    }

    pub fn nonnegative(mut self) -> Self {
        for a in 0..self.ambient_dim {
            self = self.inequality(ElementSet::singleton(a), Rational::zero(), ConstraintTag::NonNeg);
        }
        self
    }

    /// Add `x_a <= 1` for every coordinate.
    pub fn with_unit_box(mut self) -> Self {
        for a in 0..self.ambient_dim {
            self = self.inequality(ElementSet::singleton(a), Rational::one(), ConstraintTag::Box);
        }
        self
    }

    /// `{x >= 0 : ⟨1_H, x⟩ >= 1 for all H in C}`.
    pub fn blocking_polyhedron(c: &Clutter) -> Self {
        let mut p = HPolyhedron::new(c.ground_size());
        for &h in c.edges() {
            p = p.inequality(h, Rational::one(), ConstraintTag::Hyperedge);
        }
        p.nonnegative()
    }

    pub fn constraint_count(&self) -> usize {
        self.equalities.len() + self.inequalities.len()
    }

    /// All constraints as dense `(a, b, is_equality)`, equalities first;
    /// this fixes the constraint indices used in incidence sets.
    fn dense_rows(&self) -> Vec<(RationalVector, Rational, bool)> {
        let d = self.ambient_dim;
        let eq = self.equalities.iter().map(|e| {
            let a = (0..d)
                .map(|i| {
                    if e.support.contains(i) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            (a, e.rhs.clone(), true)
        });
        let ineq = self.inequalities.iter().map(|q| {
            let (a, b) = q.dense(d);
            (a, b, false)
        });
        eq.chain(ineq).collect()
    }

    pub fn tag_of(&self, constraint: usize) -> ConstraintTag {
        if constraint < self.equalities.len() {
            self.equalities[constraint].tag
        } else {
            self.inequalities[constraint - self.equalities.len()].tag
        }
    }

    pub fn support_of(&self, constraint: usize) -> ElementSet {
        if constraint < self.equalities.len() {
            self.equalities[constraint].support
        } else {
            self.inequalities[constraint - self.equalities.len()].support
        }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.dense_rows().iter().all(|(a, b, eq)| {
            let v = dot(a, x);
            if *eq {
                v == *b
            } else {
                v >= *b
            }
        })
    }

    /// Indices of constraints holding with equality at `x`.
    pub fn tight_at(&self, x: &[Rational]) -> Vec<usize> {
        self.dense_rows()
            .iter()
            .enumerate()
            .filter(|(_, (a, b, _))| dot(a, x) == *b)
            .map(|(i, _)| i)
            .collect()
    }

    fn rank_of(&self, rows: &[usize]) -> usize {
        let dense = self.dense_rows();
        let m: Vec<RationalVector> = rows.iter().map(|&i| dense[i].0.clone()).collect();
        rational::rank(&m)
    }
}

/// Enumerated vertices with their tight constraints.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexSet {
    #[serde(serialize_with = "rational::serialize_ratio_vecs")]
    pub points: Vec<RationalVector>,
    /// Per point, the indices of tight constraints (equalities first).
    pub incidence: Vec<Vec<usize>>,
}

impl VertexSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Vertices and recession rays of a pointed polyhedron.
struct Generators {
    vertices: Vec<RationalVector>,
    rays: usize,
}

/// Run double description on the homogenization of `p` after substituting
/// an affine parametrization of the equalities.
fn generators(p: &HPolyhedron) -> Result<Option<Generators>> {
    let d = p.ambient_dim;
    if d > DEFAULT_MAX_DIMENSION {
        return Err(Error::CapExceeded {
            what: "polyhedron dimension",
            limit: DEFAULT_MAX_DIMENSION,
        });
    }
    let rows = p.dense_rows();
    let (eq_a, eq_b): (Vec<RationalVector>, Vec<Rational>) = rows
        .iter()
        .filter(|r| r.2)
        .map(|(a, b, _)| (a.clone(), b.clone()))
        .unzip();
    let Some((x0, basis)) = rational::solve_affine(&eq_a, &eq_b, d) else {
        return Ok(None);
    };
    let k = basis.len();
    // Cone over z = (s, t): s >= 0 and (a·x0 - b) s + (a N) t >= 0.
    let mut cone_rows: Vec<RationalVector> = Vec::new();
    let mut s_row = vec![Rational::zero(); k + 1];
    s_row[0] = Rational::one();
    cone_rows.push(s_row);
    for (a, b, _) in rows.iter().filter(|r| !r.2) {
        let mut g = Vec::with_capacity(k + 1);
        g.push(dot(a, &x0) - b);
        g.extend(basis.iter().map(|n| dot(a, n)));
        cone_rows.push(g);
    }
    match dd::extreme_rays(&cone_rows, k + 1, DEFAULT_RAY_CAP)? {
        dd::Cone::NotPointed => {
            if feasible(p)? {
                Err(Error::UnboundedPolyhedron)
            } else {
                Ok(None)
            }
        }
        dd::Cone::Pointed(rays) => {
            let mut vertices = Vec::new();
            let mut recession = 0;
            for z in rays {
                if z[0].is_zero() {
                    recession += 1;
                    continue;
                }
                let s = z[0].clone();
                let mut x = x0.clone();
                for (tj, n) in z[1..].iter().zip(&basis) {
                    let c = tj / &s;
                    for (xi, ni) in x.iter_mut().zip(n) {
                        *xi += &c * ni;
                    }
                }
                vertices.push(x);
            }
            if vertices.is_empty() {
                return Ok(None);
            }
            vertices.sort();
            vertices.dedup();
            Ok(Some(Generators {
                vertices,
                rays: recession,
            }))
        }
    }
}

/// Feasibility of `p` by a phase-one LP over `x = x⁺ - x⁻`.
fn feasible(p: &HPolyhedron) -> Result<bool> {
    let rows = p.dense_rows();
    let a: Vec<RationalVector> = rows
        .iter()
        .map(|(a, _, _)| a.iter().cloned().chain(a.iter().map(|x| -x)).collect())
        .collect();
    let b: Vec<Rational> = rows.iter().map(|r| r.1.clone()).collect();
    let senses: Vec<Sense> = rows.iter().map(|r| if r.2 { Sense::Eq } else { Sense::Ge }).collect();
    let c = vec![Rational::zero(); 2 * p.ambient_dim];
    match solve_lp(&a, &b, &c, &senses) {
        Ok(_) => Ok(true),
        Err(Error::Infeasible) => Ok(false),
        Err(e) => Err(e),
    }
}

fn vertex_set(p: &HPolyhedron, points: Vec<RationalVector>) -> VertexSet {
    let incidence: Vec<Vec<usize>> = points.iter().map(|x| p.tight_at(x)).collect();
    debug_assert!(incidence.iter().all(|t| p.rank_of(t) == p.ambient_dim));
    VertexSet { points, incidence }
}

/// All vertices of a bounded polyhedron, in lexicographic order.
pub fn vertices(p: &HPolyhedron) -> Result<VertexSet> {
    match generators(p)? {
        None => Ok(VertexSet {
            points: Vec::new(),
            incidence: Vec::new(),
        }),
        Some(g) if g.rays > 0 => Err(Error::UnboundedPolyhedron),
        Some(g) => Ok(vertex_set(p, g.vertices)),
    }
}

/// Vertices of a possibly unbounded pointed polyhedron.
pub fn vertices_unbounded(p: &HPolyhedron) -> Result<VertexSet> {
    match generators(p)? {
        None => Ok(VertexSet {
            points: Vec::new(),
            incidence: Vec::new(),
        }),
        Some(g) => Ok(vertex_set(p, g.vertices)),
    }
}

/// Whether every reported vertex has tight constraints of full rank.
pub fn certificates_hold(p: &HPolyhedron, v: &VertexSet) -> bool {
    v.points
        .iter()
        .zip(&v.incidence)
        .all(|(x, t)| p.contains(x) && *t == p.tight_at(x) && p.rank_of(t) == p.ambient_dim)
}

/// `I(C)`: minimum transversals as equalities, the remaining transversals
/// as `>= 1` rows, and nonnegativity.
pub fn build_ic(c: &Clutter) -> Result<HPolyhedron> {
    c.require_nondegenerate()?;
    let b = blocker(c)?;
    let minb = minimum_members(b.edges());
    let mut p = HPolyhedron::new(c.ground_size());
    for &t in &minb {
        p = p.equality(t, Rational::one(), ConstraintTag::MinTransversal);
    }
    for &t in b.edges() {
        if !minb.contains(&t) {
            p = p.inequality(t, Rational::one(), ConstraintTag::Transversal);
        }
    }
    Ok(p.nonnegative())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegralityCheck {
    pub integral: bool,
    #[serde(serialize_with = "serialize_opt_vec")]
    pub fractional_vertex: Option<RationalVector>,
}

fn serialize_opt_vec<S: serde::Serializer>(v: &Option<RationalVector>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => rational::serialize_ratio_vec(v, s),
        None => s.serialize_none(),
    }
}

fn integrality(v: &VertexSet) -> IntegralityCheck {
    let fractional = v.points.iter().find(|x| !rational::is_integer_vector(x)).cloned();
    IntegralityCheck {
        integral: fractional.is_none(),
        fractional_vertex: fractional,
    }
}

/// Every vertex of the bounded polyhedron `p` is integral.
pub fn is_integral_polytope(p: &HPolyhedron) -> Result<IntegralityCheck> {
    Ok(integrality(&vertices(p)?))
}

/// `|vertices| = dim + 1`.
pub fn is_simplex(p: &HPolyhedron) -> Result<bool> {
    Ok(vertex_set_is_simplex(&vertices(p)?))
}

pub(crate) fn vertex_set_is_simplex(v: &VertexSet) -> bool {
    match rational::affine_dimension(&v.points) {
        Ok(dim) => v.len() == dim + 1,
        Err(_) => false,
    }
}

/// A facet of `I(C)` identified by the vertices it contains.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Facet {
    /// Indices into the vertex set.
    pub vertices: Vec<usize>,
    /// Transversals of `C` whose row defines this facet.
    #[serde(skip)]
    pub transversals: Vec<ElementSet>,
    /// Elements `a` whose row `x_a >= 0` defines this facet.
    pub nonneg: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FacetStructure {
    pub vertices: VertexSet,
    pub dimension: usize,
    pub facets: Vec<Facet>,
}

/// Facets of the polytope `I(C)`, each with every transversal and
/// nonnegativity row that defines it.
pub fn facets_of_ic(c: &Clutter) -> Result<FacetStructure> {
    let p = build_ic(c)?;
    let v = vertices(&p)?;
    if v.is_empty() {
        return Err(Error::NotApplicable("I(C) is empty".into()));
    }
    let dimension = rational::affine_dimension(&v.points)?;
    let mut facets: Vec<Facet> = Vec::new();
    if dimension == 0 {
        return Ok(FacetStructure {
            vertices: v,
            dimension,
            facets,
        });
    }
    for row in p.equalities.len()..p.constraint_count() {
        let on: Vec<usize> = (0..v.len()).filter(|&i| v.incidence[i].contains(&row)).collect();
        if on.is_empty() || on.len() == v.len() {
            continue;
        }
        let pts: Vec<RationalVector> = on.iter().map(|&i| v.points[i].clone()).collect();
        if rational::affine_dimension(&pts)? + 1 != dimension {
            continue;
        }
        let idx = match facets.iter().position(|f| f.vertices == on) {
            Some(i) => i,
            None => {
                facets.push(Facet {
                    vertices: on,
                    transversals: Vec::new(),
                    nonneg: Vec::new(),
                });
                facets.len() - 1
            }
        };
        let support = p.support_of(row);
        match p.tag_of(row) {
            ConstraintTag::NonNeg => facets[idx].nonneg.push(support.first().expect("singleton")),
            _ => facets[idx].transversals.push(support),
        }
    }
    facets.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(FacetStructure {
        vertices: v,
        dimension,
        facets,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdealCheck {
    pub ideal: bool,
    #[serde(serialize_with = "serialize_opt_vec")]
    pub fractional_vertex: Option<RationalVector>,
    pub vertex_count: usize,
}

/// Integrality of the blocking polyhedron `{x >= 0 : M(C) x >= 1}`.
pub fn is_ideal(c: &Clutter) -> Result<IdealCheck> {
    c.require_nondegenerate()?;
    let v = vertices_unbounded(&HPolyhedron::blocking_polyhedron(c))?;
    let check = integrality(&v);
    Ok(IdealCheck {
        ideal: check.integral,
        fractional_vertex: check.fractional_vertex,
        vertex_count: v.len(),
    })
}

/// Same decision through the unit-box augmentation: enumerate the vertices
/// of the blocking polyhedron intersected with `[0,1]^E` and keep those
/// whose tight non-box rows have full rank.
pub fn is_ideal_via_box(c: &Clutter) -> Result<IdealCheck> {
    c.require_nondegenerate()?;
    let p = HPolyhedron::blocking_polyhedron(c).with_unit_box();
    let v = vertices(&p)?;
    let original: Vec<RationalVector> = v
        .points
        .iter()
        .zip(&v.incidence)
        .filter(|(_, tight)| {
            let rows: Vec<usize> = tight
                .iter()
                .copied()
                .filter(|&i| p.tag_of(i) != ConstraintTag::Box)
                .collect();
            p.rank_of(&rows) == p.ambient_dim
        })
        .map(|(x, _)| x.clone())
        .collect();
    let fractional = original.iter().find(|x| !rational::is_integer_vector(x)).cloned();
    Ok(IdealCheck {
        ideal: fractional.is_none(),
        fractional_vertex: fractional,
        vertex_count: original.len(),
    })
}

/// Whether `x` satisfies every row of `p` with slack, ignoring equalities.
pub fn strictly_inside(p: &HPolyhedron, x: &[Rational], tags: &[ConstraintTag]) -> bool {
    p.inequalities.iter().filter(|q| tags.contains(&q.tag)).all(|q| {
        let (a, b) = q.dense(p.ambient_dim);
        (dot(&a, x) - b).is_positive()
    })
}
