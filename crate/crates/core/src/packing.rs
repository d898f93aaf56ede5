//! Maximum fractional packings and the optimal face `F(C)`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::clutter::Clutter;
use crate::error::{Error, Result};
use crate::lp::{solve_lp, Sense};
use crate::rational::{self, Rational, RationalVector};
use crate::set::ElementSet;

/// An optimal solution of `max Σ y(H)` s.t. `Σ_{H ∋ a} y(H) <= 1`,
/// `y >= 0`, together with an optimal dual (a minimum fractional cover of
/// the elements).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FractionalPacking {
    #[serde(skip)]
    pub edges: Vec<ElementSet>,
    /// Weight of each edge, aligned with `edges`.
    #[serde(serialize_with = "rational::serialize_ratio_vec")]
    pub weights: RationalVector,
    #[serde(serialize_with = "rational::serialize_ratio")]
    pub value: Rational,
    /// Optimal dual `x` on the elements.
    #[serde(serialize_with = "rational::serialize_ratio_vec")]
    pub dual: RationalVector,
}

impl FractionalPacking {
    /// Per-element load `Σ_{H ∋ a} y(H)`.
    pub fn load(&self, ground_size: usize) -> RationalVector {
        (0..ground_size)
            .map(|a| {
                self.edges
                    .iter()
                    .zip(&self.weights)
                    .filter(|(e, _)| e.contains(a))
                    .map(|(_, w)| w.clone())
                    .sum()
            })
            .collect()
    }

    pub fn support(&self) -> Vec<ElementSet> {
        self.edges
            .iter()
            .zip(&self.weights)
            .filter(|(_, w)| !w.is_zero())
            .map(|(e, _)| *e)
            .collect()
    }

    pub fn weight_of(&self, h: ElementSet) -> Option<&Rational> {
        self.edges.iter().position(|&e| e == h).map(|i| &self.weights[i])
    }
}

/// Element-by-edge incidence rows of the packing LP.
fn packing_rows(c: &Clutter) -> Vec<RationalVector> {
    (0..c.ground_size())
        .map(|a| {
            c.edges()
                .iter()
                .map(|e| {
                    if e.contains(a) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn max_fractional_packing(c: &Clutter) -> Result<FractionalPacking> {
    c.require_nondegenerate()?;
    let rows = packing_rows(c);
    let ones = vec![Rational::one(); c.len()];
    let rhs = vec![Rational::one(); c.ground_size()];
    let senses = vec![Sense::Le; c.ground_size()];
    let sol = solve_lp(&rows, &rhs, &ones, &senses)?;
    Ok(FractionalPacking {
        edges: c.edges().to_vec(),
        weights: sol.primal,
        value: sol.value,
        dual: sol.dual,
    })
}

/// Fractional packing number.
pub fn fpn(c: &Clutter) -> Result<Rational> {
    Ok(max_fractional_packing(c)?.value)
}

/// Optimize `sign * y(edge)` over the optimal face `F(C)`.
fn face_extreme(c: &Clutter, value: &Rational, edge: usize, sign: i64) -> Result<Rational> {
    let mut rows = packing_rows(c);
    let mut rhs = vec![Rational::one(); c.ground_size()];
    let mut senses = vec![Sense::Le; c.ground_size()];
    rows.push(vec![Rational::one(); c.len()]);
    rhs.push(value.clone());
    senses.push(Sense::Eq);
    let mut objective = vec![Rational::zero(); c.len()];
    objective[edge] = rational::int(sign);
    let sol = solve_lp(&rows, &rhs, &objective, &senses)?;
    Ok(sol.value * rational::int(sign))
}

/// `[min y(H), max y(H)]` over all maximum fractional packings, per edge.
pub fn face_ranges(c: &Clutter) -> Result<Vec<(Rational, Rational)>> {
    let value = fpn(c)?;
    (0..c.len())
        .map(|i| Ok((face_extreme(c, &value, i, -1)?, face_extreme(c, &value, i, 1)?)))
        .collect()
}

/// Whether `h` carries positive weight in some maximum fractional packing.
pub fn edge_in_some_max_packing(c: &Clutter, h: ElementSet) -> Result<bool> {
    let i = c
        .edges()
        .iter()
        .position(|&e| e == h)
        .ok_or_else(|| Error::Invalid(format!("{} is not a hyperedge", c.render(h))))?;
    let value = fpn(c)?;
    Ok(face_extreme(c, &value, i, 1)? > Rational::zero())
}

/// The optimal face `F(C)` is a single point.
pub fn is_unique_max_packing(c: &Clutter) -> Result<bool> {
    Ok(face_ranges(c)?.iter().all(|(lo, hi)| lo == hi))
}
