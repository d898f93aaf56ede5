//! Double description method for pointed polyhedral cones
//! `{z : G z >= 0}` over exact rationals.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, dot, Rational, RationalVector};

#[derive(Clone, PartialEq, Eq)]
struct RowBits(Vec<u64>);

impl RowBits {
    fn new(n: usize) -> Self {
        RowBits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &RowBits) -> RowBits {
        RowBits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset(&self, other: &RowBits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    dir: RationalVector,
    zeros: RowBits,
}

pub(crate) enum Cone {
    /// Extreme rays, each scaled to a primitive integer vector.
    Pointed(Vec<RationalVector>),
    /// The cone contains a line.
    NotPointed,
}

/// Extreme rays of `{z in R^dim : g·z >= 0 for g in rows}`.
pub(crate) fn extreme_rays(rows: &[RationalVector], dim: usize, cap: usize) -> Result<Cone> {
    // Initial basis: greedily pick rows raising the rank.
    let mut chosen: Vec<usize> = Vec::with_capacity(dim);
    let mut echelon: Vec<RationalVector> = Vec::new();
    for (i, g) in rows.iter().enumerate() {
        if chosen.len() == dim {
            break;
        }
        echelon.push(g.clone());
        if rational::rank(&echelon) > chosen.len() {
            chosen.push(i);
        } else {
            echelon.pop();
        }
    }
    if chosen.len() < dim {
        return Ok(Cone::NotPointed);
    }
    let square: Vec<RationalVector> = chosen.iter().map(|&i| rows[i].clone()).collect();
    let inv = rational::invert(&square).expect("rows were chosen independent");

    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let mut dir: RationalVector = (0..dim).map(|i| inv[i][j].clone()).collect();
            rational::primitive(&mut dir);
            let mut zeros = RowBits::new(rows.len());
            for (k, &r) in chosen.iter().enumerate() {
                if k != j {
                    zeros.set(r);
                }
            }
            Ray { dir, zeros }
        })
        .collect();

    let mut processed = vec![false; rows.len()];
    for &i in &chosen {
        processed[i] = true;
    }
    for (idx, g) in rows.iter().enumerate() {
        if processed[idx] {
            continue;
        }
        processed[idx] = true;
        let values: Vec<Rational> = rays.iter().map(|r| dot(g, &r.dir)).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();
        if minus.is_empty() {
            for (k, v) in values.iter().enumerate() {
                if v.is_zero() {
                    rays[k].zeros.set(idx);
                }
            }
            continue;
        }

        let mut created: Vec<Ray> = Vec::new();
        for &p in &plus {
            for &n in &minus {
                let common = rays[p].zeros.and(&rays[n].zeros);
                if common.count() + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == n || !common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let mut dir: RationalVector = rays[n]
                    .dir
                    .iter()
                    .zip(&rays[p].dir)
                    .map(|(xn, xp)| &values[p] * xn - &values[n] * xp)
                    .collect();
                rational::primitive(&mut dir);
                let mut zeros = common;
                zeros.set(idx);
                created.push(Ray { dir, zeros });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if values[k].is_negative() {
                continue;
            }
            if values[k].is_zero() {
                r.zeros.set(idx);
            }
            next.push(r);
        }
        next.extend(created);
        if next.len() > cap {
            return Err(Error::CapExceeded {
                what: "double description ray count",
                limit: cap,
            });
        }
        rays = next;
    }
    Ok(Cone::Pointed(rays.into_iter().map(|r| r.dir).collect()))
}
