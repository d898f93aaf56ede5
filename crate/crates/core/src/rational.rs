//! Exact rationals and the small amount of exact linear algebra the LP and
//! polytope code needs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = num_rational::BigRational;

pub type RationalVector = Vec<Rational>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_integer_vector(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// `"p/q"`, or `"p"` for integers.
pub fn to_string(q: &Rational) -> String {
    q.to_string()
}

pub fn parse(s: &str) -> Result<Rational> {
    let bad = || Error::Invalid(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Serialize a rational as a `"p/q"` string.
pub fn serialize_ratio<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_string(q))
}

pub fn serialize_ratio_vec<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(to_string))
}

pub fn serialize_ratio_vecs<S: Serializer>(v: &[RationalVector], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.iter().map(to_string).collect::<Vec<_>>()))
}

/// `{"num": "p", "den": "q"}` form used by LP solutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioParts {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RatioParts {
    fn from(q: &Rational) -> Self {
        RatioParts {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

/// Scale a vector to a primitive integer vector with the same direction.
pub fn primitive(v: &mut [Rational]) {
    let mut lcm = BigInt::one();
    for x in v.iter() {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for n in &ints {
        g = g.gcd(n);
    }
    if g.is_zero() {
        return;
    }
    for (x, n) in v.iter_mut().zip(ints) {
        *x = Rational::from_integer(n / &g);
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut [RationalVector]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[RationalVector]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Dimension of the affine hull of `points`.
pub fn affine_dimension(points: &[RationalVector]) -> Result<usize> {
    let (first, rest) = points.split_first().ok_or(Error::EmptyInput)?;
    let diffs: Vec<RationalVector> = rest
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    Ok(rank(&diffs))
}

/// Whether `p` lies in the affine hull of `points` (nonempty).
pub fn in_affine_hull(points: &[RationalVector], p: &[Rational]) -> bool {
    let Some(first) = points.first() else {
        return false;
    };
    let diff = |q: &[Rational]| -> RationalVector { q.iter().zip(first).map(|(a, b)| a - b).collect() };
    let mut rows: Vec<RationalVector> = points[1..].iter().map(|q| diff(q)).collect();
    let before = rank(&rows);
    rows.push(diff(p));
    rank(&rows) == before
}

/// Affine solution set of `A x = b`: a particular solution and a basis of
/// the null space (as columns, one vector per direction). `None` when
/// inconsistent.
pub fn solve_affine(
    a: &[RationalVector],
    b: &[Rational],
    ncols: usize,
) -> Option<(RationalVector, Vec<RationalVector>)> {
    let mut aug: Vec<RationalVector> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut particular = vec![Rational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[r][ncols].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -aug[r][f].clone();
            }
            v
        })
        .collect();
    Some((particular, basis))
}

/// Inverse of a square matrix, if nonsingular.
pub fn invert(m: &[RationalVector]) -> Option<Vec<RationalVector>> {
    let n = m.len();
    let mut aug: Vec<RationalVector> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn abs_max(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> RationalVector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn affine_dimension_examples() {
        assert_eq!(affine_dimension(&[v(&[1, 0, 0])]).unwrap(), 0);
        assert_eq!(
            affine_dimension(&[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap(),
            2
        );
        assert_eq!(affine_dimension(&[]), Err(Error::EmptyInput));
        assert!(in_affine_hull(&[v(&[1, 0]), v(&[0, 1])], &v(&[2, -1])));
        assert!(!in_affine_hull(&[v(&[1, 0]), v(&[0, 1])], &v(&[1, 1])));
    }

    #[test]
    fn solve_and_invert() {
        let (x0, basis) = solve_affine(&[v(&[1, 1, 0])], &[int(1)], 3).unwrap();
        assert_eq!(x0, v(&[1, 0, 0]));
        assert_eq!(basis.len(), 2);
        assert!(solve_affine(&[v(&[1, 1]), v(&[1, 1])], &[int(1), int(2)], 2).is_none());
        let inv = invert(&[v(&[2, 0]), v(&[1, 1])]).unwrap();
        assert_eq!(inv, vec![vec![ratio(1, 2), int(0)], vec![ratio(-1, 2), int(1)]]);
        assert!(invert(&[v(&[1, 2]), v(&[2, 4])]).is_none());
    }

    #[test]
    fn parse_and_primitive() {
        assert_eq!(parse("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse("-3").unwrap(), int(-3));
        assert!(parse("1/0").is_err());
        let mut w = vec![ratio(1, 2), ratio(-3, 4), int(0)];
        primitive(&mut w);
        assert_eq!(w, v(&[2, -3, 0]));
    }
}
