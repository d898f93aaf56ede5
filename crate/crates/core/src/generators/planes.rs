use serde::Serialize;

use crate::clutter::{make_clutter, Clutter};
use crate::error::{Error, Result};
use crate::minor;
use crate::set::ElementSet;

/// `{135, 146, 236, 245}` on `{1, ..., 6}`.
pub fn q6() -> Clutter {
    make_clutter(
        ["1", "2", "3", "4", "5", "6"],
        [["1", "3", "5"], ["1", "4", "6"], ["2", "3", "6"], ["2", "4", "5"]],
    )
    .expect("Q6 is a clutter")
}

/// The projective plane of order 2.
pub fn fano() -> Clutter {
    projective_plane(2).expect("2 is prime")
}

fn is_prime(q: u32) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Homogeneous coordinates with first nonzero entry 1, in lexicographic
/// order.
fn normalized_triples(q: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let t = [a, b, c];
                if t.iter().find(|&&x| x != 0) == Some(&1) {
                    out.push(t);
                }
            }
        }
    }
    out
}

fn coordinate_label(t: &[u32; 3], q: u32) -> String {
    let parts: Vec<String> = t.iter().map(u32::to_string).collect();
    if q <= 10 {
        parts.concat()
    } else {
        parts.join(".")
    }
}

/// `PG(2, q)` for prime `q` with lines as elements and points as
/// hyperedges: each point is the set of lines through it.
pub fn projective_plane(q: u32) -> Result<Clutter> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let coords = normalized_triples(q);
    let n = coords.len();
    if n > crate::set::MAX_ELEMENTS {
        return Err(Error::TooManyElements(n));
    }
    let ground: Vec<String> = coords.iter().map(|t| coordinate_label(t, q)).collect();
    let edges = coords.iter().map(|p| {
        (0..n)
            .filter(|&l| {
                let line = &coords[l];
                (0..3).map(|i| p[i] * line[i]).sum::<u32>() % q == 0
            })
            .collect::<ElementSet>()
    });
    Clutter::from_edges(ground, edges.collect())
}

/// `PG(2, q)` with its first element deleted.
pub fn affine_plane(q: u32) -> Result<Clutter> {
    affine_plane_from(&projective_plane(q)?, 0)
}

/// Delete element `a` from a projective plane.
pub fn affine_plane_from(pp: &Clutter, a: usize) -> Result<Clutter> {
    let check = verify_projective_axioms(pp);
    if let Some(v) = check.violation {
        return Err(Error::AxiomViolation(v));
    }
    if a >= pp.ground_size() {
        return Err(Error::Invalid(format!("element index {a} out of range")));
    }
    Ok(minor::delete(pp, ElementSet::singleton(a)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub holds: bool,
    /// Description of the first violated axiom.
    pub violation: Option<String>,
}

impl AxiomCheck {
    fn from(violation: Option<String>) -> Self {
        AxiomCheck {
            holds: violation.is_none(),
            violation,
        }
    }
}

fn pairwise_meet_once(c: &Clutter) -> Option<String> {
    let e = c.edges();
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            if e[i].meet(e[j]) != 1 {
                return Some(format!(
                    "(1) hyperedges {} and {} meet in {} elements",
                    c.render(e[i]),
                    c.render(e[j]),
                    e[i].meet(e[j])
                ));
            }
        }
    }
    None
}

fn common_edges(c: &Clutter, a: usize, b: usize) -> usize {
    c.edges().iter().filter(|e| e.contains(a) && e.contains(b)).count()
}

/// Any two elements lie in a unique common hyperedge; any two hyperedges
/// meet in one element; some four elements have no hyperedge containing
/// three of them.
pub fn verify_projective_axioms(c: &Clutter) -> AxiomCheck {
    let n = c.ground_size();
    for a in 0..n {
        for b in a + 1..n {
            let k = common_edges(c, a, b);
            if k != 1 {
                return AxiomCheck::from(Some(format!(
                    "(1) elements {} and {} lie in {k} common hyperedges",
                    c.label(a),
                    c.label(b)
                )));
            }
        }
    }
    let meet = pairwise_meet_once(c);
    if meet.is_some() {
        return AxiomCheck::from(meet.map(|m| m.replacen("(1)", "(2)", 1)));
    }
    AxiomCheck::from((!has_quadrangle(c)).then(|| "(3) no four elements in general position".to_string()))
}

fn has_quadrangle(c: &Clutter) -> bool {
    let n = c.ground_size();
    let general = |s: ElementSet| c.edges().iter().all(|e| e.meet(s) <= 2);
    for a in 0..n {
        for b in a + 1..n {
            for d in b + 1..n {
                let three = ElementSet::from_ids([a, b, d]);
                if !general(three) {
                    continue;
                }
                if (d + 1..n).any(|x| general(three.with(x))) {
                    return true;
                }
            }
        }
    }
    false
}

/// Hyperedges meet pairwise in one element; for `a ∉ H` exactly one
/// `b ∈ H` shares no hyperedge with `a`; three hyperedges have empty
/// common intersection.
pub fn verify_affine_axioms(c: &Clutter) -> AxiomCheck {
    if let Some(v) = pairwise_meet_once(c) {
        return AxiomCheck::from(Some(v));
    }
    for a in 0..c.ground_size() {
        for &h in c.edges() {
            if h.contains(a) {
                continue;
            }
            let parallel = h.iter().filter(|&b| common_edges(c, a, b) == 0).count();
            if parallel != 1 {
                return AxiomCheck::from(Some(format!(
                    "(2) element {} has {parallel} elements of {} sharing no hyperedge with it",
                    c.label(a),
                    c.render(h)
                )));
            }
        }
    }
    let e = c.edges();
    let triangle = (0..e.len()).any(|i| {
        (i + 1..e.len()).any(|j| (j + 1..e.len()).any(|k| e[i].intersection(e[j]).intersection(e[k]).is_empty()))
    });
    AxiomCheck::from((!triangle).then(|| "(3) every three hyperedges share an element".to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(5) && is_prime(7));
        assert!(!is_prime(0) && !is_prime(1) && !is_prime(4) && !is_prime(9));
        assert_eq!(projective_plane(4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn plane_sizes() {
        for q in [2u32, 3, 5, 7] {
            let pp = projective_plane(q).unwrap();
            let n = (q * q + q + 1) as usize;
            assert_eq!((pp.ground_size(), pp.len()), (n, n));
            assert!(pp.edges().iter().all(|e| e.len() == q as usize + 1));
            assert!(verify_projective_axioms(&pp).holds, "q = {q}");
            let ag = affine_plane(q).unwrap();
            assert_eq!((ag.ground_size(), ag.len()), (n - 1, (q * q) as usize));
            assert!(verify_affine_axioms(&ag).holds, "q = {q}");
        }
    }

    #[test]
    fn q6_axioms() {
        let c = q6();
        assert!(verify_affine_axioms(&c).holds);
        let p = verify_projective_axioms(&c);
        assert!(!p.holds);
        assert!(p.violation.unwrap().starts_with("(1) elements 1 and 2"));
    }

    #[test]
    fn affine_from_requires_projective() {
        assert!(matches!(affine_plane_from(&q6(), 0), Err(Error::AxiomViolation(_))));
    }

    #[test]
    fn fano_labels() {
        let f = fano();
        assert_eq!(f.label(0), "001");
        assert_eq!(f.label(6), "111");
    }
}
