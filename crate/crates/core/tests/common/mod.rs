//! Brute-force oracles, fixtures and the shared property checker.
#![allow(dead_code)]

use clutterkit::conditions::{self, tilde_full};
use clutterkit::family;
use clutterkit::generators::{self, Graph};
use clutterkit::polytope::{self, ConstraintTag};
use clutterkit::{make_clutter, Clutter, ElementSet, Rational};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn letters(ground: &str, edges: &str) -> Clutter {
    let g: Vec<String> = ground.chars().map(String::from).collect();
    let e: Vec<Vec<String>> = edges
        .split(',')
        .map(|w| w.chars().map(String::from).collect())
        .collect();
    make_clutter(g, e).unwrap()
}

pub fn rendered(c: &Clutter) -> Vec<String> {
    c.edges().iter().map(|&e| c.render(e)).collect()
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn frac(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

pub fn kyou() -> Clutter {
    letters("abcdef", "abc,de,ef,df,af,bd,ce")
}

/// Small named clutters from the generators and the worked examples.
pub fn generator_outputs() -> Vec<(&'static str, Clutter)> {
    let prism = Graph::parse("1 2\n2 3\n1 3\n4 5\n5 6\n4 6\n1 4\n2 5\n3 6").unwrap();
    vec![
        ("q6", generators::q6()),
        ("fano", generators::fano()),
        ("ag2", generators::affine_plane(2).unwrap()),
        ("ag3", generators::affine_plane(3).unwrap()),
        ("k4", generators::vertex_cut_clutter(&Graph::complete(4)).unwrap()),
        ("prism", generators::vertex_cut_clutter(&prism).unwrap()),
        ("c5", generators::vertex_cut_clutter(&Graph::cycle(5)).unwrap()),
        ("kyou", kyou()),
        ("path", letters("abcd", "ac,bc,bd")),
    ]
}

/// A random clutter on 1 to 6 elements with nonempty edges.
pub fn random_clutter(rng: &mut ChaCha8Rng) -> Clutter {
    let n = rng.gen_range(1..=6);
    let k = rng.gen_range(1..=6);
    let full = (1u64 << n) - 1;
    let sets = (0..k).map(|_| ElementSet::from_bits(rng.gen_range(1..=full)));
    let edges = family::minimalize(sets);
    let ground = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    Clutter::from_edges(ground, edges).unwrap()
}

pub fn subsets(n: usize) -> impl Iterator<Item = ElementSet> {
    (0..1u64 << n).map(ElementSet::from_bits)
}

/// Minimal sets meeting every edge, by scanning all subsets.
pub fn brute_blocker(n: usize, edges: &[ElementSet]) -> Vec<ElementSet> {
    let hits = |s: ElementSet| edges.iter().all(|e| e.intersects(s));
    let mut out: Vec<ElementSet> = subsets(n)
        .filter(|&s| hits(s) && s.iter().all(|a| !hits(s.without(a))))
        .collect();
    out.sort_unstable();
    out
}

pub fn brute_bn(n: usize, edges: &[ElementSet]) -> Option<usize> {
    subsets(n)
        .filter(|&s| edges.iter().all(|e| e.intersects(s)))
        .map(|s| s.len())
        .min()
}

/// Largest pairwise disjoint subfamily, by scanning subfamilies.
pub fn brute_pn(edges: &[ElementSet]) -> usize {
    (0..1u64 << edges.len())
        .filter_map(|mask| {
            let chosen: Vec<ElementSet> = (0..edges.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| edges[i])
                .collect();
            let mut used = ElementSet::EMPTY;
            for &e in &chosen {
                if used.intersects(e) {
                    return None;
                }
                used = used.union(e);
            }
            Some(chosen.len())
        })
        .max()
        .unwrap_or(0)
}

/// Solve the square system `a x = b` by Gauss-Jordan elimination.
pub fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| r.iter().cloned().chain([v.clone()]).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// A row `a·x (>= | =) b`.
pub struct Row {
    pub a: Vec<Rational>,
    pub b: Rational,
    pub eq: bool,
}

fn satisfied(rows: &[Row], x: &[Rational]) -> bool {
    rows.iter().all(|r| {
        let v: Rational = r.a.iter().zip(x).map(|(p, q)| p * q).sum();
        if r.eq {
            v == r.b
        } else {
            v >= r.b
        }
    })
}

fn choose(n: usize, k: usize, from: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if acc.len() == k {
        f(acc);
        return;
    }
    for i in from..n {
        if n - i < k - acc.len() {
            return;
        }
        acc.push(i);
        choose(n, k, i + 1, acc, f);
        acc.pop();
    }
}

/// Vertices of `{x : rows}` by trying every `dim`-subset of rows as a
/// basis, sorted and deduplicated.
pub fn basis_vertices(rows: &[Row], dim: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    choose(rows.len(), dim, 0, &mut Vec::new(), &mut |pick| {
        let a: Vec<Vec<Rational>> = pick.iter().map(|&i| rows[i].a.clone()).collect();
        let b: Vec<Rational> = pick.iter().map(|&i| rows[i].b.clone()).collect();
        if let Some(x) = solve_square(&a, &b) {
            if satisfied(rows, &x) {
                out.push(x);
            }
        }
    });
    out.sort();
    out.dedup();
    out
}

fn indicator(n: usize, s: ElementSet) -> Vec<Rational> {
    (0..n)
        .map(|i| {
            if s.contains(i) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect()
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    indicator(n, ElementSet::singleton(i))
}

/// `{x >= 0 : ⟨1_H, x⟩ >= 1}` for each edge.
pub fn blocking_rows(c: &Clutter) -> Vec<Row> {
    let n = c.ground_size();
    let mut rows: Vec<Row> = c
        .edges()
        .iter()
        .map(|&h| Row {
            a: indicator(n, h),
            b: Rational::one(),
            eq: false,
        })
        .collect();
    rows.extend((0..n).map(|i| Row {
        a: unit(n, i),
        b: Rational::zero(),
        eq: false,
    }));
    rows
}

/// `I(C)` from the brute-force blocker.
pub fn ic_rows(c: &Clutter) -> Vec<Row> {
    let n = c.ground_size();
    let b = brute_blocker(n, c.edges());
    let bn = b.iter().map(|s| s.len()).min().unwrap();
    let mut rows: Vec<Row> = b
        .iter()
        .map(|&t| Row {
            a: indicator(n, t),
            b: Rational::one(),
            eq: t.len() == bn,
        })
        .collect();
    rows.extend((0..n).map(|i| Row {
        a: unit(n, i),
        b: Rational::zero(),
        eq: false,
    }));
    rows
}

/// Maximum fractional packing value from the vertices of
/// `{y >= 0 : Σ_{H ∋ a} y(H) <= 1}`.
pub fn brute_fpn(c: &Clutter) -> Rational {
    let m = c.len();
    let mut rows: Vec<Row> = (0..c.ground_size())
        .map(|a| Row {
            a: c.edges()
                .iter()
                .map(|e| {
                    if e.contains(a) {
                        -Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
            b: -Rational::one(),
            eq: false,
        })
        .collect();
    rows.extend((0..m).map(|i| Row {
        a: unit(m, i),
        b: Rational::zero(),
        eq: false,
    }));
    basis_vertices(&rows, m)
        .iter()
        .map(|y| y.iter().sum::<Rational>())
        .max()
        .unwrap()
}

/// Integral points of `I(C)`. Covering by minimum transversals bounds every
/// coordinate by 1, so 0/1 vectors are all of them.
pub fn ic_lattice_points(c: &Clutter) -> Vec<ElementSet> {
    let n = c.ground_size();
    let rows = ic_rows(c);
    subsets(n).filter(|&s| satisfied(&rows, &indicator(n, s))).collect()
}

/// Every property expected of `c`; returns the violations.
pub fn property_violations(c: &Clutter) -> Vec<String> {
    let mut bad = Vec::new();
    if let Err(e) = check_properties(c, &mut bad) {
        bad.push(format!("error: {e}"));
    }
    bad.into_iter().map(|m| format!("{c:?}: {m}")).collect()
}

fn check_properties(c: &Clutter, bad: &mut Vec<String>) -> clutterkit::Result<()> {
    let n = c.ground_size();
    let small = n <= 8;
    let mut fail = |cond: bool, what: &str| {
        if !cond {
            bad.push(what.to_string());
        }
    };

    // Blocker against brute force, involution, minor duality.
    let b = clutterkit::blocker(c)?;
    if small {
        fail(
            b.edges() == brute_blocker(n, c.edges()).as_slice(),
            "blocker differs from brute force",
        );
    }
    fail(clutterkit::blocker(&b)? == *c, "b(b(C)) != C");
    let minors: Vec<ElementSet> = if n <= 6 {
        subsets(n).collect()
    } else {
        (0..n).map(ElementSet::singleton).collect()
    };
    for a in minors {
        let cap = family::DEFAULT_BLOCKER_CAP;
        let mut lhs = family::blocker(&family::delete(c.edges(), a), cap)?;
        lhs.sort_unstable();
        fail(lhs == family::contract(b.edges(), a), "b(C\\A) != b(C)/A");
        let mut lhs = family::blocker(&family::contract(c.edges(), a), cap)?;
        lhs.sort_unstable();
        let mut rhs = family::delete(b.edges(), a);
        rhs.sort_unstable();
        fail(lhs == rhs, "b(C/A) != b(C)\\A");
    }

    // pn <= fpn <= bn, each against an oracle.
    let bn = clutterkit::blocking_number(c)?;
    let pn = clutterkit::packing_number(c)?;
    let fpn = clutterkit::fpn(c)?;
    if small {
        fail(Some(bn) == brute_bn(n, c.edges()), "bn differs from brute force");
    }
    if c.len() <= 16 {
        fail(pn == brute_pn(c.edges()), "pn differs from brute force");
    }
    if c.len() <= 9 && n <= 9 {
        fail(fpn == brute_fpn(c), "fpn differs from vertex enumeration");
    }
    fail(q(pn as i64) <= fpn && fpn <= q(bn as i64), "pn <= fpn <= bn fails");
    let mfp = clutterkit::max_fractional_packing(c)?;
    fail(
        mfp.value == fpn && mfp.weights.iter().all(|w| *w >= Rational::zero()),
        "packing not feasible",
    );
    fail(
        mfp.load(n).iter().all(|l| *l <= Rational::one()),
        "packing overloads an element",
    );
    fail(mfp.dual.iter().sum::<Rational>() == fpn, "dual value differs");

    // Idealness, three ways.
    let ideal = clutterkit::is_ideal(c)?;
    if n <= 12 {
        fail(
            polytope::is_ideal_via_box(c)?.ideal == ideal.ideal,
            "box route disagrees on idealness",
        );
    }
    if n <= 6 && c.len() <= 8 {
        let oracle = basis_vertices(&blocking_rows(c), n)
            .iter()
            .all(|x| x.iter().all(|v| v.is_integer()));
        fail(oracle == ideal.ideal, "basis enumeration disagrees on idealness");
    }
    if ideal.ideal {
        fail(fpn == q(bn as i64), "ideal but fpn != bn");
    }

    let mtc = clutterkit::is_minimum_transversal_covered(c)?;
    let ibc = fpn == q(bn as i64);
    let t = clutterkit::tilde(c)?;
    if mtc && ibc {
        for h in mfp.support() {
            fail(t.contains_edge(h), "support edge outside tilde(C)");
        }
        fail(mfp.load(n).iter().all(|l| l.is_one()), "sum y(H) 1_H != 1_E");
        let on_tilde: Rational = t.edges().iter().filter_map(|&h| mfp.weight_of(h)).sum();
        fail(on_tilde == q(bn as i64), "weight on tilde(C) != bn");
        fail(clutterkit::fpn(&t)? == q(bn as i64), "fpn(tilde) != bn");
        fail(clutterkit::blocking_number(&t)? == bn, "bn(tilde) != bn");
        let mut lattice = ic_lattice_points(c);
        lattice.sort_unstable();
        fail(lattice == t.edges(), "integral points of I(C) differ from tilde(C)");
        let p = clutterkit::build_ic(c)?;
        let center = vec![frac(1, bn as i64); n];
        fail(p.contains(&center), "center not in I(C)");
        fail(
            polytope::strictly_inside(&p, &center, &[ConstraintTag::Transversal]),
            "center tight on a transversal",
        );
    }

    // I(C) integral => tilde-full => weak tilde-invariant, tilde-full(tilde).
    let tf = tilde_full(c)?.holds;
    if mtc {
        let p = clutterkit::build_ic(c)?;
        let v = polytope::vertices(&p)?;
        fail(polytope::certificates_hold(&p, &v), "vertex certificate fails");
        if n <= 7 {
            let mut oracle = basis_vertices(&ic_rows(c), n);
            oracle.sort();
            let mut got = v.points.clone();
            got.sort();
            fail(got == oracle, "vertices of I(C) differ from basis enumeration");
        }
        let integral = !v.is_empty() && v.points.iter().all(|x| x.iter().all(|q| q.is_integer()));
        if ibc && integral {
            fail(tf, "I(C) integral but not tilde-full");
            let unique = clutterkit::is_unique_max_packing(c)?;
            let simplex = polytope::is_simplex(&p)?;
            fail(unique == simplex, "unique max packing <=> simplex fails");
        }
    }
    if tf {
        fail(
            conditions::is_weak_tilde_invariant(c)?,
            "tilde-full but not weak tilde-invariant",
        );
        fail(tilde_full(&t)?.holds, "tilde-full but tilde(C) is not");
        let pts: Vec<Vec<Rational>> = t.edges().iter().map(|&h| indicator(n, h)).collect();
        let independent = clutterkit::rational::affine_dimension(&pts)? + 1 == pts.len();
        fail(
            independent == clutterkit::is_unique_max_packing(c)?,
            "unique max packing <=> affine independence fails",
        );
    }
    Ok(())
}
