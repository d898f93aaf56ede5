mod common;

use clutterkit::conditions::{self, dimension_condition, facet_transversals, is_separable, simplex_characterization};
use clutterkit::generators::{
    affine_plane, fano, is_brick, is_isomorphic, projective_plane, q6, verify_affine_axioms, verify_projective_axioms,
    vertex_cut_clutter, Graph,
};
use clutterkit::lp::{solve_lp, Sense};
use clutterkit::polytope::{self, ConstraintTag, HPolyhedron};
use clutterkit::rational::affine_dimension;
use clutterkit::{make_clutter, Clutter, ElementSet, Error};
use common::*;

fn set(c: &Clutter, labels: &str) -> ElementSet {
    c.set_from_labels(labels.chars().map(String::from)).unwrap()
}

fn indicator_points(c: &Clutter, sets: &[ElementSet]) -> Vec<Vec<clutterkit::Rational>> {
    sets.iter()
        .map(|s| (0..c.ground_size()).map(|i| q(s.contains(i) as i64)).collect())
        .collect()
}

#[test]
fn make_clutter_validates() {
    let c = make_clutter(["a"], [["a"]]).unwrap();
    assert_eq!(c.len(), 1);
    let e = make_clutter(["a", "b"], [vec!["a"], vec!["a", "b"]]).unwrap_err();
    assert!(matches!(e, Error::NotAntichain { .. }));
    assert!(matches!(make_clutter(["a"], [["z"]]), Err(Error::UnknownLabel(_))));
}

#[test]
fn q6_transversals_and_minors() {
    let c = q6();
    let minb = clutterkit::min_transversals(&c).unwrap();
    let pairs: Vec<Vec<String>> = minb.iter().map(|&b| c.labels_of(b)).collect();
    assert_eq!(pairs, [["1", "2"], ["3", "4"], ["5", "6"]]);
    let one = set(&c, "1");
    let del = clutterkit::delete(&c, one);
    assert_eq!(rendered(&del), ["236", "245"]);
    let con = clutterkit::contract(&c, one);
    assert_eq!(con.len(), 4);
    assert_eq!(clutterkit::restrict(&c, c.ground_set()), c);
    assert!(!clutterkit::has_packing_property(&c).unwrap().holds);
}

#[test]
fn small_packing_cases() {
    let a = letters("a", "a");
    assert_eq!(clutterkit::blocking_number(&a).unwrap(), 1);
    assert!(clutterkit::packs(&a).unwrap());
    assert!(clutterkit::has_packing_property(&a).unwrap().holds);
    let ab = letters("ab", "a,b");
    assert!(!clutterkit::is_minimally_non_packing(&ab).unwrap().holds);
    assert!(clutterkit::is_ideal(&ab).unwrap().ideal);
    let y = clutterkit::max_fractional_packing(&ab).unwrap();
    assert_eq!(y.weights, [q(1), q(1)]);
    assert!(!clutterkit::is_minimally_non_packing(&fano()).unwrap().holds);
    let tri = letters("abc", "ab,bc,ac");
    let mnp = clutterkit::is_minimally_non_packing(&tri).unwrap();
    assert!(mnp.holds);
    assert!(!clutterkit::has_packing_property(&tri).unwrap().holds);
}

#[test]
fn lp_examples() {
    let id = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
    let s = solve_lp(&id, &[q(1), q(1)], &[q(1), q(1)], &[Sense::Le, Sense::Le]).unwrap();
    assert_eq!(s.value, q(2));
    let s = solve_lp(&id, &[q(1), q(1)], &[q(0), q(0)], &[Sense::Le, Sense::Le]).unwrap();
    assert_eq!(s.value, q(0));
    let s = solve_lp(&[vec![q(1)]], &[q(2)], &[q(1)], &[Sense::Ge]);
    assert!(matches!(s, Err(Error::Unbounded)));
    let s = solve_lp(
        &[vec![q(1)], vec![q(1)]],
        &[q(2), q(1)],
        &[q(1)],
        &[Sense::Ge, Sense::Le],
    );
    assert!(matches!(s, Err(Error::Infeasible)));
}

#[test]
fn fractional_packings() {
    assert_eq!(clutterkit::fpn(&fano()).unwrap(), frac(7, 3));
    let ag3 = affine_plane(3).unwrap();
    let y = clutterkit::max_fractional_packing(&ag3).unwrap();
    assert!(y.weights.iter().all(|w| *w == frac(1, 3)) && y.value == q(3));
    let k = kyou();
    // d, e, f force weight 1 on bd, ce, af, leaving nothing for abc.
    assert!(!clutterkit::packing::edge_in_some_max_packing(&k, set(&k, "abc")).unwrap());
    assert!(clutterkit::packing::edge_in_some_max_packing(&k, set(&k, "af")).unwrap());
    assert!(!conditions::tilde_full(&k).unwrap().holds);
    let c = q6();
    assert!(clutterkit::packing::edge_in_some_max_packing(&c, c.edges()[0]).unwrap());
    let square = letters("abcd", "ab,cd,ac,bd");
    assert!(!clutterkit::is_unique_max_packing(&square).unwrap());
    for p in [2, 3] {
        assert!(clutterkit::is_unique_max_packing(&affine_plane(p).unwrap()).unwrap());
    }
}

#[test]
fn ic_structure() {
    let c = q6();
    let p = clutterkit::build_ic(&c).unwrap();
    assert_eq!(p.equalities.len(), 3);
    let transversal_rows = p
        .inequalities
        .iter()
        .filter(|q| q.tag == ConstraintTag::Transversal)
        .count();
    let nonneg_rows = p.inequalities.iter().filter(|q| q.tag == ConstraintTag::NonNeg).count();
    assert_eq!((transversal_rows, nonneg_rows), (4, 6));
    let v = clutterkit::vertices(&p).unwrap();
    let mut expected = indicator_points(&c, c.edges());
    expected.sort();
    assert_eq!(v.points, expected);
    assert!(polytope::certificates_hold(&p, &v));

    let t = letters("abcd", "ac,bd");
    let p = clutterkit::build_ic(&t).unwrap();
    assert_eq!(p.equalities.len(), 4);
    assert!(p.inequalities.iter().all(|q| q.tag == ConstraintTag::NonNeg));

    let a = letters("a", "a");
    let p = clutterkit::build_ic(&a).unwrap();
    assert_eq!(p.equalities.len(), 1);
    let f = polytope::facets_of_ic(&a).unwrap();
    assert_eq!((f.dimension, f.facets.len()), (0, 0));

    let ag3 = affine_plane(3).unwrap();
    let p = clutterkit::build_ic(&ag3).unwrap();
    let v = clutterkit::vertices(&p).unwrap();
    let mut expected = indicator_points(&ag3, ag3.edges());
    expected.sort();
    assert_eq!(v.points, expected);
    assert_eq!(affine_dimension(&v.points).unwrap(), 8);
    assert!(polytope::is_simplex(&p).unwrap());
}

#[test]
fn generic_polytopes() {
    let simplex = HPolyhedron::new(3)
        .equality(ElementSet::full(3), q(1), ConstraintTag::Box)
        .nonnegative();
    assert_eq!(clutterkit::vertices(&simplex).unwrap().len(), 3);
    let square = HPolyhedron::new(2).nonnegative().with_unit_box();
    assert!(!polytope::is_simplex(&square).unwrap());
    let cube = HPolyhedron::new(3).nonnegative().with_unit_box();
    let v = clutterkit::vertices(&cube).unwrap();
    assert_eq!(v.len(), 8);
    assert!(polytope::is_integral_polytope(&cube).unwrap().integral);
    let fano_block = HPolyhedron::blocking_polyhedron(&fano());
    assert!(matches!(
        clutterkit::vertices(&fano_block),
        Err(Error::UnboundedPolyhedron)
    ));
    assert_eq!(affine_dimension(&[vec![q(1), q(2)]]).unwrap(), 0);
    let c = q6();
    let minb = clutterkit::min_transversals(&c).unwrap();
    assert_eq!(affine_dimension(&indicator_points(&c, &minb)).unwrap(), 2);
}

#[test]
fn condition_examples() {
    let c = q6();
    assert!(conditions::integral_blocking(&c).unwrap().holds);
    assert!(conditions::is_tilde_invariant(&c).unwrap());
    assert!(conditions::is_weak_tilde_invariant(&c).unwrap());
    assert!(conditions::tilde_full(&c).unwrap().holds);
    let d = dimension_condition(&c).unwrap();
    let d = d.detail().unwrap();
    assert_eq!((d.tilde_dimension, d.minb_dimension), (3, 2));
    assert!(!is_separable(&c).unwrap().separable);
    assert_eq!(conditions::is_hyperedge_separable(&c).unwrap().holds(), Some(true));
    assert!(facet_transversals(&c, set(&c, "135"))
        .unwrap()
        .contains(&set(&c, "135")));
    let s = simplex_characterization(&c).unwrap();
    assert!(s.lhs && s.rhs);

    let path = letters("abcd", "ac,bc,bd");
    assert!(!conditions::is_tilde_invariant(&path).unwrap());
    assert!(conditions::is_weak_tilde_invariant(&path).unwrap());
    assert!(!conditions::is_tilde_invariant(&kyou()).unwrap());
    assert!(!clutterkit::is_precore(&kyou()).unwrap().is_precore);
    let uncovered = letters("abc", "ab");
    assert!(!clutterkit::is_minimum_transversal_covered(&uncovered).unwrap());
    assert!(!conditions::tilde_full(&uncovered).unwrap().holds);
    assert!(!conditions::integral_blocking(&fano()).unwrap().holds);

    let ag3 = affine_plane(3).unwrap();
    assert!(conditions::tilde_full(&ag3).unwrap().holds);
    assert!(!is_separable(&ag3).unwrap().separable);
    assert_eq!(conditions::is_hyperedge_separable(&ag3).unwrap().holds(), Some(true));
    for &h in ag3.edges() {
        assert!(facet_transversals(&ag3, h).unwrap().contains(&h));
    }
    assert!(simplex_characterization(&ag3).unwrap().rhs);
}

#[test]
fn json_reports_are_stable() {
    let a = serde_json::to_string(&clutterkit::is_precore(&q6()).unwrap()).unwrap();
    let b = serde_json::to_string(&clutterkit::is_precore(&q6()).unwrap()).unwrap();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["ic_integral"]["status"], "pass");
}

#[test]
fn planes() {
    let f = fano();
    assert_eq!((f.ground_size(), f.len()), (7, 7));
    assert!(verify_projective_axioms(&f).holds);
    let p3 = projective_plane(3).unwrap();
    assert_eq!((p3.ground_size(), p3.len(), p3.edges()[0].len()), (13, 13, 4));
    assert!(verify_projective_axioms(&p3).holds);
    assert!(matches!(projective_plane(4), Err(Error::NotPrime(4))));
    let ag2 = affine_plane(2).unwrap();
    assert!(is_isomorphic(&ag2, &q6()));
    assert!(verify_affine_axioms(&q6()).holds);
    let v = verify_projective_axioms(&q6());
    assert!(!v.holds && v.violation.unwrap().starts_with("(1)"));
    let ag3 = affine_plane(3).unwrap();
    assert_eq!((ag3.ground_size(), ag3.len()), (12, 9));
    let minb = clutterkit::min_transversals(&ag3).unwrap();
    assert!(minb
        .iter()
        .enumerate()
        .all(|(i, a)| minb[i + 1..].iter().all(|b| a.is_disjoint(*b))));
}

#[test]
fn graphs() {
    let k4 = vertex_cut_clutter(&Graph::complete(4)).unwrap();
    assert_eq!((k4.ground_size(), k4.len()), (6, 4));
    assert!(is_isomorphic(&k4, &q6()));
    let k3 = vertex_cut_clutter(&Graph::complete(3)).unwrap();
    assert_eq!(k3.len(), 3);
    let p3 = vertex_cut_clutter(&Graph::parse("a b\nb c").unwrap()).unwrap();
    assert_eq!(format!("{p3:?}").split(" on ").next().unwrap(), "Clutter{{a-b},{b-c}}");
    assert!(is_brick(&Graph::complete(4)).unwrap());
    assert!(!is_brick(&Graph::cycle(6)).unwrap());
    assert!(!is_brick(&Graph::complete(4).without_edge(0)).unwrap());
    assert!(Graph::parse("").is_err());
}
