use std::collections::BTreeSet;

use super::*;
use crate::index::{enumerate_delta, Permutation};
use crate::rational::int;
use proptest::prelude::*;

fn pt(c: &[u32]) -> IndexPoint {
    IndexPoint::new(c.to_vec()).unwrap()
}

fn keys(list: &[MonomialInequality]) -> BTreeSet<InequalityKey> {
    list.iter().map(MonomialInequality::key).collect()
}

fn has(list: &[MonomialInequality], lhs: &[(&[u32], u32)], rhs: &[(&[u32], u32)], c: u32) -> bool {
    let key: InequalityKey = (
        lhs.iter().map(|(p, e)| (pt(p), *e)).collect::<BTreeMap<_, _>>().into_iter().collect(),
        rhs.iter().map(|(p, e)| (pt(p), *e)).collect::<BTreeMap<_, _>>().into_iter().collect(),
        c,
    );
    list.iter().any(|mi| mi.key() == key)
}

#[test]
fn af_counts_and_instances() {
    let a2 = gen_af(2);
    assert_eq!(a2.len(), 1);
    assert!(has(&a2, &[(&[2, 0], 1), (&[0, 2], 1)], &[(&[1, 1], 2)], 0));
    let a3 = gen_af(3);
    assert_eq!(a3.len(), 9);
    assert!(has(&a3, &[(&[2, 0, 1], 1), (&[0, 2, 1], 1)], &[(&[1, 1, 1], 2)], 0));
}

#[test]
fn square_counts_and_instances() {
    let s3 = gen_square(3);
    assert_eq!(s3.len(), 9);
    assert!(has(&s3, &[(&[0, 0, 3], 1), (&[1, 1, 1], 1)], &[(&[1, 0, 2], 1), (&[0, 1, 2], 1)], 1));
    assert!(!gen_square(4).iter().any(|mi| mi.provenance.p == pt(&[1, 1, 1, 1])));
    assert_eq!(keys(&gen_generalized_square(3, 1)), keys(&s3));
    for d in 3..=5 {
        let gs1 = gen_generalized_square(d, 1);
        assert_eq!(keys(&gs1), keys(&gen_square(d)), "d={d}");
        let full = gen_generalized_square(d, d - 2);
        let ones: Vec<_> = full
            .into_iter()
            .filter(|mi| mi.provenance.set.as_ref().unwrap().len() == 1)
            .collect();
        assert_eq!(keys(&ones), keys(&gen_square(d)));
    }
}

#[test]
fn generalized_square_instance() {
    let gs = gen_generalized_square(4, 2);
    assert!(has(
        &gs,
        &[(&[0, 0, 0, 4], 1), (&[1, 1, 1, 1], 1)],
        &[(&[1, 1, 0, 2], 1), (&[0, 0, 1, 3], 1)],
        2
    ));
}

#[test]
fn weak_concavity_instances() {
    let p = pt(&[1, 1, 1, 3, 0, 0]);
    let mi = gen_weak_concavity(6, &[0, 1, 2], 3, 1, 1, &p).unwrap();
    assert_eq!(mi.log2_const, 6);
    assert_eq!(mi.lhs, BTreeMap::from([(pt(&[2, 2, 2, 0, 0, 0]), 1), (pt(&[0, 0, 0, 6, 0, 0]), 1)]));
    assert_eq!(mi.rhs, BTreeMap::from([(p.clone(), 2)]));
    assert_eq!(linearize(&mi).constant, int(6));

    // |I| = 1, k = l = 1 recovers an AF instance
    let q = pt(&[1, 1, 1]);
    let w = gen_weak_concavity(3, &[0], 1, 1, 1, &q).unwrap();
    let af = gen_af(3);
    assert!(af.iter().any(|a| a.key() == w.key()));

    // |I| = 2, k = 1, l = 2: exponent 3·2·1 = 6
    let r = pt(&[2, 2, 2, 0, 0, 0]);
    let w = gen_weak_concavity(6, &[0, 1], 2, 1, 2, &r).unwrap();
    assert_eq!(w.log2_const, 6);
    assert_eq!(w.lhs, BTreeMap::from([(pt(&[3, 3, 0, 0, 0, 0]), 2), (pt(&[0, 0, 6, 0, 0, 0]), 1)]));
    assert!(gen_weak_concavity(6, &[0, 1], 2, 3, 1, &r).is_err());
}

#[test]
fn simplex_concavity_instances() {
    let full = SimplexParams { indices: vec![0, 1, 2], shift: vec![0, 0, 0], level: 3 };
    let mi = gen_simplex_concavity(3, &full, &pt(&[1, 1, 1])).unwrap();
    assert_eq!(
        mi.lhs,
        BTreeMap::from([(pt(&[3, 0, 0]), 1), (pt(&[0, 3, 0]), 1), (pt(&[0, 0, 3]), 1)])
    );
    assert_eq!(mi.rhs, BTreeMap::from([(pt(&[1, 1, 1]), 3)]));

    let copy = SimplexParams { indices: vec![3, 4, 5], shift: vec![1, 1, 1, 0, 0, 0], level: 3 };
    let mi = gen_simplex_concavity(6, &copy, &IndexPoint::ones(6)).unwrap();
    assert_eq!(
        mi.lhs.keys().cloned().collect::<Vec<_>>(),
        vec![pt(&[1, 1, 1, 3, 0, 0]), pt(&[1, 1, 1, 0, 3, 0]), pt(&[1, 1, 1, 0, 0, 3])]
    );
    assert_eq!(mi.rhs, BTreeMap::from([(IndexPoint::ones(6), 3)]));
    assert!(gen_simplex_concavity(6, &copy, &pt(&[2, 1, 1, 1, 1, 0])).is_err());
    assert!(gen_simplex_concavity(6, &copy, &pt(&[1, 1, 1, 3, 0, 0])).is_err());

    // an edge copy at its midpoint is an AF instance
    let edge = SimplexParams { indices: vec![0, 1], shift: vec![0, 0, 1], level: 2 };
    let mi = gen_simplex_concavity(3, &edge, &pt(&[1, 1, 1])).unwrap();
    assert!(gen_af(3).iter().any(|a| a.key() == mi.key()));
}

#[test]
fn double_square_instances() {
    assert!(gen_double_square(3).is_empty());
    let ds = gen_double_square(4);
    assert!(has(&ds, &[(&[2, 2, 0, 0], 1), (&[0, 0, 2, 2], 1)], &[(&[1, 1, 1, 1], 2)], 4));
    let at_ones = ds.iter().filter(|mi| mi.provenance.p == IndexPoint::ones(4)).count();
    assert_eq!(at_ones, 3);
    // in d = 4 both p + u and p − u need every coordinate positive
    assert_eq!(ds.len(), 3);
    let ds5 = gen_double_square(5);
    assert!(ds5.iter().any(|mi| mi.provenance.p == pt(&[2, 1, 1, 1, 0])));
}

#[test]
fn linearizations() {
    let sq = gen_square(3).into_iter().find(|mi| mi.provenance.p == pt(&[0, 0, 3])).unwrap();
    let lin = linearize(&sq);
    assert_eq!(lin.constant, int(1));
    assert_eq!(
        lin.coeffs,
        BTreeMap::from([
            (pt(&[0, 0, 3]), int(1)),
            (pt(&[1, 1, 1]), int(1)),
            (pt(&[1, 0, 2]), int(-1)),
            (pt(&[0, 1, 2]), int(-1)),
        ])
    );
    let af = &gen_af(2)[0];
    let lin = linearize(af);
    assert_eq!(lin.constant, int(0));
    assert_eq!(lin.coeffs[&pt(&[1, 1])], int(-2));
    assert_eq!(lin.coeffs[&pt(&[2, 0])], int(1));
}

#[test]
fn counterexample_configuration_pattern() {
    for d in 3..=5usize {
        let ones = IndexPoint::ones(d);
        let f = Configuration::from_fn(d, d as u32, Scale::Multiplicative, |p| {
            if *p == ones { int(3) } else { int(1) }
        });
        assert!(check_config(&f, &gen_af(d)).unwrap().ok());
        let rep = check_config(&f, &gen_square(d)).unwrap();
        assert!(!rep.ok());
        assert_eq!(rep.satisfied + rep.violations.len(), rep.total);
        assert!(rep.violations.iter().all(|v| v.lhs == int(3) && v.rhs == int(2)));
    }
}

#[test]
fn check_rejects_bad_input() {
    let c = Configuration::constant(2, 2, Scale::Multiplicative, int(1));
    assert!(check_config(&c, &gen_af(3)).is_err());
    let z = Configuration::constant(3, 3, Scale::Multiplicative, int(0));
    assert!(check_config(&z, &gen_af(3)).is_err());
}

#[test]
fn sequences() {
    let r = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
    let rep = verify_weak_concave_sequence(&r(&[0, 1, 0]), &int(0));
    assert!(rep.hypothesis_holds && rep.conclusion_failures.is_empty());
    let rep = verify_weak_concave_sequence(&r(&[4, 1, 4]), &int(3));
    assert!(rep.hypothesis_holds && rep.conclusion_failures.is_empty());
    // (iii) with k = 1, n = 2 is tight: ½·4 + ½·4 = 1 + 3
    let rep = verify_weak_concave_sequence(&r(&[4, 1, 4]), &int(2));
    assert!(!rep.hypothesis_holds);
    assert_eq!(rep.hypothesis_failures, vec![1]);
}

#[test]
fn family_names_parse() {
    assert_eq!(parse_families("af,gensquare,weakconc").unwrap(),
        vec![Family::Af, Family::GeneralizedSquare, Family::WeakConcavity]);
    assert!(parse_families("af,bogus").is_err());
    for f in Family::ALL {
        assert_eq!(f.name().parse::<Family>().unwrap(), f);
    }
}

#[test]
fn json_uses_one_based_indices() {
    let mi = gen_weak_concavity(6, &[0, 1, 2], 3, 1, 1, &pt(&[1, 1, 1, 3, 0, 0])).unwrap();
    let v = serde_json::to_value(&mi).unwrap();
    assert_eq!(v["family"], "weak_concavity");
    assert_eq!(v["provenance"]["I"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["provenance"]["j"], 4);
    assert_eq!(v["log2_const"], 6);
    let back: MonomialInequality = serde_json::from_value(v).unwrap();
    assert_eq!(back, mi);
}

fn all_families(d: usize) -> Vec<MonomialInequality> {
    let caps = Caps::default_for(d);
    Family::ALL.iter().flat_map(|&f| generate(f, d, &caps)).collect()
}

#[test]
fn every_family_is_degree_balanced() {
    for d in 2..=5 {
        for mi in all_families(d) {
            let (a, b) = mi.degree();
            assert_eq!(a, b, "{mi:?}");
            assert!(mi.points().all(|p| p.n() == d && p.d() as usize == d));
        }
    }
}

proptest! {
    #[test]
    fn generation_commutes_with_symmetric_group(
        d in 3usize..=4,
        seed in prop::collection::vec(0usize..100, 4),
    ) {
        let mut images: Vec<usize> = (0..d).collect();
        for (a, s) in seed.iter().enumerate().take(d) {
            images.swap(a, s % d);
        }
        let sigma = Permutation::new(images).unwrap();
        let caps = Caps::default_for(d);
        for f in Family::ALL {
            let list = generate(f, d, &caps);
            let permuted: Vec<MonomialInequality> = list.iter().map(|mi| mi.permuted(&sigma)).collect();
            prop_assert_eq!(keys(&permuted), keys(&list), "family {}", f);
            // the permuted provenance regenerates the permuted inequality
            for (orig, perm) in list.iter().zip(&permuted).take(20) {
                let lin_o = linearize(orig);
                let lin_p = linearize(perm);
                for (p, a) in &lin_o.coeffs {
                    prop_assert_eq!(&lin_p.coeffs[&p.permuted(&sigma)], a);
                }
                prop_assert_eq!(&perm.provenance.p, &orig.provenance.p.permuted(&sigma));
            }
        }
    }
}

#[test]
fn enumerated_points_cover_delta() {
    assert_eq!(enumerate_delta(3, 3).len(), 10);
}
