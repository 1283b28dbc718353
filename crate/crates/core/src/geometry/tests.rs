use num_traits::{Signed, Zero};
use proptest::prelude::*;

use super::*;
use crate::index::{enumerate_delta, IndexPoint, Permutation};
use crate::inequality::{check_config, generate, Caps, Family};
use crate::rational::{int, ratio, Rational};

fn poly(dim: usize, pts: &[&[i64]]) -> VPolytope {
    VPolytope::from_ints(dim, &pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn tuple(bodies: Vec<VPolytope>) -> BodyTuple {
    BodyTuple::new(TupleRole::Generic, bodies).unwrap()
}

fn square() -> VPolytope {
    VPolytope::unit_cube(2)
}

fn segment_e1(dim: usize) -> VPolytope {
    let mut e = vec![0; dim];
    e[0] = 1;
    VPolytope::from_ints(dim, &[vec![0; dim], e]).unwrap()
}

fn cross(o: &[Rational], a: &[Rational], b: &[Rational]) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Monotone-chain hull in the plane, counter-clockwise.
fn chain_hull(mut pts: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Vec<Rational>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<Rational>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Twice the shoelace area.
fn shoelace2(h: &[Vec<Rational>]) -> Rational {
    let mut s = Rational::zero();
    for i in 0..h.len() {
        let (a, b) = (&h[i], &h[(i + 1) % h.len()]);
        s += &a[0] * &b[1] - &a[1] * &b[0];
    }
    s.abs()
}

fn det3(a: &[Rational], b: &[Rational], c: &[Rational]) -> Rational {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// 3! times the volume of a 3D point cloud's hull: brute-force supporting planes, each face
/// ordered by a planar hull, fan-triangulated and coned from the first point.
fn brute_volume3(pts: &[Vec<Rational>]) -> Rational {
    let mut planes: Vec<Vec<usize>> = Vec::new();
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (u, v) = (sub(&pts[j], &pts[i]), sub(&pts[k], &pts[i]));
                let normal = vec![
                    &u[1] * &v[2] - &u[2] * &v[1],
                    &u[2] * &v[0] - &u[0] * &v[2],
                    &u[0] * &v[1] - &u[1] * &v[0],
                ];
                if normal.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let side: Vec<Rational> = pts
                    .iter()
                    .map(|p| sub(p, &pts[i]).iter().zip(&normal).map(|(a, b)| a * b).sum())
                    .collect();
                let supporting = side.iter().all(|s| !s.is_positive()) || side.iter().all(|s| !s.is_negative());
                if !supporting {
                    continue;
                }
                let on: Vec<usize> = (0..n).filter(|&t| side[t].is_zero()).collect();
                if !planes.contains(&on) {
                    planes.push(on);
                }
            }
        }
    }
    let apex = &pts[0];
    let mut total = Rational::zero();
    for face in planes {
        // drop the coordinate along which the face projects injectively
        let fp: Vec<&Vec<Rational>> = face.iter().map(|&i| &pts[i]).collect();
        let (u, v) = (sub(fp[1], fp[0]), sub(fp[2], fp[0]));
        let normal = [
            &u[1] * &v[2] - &u[2] * &v[1],
            &u[2] * &v[0] - &u[0] * &v[2],
            &u[0] * &v[1] - &u[1] * &v[0],
        ];
        let drop = (0..3).find(|&c| !normal[c].is_zero()).unwrap();
        let keep: Vec<usize> = (0..3).filter(|&c| c != drop).collect();
        let flat: Vec<Vec<Rational>> = fp.iter().map(|p| keep.iter().map(|&c| p[c].clone()).collect()).collect();
        let ordered = chain_hull(flat.clone());
        let lift: Vec<&Vec<Rational>> =
            ordered.iter().map(|q| fp[flat.iter().position(|f| f == q).unwrap()]).collect();
        for t in 1..lift.len() - 1 {
            total += det3(&sub(lift[0], apex), &sub(lift[t], apex), &sub(lift[t + 1], apex)).abs();
        }
    }
    total
}

fn rand_cloud(dim: usize, seed: u64, count: usize, box_size: u64) -> Vec<Vec<Rational>> {
    random_lattice_tuple(dim, 1, seed, box_size, count, false).unwrap().bodies[0].vertices().to_vec()
}

#[test]
fn cube_with_center_keeps_corners() {
    let mut pts: Vec<Vec<i64>> = (0..8).map(|m| (0..3).map(|i| 2 * ((m >> i) & 1)).collect()).collect();
    pts.push(vec![1, 1, 1]);
    let p = VPolytope::from_ints(3, &pts).unwrap();
    assert_eq!(p.vertices().len(), 8);
    assert!(p.contains(&[int(1), int(1), int(1)]));
}

#[test]
fn collinear_points_make_a_segment() {
    let p = poly(3, &[&[0, 0, 0], &[1, 1, 1], &[3, 3, 3], &[2, 2, 2]]);
    assert_eq!(p.vertices().len(), 2);
    assert_eq!(p.affine_dim(), 1);
    assert_eq!(p.normalized_volume(), int(0));
}

#[test]
fn points_on_faces_are_not_vertices() {
    let p = poly(3, &[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[0, 0, 2], &[1, 0, 0], &[1, 1, 0], &[0, 1, 1]]);
    assert_eq!(p.vertices().len(), 4);
    let flat = poly(3, &[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[1, 0, 0], &[1, 1, 0]]);
    assert_eq!(flat.vertices().len(), 3);
    assert_eq!(flat.affine_dim(), 2);
}

#[test]
fn basic_volumes() {
    for d in 1..=4 {
        assert_eq!(VPolytope::standard_simplex(d).normalized_volume(), int(1));
    }
    assert_eq!(VPolytope::unit_cube(3).normalized_volume(), int(6));
    assert_eq!(VPolytope::unit_cube(4).normalized_volume(), int(24));
    assert_eq!(segment_e1(2).normalized_volume(), int(0));
}

#[test]
fn hull_volume_matches_independent_triangulations() {
    for seed in 0..10 {
        let pts = rand_cloud(2, seed, 12, 7);
        let p = VPolytope::hull(2, pts.clone()).unwrap();
        assert_eq!(p.normalized_volume(), shoelace2(&chain_hull(pts)), "seed {seed}");
    }
    for seed in 0..5 {
        let pts = rand_cloud(3, seed, 20, 5);
        let p = VPolytope::hull(3, pts.clone()).unwrap();
        assert_eq!(p.normalized_volume(), brute_volume3(&pts), "seed {seed}");
    }
}

#[test]
fn minkowski_examples() {
    let sq = square();
    assert_eq!(sq.minkowski_sum(&sq).unwrap(), sq.scale(&int(2)));
    let rect = sq.minkowski_sum(&segment_e1(2)).unwrap();
    assert_eq!(rect, poly(2, &[&[0, 0], &[2, 0], &[0, 1], &[2, 1]]));
    let pt = poly(2, &[&[3, -1]]);
    assert_eq!(sq.minkowski_sum(&pt).unwrap(), sq.translate(&[int(3), int(-1)]));
    assert!(sq.minkowski_sum(&VPolytope::unit_cube(3)).is_err());
}

#[test]
fn mixed_volume_examples() {
    for d in 1..=4 {
        let s = VPolytope::standard_simplex(d);
        assert_eq!(mixed_volume(&tuple(vec![s; d])).unwrap(), int(1));
    }
    let rect = poly(2, &[&[0, 0], &[2, 0], &[0, 1], &[2, 1]]);
    assert_eq!(mixed_volume(&tuple(vec![square(), rect.clone()])).unwrap(), int(3));
    // multilinearity oracle: rect = square + segment, MV(A,A) + MV(A,seg) = 2 + 1
    let by_parts = mixed_volume(&tuple(vec![square(), square()])).unwrap()
        + mixed_volume(&tuple(vec![square(), segment_e1(2)])).unwrap();
    assert_eq!(by_parts, int(3));
    let seg2 = poly(2, &[&[0, 1], &[3, 1]]);
    assert_eq!(mixed_volume(&tuple(vec![segment_e1(2), seg2])).unwrap(), int(0));
    assert!(mixed_volume(&tuple(vec![square()])).is_err());
}

#[test]
fn full_configuration_examples() {
    for m in 1..=4 {
        let t = extremal_tuple(2, m, 2).unwrap();
        let c = full_configuration(&t).unwrap();
        let m = m as i64;
        assert_eq!(c.values(), &[int(m * m), int(m), int(1)]);
    }
    let pair = random_lattice_tuple(3, 2, 5, 3, 6, true).unwrap();
    let c = full_configuration(&pair).unwrap();
    let (k1, k2) = (pair.bodies[0].clone(), pair.bodies[1].clone());
    let expected = [
        k1.normalized_volume(),
        mixed_volume(&tuple(vec![k1.clone(), k1.clone(), k2.clone()])).unwrap(),
        mixed_volume(&tuple(vec![k1.clone(), k2.clone(), k2.clone()])).unwrap(),
        k2.normalized_volume(),
    ];
    assert_eq!(c.values(), &expected);
    let single = tuple(vec![VPolytope::unit_cube(3)]);
    assert_eq!(full_configuration(&single).unwrap().values(), &[int(6)]);
}

#[test]
fn vol_sum_identity_examples() {
    for seed in 0..10 {
        let t = random_lattice_tuple(2, 2, seed, 6, 5, false).unwrap();
        assert!(vol_sum_identity_check(&t).unwrap());
    }
    let t = extremal_tuple(3, 2, 3).unwrap();
    assert_eq!(vol_sum_sides(&t).unwrap(), (int(64), int(64)));
    assert!(vol_sum_identity_check(&tuple(vec![VPolytope::unit_cube(2)])).unwrap());
}

#[test]
fn extremal_tuples_attain_their_values() {
    for (d, m, ell) in [(3, 2, 3), (2, 3, 2), (2, 1, 2), (3, 3, 2), (4, 2, 4)] {
        let full = extremal_tuple(d, m, d).unwrap();
        let (mv, vol) = extremal_values(d, m, ell);
        assert_eq!(mixed_volume(&full).unwrap(), mv);
        assert_eq!(extremal_tuple(d, m, ell).unwrap().sum().unwrap().normalized_volume(), vol);
    }
    assert!(extremal_tuple(2, 1, 3).is_err());
    assert!(extremal_tuple(5, 1, 1).is_err());
}

#[test]
fn random_tuples_are_reproducible() {
    let a = random_lattice_tuple(3, 3, 42, 4, 6, true).unwrap();
    let b = random_lattice_tuple(3, 3, 42, 4, 6, true).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, random_lattice_tuple(3, 3, 43, 4, 6, true).unwrap());
    let cube = random_lattice_tuple(3, 4, 7, 1, 8, true).unwrap();
    for body in &cube.bodies {
        assert!(body.is_full_dimensional());
        assert!(body.vertices().iter().flatten().all(|x| *x == int(0) || *x == int(1)));
    }
    assert!(random_lattice_tuple(3, 1, 0, 1, 3, true).is_err());
}

#[test]
fn random_planar_pairs_satisfy_af() {
    let af = generate(Family::Af, 2, &Caps::default_for(2));
    for seed in 0..100 {
        let t = random_lattice_tuple(2, 2, seed, 5, 4, true).unwrap();
        let report = check_config(&full_configuration(&t).unwrap(), &af).unwrap();
        assert!(report.ok(), "seed {seed}");
    }
}

#[test]
fn random_configurations_satisfy_every_family() {
    for d in 2..=3 {
        let caps = Caps::default_for(d);
        let ineqs: Vec<_> = Family::ALL.iter().flat_map(|&f| generate(f, d, &caps)).collect();
        for seed in 0..4 {
            let t = random_lattice_tuple(d, d, seed, 3, d + 2, true).unwrap();
            let report = check_config(&full_configuration(&t).unwrap(), &ineqs).unwrap();
            assert!(report.ok(), "d={d} seed={seed}: {:?}", report.violations.first());
        }
    }
}

#[test]
fn heine_examples() {
    let t = BodyTuple::new(TupleRole::Heine, vec![square(), square(), segment_e1(2)]).unwrap();
    let r = heine_check(&t).unwrap();
    assert_eq!(r.matrix, HeineMatrix::from_ints([[2, 2, 1], [2, 2, 1], [1, 1, 0]]).unwrap());
    assert_eq!(r.det, int(0));
    assert_eq!(r.minors, vec![int(0), int(-1), int(-1)]);
    assert!(r.satisfied);

    let raw = HeineMatrix::from_ints([[1, 1, 2], [1, 1, 1], [2, 1, 1]]).unwrap().check();
    assert_eq!(raw.det, int(-1));
    assert_eq!(raw.minors, vec![int(0), int(-3), int(0)]);
    assert!(!raw.satisfied);

    let tri = poly(2, &[&[0, 0], &[3, 1], &[1, 2]]);
    let r = heine_check(&BodyTuple::new(TupleRole::Heine, vec![tri.clone(), tri.clone(), tri]).unwrap()).unwrap();
    assert_eq!(r.det, int(0));
    assert!(r.minors.iter().all(|m| m.is_zero()));
    assert!(r.satisfied);
    assert!(HeineMatrix::from_ints([[1, 2, 0], [0, 1, 0], [0, 0, 1]]).is_err());
}

#[test]
fn heine_holds_on_random_triples_with_segments() {
    for seed in 0..30 {
        // two points per body gives segments and the odd point
        let pts = if seed % 3 == 0 { 2 } else { 4 };
        let t = random_lattice_tuple(2, 3, seed, 4, pts, false).unwrap();
        assert!(heine_check(&t).unwrap().satisfied, "seed {seed}");
    }
}

#[test]
fn lattice_point_examples() {
    assert_eq!(count_lattice_points(&VPolytope::unit_cube(3), DEFAULT_CELL_BUDGET).unwrap(), 8);
    let two_s = VPolytope::standard_simplex(2).scale(&int(2));
    assert_eq!(count_lattice_points(&two_s, DEFAULT_CELL_BUDGET).unwrap(), 6);
    let thin = poly(2, &[&[0, 0], &[1, 2]]);
    assert_eq!(count_lattice_points(&thin, DEFAULT_CELL_BUDGET).unwrap(), 2);
    let frac = VPolytope::hull(1, vec![vec![ratio(1, 3)], vec![ratio(5, 2)]]).unwrap();
    assert_eq!(count_lattice_points(&frac, DEFAULT_CELL_BUDGET).unwrap(), 2);
    let big = VPolytope::unit_cube(3).scale(&int(200));
    assert!(count_lattice_points(&big, DEFAULT_CELL_BUDGET).is_err());
    assert!(is_lattice_polytope(&two_s));
    assert!(!is_lattice_polytope(&frac));
}

#[test]
fn polytope_json_shape() {
    let p = poly(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).scale(&ratio(1, 2));
    let v = serde_json::to_value(&p).unwrap();
    assert_eq!(v["dim"], 2);
    assert_eq!(v["vertices"][3], serde_json::json!(["1/2", "1/2"]));
    let back: VPolytope = serde_json::from_value(v).unwrap();
    assert_eq!(back, p);
}

fn body_strategy(dim: usize) -> impl Strategy<Value = VPolytope> {
    (any::<u64>(), dim + 1..dim + 4).prop_map(move |(seed, pts)| {
        random_lattice_tuple(dim, 1, seed, 3, pts, true).unwrap().bodies.remove(0)
    })
}

fn tuple_strategy() -> impl Strategy<Value = BodyTuple> {
    (2usize..=3)
        .prop_flat_map(|d| proptest::collection::vec(body_strategy(d), d))
        .prop_map(tuple)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mixed_volume_is_symmetric(t in tuple_strategy()) {
        let base = mixed_volume(&t).unwrap();
        for sigma in Permutation::all(t.len()) {
            let bodies = (0..t.len()).map(|i| t.bodies[sigma.images[i]].clone()).collect();
            prop_assert_eq!(mixed_volume(&tuple(bodies)).unwrap(), base.clone());
        }
    }

    #[test]
    fn mixed_volume_is_multilinear(t in tuple_strategy(), extra_seed in any::<u64>()) {
        let d = t.dim();
        let extra = random_lattice_tuple(d, 1, extra_seed, 3, d + 1, false).unwrap().bodies.remove(0);
        let mut summed = t.bodies.clone();
        summed[0] = t.bodies[0].minkowski_sum(&extra).unwrap();
        let mut other = t.bodies.clone();
        other[0] = extra;
        prop_assert_eq!(
            mixed_volume(&tuple(summed)).unwrap(),
            mixed_volume(&t).unwrap() + mixed_volume(&tuple(other)).unwrap()
        );
    }

    #[test]
    fn mixed_volume_ignores_translation(t in tuple_strategy(), shift in proptest::collection::vec(-5i64..5, 3)) {
        let d = t.dim();
        let v: Vec<Rational> = shift[..d].iter().map(|&x| int(x)).collect();
        let moved = t.bodies.iter().map(|b| b.translate(&v)).collect();
        prop_assert_eq!(mixed_volume(&tuple(moved)).unwrap(), mixed_volume(&t).unwrap());
    }

    #[test]
    fn diagonal_is_volume_and_positive(t in tuple_strategy()) {
        let k = t.bodies[0].clone();
        let diag = tuple(vec![k.clone(); t.dim()]);
        prop_assert_eq!(mixed_volume(&diag).unwrap(), k.normalized_volume());
        prop_assert!(mixed_volume(&t).unwrap().is_positive());
    }

    #[test]
    fn mixed_volume_scales_linearly(t in tuple_strategy(), lambda in 1i64..4) {
        let mut bodies = t.bodies.clone();
        bodies[0] = bodies[0].scale(&int(lambda));
        prop_assert_eq!(mixed_volume(&tuple(bodies)).unwrap(), mixed_volume(&t).unwrap() * int(lambda));
    }

    #[test]
    fn vol_sum_identity_always_holds(t in tuple_strategy()) {
        prop_assert!(vol_sum_identity_check(&t).unwrap());
    }

    #[test]
    fn blichfeldt_bound(seed in any::<u64>(), pts in 3usize..8) {
        let p = random_lattice_tuple(2, 1, seed, 6, pts, true).unwrap().bodies.remove(0);
        let count = count_lattice_points(&p, DEFAULT_CELL_BUDGET).unwrap();
        prop_assert!(int(count as i64) <= p.normalized_volume() + int(2));
    }
}

#[test]
fn configuration_points_follow_delta_order() {
    let t = extremal_tuple(3, 2, 3).unwrap();
    let c = full_configuration(&t).unwrap();
    assert_eq!(c.points(), enumerate_delta(3, 3));
    assert_eq!(*c.at(&IndexPoint::new(vec![3, 0, 0]).unwrap()), int(8));
    assert_eq!(*c.at(&IndexPoint::new(vec![1, 1, 1]).unwrap()), int(2));
}
