use std::collections::BTreeMap;

use mixvol::bounds::{af_point_bound, certify_sq_bound};
use mixvol::cone::build_af_cone;
use mixvol::index::enumerate_delta;
use mixvol::inequality::{gen_simplex_concavity_all, linearize, Family};
use mixvol::lp::{max_over_af, max_with_squares, solve, verify_certificate, LinearProgram, LpStatus};
use mixvol::rational::int;

#[test]
fn af_maxima_are_products_of_positive_entries() {
    for d in 2..=4usize {
        for p in enumerate_delta(d, d as u32) {
            let lp = max_over_af(d, &p, true).unwrap();
            assert_eq!(lp.value().unwrap(), &af_point_bound(&p), "{p}");
            assert!(verify_certificate(lp.certificate().unwrap(), &lp.program.rows()).unwrap());
        }
    }
}

/// Each simplex-concavity row is implied by the AF cone: its left side cannot exceed the
/// constant anywhere on the cone.
#[test]
fn simplex_concavity_follows_from_af_in_dimension_three() {
    let cone = build_af_cone(3);
    let rows = gen_simplex_concavity_all(3, 3);
    assert!(!rows.is_empty());
    for mi in &rows {
        let lin = linearize(mi);
        let lp = LinearProgram::new(lin.coeffs.clone(), cone.clone());
        let r = solve(&lp).unwrap();
        assert_eq!(r.status, LpStatus::Optimal, "{mi:?}");
        assert!(r.value.unwrap() <= lin.constant);
        assert!(verify_certificate(r.certificate.as_ref().unwrap(), &lp.rows()).unwrap());
    }
}

#[test]
fn path_certificates_dominate_square_lp_optima() {
    let t = int(5);
    for d in 3..=4usize {
        for p in enumerate_delta(d, d as u32) {
            let lp = max_with_squares(d, &p, &t, &Family::ALL).unwrap();
            let cert = certify_sq_bound(&p).unwrap();
            assert!(lp.value().unwrap() <= &cert.at(&t), "d={d} {p}");
        }
    }
}

#[test]
fn empty_objective_is_zero() {
    let lp = LinearProgram::new(BTreeMap::new(), build_af_cone(2));
    assert_eq!(solve(&lp).unwrap().value, Some(int(0)));
}
