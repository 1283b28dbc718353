use mixvol::bounds::{af_point_bound, certify_sq_bound};
use mixvol::geometry::{full_configuration, random_lattice_tuple};
use mixvol::index::IndexPoint;
use mixvol::rational::{pow, pow2};

/// Random lattice triples have normalized volumes ≥ 1, so both log-space bounds apply:
/// MV(p) ≤ MV(1)^{∏ p_i} and MV(p) ≤ 2^constant · MV(1)^slope.
#[test]
fn random_triples_respect_both_point_bounds() {
    let ones = IndexPoint::ones(3);
    for seed in 0..100 {
        let t = random_lattice_tuple(3, 3, 1000 + seed, 3, 5, true).unwrap();
        let c = full_configuration(&t).unwrap();
        let m = c.at(&ones).clone();
        for (p, v) in c.iter() {
            let af = af_point_bound(&p).to_integer();
            assert!(*v <= pow(&m, af.try_into().unwrap()), "seed {seed} {p}");
            let cert = certify_sq_bound(&p).unwrap();
            let slope: i64 = cert.slope.to_integer().try_into().unwrap();
            let constant: i64 = cert.constant.to_integer().try_into().unwrap();
            assert!(*v <= pow2(constant) * pow(&m, slope), "seed {seed} {p}");
        }
    }
}
