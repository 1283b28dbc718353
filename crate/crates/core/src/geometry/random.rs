use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::mixed::{check_dim, BodyTuple, TupleRole};
use super::polytope::VPolytope;
use crate::error::{Error, Result};
use crate::rational;

/// Redraws allowed per body before giving up on full dimensionality.
pub const MAX_REDRAWS: usize = 1000;

/// Seeded random tuple of lattice polytopes.
///
/// The stream is ChaCha8 seeded with `seed_from_u64(seed)`. Each coordinate is
/// `next_u64() % (box + 1)`, drawn body by body, point by point, coordinate by coordinate.
/// Rejected bodies consume their draws and are redrawn from the continuing stream.
pub fn random_lattice_tuple(
    d: usize,
    n: usize,
    seed: u64,
    box_size: u64,
    points_per_body: usize,
    require_full_dim: bool,
) -> Result<BodyTuple> {
    check_dim(d)?;
    if n == 0 || points_per_body == 0 || box_size == 0 {
        return Err(Error::InvalidArgument("n, box and points must be positive".into()));
    }
    if require_full_dim && points_per_body <= d {
        return Err(Error::InvalidArgument(format!(
            "a full-dimensional body in R^{d} needs at least {} points",
            d + 1
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bodies = Vec::with_capacity(n);
    for body in 0..n {
        let mut tries = 0;
        loop {
            let pts: Vec<Vec<_>> = (0..points_per_body)
                .map(|_| (0..d).map(|_| rational::int((rng.next_u64() % (box_size + 1)) as i64)).collect())
                .collect();
            let p = VPolytope::hull(d, pts)?;
            if !require_full_dim || p.is_full_dimensional() {
                bodies.push(p);
                break;
            }
            tries += 1;
            if tries >= MAX_REDRAWS {
                return Err(Error::LimitExceeded(format!(
                    "body {} not full-dimensional after {MAX_REDRAWS} draws",
                    body + 1
                )));
            }
        }
    }
    BodyTuple::new(TupleRole::Generic, bodies)
}
