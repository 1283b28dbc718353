use num_traits::{One, ToPrimitive};

use super::polytope::VPolytope;
use crate::error::{Error, Result};
use crate::rational;

pub const DEFAULT_CELL_BUDGET: u64 = 1_000_000;

/// Number of integer points in P, by bounding-box enumeration.
pub fn count_lattice_points(p: &VPolytope, cell_budget: u64) -> Result<u64> {
    let (lo, hi) = p.bounding_box();
    let lo: Vec<i64> = lo.iter().map(|x| x.ceil().to_integer().to_i64().unwrap_or(i64::MIN)).collect();
    let hi: Vec<i64> = hi.iter().map(|x| x.floor().to_integer().to_i64().unwrap_or(i64::MAX)).collect();
    let mut cells: u64 = 1;
    for (a, b) in lo.iter().zip(&hi) {
        if b < a {
            return Ok(0);
        }
        let width = (b - a + 1) as u64;
        cells = cells.checked_mul(width).filter(|&c| c <= cell_budget).ok_or_else(|| {
            Error::LimitExceeded(format!("bounding box exceeds the budget of {cell_budget} cells"))
        })?;
    }
    let dim = p.dim();
    let mut x = lo.clone();
    let mut count = 0;
    loop {
        let pt: Vec<_> = x.iter().map(|&v| rational::int(v)).collect();
        if p.contains(&pt) {
            count += 1;
        }
        let mut i = 0;
        while i < dim && x[i] == hi[i] {
            x[i] = lo[i];
            i += 1;
        }
        if i == dim {
            break;
        }
        x[i] += 1;
    }
    Ok(count)
}

/// Whether every vertex of P is integral.
pub fn is_lattice_polytope(p: &VPolytope) -> bool {
    p.vertices().iter().all(|v| v.iter().all(|x| x.denom().is_one()))
}
