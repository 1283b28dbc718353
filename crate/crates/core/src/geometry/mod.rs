//! Exact polytope computations: hulls, Minkowski sums, volumes and mixed volumes.
//!
//! Volumes are normalized throughout (d! times Euclidean), so the standard simplex has
//! volume 1 and the mixed volume of (K, …, K) equals the normalized volume of K.

mod heine;
mod hull;
mod lattice;
mod mixed;
mod polytope;
mod random;

pub use heine::{heine_check, HeineMatrix, HeineReport};
pub use hull::Facet;
pub use lattice::{count_lattice_points, is_lattice_polytope, DEFAULT_CELL_BUDGET};
pub use mixed::{
    dimension_cap, extremal_tuple, extremal_values, full_configuration, mixed_volume, vol_sum_identity_check, vol_sum_sides,
    BodyTuple, TupleRole, MAX_GEOMETRY_DIM,
};
pub use polytope::VPolytope;
pub use random::{random_lattice_tuple, MAX_REDRAWS};

#[cfg(test)]
mod tests;
