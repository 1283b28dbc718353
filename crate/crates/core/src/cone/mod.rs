//! The Aleksandrov-Fenchel cone and polytope, exact vertex enumeration, orbits and dominance.

mod dd;
mod orbit;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{enumerate_delta, Configuration, IndexPoint};
use crate::inequality::gen_af;
use crate::polyhedron::{Constraint, ConstraintSource, Equality, HPolyhedron};
use crate::rational::{self, Rational};

pub use dd::{enumerate_vertices, enumerate_vertices_limited, facets_of_hull, VertexSet, DEFAULT_RAY_LIMIT};
pub use orbit::{dominance_maxima, orbit_decomposition, Orbit};

/// Corner non-negativity plus every linearized AF inequality, over Δ_{d,d}.
pub fn build_af_cone(d: usize) -> HPolyhedron {
    let mut h = HPolyhedron::new(d, d as u32);
    for i in 0..d {
        let p = IndexPoint::corner(d, d as u32, i);
        h.inequalities.push(Constraint::lower_bound(
            p.clone(),
            Rational::from_integer(0.into()),
            ConstraintSource::Corner { p },
        ));
    }
    h.inequalities.extend(gen_af(d).iter().map(Constraint::from_monomial));
    h
}

/// Adds mv(1) = level.
pub fn slice(cone: &HPolyhedron, level: Rational) -> Result<HPolyhedron> {
    let mut h = cone.clone();
    h.push_equality(Equality::pin(IndexPoint::ones(cone.n), level))?;
    Ok(h)
}

/// AF_d = AFC_d ∩ {mv(1) = 1}.
pub fn af_polytope(d: usize) -> HPolyhedron {
    slice(&build_af_cone(d), Rational::from_integer(1.into())).expect("slice of own cone")
}

/// Vertex list of a polytope over Δ_{d,d} as shipped in golden files: the index points in
/// canonical order, then value vectors sorted ascending. Pretty JSON with a trailing newline.
pub fn vertex_document(d: usize, vertices: &[Configuration]) -> Result<String> {
    let mut rows: Vec<&Configuration> = vertices.iter().collect();
    rows.sort_by(|a, b| a.values().cmp(b.values()));
    let doc = VertexDocument {
        d,
        count: rows.len(),
        points: enumerate_delta(d, d as u32),
        vertices: rows.iter().map(|c| c.values().iter().map(rational::format).collect()).collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).map_err(|e| Error::Parse(e.to_string()))?;
    out.push('\n');
    Ok(out)
}

#[derive(Serialize, Deserialize)]
pub struct VertexDocument {
    pub d: usize,
    pub count: usize,
    pub points: Vec<IndexPoint>,
    pub vertices: Vec<Vec<String>>,
}
