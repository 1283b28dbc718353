use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::hull::{affine_frame, beneath_beyond, seed_simplex, simplicial_volume, vertex_indices, AffineFrame, Facet};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{self, Rational};

/// A convex polytope given by its irredundant vertex list, vertices sorted.
#[derive(Clone, Debug)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
    frame: AffineFrame,
    /// Facets in frame coordinates; empty when the affine dimension is below 2.
    facets: Vec<Facet>,
    projected: Vec<Vec<Rational>>,
}

impl PartialEq for VPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for VPolytope {}

impl VPolytope {
    /// Convex hull of a non-empty point list in R^dim.
    pub fn hull(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("convex hull of no points".into()));
        }
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidArgument(format!("points must have {dim} coordinates")));
        }
        let mut pts = points;
        pts.sort();
        pts.dedup();
        let frame = affine_frame(&pts);
        let k = frame.dim();
        let full = frame.dim() == dim;
        let chart = |p: &Vec<Rational>| if full { p.clone() } else { frame.project(p) };
        let projected: Vec<Vec<Rational>> = pts.iter().map(chart).collect();
        let (vertices, facets, projected) = match k {
            0 => (pts.clone(), Vec::new(), projected),
            1 => {
                let lo = (0..pts.len()).min_by(|&a, &b| projected[a].cmp(&projected[b])).unwrap();
                let hi = (0..pts.len()).max_by(|&a, &b| projected[a].cmp(&projected[b])).unwrap();
                let mut v = vec![pts[lo].clone(), pts[hi].clone()];
                v.sort();
                let proj = v.iter().map(chart).collect();
                (v, Vec::new(), proj)
            }
            _ => {
                let first = beneath_beyond(&projected, &seed_simplex(&projected));
                let idx = vertex_indices(&projected, &first);
                let verts: Vec<Vec<Rational>> = idx.iter().map(|&i| pts[i].clone()).collect();
                let proj: Vec<Vec<Rational>> = idx.iter().map(|&i| projected[i].clone()).collect();
                // second pass over the vertices alone gives a triangulation without extra points
                let facets = beneath_beyond(&proj, &seed_simplex(&proj));
                (verts, facets, proj)
            }
        };
        Ok(VPolytope { dim, vertices, frame, facets, projected })
    }

    pub fn from_ints(dim: usize, points: &[Vec<i64>]) -> Result<Self> {
        Self::hull(dim, points.iter().map(|p| p.iter().map(|&x| rational::int(x)).collect()).collect())
    }

    /// conv{0, e_1, …, e_d}.
    pub fn standard_simplex(dim: usize) -> Self {
        let mut pts = vec![vec![Rational::zero(); dim]];
        for i in 0..dim {
            let mut e = vec![Rational::zero(); dim];
            e[i] = rational::int(1);
            pts.push(e);
        }
        Self::hull(dim, pts).expect("simplex")
    }

    /// [0,1]^d.
    pub fn unit_cube(dim: usize) -> Self {
        let pts = (0..1u32 << dim)
            .map(|m| (0..dim).map(|i| rational::int(((m >> i) & 1) as i64)).collect())
            .collect();
        Self::hull(dim, pts).expect("cube")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn affine_dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.dim
    }

    /// d! times the Euclidean volume; zero for lower-dimensional polytopes.
    pub fn normalized_volume(&self) -> Rational {
        if !self.is_full_dimensional() || self.dim == 0 {
            return Rational::zero();
        }
        if self.dim == 1 {
            return &self.vertices[1][0] - &self.vertices[0][0];
        }
        simplicial_volume(&self.projected, &self.facets)
    }

    /// Coordinates used by the facet description: the point itself when full-dimensional,
    /// its affine-frame coordinates otherwise.
    fn chart(&self, x: &[Rational]) -> Vec<Rational> {
        if self.is_full_dimensional() {
            x.to_vec()
        } else {
            self.frame.project(x)
        }
    }

    pub fn minkowski_sum(&self, other: &VPolytope) -> Result<VPolytope> {
        if self.dim != other.dim {
            return Err(Error::DomainMismatch("Minkowski sum of polytopes in different dimensions".into()));
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        VPolytope::hull(self.dim, pts)
    }

    pub fn scale(&self, lambda: &Rational) -> VPolytope {
        let pts = self.vertices.iter().map(|v| v.iter().map(|x| x * lambda).collect()).collect();
        VPolytope::hull(self.dim, pts).expect("scaled hull")
    }

    pub fn translate(&self, t: &[Rational]) -> VPolytope {
        let pts = self.vertices.iter().map(|v| v.iter().zip(t).map(|(x, y)| x + y).collect()).collect();
        VPolytope::hull(self.dim, pts).expect("translated hull")
    }

    /// Exact membership test.
    pub fn contains(&self, x: &[Rational]) -> bool {
        if x.len() != self.dim || !self.frame.on_hull(x) {
            return false;
        }
        let y = self.chart(x);
        match self.affine_dim() {
            0 => true,
            1 => {
                let (lo, hi) = (&self.projected[0], &self.projected[1]);
                let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
                lo[0] <= y[0] && y[0] <= hi[0]
            }
            _ => self.facets.iter().all(|f| linalg::dot(&f.normal, &y) <= f.offset),
        }
    }

    /// Facet inequalities a·y ≤ b; in original coordinates when full-dimensional, in
    /// affine-frame coordinates otherwise.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Componentwise bounding box.
    pub fn bounding_box(&self) -> (Vec<Rational>, Vec<Rational>) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices {
            for i in 0..self.dim {
                if v[i] < lo[i] {
                    lo[i] = v[i].clone();
                }
                if v[i] > hi[i] {
                    hi[i] = v[i].clone();
                }
            }
        }
        (lo, hi)
    }
}

#[derive(Serialize, Deserialize)]
struct PolytopeJson {
    dim: usize,
    vertices: Vec<Vec<String>>,
}

impl Serialize for VPolytope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolytopeJson {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.iter().map(rational::format).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for VPolytope {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolytopeJson::deserialize(d)?;
        let pts = raw
            .vertices
            .iter()
            .map(|v| v.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        VPolytope::hull(raw.dim, pts).map_err(serde::de::Error::custom)
    }
}
