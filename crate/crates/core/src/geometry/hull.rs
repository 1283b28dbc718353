//! Exact incremental beneath-beyond convex hull in the affine hull of the input.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::linalg::{self, Matrix};
use crate::rational::Rational;

/// Coordinates of the affine hull: x ↦ y with x_P − o_P = T y on the pivot columns P.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFrame {
    pub origin: Vec<Rational>,
    pub basis: Matrix,
    pub pivots: Vec<usize>,
    /// Rows n with n·(x − origin) = 0 on the affine hull.
    pub normals: Matrix,
    inverse: Matrix,
}

impl AffineFrame {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn project(&self, x: &[Rational]) -> Vec<Rational> {
        let k = self.dim();
        (0..k)
            .map(|j| {
                self.pivots.iter().enumerate().fold(Rational::zero(), |acc, (i, &c)| {
                    let v = &x[c] - &self.origin[c];
                    if v.is_zero() {
                        acc
                    } else {
                        acc + &self.inverse[j][i] * v
                    }
                })
            })
            .collect()
    }

    pub fn on_hull(&self, x: &[Rational]) -> bool {
        self.normals.iter().all(|n| {
            n.iter().zip(x.iter().zip(&self.origin)).fold(Rational::zero(), |acc, (a, (xi, oi))| acc + a * (xi - oi)).is_zero()
        })
    }
}

pub fn affine_frame(points: &[Vec<Rational>]) -> AffineFrame {
    let origin = points[0].clone();
    let dim = origin.len();
    let mut basis: Matrix = Vec::new();
    let mut echelon: Matrix = Vec::new();
    for p in &points[1..] {
        let diff: Vec<Rational> = p.iter().zip(&origin).map(|(a, b)| a - b).collect();
        let mut trial = echelon.clone();
        trial.push(diff.clone());
        if linalg::rank(&trial) > echelon.len() {
            echelon = trial;
            basis.push(diff);
            if basis.len() == dim {
                break;
            }
        }
    }
    let k = basis.len();
    let mut pivots = Vec::new();
    let mut block: Matrix = Vec::new();
    for c in 0..dim {
        if block.len() == k {
            break;
        }
        let col: Vec<Rational> = basis.iter().map(|b| b[c].clone()).collect();
        let mut trial = block.clone();
        trial.push(col.clone());
        if linalg::rank(&trial) > block.len() {
            block = trial;
            pivots.push(c);
        }
    }
    // block[i][j] = basis[j][pivot i]; inverse[j][i] maps pivot offsets to coordinates
    let mut inverse = vec![vec![Rational::zero(); k]; k];
    for i in 0..k {
        let mut e = vec![Rational::zero(); k];
        e[i] = Rational::one();
        let col = linalg::solve(&block, &e).expect("pivot block is invertible");
        for j in 0..k {
            inverse[j][i] = col[j].clone();
        }
    }
    let normals = if k == 0 {
        (0..dim)
            .map(|i| {
                let mut e = vec![Rational::zero(); dim];
                e[i] = Rational::one();
                e
            })
            .collect()
    } else {
        linalg::nullspace(&basis, dim)
    };
    AffineFrame { origin, basis, pivots, normals, inverse }
}

/// One boundary simplex of a full-dimensional hull, with a·y ≤ b on the hull.
#[derive(Clone, Debug)]
pub struct Facet {
    pub vertices: Vec<usize>,
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

fn hyperplane(pts: &[&Vec<Rational>], interior: &[Rational]) -> (Vec<Rational>, Rational) {
    let k = interior.len();
    let rows: Matrix = pts[1..]
        .iter()
        .map(|p| p.iter().zip(pts[0]).map(|(a, b)| a - b).collect())
        .collect();
    let mut normal = linalg::nullspace(&rows, k).pop().expect("facet points are independent");
    let mut offset = linalg::dot(&normal, pts[0]);
    if linalg::dot(&normal, interior) > offset {
        normal = normal.into_iter().map(|v| -v).collect();
        offset = -offset;
    }
    (normal, offset)
}

/// Simplicial boundary of conv(points) ⊂ R^k, k ≥ 2, for affinely spanning input.
/// `seed` lists k+1 affinely independent point indices.
pub fn beneath_beyond(points: &[Vec<Rational>], seed: &[usize]) -> Vec<Facet> {
    let k = points[0].len();
    let mut interior = vec![Rational::zero(); k];
    for &s in seed {
        for (c, v) in interior.iter_mut().zip(&points[s]) {
            *c += v;
        }
    }
    let denom = Rational::from_integer(((k + 1) as i64).into());
    for c in interior.iter_mut() {
        *c /= &denom;
    }
    let make = |verts: Vec<usize>| -> Facet {
        let pts: Vec<&Vec<Rational>> = verts.iter().map(|&i| &points[i]).collect();
        let (normal, offset) = hyperplane(&pts, &interior);
        Facet { vertices: verts, normal, offset }
    };
    let mut facets: Vec<Facet> = (0..=k)
        .map(|skip| {
            let mut v: Vec<usize> = seed.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &s)| s).collect();
            v.sort_unstable();
            make(v)
        })
        .collect();
    for (idx, x) in points.iter().enumerate() {
        if seed.contains(&idx) {
            continue;
        }
        let visible: Vec<bool> = facets.iter().map(|f| linalg::dot(&f.normal, x) > f.offset).collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut ridge_count: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut order: Vec<Vec<usize>> = Vec::new();
        for (f, _) in facets.iter().zip(&visible).filter(|(_, &v)| v) {
            for skip in 0..f.vertices.len() {
                let ridge: Vec<usize> =
                    f.vertices.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
                let e = ridge_count.entry(ridge.clone()).or_insert(0);
                if *e == 0 {
                    order.push(ridge);
                }
                *e += 1;
            }
        }
        let mut kept: Vec<Facet> = facets
            .into_iter()
            .zip(&visible)
            .filter(|(_, &v)| !v)
            .map(|(f, _)| f)
            .collect();
        for ridge in order {
            if ridge_count[&ridge] == 1 {
                let mut v = ridge;
                v.push(idx);
                v.sort_unstable();
                kept.push(make(v));
            }
        }
        facets = kept;
    }
    facets
}

/// Indices of points that are vertices: the facet normals through them span R^k.
pub fn vertex_indices(points: &[Vec<Rational>], facets: &[Facet]) -> Vec<usize> {
    let mut out = Vec::new();
    for idx in 0..points.len() {
        let normals: Matrix = facets
            .iter()
            .filter(|f| f.vertices.contains(&idx))
            .map(|f| f.normal.clone())
            .collect();
        if !normals.is_empty() && linalg::rank(&normals) == points[0].len() {
            out.push(idx);
        }
    }
    out
}

/// Σ |det(f − o)| over the boundary simplices: k! times the k-volume.
pub fn simplicial_volume(points: &[Vec<Rational>], facets: &[Facet]) -> Rational {
    let o = &points[facets[0].vertices[0]];
    let mut total = Rational::zero();
    for f in facets {
        if f.vertices.iter().any(|&v| points[v] == *o) {
            continue;
        }
        let m: Matrix = f
            .vertices
            .iter()
            .map(|&v| points[v].iter().zip(o).map(|(a, b)| a - b).collect())
            .collect();
        total += linalg::det(&m).abs();
    }
    total
}

/// Seed simplex: k+1 affinely independent indices, greedily in input order.
pub fn seed_simplex(points: &[Vec<Rational>]) -> Vec<usize> {
    let k = points[0].len();
    let mut seed = vec![0];
    let mut rows: Matrix = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        let diff: Vec<Rational> = p.iter().zip(&points[0]).map(|(a, b)| a - b).collect();
        let mut trial = rows.clone();
        trial.push(diff);
        if linalg::rank(&trial) > rows.len() {
            rows = trial;
            seed.push(i);
            if seed.len() == k + 1 {
                break;
            }
        }
    }
    seed
}

