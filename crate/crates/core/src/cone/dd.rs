//! Double description over the integers.
//!
//! A polyhedron {A x ≤ b, E x = f} is reduced to a pointed cone
//! {(y, λ) : λ ≥ 0, (b − A x0)λ − A Z y ≥ 0} after parametrizing the affine
//! space E x = f as x = x0 + Z y. Constraint rows are inserted one at a time;
//! new rays come from adjacent pairs on opposite sides of the inserted row,
//! with adjacency decided combinatorially from tight sets.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::{Configuration, Scale};
use crate::linalg::{self, int_dot, primitive, primitive_int, Matrix};
use crate::polyhedron::{Constraint, ConstraintSource, Equality, HPolyhedron};
use crate::rational::Rational;

pub const DEFAULT_RAY_LIMIT: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexSet {
    pub vertices: Vec<Configuration>,
    pub rays: Vec<Configuration>,
}

impl VertexSet {
    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn contains(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == *b)
    }
}

struct Ray {
    v: Vec<BigInt>,
    tight: Bits,
}

/// Extreme rays of the pointed cone {z ∈ R^dim : h·z ≥ 0 for every row h}.
pub(crate) fn extreme_rays(rows: &[Vec<BigInt>], dim: usize, limit: usize) -> Result<Vec<Vec<BigInt>>> {
    let as_rational: Matrix = rows
        .iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    let rank = linalg::rank(&as_rational);
    if rank < dim {
        return Err(Error::Lineality(dim - rank));
    }

    // initial simplicial cone from the first independent rows
    let mut basis_rows: Vec<usize> = Vec::new();
    let mut echelon: Matrix = Vec::new();
    for (i, r) in as_rational.iter().enumerate() {
        let mut trial = echelon.clone();
        trial.push(r.clone());
        if linalg::rank(&trial) > echelon.len() {
            linalg::rref(&mut trial);
            trial.retain(|row| row.iter().any(|x| !x.is_zero()));
            echelon = trial;
            basis_rows.push(i);
            if basis_rows.len() == dim {
                break;
            }
        }
    }
    let m: Matrix = basis_rows.iter().map(|&i| as_rational[i].clone()).collect();
    let mut rays: Vec<Ray> = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut e = vec![Rational::zero(); dim];
        e[k] = Rational::one();
        let col = linalg::solve(&m, &e).expect("basis rows are independent");
        let mut tight = Bits::new(rows.len());
        for (a, &bi) in basis_rows.iter().enumerate() {
            if a != k {
                tight.set(bi);
            }
        }
        rays.push(Ray { v: primitive(&col), tight });
    }

    let mut processed = vec![false; rows.len()];
    for &b in &basis_rows {
        processed[b] = true;
    }
    for (h_idx, h) in rows.iter().enumerate() {
        if processed[h_idx] {
            continue;
        }
        processed[h_idx] = true;
        let vals: Vec<BigInt> = rays.iter().map(|r| int_dot(h, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.tight.set(h_idx);
                }
            }
            continue;
        }
        let mut new_rays: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].tight.and(&rays[n].tight);
                if common.count() + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == n || !r.tight.contains(&common));
                if !adjacent {
                    continue;
                }
                let v: Vec<BigInt> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(a, b)| &vals[p] * a - &vals[n] * b)
                    .collect();
                let mut tight = common;
                tight.set(h_idx);
                new_rays.push(Ray { v: primitive_int(v), tight });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(pos.len() + new_rays.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                r.tight.set(h_idx);
            }
            next.push(r);
        }
        next.extend(new_rays);
        if next.len() > limit {
            return Err(Error::LimitExceeded(format!(
                "double description exceeded {limit} intermediate rays"
            )));
        }
        rays = next;
    }
    Ok(rays.into_iter().map(|r| r.v).collect())
}

/// Affine parametrization x = x0 + Z y of {E x = f}; `None` when inconsistent.
fn parametrize(eqs: &[(Vec<Rational>, Rational)], dim: usize) -> Option<(Vec<Rational>, Matrix)> {
    let mut aug: Matrix = eqs
        .iter()
        .map(|(a, f)| {
            let mut r = a.clone();
            r.push(f.clone());
            r
        })
        .collect();
    let pivots = linalg::rref(&mut aug);
    if pivots.contains(&dim) {
        return None;
    }
    let mut x0 = vec![Rational::zero(); dim];
    for (r, &c) in pivots.iter().enumerate() {
        x0[c] = aug[r][dim].clone();
    }
    let coeffs: Matrix = aug.iter().map(|r| r[..dim].to_vec()).collect();
    let z = linalg::nullspace(&coeffs, dim);
    Some((x0, z))
}

fn dense(c: &Constraint, dim: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    for (p, a) in &c.row.coeffs {
        v[p.rank()] = a.clone();
    }
    v
}

/// Exact vertices and extreme rays, with the default intermediate-ray limit.
pub fn enumerate_vertices(h: &HPolyhedron) -> Result<VertexSet> {
    enumerate_vertices_limited(h, DEFAULT_RAY_LIMIT)
}

pub fn enumerate_vertices_limited(h: &HPolyhedron, limit: usize) -> Result<VertexSet> {
    let dim = h.dim();
    let eqs: Vec<(Vec<Rational>, Rational)> = h
        .equalities
        .iter()
        .map(|e| {
            let mut v = vec![Rational::zero(); dim];
            for (p, a) in &e.coeffs {
                v[p.rank()] = a.clone();
            }
            (v, e.rhs.clone())
        })
        .collect();
    let (x0, z) = parametrize(&eqs, dim).ok_or(Error::Infeasible)?;
    let k = z.len();

    // rows over (y, λ): (−a·Z, b − a·x0), then λ ≥ 0
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(h.inequalities.len() + 1);
    let mut lambda = vec![BigInt::zero(); k + 1];
    lambda[k] = BigInt::one();
    rows.push(lambda);
    for c in &h.inequalities {
        let a = dense(c, dim);
        let mut r: Vec<Rational> = z.iter().map(|zc| -linalg::dot(&a, zc)).collect();
        r.push(&c.row.constant - linalg::dot(&a, &x0));
        if r.iter().all(Zero::is_zero) {
            continue;
        }
        rows.push(primitive(&r));
    }
    let rays = extreme_rays(&rows, k + 1, limit)?;

    let lift = |y: &[Rational], with_base: bool| -> Vec<Rational> {
        (0..dim)
            .map(|i| {
                let mut acc = if with_base { x0[i].clone() } else { Rational::zero() };
                for (yj, zc) in y.iter().zip(&z) {
                    if !yj.is_zero() {
                        acc += yj * &zc[i];
                    }
                }
                acc
            })
            .collect()
    };
    let mut vertices: Vec<Vec<Rational>> = Vec::new();
    let mut directions: Vec<Vec<Rational>> = Vec::new();
    for r in rays {
        let lam = Rational::from_integer(r[k].clone());
        if lam.is_positive() {
            let y: Vec<Rational> = r[..k].iter().map(|v| Rational::from_integer(v.clone()) / &lam).collect();
            vertices.push(lift(&y, true));
        } else {
            let y: Vec<Rational> = r[..k].iter().map(|v| Rational::from_integer(v.clone())).collect();
            let dir = lift(&y, false);
            let prim = primitive(&dir);
            directions.push(prim.into_iter().map(Rational::from_integer).collect());
        }
    }
    if vertices.is_empty() {
        return Err(Error::Infeasible);
    }
    vertices.sort();
    vertices.dedup();
    directions.sort();
    directions.dedup();
    let wrap = |v: Vec<Rational>| Configuration::from_values(h.n, h.d, Scale::Logarithmic, v);
    Ok(VertexSet {
        vertices: vertices.into_iter().map(wrap).collect::<Result<_>>()?,
        rays: directions.into_iter().map(wrap).collect::<Result<_>>()?,
    })
}

/// H-representation of conv(points): affine-hull equalities plus one row per facet.
pub fn facets_of_hull(points: &[Configuration]) -> Result<HPolyhedron> {
    let first = points.first().ok_or_else(|| Error::InvalidArgument("no points".into()))?;
    let (n, d) = (first.n(), first.d());
    let ambient = first.points();
    let dim = ambient.len();
    let v0 = first.values().to_vec();
    let diffs: Matrix = points
        .iter()
        .map(|p| p.values().iter().zip(&v0).map(|(a, b)| a - b).collect())
        .collect();
    // coordinates: pick independent difference rows as the span basis
    let mut basis: Matrix = Vec::new();
    for r in &diffs {
        let mut trial = basis.clone();
        trial.push(r.clone());
        if linalg::rank(&trial) > basis.len() {
            basis.push(r.clone());
        }
    }
    let k = basis.len();
    let mut h = HPolyhedron::new(n, d);
    // affine hull: N (x − v0) = 0 with N spanning the orthogonal complement of the basis
    for normal in linalg::nullspace(&basis, dim) {
        let rhs = linalg::dot(&normal, &v0);
        let coeffs = ambient.iter().cloned().zip(normal).filter(|(_, a)| !a.is_zero()).collect();
        h.equalities.push(Equality { coeffs, rhs, point: ambient[0].clone() });
    }
    if k == 0 {
        return Ok(h);
    }
    // y-coordinates through k pivot columns of the basis
    let columns: Matrix = (0..dim).map(|c| basis.iter().map(|b| b[c].clone()).collect()).collect();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut acc: Matrix = Vec::new();
    for c in 0..dim {
        let mut trial = acc.clone();
        trial.push(columns[c].clone());
        if linalg::rank(&trial) > acc.len() {
            acc.push(columns[c].clone());
            pivot_cols.push(c);
            if acc.len() == k {
                break;
            }
        }
    }
    // k×k block: row i holds the basis entries at pivot column i
    let t = acc;
    let coords = |x: &[Rational]| -> Vec<Rational> {
        let rhs: Vec<Rational> = pivot_cols.iter().map(|&c| &x[c] - &v0[c]).collect();
        linalg::solve(&t, &rhs).expect("pivot block is invertible")
    };
    let ys: Vec<Vec<Rational>> = points.iter().map(|p| coords(p.values())).collect();
    // cone of valid (c, c0): c0 − c·y ≥ 0
    let rows: Vec<Vec<BigInt>> = ys
        .iter()
        .map(|y| {
            let mut r: Vec<Rational> = y.iter().map(|v| -v.clone()).collect();
            r.push(Rational::one());
            primitive(&r)
        })
        .collect();
    let rays = extreme_rays(&rows, k + 1, DEFAULT_RAY_LIMIT)?;
    let tinv: Matrix = {
        let mut cols = Vec::new();
        for i in 0..k {
            let mut e = vec![Rational::zero(); k];
            e[i] = Rational::one();
            cols.push(linalg::solve(&t, &e).unwrap());
        }
        cols // cols[i] = T⁻¹ e_i, so y_j = Σ_i cols[i][j]·(x − v0)_{pivot i}
    };
    for r in rays {
        let c: Vec<Rational> = r[..k].iter().map(|v| Rational::from_integer(v.clone())).collect();
        if c.iter().all(Zero::is_zero) {
            continue;
        }
        let c0 = Rational::from_integer(r[k].clone());
        // c·y = Σ_i (Σ_j c_j tinv[i][j]) (x_{pivot i} − v0_{pivot i})
        let mut coeffs = std::collections::BTreeMap::new();
        let mut constant = c0;
        for (i, &pc) in pivot_cols.iter().enumerate() {
            let w = linalg::dot(&c, &tinv[i]);
            if !w.is_zero() {
                constant += &w * &v0[pc];
                coeffs.insert(ambient[pc].clone(), w);
            }
        }
        h.inequalities.push(Constraint {
            row: crate::inequality::LinearInequality::new(coeffs, constant),
            source: ConstraintSource::Named { label: "facet".into() },
        });
    }
    Ok(h)
}
