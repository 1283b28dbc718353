use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::polytope::VPolytope;
use crate::error::{Error, Result};
use crate::index::{binomial, enumerate_delta, factorial, multinomial, Configuration, Scale};
use crate::rational::{self, Rational};

pub const MAX_GEOMETRY_DIM: usize = 4;

/// Ambient dimension cap for exact geometry: `MIXVOL_MAX_DIM` if set, else 4.
pub fn dimension_cap() -> usize {
    std::env::var("MIXVOL_MAX_DIM")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(MAX_GEOMETRY_DIM)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TupleRole {
    Generic,
    Extremal,
    Heine,
}

/// Ordered tuple of polytopes in a common ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BodyTuple {
    pub role: TupleRole,
    pub bodies: Vec<VPolytope>,
}

impl BodyTuple {
    pub fn new(role: TupleRole, bodies: Vec<VPolytope>) -> Result<Self> {
        let Some(first) = bodies.first() else {
            return Err(Error::InvalidArgument("a body tuple needs at least one body".into()));
        };
        let dim = first.dim();
        if bodies.iter().any(|b| b.dim() != dim) {
            return Err(Error::DomainMismatch("bodies live in different ambient dimensions".into()));
        }
        Ok(BodyTuple { role, bodies })
    }

    pub fn dim(&self) -> usize {
        self.bodies[0].dim()
    }

    pub fn len(&self) -> usize {
        self.bodies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bodies.is_empty()
    }

    /// Minkowski sum of the whole tuple.
    pub fn sum(&self) -> Result<VPolytope> {
        let mut acc = self.bodies[0].clone();
        for b in &self.bodies[1..] {
            acc = acc.minkowski_sum(b)?;
        }
        Ok(acc)
    }
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    let cap = dimension_cap();
    if dim == 0 || dim > cap {
        return Err(Error::InvalidArgument(format!(
            "geometry is limited to ambient dimension 1..={cap}, got {dim} (see MIXVOL_MAX_DIM)"
        )));
    }
    Ok(())
}

/// Normalized volumes of Σ c_i K_i, memoized by the multiplicity vector c.
struct SumVolumes<'a> {
    bodies: &'a [VPolytope],
    cache: HashMap<Vec<u32>, Rational>,
}

impl<'a> SumVolumes<'a> {
    fn new(bodies: &'a [VPolytope]) -> Self {
        SumVolumes { bodies, cache: HashMap::new() }
    }

    fn volume(&mut self, c: &[u32]) -> Result<Rational> {
        if let Some(v) = self.cache.get(c) {
            return Ok(v.clone());
        }
        let mut acc: Option<VPolytope> = None;
        for (k, &ci) in c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            let scaled = self.bodies[k].scale(&rational::int(ci as i64));
            acc = Some(match acc {
                None => scaled,
                Some(a) => a.minkowski_sum(&scaled)?,
            });
        }
        let v = acc.map(|p| p.normalized_volume()).unwrap_or_else(Rational::zero);
        self.cache.insert(c.to_vec(), v.clone());
        Ok(v)
    }

    /// MV with body i repeated p_i times, by inclusion-exclusion over sub-multisets of p.
    fn mixed(&mut self, p: &[u32]) -> Result<Rational> {
        let d: u32 = p.iter().sum();
        let mut total = Rational::zero();
        let mut c = vec![0u32; p.len()];
        loop {
            // advance c through the box 0 ≤ c ≤ p
            let mut i = 0;
            while i < p.len() && c[i] == p[i] {
                c[i] = 0;
                i += 1;
            }
            if i == p.len() {
                break;
            }
            c[i] += 1;
            let size: u32 = c.iter().sum();
            let weight: u64 = p.iter().zip(&c).map(|(&pi, &ci)| binomial(pi as u64, ci as u64)).product();
            let term = self.volume(&c)? * rational::int(weight as i64);
            if (d - size) % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        Ok(total / rational::int(factorial(d as u64) as i64))
    }
}

/// Normalized mixed volume of a d-tuple in R^d.
pub fn mixed_volume(t: &BodyTuple) -> Result<Rational> {
    let d = t.dim();
    check_dim(d)?;
    if t.len() != d {
        return Err(Error::InvalidArgument(format!("mixed volume in R^{d} needs {d} bodies, got {}", t.len())));
    }
    SumVolumes::new(&t.bodies).mixed(&vec![1; d])
}

/// All mixed volumes of an n-tuple, indexed by Δ_{n,d}.
pub fn full_configuration(t: &BodyTuple) -> Result<Configuration> {
    let d = t.dim();
    check_dim(d)?;
    let n = t.len();
    let mut vols = SumVolumes::new(&t.bodies);
    let mut values = Vec::new();
    for p in enumerate_delta(n, d as u32) {
        values.push(vols.mixed(p.coords())?);
    }
    Configuration::from_values(n, d as u32, Scale::Multiplicative, values)
}

/// Both sides of the multinomial expansion of Vol(K_1 + … + K_n).
pub fn vol_sum_sides(t: &BodyTuple) -> Result<(Rational, Rational)> {
    let config = full_configuration(t)?;
    let lhs = t.sum()?.normalized_volume();
    let rhs = config
        .iter()
        .fold(Rational::zero(), |acc, (p, v)| acc + v * rational::int(multinomial(&p) as i64));
    Ok((lhs, rhs))
}

pub fn vol_sum_identity_check(t: &BodyTuple) -> Result<bool> {
    let (lhs, rhs) = vol_sum_sides(t)?;
    Ok(lhs == rhs)
}

/// (mS, S, …, S) with S the standard simplex, truncated to the first `ell` bodies.
pub fn extremal_tuple(d: usize, m: u32, ell: usize) -> Result<BodyTuple> {
    check_dim(d)?;
    if m == 0 || ell == 0 || ell > d {
        return Err(Error::InvalidArgument(format!("need m ≥ 1 and 1 ≤ ell ≤ {d}")));
    }
    let s = VPolytope::standard_simplex(d);
    let mut bodies = vec![s.scale(&rational::int(m as i64))];
    bodies.extend(std::iter::repeat(s).take(d - 1));
    BodyTuple::new(TupleRole::Extremal, bodies.into_iter().take(ell).collect())
}

/// Values the extremal tuple is expected to attain: MV(mS, S, …, S) = m and
/// Vol(mS + (ell−1)S) = (m+ell−1)^d.
pub fn extremal_values(d: usize, m: u32, ell: usize) -> (Rational, Rational) {
    let base = rational::int((m as i64) + ell as i64 - 1);
    (rational::int(m as i64), rational::pow(&base, d as i64))
}

