//! Inequality families between mixed volumes, their log-linearizations, and exact checking.

mod families;
mod sequence;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::index::{Configuration, IndexPoint, Scale};
use crate::rational::{self, Rational};

pub use families::{
    gen_af, gen_double_square, gen_generalized_square, gen_simplex_concavity,
    gen_simplex_concavity_all, gen_square, gen_weak_concavity, gen_weak_concavity_all, generate,
    Caps,
};
pub use sequence::{verify_weak_concave_sequence, SequenceReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Af,
    SimplexConcavity,
    Square,
    GeneralizedSquare,
    WeakConcavity,
    DoubleSquare,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Af,
        Family::SimplexConcavity,
        Family::Square,
        Family::GeneralizedSquare,
        Family::WeakConcavity,
        Family::DoubleSquare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Af => "af",
            Family::SimplexConcavity => "simplex_concavity",
            Family::Square => "square",
            Family::GeneralizedSquare => "generalized_square",
            Family::WeakConcavity => "weak_concavity",
            Family::DoubleSquare => "double_square",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts the snake_case names and the short command-line spellings.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "af" => Family::Af,
            "simplex_concavity" | "simplexconc" => Family::SimplexConcavity,
            "square" => Family::Square,
            "generalized_square" | "gensquare" => Family::GeneralizedSquare,
            "weak_concavity" | "weakconc" => Family::WeakConcavity,
            "double_square" | "doublesquare" => Family::DoubleSquare,
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        })
    }
}

/// Parses a comma-separated family list.
pub fn parse_families(s: &str) -> Result<Vec<Family>> {
    let mut out: Vec<Family> = Vec::new();
    for part in s.split(',').filter(|x| !x.trim().is_empty()) {
        let f = part.parse()?;
        if !out.contains(&f) {
            out.push(f);
        }
    }
    Ok(out)
}

/// Parameters of a simplex copy k·Δ on the given coordinates, translated by `shift`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexParams {
    pub indices: Vec<usize>,
    pub shift: Vec<u32>,
    pub level: u32,
}

/// Generating parameters of an inequality. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Provenance {
    pub p: IndexPoint,
    pub i: Option<usize>,
    pub j: Option<usize>,
    pub set: Option<Vec<usize>>,
    pub other: Option<Vec<usize>>,
    pub k: Option<u32>,
    pub l: Option<u32>,
    pub simplex: Option<SimplexParams>,
}

impl Provenance {
    pub fn at(p: IndexPoint) -> Self {
        Self { p, i: None, j: None, set: None, other: None, k: None, l: None, simplex: None }
    }
}

#[derive(Serialize, Deserialize)]
struct SimplexJson {
    indices: Vec<usize>,
    shift: Vec<u32>,
    level: u32,
}

#[derive(Serialize, Deserialize)]
struct ProvenanceJson {
    p: IndexPoint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    i: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    j: Option<usize>,
    #[serde(rename = "I", default, skip_serializing_if = "Option::is_none")]
    set: Option<Vec<usize>>,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    other: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    l: Option<u32>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    simplex: Option<SimplexJson>,
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn zero_based<E: serde::de::Error>(v: Vec<usize>) -> std::result::Result<Vec<usize>, E> {
    v.into_iter()
        .map(|x| x.checked_sub(1).ok_or_else(|| E::custom("indices are 1-based")))
        .collect()
}

impl Serialize for Provenance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ProvenanceJson {
            p: self.p.clone(),
            i: self.i.map(|x| x + 1),
            j: self.j.map(|x| x + 1),
            set: self.set.as_deref().map(one_based),
            other: self.other.as_deref().map(one_based),
            k: self.k,
            l: self.l,
            simplex: self.simplex.as_ref().map(|sp| SimplexJson {
                indices: one_based(&sp.indices),
                shift: sp.shift.clone(),
                level: sp.level,
            }),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Provenance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ProvenanceJson::deserialize(d)?;
        let idx = |x: Option<usize>| -> std::result::Result<Option<usize>, D::Error> {
            x.map(|v| {
                v.checked_sub(1)
                    .ok_or_else(|| serde::de::Error::custom("indices are 1-based"))
            })
            .transpose()
        };
        Ok(Provenance {
            p: raw.p,
            i: idx(raw.i)?,
            j: idx(raw.j)?,
            set: raw.set.map(zero_based::<D::Error>).transpose()?,
            other: raw.other.map(zero_based::<D::Error>).transpose()?,
            k: raw.k,
            l: raw.l,
            simplex: raw
                .simplex
                .map(|sp| -> std::result::Result<SimplexParams, D::Error> {
                    Ok(SimplexParams {
                        indices: zero_based(sp.indices)?,
                        shift: sp.shift,
                        level: sp.level,
                    })
                })
                .transpose()?,
        })
    }
}

/// Serde adapter for maps keyed by index points, as `[[p, value], …]`.
mod point_map {
    use super::*;

    pub fn serialize<S: Serializer, V: Serialize>(
        m: &BTreeMap<IndexPoint, V>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(m.iter())
    }

    pub fn deserialize<'de, D: Deserializer<'de>, V: Deserialize<'de>>(
        d: D,
    ) -> std::result::Result<BTreeMap<IndexPoint, V>, D::Error> {
        let raw = Vec::<(IndexPoint, V)>::deserialize(d)?;
        Ok(raw.into_iter().collect())
    }
}

pub(crate) mod rational_point_map {
    use super::*;

    pub fn serialize<S: Serializer>(
        m: &BTreeMap<IndexPoint, Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(m.iter().map(|(p, v)| (p, rational::format(v))))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BTreeMap<IndexPoint, Rational>, D::Error> {
        let raw = Vec::<(IndexPoint, String)>::deserialize(d)?;
        raw.into_iter()
            .map(|(p, v)| Ok((p, rational::parse(&v).map_err(serde::de::Error::custom)?)))
            .collect()
    }
}

/// Π MV(p)^{lhs(p)} ≤ 2^{log2_const} · Π MV(q)^{rhs(q)}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialInequality {
    pub family: Family,
    pub provenance: Provenance,
    #[serde(with = "point_map")]
    pub lhs: BTreeMap<IndexPoint, u32>,
    #[serde(with = "point_map")]
    pub rhs: BTreeMap<IndexPoint, u32>,
    pub log2_const: u32,
}

pub(crate) type InequalityKey = (Vec<(IndexPoint, u32)>, Vec<(IndexPoint, u32)>, u32);

impl MonomialInequality {
    /// Builds a canonical inequality: shared points cancelled, zero exponents
    /// dropped, exponents divided by their gcd when the gcd divides the constant.
    pub fn new(
        family: Family,
        provenance: Provenance,
        lhs: impl IntoIterator<Item = (IndexPoint, u32)>,
        rhs: impl IntoIterator<Item = (IndexPoint, u32)>,
        log2_const: u32,
    ) -> Self {
        let mut l: BTreeMap<IndexPoint, u32> = BTreeMap::new();
        let mut r: BTreeMap<IndexPoint, u32> = BTreeMap::new();
        for (p, e) in lhs {
            *l.entry(p).or_default() += e;
        }
        for (p, e) in rhs {
            *r.entry(p).or_default() += e;
        }
        for (p, e) in l.iter_mut() {
            if let Some(f) = r.get_mut(p) {
                let m = (*e).min(*f);
                *e -= m;
                *f -= m;
            }
        }
        l.retain(|_, e| *e > 0);
        r.retain(|_, e| *e > 0);
        let g = l.values().chain(r.values()).fold(0u32, |g, &e| g.gcd(&e));
        let (l, r, c) = if g > 1 && log2_const % g == 0 {
            (
                l.into_iter().map(|(p, e)| (p, e / g)).collect(),
                r.into_iter().map(|(p, e)| (p, e / g)).collect(),
                log2_const / g,
            )
        } else {
            (l, r, log2_const)
        };
        Self { family, provenance, lhs: l, rhs: r, log2_const: c }
    }

    pub(crate) fn key(&self) -> InequalityKey {
        (
            self.lhs.iter().map(|(p, e)| (p.clone(), *e)).collect(),
            self.rhs.iter().map(|(p, e)| (p.clone(), *e)).collect(),
            self.log2_const,
        )
    }

    pub fn degree(&self) -> (u32, u32) {
        (self.lhs.values().sum(), self.rhs.values().sum())
    }

    pub fn points(&self) -> impl Iterator<Item = &IndexPoint> {
        self.lhs.keys().chain(self.rhs.keys())
    }

    /// Both sides evaluated exactly on a multiplicative configuration.
    pub fn evaluate(&self, c: &Configuration) -> Result<(Rational, Rational)> {
        let side = |m: &BTreeMap<IndexPoint, u32>| -> Result<Rational> {
            let mut acc = Rational::one();
            for (p, &e) in m {
                acc *= rational::pow(c.get(p)?, e as i64);
            }
            Ok(acc)
        };
        let lhs = side(&self.lhs)?;
        let rhs = side(&self.rhs)? * rational::pow2(self.log2_const as i64);
        Ok((lhs, rhs))
    }

    /// Applies σ to every index point and to the provenance parameters.
    pub fn permuted(&self, sigma: &crate::index::Permutation) -> MonomialInequality {
        let inv = sigma.inverse();
        let map_idx = |i: usize| inv.images[i];
        let map_set = |v: &Vec<usize>| {
            let mut w: Vec<usize> = v.iter().map(|&i| map_idx(i)).collect();
            w.sort_unstable();
            w
        };
        let prov = &self.provenance;
        let provenance = Provenance {
            p: prov.p.permuted(sigma),
            i: prov.i.map(map_idx),
            j: prov.j.map(map_idx),
            set: prov.set.as_ref().map(map_set),
            other: prov.other.as_ref().map(map_set),
            k: prov.k,
            l: prov.l,
            simplex: prov.simplex.as_ref().map(|sp| SimplexParams {
                indices: map_set(&sp.indices),
                shift: sigma.images.iter().map(|&s| sp.shift[s]).collect(),
                level: sp.level,
            }),
        };
        MonomialInequality::new(
            self.family,
            provenance,
            self.lhs.iter().map(|(p, &e)| (p.permuted(sigma), e)),
            self.rhs.iter().map(|(p, &e)| (p.permuted(sigma), e)),
            self.log2_const,
        )
    }
}

/// Σ coeffs(p)·x(p) ≤ constant over log-space variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearInequality {
    #[serde(with = "rational_point_map")]
    pub coeffs: BTreeMap<IndexPoint, Rational>,
    #[serde(with = "rational::serde_str")]
    pub constant: Rational,
}

impl LinearInequality {
    pub fn new(coeffs: BTreeMap<IndexPoint, Rational>, constant: Rational) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Self { coeffs, constant }
    }

    pub fn lhs_value(&self, x: &Configuration) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (p, a) in &self.coeffs {
            acc += a * x.get(p)?;
        }
        Ok(acc)
    }

    pub fn satisfied_by(&self, x: &Configuration) -> Result<bool> {
        Ok(self.lhs_value(x)? <= self.constant)
    }

    pub fn is_tight(&self, x: &Configuration) -> Result<bool> {
        Ok(self.lhs_value(x)? == self.constant)
    }
}

/// coeffs = lhs exponents − rhs exponents; constant = log2 of the constant.
pub fn linearize(mi: &MonomialInequality) -> LinearInequality {
    let mut coeffs: BTreeMap<IndexPoint, Rational> = BTreeMap::new();
    for (p, &e) in &mi.lhs {
        *coeffs.entry(p.clone()).or_insert_with(Rational::zero) += rational::int(e as i64);
    }
    for (p, &e) in &mi.rhs {
        *coeffs.entry(p.clone()).or_insert_with(Rational::zero) -= rational::int(e as i64);
    }
    LinearInequality::new(coeffs, rational::int(mi.log2_const as i64))
}

/// Removes duplicates by (lhs, rhs, constant), keeping the first provenance.
pub fn dedupe(list: Vec<MonomialInequality>) -> Vec<MonomialInequality> {
    let mut seen = HashSet::new();
    list.into_iter().filter(|mi| seen.insert(mi.key())).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub inequality: MonomialInequality,
    #[serde(with = "rational::serde_str")]
    pub lhs: Rational,
    #[serde(with = "rational::serde_str")]
    pub rhs: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub total: usize,
    pub satisfied: usize,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates every inequality exactly on a strictly positive multiplicative configuration.
pub fn check_config(c: &Configuration, ineqs: &[MonomialInequality]) -> Result<CheckReport> {
    if c.scale != Scale::Multiplicative {
        return Err(Error::InvalidArgument("check_config needs a multiplicative configuration".into()));
    }
    if let Some((p, _)) = c.iter().find(|(_, v)| !v.is_positive()) {
        return Err(Error::InvalidArgument(format!("configuration value at {p} is not positive")));
    }
    let mut violations = Vec::new();
    for mi in ineqs {
        let (lhs, rhs) = mi.evaluate(c)?;
        if lhs > rhs {
            violations.push(Violation { inequality: mi.clone(), lhs, rhs });
        }
    }
    Ok(CheckReport { total: ineqs.len(), satisfied: ineqs.len() - violations.len(), violations })
}

#[cfg(test)]
mod tests;
