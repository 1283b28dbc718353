//! The index simplex Δ_{n,d}, directions, configurations and the S_n action.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A non-negative integer vector with coordinate sum `d`.
///
/// Ordering is the canonical reverse-lexicographic order: `(3,0) < (2,1) < (1,2) < (0,3)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IndexPoint {
    coords: Vec<u32>,
    d: u32,
}

impl IndexPoint {
    pub fn new(coords: Vec<u32>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidIndex("empty coordinate list".into()));
        }
        let d: u32 = coords.iter().sum();
        if d == 0 {
            return Err(Error::InvalidIndex("coordinate sum must be positive".into()));
        }
        Ok(Self { coords, d })
    }

    /// Checks that the point lives in Δ_{n,d}.
    pub fn in_domain(coords: Vec<u32>, n: usize, d: u32) -> Result<Self> {
        let p = Self::new(coords)?;
        if p.n() != n || p.d != d {
            return Err(Error::DomainMismatch(format!(
                "{p} is not in Delta_{{{n},{d}}}"
            )));
        }
        Ok(p)
    }

    /// The point (1, …, 1).
    pub fn ones(n: usize) -> Self {
        Self { coords: vec![1; n], d: n as u32 }
    }

    /// The corner d·e_i.
    pub fn corner(n: usize, d: u32, i: usize) -> Self {
        let mut coords = vec![0; n];
        coords[i] = d;
        Self { coords, d }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn get(&self, i: usize) -> u32 {
        self.coords[i]
    }

    pub fn max_entry(&self) -> u32 {
        self.coords.iter().copied().max().unwrap_or(0)
    }

    pub fn is_sorted_desc(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] >= w[1])
    }

    /// `self + k·dir`, or `None` if the result leaves the simplex.
    pub fn shift(&self, dir: &[i64], k: i64) -> Option<Self> {
        if dir.len() != self.n() {
            return None;
        }
        let coords = self
            .coords
            .iter()
            .zip(dir)
            .map(|(&c, &v)| u32::try_from(c as i64 + k * v).ok())
            .collect::<Option<Vec<u32>>>()?;
        Some(Self { coords, d: self.d })
    }

    /// The point q with q_i = p_{σ(i)}.
    pub fn permuted(&self, sigma: &Permutation) -> Self {
        let coords = sigma.images.iter().map(|&s| self.coords[s]).collect();
        Self { coords, d: self.d }
    }

    /// Position in the canonical enumeration of Δ_{n,d}.
    pub fn rank(&self) -> usize {
        let n = self.n();
        let mut remaining = self.d as u64;
        let mut r = 0u64;
        for (i, &c) in self.coords.iter().enumerate().take(n - 1) {
            let parts = (n - i - 1) as u64;
            // points sharing the prefix but with a larger coordinate here come first
            for v in (c as u64 + 1)..=remaining {
                r += binomial(remaining - v + parts - 1, parts - 1);
            }
            remaining -= c as u64;
        }
        r as usize
    }
}

impl Ord for IndexPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        other.coords.cmp(&self.coords)
    }
}

impl PartialOrd for IndexPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for IndexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for IndexPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IndexPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coords = Vec::<u32>::deserialize(d)?;
        IndexPoint::new(coords).map_err(D::Error::custom)
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// All points of Δ_{n,d} in canonical order.
pub fn enumerate_delta(n: usize, d: u32) -> Vec<IndexPoint> {
    fn rec(n: usize, rem: u32, prefix: &mut Vec<u32>, out: &mut Vec<IndexPoint>, d: u32) {
        if prefix.len() + 1 == n {
            prefix.push(rem);
            out.push(IndexPoint { coords: prefix.clone(), d });
            prefix.pop();
            return;
        }
        for v in (0..=rem).rev() {
            prefix.push(v);
            rec(n, rem - v, prefix, out, d);
            prefix.pop();
        }
    }
    assert!(n >= 1 && d >= 1, "enumerate_delta needs n, d >= 1");
    let mut out = Vec::with_capacity(binomial((n as u64) + d as u64 - 1, d as u64) as usize);
    rec(n, d, &mut Vec::with_capacity(n), &mut out, d);
    out
}

pub fn delta_size(n: usize, d: u32) -> usize {
    binomial(n as u64 + d as u64 - 1, d as u64) as usize
}

/// d! / (p_1! ⋯ p_n!).
pub fn multinomial(p: &IndexPoint) -> u64 {
    let mut acc = 1u64;
    let mut total = 0u64;
    for &c in p.coords() {
        for k in 1..=c as u64 {
            total += 1;
            acc = acc * total / k;
        }
    }
    acc
}

/// A zero-sum integer direction in the index lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Direction {
    pub coords: Vec<i64>,
    pub kind: DirectionKind,
}

/// Index sets are 0-based here and 1-based in JSON output of higher layers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DirectionKind {
    Elementary { i: usize, j: usize },
    OneToOne { set: Vec<usize>, j: usize },
    SetToSet { set: Vec<usize>, other: Vec<usize> },
}

impl Direction {
    /// e_i − e_j.
    pub fn elementary(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j || i >= n || j >= n {
            return Err(Error::InvalidArgument(format!("bad elementary direction ({i},{j})")));
        }
        let mut coords = vec![0; n];
        coords[i] = 1;
        coords[j] = -1;
        Ok(Self { coords, kind: DirectionKind::Elementary { i, j } })
    }

    /// u_{I,j} = Σ_{i∈I} (e_i − e_j).
    pub fn one_to_one(n: usize, set: &[usize], j: usize) -> Result<Self> {
        if set.is_empty() || set.contains(&j) || j >= n || set.iter().any(|&i| i >= n) {
            return Err(Error::InvalidArgument(format!("bad direction u_{{{set:?},{j}}}")));
        }
        let mut coords = vec![0; n];
        for &i in set {
            coords[i] += 1;
        }
        if coords.iter().any(|&c| c > 1) {
            return Err(Error::InvalidArgument("repeated index".into()));
        }
        coords[j] = -(set.len() as i64);
        Ok(Self { coords, kind: DirectionKind::OneToOne { set: set.to_vec(), j } })
    }

    /// u_{I,J} = Σ_{i∈I} e_i − Σ_{j∈J} e_j with |I| = |J| and I ∩ J = ∅.
    pub fn set_to_set(n: usize, set: &[usize], other: &[usize]) -> Result<Self> {
        if set.len() != other.len() || set.is_empty() {
            return Err(Error::InvalidArgument("index sets must have equal positive size".into()));
        }
        let mut coords = vec![0i64; n];
        for &i in set {
            if i >= n || coords[i] != 0 {
                return Err(Error::InvalidArgument(format!("bad index set {set:?}")));
            }
            coords[i] = 1;
        }
        for &j in other {
            if j >= n || coords[j] != 0 {
                return Err(Error::InvalidArgument(format!("bad index set {other:?}")));
            }
            coords[j] = -1;
        }
        Ok(Self {
            coords,
            kind: DirectionKind::SetToSet { set: set.to_vec(), other: other.to_vec() },
        })
    }

    pub fn add(&self, other: &Direction) -> Vec<i64> {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect()
    }
}

/// A bijection on {0, …, n−1}; `images[i] = σ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    pub images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidArgument(format!("not a permutation: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Self { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// (σ∘τ)(i) = σ(τ(i)).
    pub fn compose(&self, tau: &Permutation) -> Permutation {
        Permutation { images: tau.images.iter().map(|&t| self.images[t]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &s) in self.images.iter().enumerate() {
            images[s] = i;
        }
        Permutation { images }
    }

    /// All n! permutations in lexicographic order of their image lists.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    Multiplicative,
    Logarithmic,
}

/// A rational-valued function on Δ_{n,d}, stored in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    n: usize,
    d: u32,
    pub scale: Scale,
    values: Vec<Rational>,
}

impl Configuration {
    pub fn constant(n: usize, d: u32, scale: Scale, value: Rational) -> Self {
        Self { n, d, scale, values: vec![value; delta_size(n, d)] }
    }

    pub fn zeros(n: usize, d: u32, scale: Scale) -> Self {
        Self::constant(n, d, scale, Rational::zero())
    }

    pub fn from_fn(n: usize, d: u32, scale: Scale, mut f: impl FnMut(&IndexPoint) -> Rational) -> Self {
        let values = enumerate_delta(n, d).iter().map(&mut f).collect();
        Self { n, d, scale, values }
    }

    /// Values listed in canonical order.
    pub fn from_values(n: usize, d: u32, scale: Scale, values: Vec<Rational>) -> Result<Self> {
        if values.len() != delta_size(n, d) {
            return Err(Error::DomainMismatch(format!(
                "expected {} values, got {}",
                delta_size(n, d),
                values.len()
            )));
        }
        Ok(Self { n, d, scale, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn points(&self) -> Vec<IndexPoint> {
        enumerate_delta(self.n, self.d)
    }

    fn check(&self, p: &IndexPoint) -> Result<()> {
        if p.n() != self.n || p.d() != self.d {
            return Err(Error::DomainMismatch(format!(
                "{p} is not in Delta_{{{},{}}}",
                self.n, self.d
            )));
        }
        Ok(())
    }

    pub fn get(&self, p: &IndexPoint) -> Result<&Rational> {
        self.check(p)?;
        Ok(&self.values[p.rank()])
    }

    /// Panicking lookup for points known to be in the domain.
    pub fn at(&self, p: &IndexPoint) -> &Rational {
        self.get(p).expect("index point outside configuration domain")
    }

    pub fn set(&mut self, p: &IndexPoint, v: Rational) -> Result<()> {
        self.check(p)?;
        let r = p.rank();
        self.values[r] = v;
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (IndexPoint, &Rational)> {
        self.points().into_iter().zip(self.values.iter())
    }

    fn same_domain(&self, other: &Configuration) -> Result<()> {
        if self.n != other.n || self.d != other.d || self.scale != other.scale {
            return Err(Error::DomainMismatch("configurations differ in (n, d, scale)".into()));
        }
        Ok(())
    }

    pub fn scaled(&self, t: &Rational) -> Configuration {
        Configuration { values: self.values.iter().map(|v| v * t).collect(), ..self.clone() }
    }
}

/// σc with (σc)(p) = c(p_{σ(1)}, …, p_{σ(n)}).
pub fn act(sigma: &Permutation, c: &Configuration) -> Result<Configuration> {
    if sigma.n() != c.n {
        return Err(Error::DomainMismatch(format!(
            "permutation on {} elements acting on n = {}",
            sigma.n(),
            c.n
        )));
    }
    let values = c.points().iter().map(|p| c.at(&p.permuted(sigma)).clone()).collect();
    Ok(Configuration { values, ..c.clone() })
}

/// True iff v(p) ≤ w(p) for every p.
pub fn dominates(v: &Configuration, w: &Configuration) -> Result<bool> {
    v.same_domain(w)?;
    Ok(v.values.iter().zip(&w.values).all(|(a, b)| a <= b))
}

#[derive(Serialize, Deserialize)]
struct ConfigurationJson {
    n: usize,
    d: u32,
    scale: Scale,
    values: Vec<(IndexPoint, String)>,
}

impl Serialize for Configuration {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConfigurationJson {
            n: self.n,
            d: self.d,
            scale: self.scale,
            values: self.iter().map(|(p, v)| (p, rational::format(v))).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ConfigurationJson::deserialize(d)?;
        if raw.n == 0 || raw.d == 0 {
            return Err(D::Error::custom("n and d must be positive"));
        }
        let mut slots: Vec<Option<Rational>> = vec![None; delta_size(raw.n, raw.d)];
        for (p, v) in raw.values {
            if p.n() != raw.n || p.d() != raw.d {
                return Err(D::Error::custom(format!("{p} outside the declared domain")));
            }
            let slot = &mut slots[p.rank()];
            if slot.is_some() {
                return Err(D::Error::custom(format!("duplicate value for {p}")));
            }
            *slot = Some(rational::parse(&v).map_err(D::Error::custom)?);
        }
        let values = slots
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| D::Error::custom("configuration does not cover the whole domain"))?;
        Ok(Configuration { n: raw.n, d: raw.d, scale: raw.scale, values })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use proptest::prelude::*;

    fn pts(v: &[&[u32]]) -> Vec<IndexPoint> {
        v.iter().map(|c| IndexPoint::new(c.to_vec()).unwrap()).collect()
    }

    #[test]
    fn canonical_order_small() {
        assert_eq!(enumerate_delta(2, 3), pts(&[&[3, 0], &[2, 1], &[1, 2], &[0, 3]]));
        assert_eq!(enumerate_delta(1, 5), pts(&[&[5]]));
        let d33 = enumerate_delta(3, 3);
        assert_eq!(d33.len(), 10);
        assert_eq!(
            d33,
            pts(&[
                &[3, 0, 0], &[2, 1, 0], &[2, 0, 1], &[1, 2, 0], &[1, 1, 1],
                &[1, 0, 2], &[0, 3, 0], &[0, 2, 1], &[0, 1, 2], &[0, 0, 3],
            ])
        );
    }

    #[test]
    fn rank_matches_enumeration() {
        for n in 1..=6 {
            for d in 1..=6 {
                for (i, p) in enumerate_delta(n, d).iter().enumerate() {
                    assert_eq!(p.rank(), i, "{p}");
                }
            }
        }
    }

    #[test]
    fn sizes_and_multinomials() {
        for n in 1..=8usize {
            for d in 1..=8u32 {
                let pts = enumerate_delta(n, d);
                assert_eq!(pts.len() as u64, binomial(n as u64 + d as u64 - 1, d as u64));
                let mut sorted = pts.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted, pts);
            }
        }
        for n in 1..=6usize {
            for d in 1..=6u32 {
                let total: u64 = enumerate_delta(n, d).iter().map(multinomial).sum();
                assert_eq!(total, (n as u64).pow(d));
            }
        }
        let m = |c: &[u32]| multinomial(&IndexPoint::new(c.to_vec()).unwrap());
        assert_eq!(m(&[1, 1, 1]), 6);
        assert_eq!(m(&[3, 0, 0]), 1);
        assert_eq!(m(&[2, 1, 0]), 3);
    }

    #[test]
    fn transposition_moves_value() {
        let p210 = IndexPoint::new(vec![2, 1, 0]).unwrap();
        let p120 = IndexPoint::new(vec![1, 2, 0]).unwrap();
        let mut c = Configuration::zeros(3, 3, Scale::Multiplicative);
        c.set(&p210, int(5)).unwrap();
        let s = act(&Permutation::transposition(3, 0, 1), &c).unwrap();
        assert_eq!(s.at(&p120), &int(5));
        assert_eq!(s.at(&p210), &int(0));
        assert_eq!(act(&Permutation::identity(3), &c).unwrap(), c);
    }

    #[test]
    fn shift_and_directions() {
        let p = IndexPoint::new(vec![1, 1, 1, 3, 0, 0]).unwrap();
        let u = Direction::one_to_one(6, &[0, 1, 2], 3).unwrap();
        assert_eq!(u.coords, vec![1, 1, 1, -3, 0, 0]);
        assert_eq!(p.shift(&u.coords, 1).unwrap().coords(), &[2, 2, 2, 0, 0, 0]);
        assert_eq!(p.shift(&u.coords, -1).unwrap().coords(), &[0, 0, 0, 6, 0, 0]);
        assert!(p.shift(&u.coords, 2).is_none());
        assert!(Direction::set_to_set(4, &[0, 1], &[1, 2]).is_err());
        assert!(Direction::one_to_one(4, &[0, 1], 1).is_err());
    }

    #[test]
    fn configuration_json_round_trip() {
        let c = Configuration::from_fn(2, 2, Scale::Logarithmic, |p| int(p.get(0) as i64));
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(
            s,
            r#"{"n":2,"d":2,"scale":"logarithmic","values":[[[2,0],"2"],[[1,1],"1"],[[0,2],"0"]]}"#
        );
        let back: Configuration = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<Configuration>(
            r#"{"n":2,"d":2,"scale":"logarithmic","values":[[[2,0],"2"]]}"#
        )
        .is_err());
    }

    fn config_strategy(n: usize, d: u32) -> impl Strategy<Value = Configuration> {
        prop::collection::vec(-5i64..6, delta_size(n, d)).prop_map(move |vals| {
            Configuration::from_values(n, d, Scale::Logarithmic, vals.into_iter().map(int).collect())
                .unwrap()
        })
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn act_is_group_action(c in config_strategy(4, 3), s in perm_strategy(4), t in perm_strategy(4)) {
            let lhs = act(&s, &act(&t, &c).unwrap()).unwrap();
            let rhs = act(&s.compose(&t), &c).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(act(&Permutation::identity(4), &c).unwrap(), c);
        }

        #[test]
        fn dominance_is_partial_order(
            a in config_strategy(3, 3),
            b in config_strategy(3, 3),
            c in config_strategy(3, 3),
        ) {
            prop_assert!(dominates(&a, &a).unwrap());
            if dominates(&a, &b).unwrap() && dominates(&b, &a).unwrap() {
                prop_assert_eq!(&a, &b);
            }
            if dominates(&a, &b).unwrap() && dominates(&b, &c).unwrap() {
                prop_assert!(dominates(&a, &c).unwrap());
            }
            // pointwise min/max are always comparable to both
            let lo = Configuration::from_values(3, 3, Scale::Logarithmic,
                a.values().iter().zip(b.values()).map(|(x, y)| x.min(y).clone()).collect()).unwrap();
            prop_assert!(dominates(&lo, &a).unwrap() && dominates(&lo, &b).unwrap());
        }
    }
}
