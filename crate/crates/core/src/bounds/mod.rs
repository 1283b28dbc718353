//! Explicit bound chains for one mixed volume in terms of mv(1).
//!
//! All bounds live in logarithmic coordinates mv = log2 MV and are affine in mv(1):
//! `mv(p) ≤ slope · mv(1) + constant`.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{binomial, Configuration, Direction, DirectionKind, IndexPoint, Permutation, Scale};
use crate::inequality::{check_config, gen_af, gen_square, CheckReport};
use crate::rational::{self, Rational};

/// Sequence of decreasing points from 1 to p whose i-th entry has maximum i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissiblePath {
    pub steps: Vec<IndexPoint>,
    pub step_vectors: Vec<Direction>,
}

/// Sorts p into non-increasing order; `q = p.permuted(σ)` is the sorted point.
pub fn sort_desc(p: &IndexPoint) -> (IndexPoint, Permutation) {
    let mut order: Vec<usize> = (0..p.n()).collect();
    order.sort_by(|&a, &b| p.get(b).cmp(&p.get(a)).then(a.cmp(&b)));
    let sigma = Permutation::new(order).expect("sorting gives a permutation");
    (p.permuted(&sigma), sigma)
}

/// Predecessor of a sorted p with max(p) ≥ 2: lower the leading block of maxima by one
/// and append as many ones after the last positive entry.
fn predecessor(p: &IndexPoint) -> (IndexPoint, Direction) {
    let c = p.coords();
    let n = c.iter().take_while(|&&x| x == c[0]).count();
    let l = c.iter().rposition(|&x| x > 0).map_or(0, |i| i + 1);
    let set: Vec<usize> = (0..n).collect();
    let other: Vec<usize> = (l..l + n).collect();
    let v = Direction::set_to_set(c.len(), &set, &other).expect("block fits since Σp ≥ l + n");
    let prev = p.shift(&v.coords, -1).expect("predecessor stays in the simplex");
    (prev, v)
}

pub fn admissible_path(p: &IndexPoint) -> Result<AdmissiblePath> {
    if !p.is_sorted_desc() {
        return Err(Error::InvalidArgument(format!("admissible paths start from a sorted point, got {p}")));
    }
    if p.n() != p.d() as usize {
        return Err(Error::DomainMismatch(format!("admissible paths live in Δ_(d,d), got {p}")));
    }
    let mut steps = vec![p.clone()];
    let mut step_vectors = Vec::new();
    let mut cur = p.clone();
    while cur.max_entry() > 1 {
        let (prev, v) = predecessor(&cur);
        steps.push(prev.clone());
        step_vectors.push(v);
        cur = prev;
    }
    steps.reverse();
    step_vectors.reverse();
    Ok(AdmissiblePath { steps, step_vectors })
}

/// Whether b − a is an admissible vector at a: Σ_{i≤n} e_i − Σ_{l<j≤l+n} e_j with
/// l ≥ n ≥ 1, l + n ≤ d and the first n entries of a equal.
pub fn is_admissible_step(a: &IndexPoint, b: &IndexPoint) -> bool {
    let d = a.n();
    if b.n() != d {
        return false;
    }
    let diff: Vec<i64> = (0..d).map(|i| b.get(i) as i64 - a.get(i) as i64).collect();
    let n = diff.iter().take_while(|&&x| x == 1).count();
    let Some(l) = diff.iter().position(|&x| x == -1) else { return false };
    n >= 1
        && l >= n
        && l + n <= d
        && (0..n).all(|i| a.get(i) == a.get(0))
        && diff.iter().enumerate().all(|(i, &x)| {
            x == if i < n {
                1
            } else if (l..l + n).contains(&i) {
                -1
            } else {
                0
            }
        })
}

/// C(⌊d/2⌋, 2), the additive unit of a square-inequality step.
pub fn step_constant(d: usize) -> Rational {
    rational::int(binomial((d / 2) as u64, 2) as i64)
}

/// Coefficients of mv(a+v) ≤ factor · mv(a) + additive for a set-to-set step v = u_{I,J}.
pub fn step_bound(a: &IndexPoint, v: &Direction) -> Result<(Rational, Rational)> {
    let DirectionKind::SetToSet { set, .. } = &v.kind else {
        return Err(Error::InvalidArgument("step bounds need a set-to-set direction".into()));
    };
    if a.shift(&v.coords, 1).is_none() || a.shift(&v.coords, -1).is_none() {
        return Err(Error::InvalidArgument(format!("{a} ± step leaves the simplex")));
    }
    let mu = set.iter().map(|&i| a.get(i)).min().expect("non-empty set") as i64;
    let factor = rational::ratio(mu + 1, mu);
    let additive = rational::int(mu + 1) * step_constant(a.d() as usize);
    Ok((factor, additive))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLink {
    pub from: IndexPoint,
    #[serde(rename = "I", with = "one_based")]
    pub set: Vec<usize>,
    #[serde(rename = "J", with = "one_based")]
    pub other: Vec<usize>,
    pub mu: u32,
}

/// mv(target) ≤ slope · mv(1) + constant, derived along an admissible path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub target: IndexPoint,
    /// Sorted point the chain ends at; equals `target` up to a coordinate permutation.
    pub sorted: IndexPoint,
    #[serde(with = "rational::serde_str")]
    pub slope: Rational,
    #[serde(with = "rational::serde_str")]
    pub constant: Rational,
    pub chain: Vec<ChainLink>,
}

impl BoundCertificate {
    /// Recomposes the chain from scratch and returns its (slope, constant).
    pub fn replay(&self) -> Result<(Rational, Rational)> {
        let d = self.sorted.n();
        let mut slope = Rational::one();
        let mut constant = rational::int(0);
        let mut cur = IndexPoint::ones(d);
        for link in &self.chain {
            if link.from != cur {
                return Err(Error::VerificationFailed(format!("chain breaks at {}", link.from)));
            }
            let v = Direction::set_to_set(d, &link.set, &link.other)?;
            let next = cur.shift(&v.coords, 1).ok_or_else(|| {
                Error::VerificationFailed(format!("step from {cur} leaves the simplex"))
            })?;
            if !is_admissible_step(&cur, &next) {
                return Err(Error::VerificationFailed(format!("step {cur} → {next} is not admissible")));
            }
            let (factor, additive) = step_bound(&cur, &v)?;
            if factor != rational::ratio(link.mu as i64 + 1, link.mu as i64) {
                return Err(Error::VerificationFailed(format!("recorded mu {} is wrong at {cur}", link.mu)));
            }
            slope = &factor * slope;
            constant = &factor * constant + additive;
            cur = next;
        }
        if cur != self.sorted {
            return Err(Error::VerificationFailed(format!("chain ends at {cur}, not {}", self.sorted)));
        }
        let mut sorted_target = self.target.coords().to_vec();
        sorted_target.sort_unstable_by(|a, b| b.cmp(a));
        if sorted_target != self.sorted.coords() {
            return Err(Error::VerificationFailed("sorted point does not match the target".into()));
        }
        Ok((slope, constant))
    }

    pub fn verify(&self) -> Result<bool> {
        let (s, c) = self.replay()?;
        Ok(s == self.slope && c == self.constant)
    }

    /// The bound evaluated at mv(1) = t.
    pub fn at(&self, t: &Rational) -> Rational {
        &self.slope * t + &self.constant
    }
}

/// (max p, max p · (max p − 1) · C(⌊d/2⌋, 2)).
pub fn closed_form_sq(p: &IndexPoint) -> (Rational, Rational) {
    let m = p.max_entry() as i64;
    (rational::int(m), rational::int(m * (m - 1)) * step_constant(p.d() as usize))
}

pub fn certify_sq_bound(p: &IndexPoint) -> Result<BoundCertificate> {
    let (sorted, _) = sort_desc(p);
    let path = admissible_path(&sorted)?;
    let mut slope = Rational::one();
    let mut constant = rational::int(0);
    let mut chain = Vec::new();
    for (a, v) in path.steps.iter().zip(&path.step_vectors) {
        let (factor, additive) = step_bound(a, v)?;
        let DirectionKind::SetToSet { set, other } = &v.kind else { unreachable!() };
        let mu = set.iter().map(|&i| a.get(i)).min().unwrap();
        slope = &factor * slope;
        constant = &factor * constant + additive;
        chain.push(ChainLink { from: a.clone(), set: set.clone(), other: other.clone(), mu });
    }
    let cert = BoundCertificate { target: p.clone(), sorted, slope, constant, chain };
    let expected = closed_form_sq(p);
    if (cert.slope.clone(), cert.constant.clone()) != expected {
        return Err(Error::VerificationFailed(format!(
            "chain for {p} composes to ({}, {}) instead of ({}, {})",
            cert.slope, cert.constant, expected.0, expected.1
        )));
    }
    Ok(cert)
}

/// Slope of the bound mv(p) ≤ mv(1) · ∏_{p_i > 0} p_i.
pub fn af_point_bound(p: &IndexPoint) -> Rational {
    rational::int(p.coords().iter().filter(|&&x| x > 0).map(|&x| x as i64).product())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinkMethod {
    Af,
    Square,
}

impl std::str::FromStr for MinkMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "af" => Ok(MinkMethod::Af),
            "square" | "sq" => Ok(MinkMethod::Square),
            _ => Err(Error::Parse(format!("unknown method '{s}', expected af or square"))),
        }
    }
}

/// Vol(K_1 + … + K_d) ≤ coefficient · m^exponent whenever MV(1) = m.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinkBound {
    pub d: usize,
    pub method: MinkMethod,
    #[serde(with = "rational::serde_str")]
    pub coefficient: Rational,
    pub exponent: u64,
}

impl MinkBound {
    pub fn value(&self, m: &Rational) -> Rational {
        &self.coefficient * rational::pow(m, self.exponent as i64)
    }
}

/// Largest product of a partition of d: 3^q 2^r with d = 3q + 2r and r ≤ 2.
pub fn max_part_product(d: usize) -> u64 {
    let r = (0..=2).find(|&r| 2 * r <= d && (d - 2 * r) % 3 == 0).expect("d ≥ 2");
    3u64.pow(((d - 2 * r) / 3) as u32) * 2u64.pow(r as u32)
}

pub fn mink_bound_form(d: usize, method: MinkMethod) -> Result<MinkBound> {
    if d < 2 {
        return Err(Error::InvalidArgument("Minkowski-sum bounds need d ≥ 2".into()));
    }
    let dd = rational::pow(&rational::int(d as i64), d as i64);
    let (coefficient, exponent) = match method {
        MinkMethod::Af => (dd, max_part_product(d)),
        MinkMethod::Square => {
            let twos = (d * (d - 1)) as u64 * binomial((d / 2) as u64, 2);
            (dd * rational::pow2(twos as i64), d as u64)
        }
    };
    Ok(MinkBound { d, method, coefficient, exponent })
}

pub fn mink_bound(d: usize, m: &Rational, method: MinkMethod) -> Result<Rational> {
    if *m < Rational::one() {
        return Err(Error::InvalidArgument("Minkowski-sum bounds need m ≥ 1".into()));
    }
    Ok(mink_bound_form(d, method)?.value(m))
}

/// Multiplicative configuration with value 3 at 1 and 1 elsewhere.
pub fn counterexample_config(d: usize) -> Result<Configuration> {
    if d < 3 {
        return Err(Error::InvalidArgument("the counterexample needs d ≥ 3".into()));
    }
    let ones = IndexPoint::ones(d);
    Ok(Configuration::from_fn(d, d as u32, Scale::Multiplicative, |p| {
        rational::int(if *p == ones { 3 } else { 1 })
    }))
}

/// The four points of the witnessing square inequality, evaluated directly.
#[derive(Clone, Debug, Serialize)]
pub struct SquareWitness {
    pub lhs_points: [IndexPoint; 2],
    pub rhs_points: [IndexPoint; 2],
    #[serde(with = "rational::serde_str")]
    pub lhs: Rational,
    #[serde(with = "rational::serde_str")]
    pub rhs: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub d: usize,
    pub config: Configuration,
    pub af: CheckReport,
    pub square: CheckReport,
    pub witness: SquareWitness,
}

impl CounterexampleReport {
    /// AF holds everywhere while the square inequality fails, by both routes.
    pub fn confirmed(&self) -> bool {
        self.af.ok() && !self.square.ok() && self.witness.lhs > self.witness.rhs
    }
}

pub fn counterexample_report(d: usize) -> Result<CounterexampleReport> {
    let config = counterexample_config(d)?;
    let af = check_config(&config, &gen_af(d))?;
    let square = check_config(&config, &gen_square(d))?;
    let point = |head: [u32; 3]| {
        let mut c = head.to_vec();
        c.extend(std::iter::repeat(1).take(d - 3));
        IndexPoint::new(c)
    };
    let lhs_points = [point([3, 0, 0])?, IndexPoint::ones(d)];
    let rhs_points = [point([2, 1, 0])?, point([2, 0, 1])?];
    let lhs = config.get(&lhs_points[0])? * config.get(&lhs_points[1])?;
    let rhs = rational::int(2) * config.get(&rhs_points[0])? * config.get(&rhs_points[1])?;
    let witness = SquareWitness { lhs_points, rhs_points, lhs, rhs };
    Ok(CounterexampleReport { d, config, af, square, witness })
}

mod one_based {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[usize], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|i| i + 1).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<usize>, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        v.into_iter()
            .map(|i| i.checked_sub(1).ok_or_else(|| serde::de::Error::custom("indices are 1-based")))
            .collect()
    }
}
