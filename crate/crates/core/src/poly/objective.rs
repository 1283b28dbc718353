use serde::{Deserialize, Serialize};

use super::{nonneg_coefficients, substitute_shift_power, SparsePolynomial};
use crate::cone::Orbit;
use crate::error::{Error, Result};
use crate::index::{multinomial, Configuration};
use crate::rational;

/// Which prefix sum K_1 + … + K_ell of a d-tuple is being bounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectiveSpec {
    pub d: usize,
    pub ell: usize,
}

impl ObjectiveSpec {
    pub fn new(d: usize, ell: usize) -> Result<Self> {
        if !(2..=3).contains(&d) || ell == 0 || ell > d {
            return Err(Error::InvalidArgument(format!("objective needs d ∈ {{2,3}} and 1 ≤ ell ≤ d, got d={d}, ell={ell}")));
        }
        Ok(ObjectiveSpec { d, ell })
    }
}

/// Σ over p supported on the first ell coordinates of multinomial(p) · m^{v(p)}.
pub fn eval_objective(v: &Configuration, spec: ObjectiveSpec) -> Result<SparsePolynomial> {
    if v.n() != spec.d || v.d() as usize != spec.d {
        return Err(Error::DomainMismatch(format!("objective over Δ_({0},{0}) got a configuration over Δ_({1},{2})", spec.d, v.n(), v.d())));
    }
    let mut out = SparsePolynomial::zero();
    for (p, value) in v.iter() {
        if p.coords()[spec.ell..].iter().all(|&x| x == 0) {
            if value < &rational::int(0) {
                return Err(Error::InvalidArgument(format!("negative exponent {value} at {p}")));
            }
            out.add_term(value.clone(), rational::int(multinomial(&p) as i64));
        }
    }
    Ok(out)
}

/// Proof that `upper(m) ≥ lower(m)` for all m ≥ 1: the difference at m = (1+x)^L has
/// non-negative coefficients.
#[derive(Clone, Debug, Serialize)]
pub struct ShiftCertificate {
    pub upper: SparsePolynomial,
    pub lower: SparsePolynomial,
    pub power: u64,
    /// upper − lower at m = (1+x)^power, as a polynomial in x.
    #[serde(serialize_with = "in_x")]
    pub shifted: SparsePolynomial,
    pub nonneg: bool,
}

fn in_x<S: serde::Serializer>(p: &SparsePolynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.render("x"))
}

pub fn compare_for_m_ge_1(upper: &SparsePolynomial, lower: &SparsePolynomial) -> Result<ShiftCertificate> {
    let diff = upper - lower;
    let power = diff.exponent_denominator_lcm().max(1);
    let shifted = substitute_shift_power(&diff, power)?;
    let nonneg = nonneg_coefficients(&shifted)?;
    Ok(ShiftCertificate { upper: upper.clone(), lower: lower.clone(), power, shifted, nonneg })
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitMaximum {
    pub member: Configuration,
    pub polynomial: SparsePolynomial,
    /// One certificate per other distinct member polynomial.
    pub comparisons: Vec<ShiftCertificate>,
}

/// The member objective dominating every other member for m ≥ 1.
pub fn orbit_max_objective(orbit: &Orbit, spec: ObjectiveSpec) -> Result<OrbitMaximum> {
    let polys: Vec<SparsePolynomial> =
        orbit.members.iter().map(|v| eval_objective(v, spec)).collect::<Result<_>>()?;
    let mut distinct: Vec<&SparsePolynomial> = Vec::new();
    for p in &polys {
        if !distinct.contains(&p) {
            distinct.push(p);
        }
    }
    'candidates: for (idx, cand) in polys.iter().enumerate() {
        if polys[..idx].contains(cand) {
            continue;
        }
        let mut comparisons = Vec::new();
        for other in distinct.iter().filter(|&&o| o != cand) {
            let cert = compare_for_m_ge_1(cand, other)?;
            if !cert.nonneg {
                continue 'candidates;
            }
            comparisons.push(cert);
        }
        return Ok(OrbitMaximum { member: orbit.members[idx].clone(), polynomial: cand.clone(), comparisons });
    }
    Err(Error::Incomparable(format!(
        "no member objective dominates the orbit of {:?} for ell = {}",
        orbit.representative.values(),
        spec.ell
    )))
}
