use std::collections::BTreeMap;

use num_traits::{One, Signed};

use super::{solve, solve_symmetric, stabilizer, DualCertificate, LinearProgram, LpResult, LpStatus};
use crate::cone::{build_af_cone, slice};
use crate::error::{Error, Result};
use crate::index::{enumerate_delta, IndexPoint};
use crate::inequality::{generate, Caps, Family};
use crate::polyhedron::{Constraint, ConstraintSource, HPolyhedron};
use crate::rational::Rational;

/// An LP together with the outcome of solving it.
#[derive(Clone, Debug)]
pub struct BoundLp {
    pub program: LinearProgram,
    pub result: LpResult,
}

impl BoundLp {
    pub fn value(&self) -> Result<&Rational> {
        self.result
            .value
            .as_ref()
            .ok_or_else(|| Error::VerificationFailed(format!("LP status {:?}", self.result.status)))
    }

    pub fn certificate(&self) -> Result<&DualCertificate> {
        self.result
            .certificate
            .as_ref()
            .ok_or_else(|| Error::VerificationFailed(format!("LP status {:?}", self.result.status)))
    }
}

fn check_target(d: usize, target: &IndexPoint) -> Result<()> {
    if target.n() != d || target.d() as usize != d {
        return Err(Error::DomainMismatch(format!("{target} is not in Delta_{{{d},{d}}}")));
    }
    Ok(())
}

fn objective(target: &IndexPoint) -> BTreeMap<IndexPoint, Rational> {
    BTreeMap::from([(target.clone(), Rational::one())])
}

/// max w(target) over AF_d.
pub fn af_lp(d: usize, target: &IndexPoint) -> Result<LinearProgram> {
    check_target(d, target)?;
    let poly = slice(&build_af_cone(d), Rational::one())?;
    Ok(LinearProgram::new(objective(target), poly))
}

fn run(program: LinearProgram, target: &IndexPoint, symmetric: bool) -> Result<BoundLp> {
    let result = if symmetric {
        solve_symmetric(&program, &stabilizer(target))?
    } else {
        solve(&program)?
    };
    Ok(BoundLp { program, result })
}

/// Exact maximum of w(target) over AF_d with its dual certificate.
pub fn max_over_af(d: usize, target: &IndexPoint, symmetric: bool) -> Result<BoundLp> {
    let out = run(af_lp(d, target)?, target, symmetric)?;
    if out.result.status != LpStatus::Optimal {
        return Err(Error::VerificationFailed(format!(
            "max over AF_{d} of w{target} is {:?}",
            out.result.status
        )));
    }
    Ok(out)
}

/// The selected families, mv(p) ≥ 0 for every p, and mv(1) = t.
pub fn squares_lp(
    d: usize,
    target: &IndexPoint,
    t: &Rational,
    families: &[Family],
    caps: &Caps,
) -> Result<LinearProgram> {
    check_target(d, target)?;
    if t.is_negative() {
        return Err(Error::InvalidArgument("mv(1) must be non-negative".into()));
    }
    let mut h = HPolyhedron::new(d, d as u32);
    for f in families {
        h.inequalities.extend(generate(*f, d, caps).iter().map(Constraint::from_monomial));
    }
    for p in enumerate_delta(d, d as u32) {
        h.inequalities.push(Constraint::lower_bound(
            p.clone(),
            Rational::from_integer(0.into()),
            ConstraintSource::NonNegative { p },
        ));
    }
    let h = slice(&h, t.clone())?;
    Ok(LinearProgram::new(objective(target), h))
}

/// max mv(target) under the selected families with full non-negativity and mv(1) = t.
pub fn max_with_squares_caps(
    d: usize,
    target: &IndexPoint,
    t: &Rational,
    families: &[Family],
    caps: &Caps,
    symmetric: bool,
) -> Result<BoundLp> {
    run(squares_lp(d, target, t, families, caps)?, target, symmetric)
}

/// [`max_with_squares_caps`] with the default parameter caps and symmetry reduction.
pub fn max_with_squares(d: usize, target: &IndexPoint, t: &Rational, families: &[Family]) -> Result<BoundLp> {
    max_with_squares_caps(d, target, t, families, &Caps::default_for(d), true)
}
