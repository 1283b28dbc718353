//! Exact linear programming over mv-space with dual certificates.
//!
//! `max c·x s.t. A x ≤ b` is solved through its dual `min b·y s.t. Aᵀy = c, y ≥ 0`,
//! so an optimal basis directly yields the non-negative multipliers that
//! combine the rows into the bound `c·x ≤ value`.

mod af;
pub mod simplex;
mod symmetry;

use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{enumerate_delta, Configuration, IndexPoint, Permutation, Scale};
use crate::inequality::LinearInequality;
use crate::polyhedron::{Constraint, ConstraintSource, HPolyhedron};
use crate::rational::{self, Rational};

pub use af::{af_lp, max_over_af, max_with_squares, max_with_squares_caps, squares_lp, BoundLp};
pub use symmetry::{orbits_of_points, stabilizer};

use simplex::{solve_standard, Outcome, SparseCol};

/// Maximize `objective·x` over a polyhedron, with optional lower bounds on single coordinates.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub objective: BTreeMap<IndexPoint, Rational>,
    pub constraints: HPolyhedron,
    pub lower_bounds: BTreeMap<IndexPoint, Rational>,
}

impl LinearProgram {
    pub fn new(objective: BTreeMap<IndexPoint, Rational>, constraints: HPolyhedron) -> Self {
        LinearProgram { objective, constraints, lower_bounds: BTreeMap::new() }
    }

    /// The row list certificates refer to: inequalities, equality halves, lower bounds.
    pub fn rows(&self) -> Vec<Constraint> {
        let mut rows = self.constraints.rows();
        for (p, v) in &self.lower_bounds {
            rows.push(Constraint::lower_bound(
                p.clone(),
                v.clone(),
                ConstraintSource::LowerBound { p: p.clone() },
            ));
        }
        rows
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiplier {
    pub index: usize,
    pub source: ConstraintSource,
    #[serde(with = "rational::serde_str")]
    pub weight: Rational,
}

/// Non-negative multipliers on cited rows and the inequality they combine to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualCertificate {
    pub multipliers: Vec<Multiplier>,
    pub derived: LinearInequality,
}

#[derive(Clone, Debug, Serialize)]
pub struct LpResult {
    pub status: LpStatus,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub value: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primal: Option<Configuration>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<DualCertificate>,
    pub iterations: usize,
}

mod opt_rational {
    use super::*;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.serialize_str(&rational::format(r)),
            None => s.serialize_none(),
        }
    }
}

type SparseRow = (Vec<(usize, Rational)>, Rational);

struct RawSolution {
    status: LpStatus,
    value: Option<Rational>,
    x: Vec<Rational>,
    y: Vec<Rational>,
    iterations: usize,
}

/// Solves `max c·x s.t. rows` over `nvars` free variables.
fn solve_rows(nvars: usize, c: &[Rational], rows: &[SparseRow]) -> RawSolution {
    let mut cols: Vec<SparseCol> = Vec::with_capacity(rows.len());
    let mut cost = Vec::with_capacity(rows.len());
    for (coeffs, b) in rows {
        cols.push(coeffs.clone());
        cost.push(b.clone());
    }
    let (out, iters) = solve_standard(nvars, &cols, c, &cost);
    match out {
        Outcome::Optimal { y, pi, value } => RawSolution {
            status: LpStatus::Optimal,
            value: Some(value),
            x: pi,
            y,
            iterations: iters,
        },
        Outcome::Unbounded => RawSolution {
            status: LpStatus::Infeasible,
            value: None,
            x: Vec::new(),
            y: Vec::new(),
            iterations: iters,
        },
        Outcome::Infeasible => {
            // dual infeasible: primal is unbounded when feasible, which is decided by
            // boundedness of min b·y over the cone Aᵀy = 0, y ≥ 0
            let zero = vec![Rational::zero(); nvars];
            let (probe, more) = solve_standard(nvars, &cols, &zero, &cost);
            let status = match probe {
                Outcome::Unbounded => LpStatus::Infeasible,
                _ => LpStatus::Unbounded,
            };
            RawSolution { status, value: None, x: Vec::new(), y: Vec::new(), iterations: iters + more }
        }
    }
}

fn row_key(c: &Constraint) -> (Vec<(usize, Rational)>, Rational) {
    (
        c.row.coeffs.iter().map(|(p, v)| (p.rank(), v.clone())).collect(),
        c.row.constant.clone(),
    )
}

fn check_program(lp: &LinearProgram) -> Result<()> {
    let (n, d) = (lp.constraints.n, lp.constraints.d);
    for p in lp.objective.keys().chain(lp.lower_bounds.keys()) {
        if p.n() != n || p.d() != d {
            return Err(Error::DomainMismatch(format!("{p} outside Delta_{{{n},{d}}}")));
        }
    }
    Ok(())
}

/// Exact solve without symmetry reduction.
pub fn solve(lp: &LinearProgram) -> Result<LpResult> {
    check_program(lp)?;
    let (n, d) = (lp.constraints.n, lp.constraints.d);
    let nvars = lp.constraints.dim();
    let rows = lp.rows();
    let sparse: Vec<SparseRow> = rows.iter().map(row_key).collect();
    let mut c = vec![Rational::zero(); nvars];
    for (p, v) in &lp.objective {
        c[p.rank()] = v.clone();
    }
    let raw = solve_rows(nvars, &c, &sparse);
    finish(lp, n, d, &rows, raw.status, raw.value, raw.x, raw.y.into_iter().enumerate().collect(), raw.iterations)
}

/// Exact solve on the quotient by a group of coordinate permutations.
///
/// The constraint system and the objective must be invariant under `group`.
/// The optimum is attained at an invariant point, so variables are merged per
/// orbit; the reduced multipliers are spread evenly over each row's images.
pub fn solve_symmetric(lp: &LinearProgram, group: &[Permutation]) -> Result<LpResult> {
    check_program(lp)?;
    let (n, d) = (lp.constraints.n, lp.constraints.d);
    let points = enumerate_delta(n, d);
    let (orbit_of, norbits) = orbits_of_points(&points, group);
    let rows = lp.rows();

    let mut c_hat = vec![Rational::zero(); norbits];
    let mut c_full = vec![None::<Rational>; norbits];
    for p in &points {
        let v = lp.objective.get(p).cloned().unwrap_or_else(Rational::zero);
        let o = orbit_of[p.rank()];
        match &c_full[o] {
            Some(prev) if *prev != v => {
                return Err(Error::InvalidArgument("objective is not invariant under the group".into()))
            }
            _ => c_full[o] = Some(v.clone()),
        }
        c_hat[o] += v;
    }

    let mut reduced: Vec<SparseRow> = Vec::new();
    let mut representative: Vec<usize> = Vec::new();
    let mut seen: HashMap<SparseRow, usize> = HashMap::new();
    for (idx, c) in rows.iter().enumerate() {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (p, v) in &c.row.coeffs {
            *acc.entry(orbit_of[p.rank()]).or_insert_with(Rational::zero) += v;
        }
        let key: SparseRow = (
            acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
            c.row.constant.clone(),
        );
        if !seen.contains_key(&key) {
            seen.insert(key.clone(), reduced.len());
            reduced.push(key);
            representative.push(idx);
        }
    }

    let raw = solve_rows(norbits, &c_hat, &reduced);
    let x = if raw.status == LpStatus::Optimal {
        points.iter().map(|p| raw.x[orbit_of[p.rank()]].clone()).collect()
    } else {
        Vec::new()
    };

    let mut weights: BTreeMap<usize, Rational> = BTreeMap::new();
    if raw.status == LpStatus::Optimal {
        let full_index: HashMap<SparseRow, usize> = rows
            .iter()
            .enumerate()
            .rev()
            .map(|(i, c)| (row_key(c), i))
            .collect();
        let share = Rational::from_integer((group.len() as i64).into());
        for (r, lambda) in raw.y.iter().enumerate() {
            if lambda.is_zero() {
                continue;
            }
            let base = &rows[representative[r]];
            for sigma in group {
                let img: BTreeMap<IndexPoint, Rational> =
                    base.row.coeffs.iter().map(|(p, v)| (p.permuted(sigma), v.clone())).collect();
                let key: SparseRow =
                    (img.iter().map(|(p, v)| (p.rank(), v.clone())).collect(), base.row.constant.clone());
                let Some(&target) = full_index.get(&key) else {
                    return Err(Error::InvalidArgument(
                        "constraint system is not invariant under the group".into(),
                    ));
                };
                *weights.entry(target).or_insert_with(Rational::zero) += lambda / &share;
            }
        }
    }
    finish(lp, n, d, &rows, raw.status, raw.value, x, weights.into_iter().collect(), raw.iterations)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    lp: &LinearProgram,
    n: usize,
    d: u32,
    rows: &[Constraint],
    status: LpStatus,
    value: Option<Rational>,
    x: Vec<Rational>,
    weights: Vec<(usize, Rational)>,
    iterations: usize,
) -> Result<LpResult> {
    if status != LpStatus::Optimal {
        return Ok(LpResult { status, value: None, primal: None, certificate: None, iterations });
    }
    let value = value.expect("optimal status carries a value");
    let primal = Configuration::from_values(n, d, Scale::Logarithmic, x)?;
    let multipliers: Vec<Multiplier> = weights
        .into_iter()
        .filter(|(_, w)| !w.is_zero())
        .map(|(index, weight)| Multiplier { index, source: rows[index].source.clone(), weight })
        .collect();
    let derived = combine(&multipliers, rows)?;
    let certificate = DualCertificate { multipliers, derived };
    let objective = LinearInequality::new(lp.objective.clone(), value.clone());
    if certificate.derived != objective {
        return Err(Error::VerificationFailed("dual multipliers do not reproduce the objective".into()));
    }
    let primal_value = lp
        .objective
        .iter()
        .fold(Rational::zero(), |acc, (p, v)| acc + v * primal.at(p));
    if primal_value != value || !lp.constraints.contains(&primal)? {
        return Err(Error::VerificationFailed("primal solution fails strong duality".into()));
    }
    for (p, lb) in &lp.lower_bounds {
        if primal.at(p) < lb {
            return Err(Error::VerificationFailed(format!("primal violates the bound at {p}")));
        }
    }
    Ok(LpResult {
        status,
        value: Some(value),
        primal: Some(primal),
        certificate: Some(certificate),
        iterations,
    })
}

fn combine(multipliers: &[Multiplier], system: &[Constraint]) -> Result<LinearInequality> {
    let mut coeffs: BTreeMap<IndexPoint, Rational> = BTreeMap::new();
    let mut constant = Rational::zero();
    for m in multipliers {
        let row = system
            .get(m.index)
            .ok_or_else(|| Error::UnknownReference(format!("row {} does not exist", m.index)))?;
        if row.source != m.source {
            return Err(Error::UnknownReference(format!(
                "row {} has a different provenance than cited",
                m.index
            )));
        }
        for (p, v) in &row.row.coeffs {
            *coeffs.entry(p.clone()).or_insert_with(Rational::zero) += &m.weight * v;
        }
        constant += &m.weight * &row.row.constant;
    }
    Ok(LinearInequality::new(coeffs, constant))
}

/// Recombines the cited rows and compares with the claimed bound.
///
/// Errors when a multiplier cites a missing row or a row with another provenance.
pub fn verify_certificate(cert: &DualCertificate, system: &[Constraint]) -> Result<bool> {
    if cert.multipliers.iter().any(|m| m.weight.is_negative()) {
        return Ok(false);
    }
    let derived = combine(&cert.multipliers, system)?;
    Ok(derived == cert.derived)
}
