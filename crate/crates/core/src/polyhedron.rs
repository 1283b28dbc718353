//! H-representations over Δ_{n,d}-indexed variables, with per-row provenance.

use std::collections::BTreeMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{enumerate_delta, Configuration, IndexPoint};
use crate::inequality::{linearize, Family, LinearInequality, MonomialInequality, Provenance};
use crate::rational::{self, Rational};

/// Where a constraint row comes from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstraintSource {
    Inequality { family: Family, provenance: Provenance },
    /// mv(d·e_i) ≥ 0.
    Corner { p: IndexPoint },
    /// mv(p) ≥ 0 for a non-corner p.
    NonNegative { p: IndexPoint },
    /// One half of an equality, as `≤` (upper) or `≥` (lower).
    SliceUpper { p: IndexPoint },
    SliceLower { p: IndexPoint },
    /// mv(p) ≥ value.
    LowerBound { p: IndexPoint },
    /// Row named by the caller.
    Named { label: String },
}

impl ConstraintSource {
    /// Applies σ to the points and index parameters of the source.
    pub fn permuted(&self, sigma: &crate::index::Permutation) -> ConstraintSource {
        match self {
            ConstraintSource::Inequality { family, provenance } => {
                // reuse the inequality permutation for the provenance record
                let dummy = MonomialInequality {
                    family: *family,
                    provenance: provenance.clone(),
                    lhs: BTreeMap::new(),
                    rhs: BTreeMap::new(),
                    log2_const: 0,
                };
                ConstraintSource::Inequality {
                    family: *family,
                    provenance: dummy.permuted(sigma).provenance,
                }
            }
            ConstraintSource::Corner { p } => ConstraintSource::Corner { p: p.permuted(sigma) },
            ConstraintSource::NonNegative { p } => ConstraintSource::NonNegative { p: p.permuted(sigma) },
            ConstraintSource::SliceUpper { p } => ConstraintSource::SliceUpper { p: p.permuted(sigma) },
            ConstraintSource::SliceLower { p } => ConstraintSource::SliceLower { p: p.permuted(sigma) },
            ConstraintSource::LowerBound { p } => ConstraintSource::LowerBound { p: p.permuted(sigma) },
            ConstraintSource::Named { label } => ConstraintSource::Named { label: label.clone() },
        }
    }
}

/// One `≤` row with its provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    #[serde(flatten)]
    pub row: LinearInequality,
    pub source: ConstraintSource,
}

impl Constraint {
    pub fn from_monomial(mi: &MonomialInequality) -> Self {
        Constraint {
            row: linearize(mi),
            source: ConstraintSource::Inequality { family: mi.family, provenance: mi.provenance.clone() },
        }
    }

    /// −x(p) ≤ −value.
    pub fn lower_bound(p: IndexPoint, value: Rational, source: ConstraintSource) -> Self {
        let coeffs = BTreeMap::from([(p, -Rational::one())]);
        Constraint { row: LinearInequality::new(coeffs, -value), source }
    }

    /// x(p) ≤ value.
    pub fn upper_bound(p: IndexPoint, value: Rational, source: ConstraintSource) -> Self {
        let coeffs = BTreeMap::from([(p, Rational::one())]);
        Constraint { row: LinearInequality::new(coeffs, value), source }
    }
}

/// Σ coeffs(p)·x(p) = rhs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equality {
    #[serde(with = "crate::inequality::rational_point_map")]
    pub coeffs: BTreeMap<IndexPoint, Rational>,
    #[serde(with = "rational::serde_str")]
    pub rhs: Rational,
    pub point: IndexPoint,
}

impl Equality {
    /// x(p) = value.
    pub fn pin(p: IndexPoint, value: Rational) -> Self {
        Equality { coeffs: BTreeMap::from([(p.clone(), Rational::one())]), rhs: value, point: p }
    }

    /// The `≤` and `≥` halves as rows.
    pub fn as_rows(&self) -> [Constraint; 2] {
        let up = LinearInequality::new(self.coeffs.clone(), self.rhs.clone());
        let down = LinearInequality::new(
            self.coeffs.iter().map(|(p, v)| (p.clone(), -v.clone())).collect(),
            -self.rhs.clone(),
        );
        [
            Constraint { row: up, source: ConstraintSource::SliceUpper { p: self.point.clone() } },
            Constraint { row: down, source: ConstraintSource::SliceLower { p: self.point.clone() } },
        ]
    }
}

/// {x ∈ R^{Δ_{n,d}} : every inequality and equality holds}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPolyhedron {
    pub n: usize,
    pub d: u32,
    pub inequalities: Vec<Constraint>,
    pub equalities: Vec<Equality>,
}

impl HPolyhedron {
    pub fn new(n: usize, d: u32) -> Self {
        HPolyhedron { n, d, inequalities: Vec::new(), equalities: Vec::new() }
    }

    pub fn ambient(&self) -> Vec<IndexPoint> {
        enumerate_delta(self.n, self.d)
    }

    pub fn dim(&self) -> usize {
        crate::index::delta_size(self.n, self.d)
    }

    pub fn push(&mut self, c: Constraint) -> Result<()> {
        self.check_points(c.row.coeffs.keys())?;
        self.inequalities.push(c);
        Ok(())
    }

    pub fn push_equality(&mut self, e: Equality) -> Result<()> {
        self.check_points(e.coeffs.keys())?;
        self.equalities.push(e);
        Ok(())
    }

    fn check_points<'a>(&self, mut pts: impl Iterator<Item = &'a IndexPoint>) -> Result<()> {
        if let Some(p) = pts.find(|p| p.n() != self.n || p.d() != self.d) {
            return Err(Error::DomainMismatch(format!(
                "{p} outside Delta_{{{},{}}}",
                self.n, self.d
            )));
        }
        Ok(())
    }

    /// All constraints as `≤` rows: inequalities first, then both halves of each equality.
    pub fn rows(&self) -> Vec<Constraint> {
        let mut out = self.inequalities.clone();
        for e in &self.equalities {
            out.extend(e.as_rows());
        }
        out
    }

    pub fn contains(&self, x: &Configuration) -> Result<bool> {
        for c in &self.inequalities {
            if !c.row.satisfied_by(x)? {
                return Ok(false);
            }
        }
        for e in &self.equalities {
            let mut acc = Rational::from_integer(0.into());
            for (p, a) in &e.coeffs {
                acc += a * x.get(p)?;
            }
            if acc != e.rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
