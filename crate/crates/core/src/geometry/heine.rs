use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::mixed::{mixed_volume, BodyTuple, TupleRole};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{self, Rational};

/// Pairwise normalized mixed areas of three planar bodies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeineMatrix {
    #[serde(with = "matrix_serde")]
    pub entries: [[Rational; 3]; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeineReport {
    pub matrix: HeineMatrix,
    #[serde(with = "rational::serde_str")]
    pub det: Rational,
    /// Principal 2×2 minors on {1,2}, {1,3}, {2,3}.
    #[serde(with = "rational::serde_vec")]
    pub minors: Vec<Rational>,
    pub satisfied: bool,
}

impl HeineMatrix {
    pub fn new(entries: [[Rational; 3]; 3]) -> Result<Self> {
        for i in 0..3 {
            for j in 0..3 {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InvalidArgument("Heine matrix must be symmetric".into()));
                }
            }
        }
        Ok(HeineMatrix { entries })
    }

    pub fn from_ints(m: [[i64; 3]; 3]) -> Result<Self> {
        Self::new(m.map(|row| row.map(rational::int)))
    }

    fn minor(&self, a: usize, b: usize) -> Rational {
        let e = &self.entries;
        &e[a][a] * &e[b][b] - &e[a][b] * &e[b][a]
    }

    /// Evaluates determinant and minors against the sign conditions.
    pub fn check(&self) -> HeineReport {
        let det = linalg::det(&self.entries.iter().map(|r| r.to_vec()).collect());
        let minors = vec![self.minor(0, 1), self.minor(0, 2), self.minor(1, 2)];
        let satisfied = det >= Rational::zero() && minors.iter().all(|m| *m <= Rational::zero());
        HeineReport { matrix: self.clone(), det, minors, satisfied }
    }
}

/// Builds the mixed-area matrix of three planar bodies and checks it.
pub fn heine_check(t: &BodyTuple) -> Result<HeineReport> {
    if t.dim() != 2 || t.len() != 3 {
        return Err(Error::InvalidArgument("Heine check needs three bodies in the plane".into()));
    }
    let mut m: [[Rational; 3]; 3] = Default::default();
    for i in 0..3 {
        for j in i..3 {
            let pair = BodyTuple::new(TupleRole::Heine, vec![t.bodies[i].clone(), t.bodies[j].clone()])?;
            let v = mixed_volume(&pair)?;
            m[i][j] = v.clone();
            m[j][i] = v;
        }
    }
    Ok(HeineMatrix::new(m)?.check())
}

mod matrix_serde {
    use super::Rational;
    use crate::rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &[[Rational; 3]; 3], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(rational::format).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[[Rational; 3]; 3], D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
            return Err(serde::de::Error::custom("expected a 3x3 matrix"));
        }
        let mut out: [[Rational; 3]; 3] = Default::default();
        for (i, r) in rows.iter().enumerate() {
            for (j, s) in r.iter().enumerate() {
                out[i][j] = rational::parse(s).map_err(serde::de::Error::custom)?;
            }
        }
        Ok(out)
    }
}
