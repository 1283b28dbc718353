//! Univariate polynomials with rational exponents, and the certified low-dimensional maxima.

mod objective;
mod verify;

pub use objective::{
    compare_for_m_ge_1, eval_objective, orbit_max_objective, ObjectiveSpec, OrbitMaximum, ShiftCertificate,
};
pub use verify::{verify_dim2, verify_dim3, Conclusion, ProofStep, StepKind, TheoremReport};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Σ c_e · m^e over finitely many non-negative rational exponents e.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    terms: BTreeMap<Rational, Rational>,
}

impl SparsePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Rational::zero())
    }

    pub fn monomial(coeff: Rational, exp: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// Σ coeffs[k] m^k.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(rational::int(k as i64), rational::int(c));
        }
        p
    }

    /// (m + a)^k expanded.
    pub fn shifted_power(a: i64, k: u32) -> Self {
        let base = Self::from_coeffs(&[a, 1]);
        (0..k).fold(Self::constant(Rational::one()), |acc, _| &acc * &base)
    }

    pub fn add_term(&mut self, exp: Rational, coeff: Rational) {
        assert!(!exp.is_negative(), "exponents are non-negative");
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn terms(&self) -> &BTreeMap<Rational, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &Rational) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(|e| e.is_integer())
    }

    /// Least L with L·e integral for every exponent e.
    pub fn exponent_denominator_lcm(&self) -> u64 {
        let l = rational::lcm_of_denominators(self.terms.keys());
        u64::try_from(l).expect("small denominators")
    }

    /// Value at m = t^L, exact whenever every exponent times L is an integer.
    pub fn eval_at_power(&self, t: &Rational, l: u64) -> Result<Rational> {
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let scaled = e * rational::int(l as i64);
            if !scaled.is_integer() {
                return Err(Error::InvalidArgument(format!("m = t^{l} does not clear exponent {e}")));
            }
            let k: i64 = scaled.to_integer().try_into().expect("small exponent");
            total += c * rational::pow(t, k);
        }
        Ok(total)
    }

    /// Value at an integer-exponent point m.
    pub fn eval(&self, m: &Rational) -> Result<Rational> {
        self.eval_at_power(m, 1)
    }

    /// Renders with the given variable name, highest exponent first.
    pub fn render(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let power = if e.is_zero() {
                String::new()
            } else if e.is_one() {
                var.to_string()
            } else if e.is_integer() {
                format!("{var}^{e}")
            } else {
                format!("{var}^({e})")
            };
            match (abs.is_one(), power.is_empty()) {
                (true, false) => out.push_str(&power),
                (_, true) => out.push_str(&rational::format(&abs)),
                (false, false) => out.push_str(&format!("{}*{power}", rational::format(&abs))),
            }
        }
        out
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("m"))
    }
}

impl Serialize for SparsePolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(String, String)> =
            self.terms.iter().map(|(e, c)| (rational::format(e), rational::format(c))).collect();
        let mut st = s.serialize_struct("SparsePolynomial", 2)?;
        st.serialize_field("text", &self.to_string())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn neg(self) -> SparsePolynomial {
        SparsePolynomial { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Sub for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self + &(-rhs)
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// poly(m) with m = (1+x)^L, expanded in x.
pub fn substitute_shift_power(poly: &SparsePolynomial, l: u64) -> Result<SparsePolynomial> {
    if l == 0 {
        return Err(Error::InvalidArgument("the substitution power must be positive".into()));
    }
    let mut out = SparsePolynomial::zero();
    for (e, c) in &poly.terms {
        let scaled = e * rational::int(l as i64);
        if !scaled.is_integer() {
            return Err(Error::InvalidArgument(format!("L = {l} does not clear the exponent {e}")));
        }
        let n: u64 = scaled.to_integer().try_into().expect("small exponent");
        // binomial row of (1+x)^n
        let mut b = BigInt::one();
        for k in 0..=n {
            out.add_term(rational::int(k as i64), c * Rational::from_integer(b.clone()));
            b = b * BigInt::from(n - k) / BigInt::from(k + 1);
        }
    }
    Ok(out)
}

/// Whether every coefficient is non-negative; requires integer exponents.
pub fn nonneg_coefficients(poly: &SparsePolynomial) -> Result<bool> {
    if !poly.has_integer_exponents() {
        return Err(Error::InvalidArgument(format!("fractional exponents in {poly}")));
    }
    Ok(poly.terms.values().all(|c| !c.is_negative()))
}
