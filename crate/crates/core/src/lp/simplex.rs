//! Revised simplex over exact rationals for `min cost·y  s.t.  A y = rhs, y ≥ 0`.
//!
//! Columns are sparse; the basis inverse is kept dense and updated by
//! elementary row operations. Pricing is Dantzig's rule, falling back to
//! Bland's rule after a degenerate pivot until the objective strictly improves.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

pub type SparseCol = Vec<(usize, Rational)>;

#[derive(Debug)]
pub enum Outcome {
    Optimal {
        /// Values of the structural variables.
        y: Vec<Rational>,
        /// Simplex multipliers in the caller's row coordinates.
        pi: Vec<Rational>,
        value: Rational,
    },
    /// Phase 1 ended with positive infeasibility.
    Infeasible,
    /// Phase 2 found an improving ray.
    Unbounded,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    One,
    Two,
}

struct Revised<'a> {
    m: usize,
    n: usize,
    cols: Vec<SparseCol>,
    cost: &'a [Rational],
    binv: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    basic: Vec<bool>,
    xb: Vec<Rational>,
    pub iterations: usize,
}

impl<'a> Revised<'a> {
    fn var_cost(&self, j: usize, phase: Phase) -> Rational {
        match (phase, j < self.n) {
            (Phase::One, true) | (Phase::Two, false) => Rational::zero(),
            (Phase::One, false) => Rational::one(),
            (Phase::Two, true) => self.cost[j].clone(),
        }
    }

    fn multipliers(&self, phase: Phase) -> Vec<Rational> {
        let mut pi = vec![Rational::zero(); self.m];
        for (i, &b) in self.basis.iter().enumerate() {
            let c = self.var_cost(b, phase);
            if c.is_zero() {
                continue;
            }
            for (k, v) in self.binv[i].iter().enumerate() {
                if !v.is_zero() {
                    pi[k] += &c * v;
                }
            }
        }
        pi
    }

    fn ftran(&self, j: usize) -> Vec<Rational> {
        if j >= self.n {
            return self.binv.iter().map(|row| row[j - self.n].clone()).collect();
        }
        let col = &self.cols[j];
        self.binv
            .iter()
            .map(|row| {
                col.iter().fold(Rational::zero(), |acc, (k, a)| {
                    if row[*k].is_zero() {
                        acc
                    } else {
                        acc + &row[*k] * a
                    }
                })
            })
            .collect()
    }

    fn pivot(&mut self, r: usize, q: usize, d: &[Rational]) {
        let inv = d[r].recip();
        for v in self.binv[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.xb[r] *= &inv;
        let pivot_row = self.binv[r].clone();
        let xr = self.xb[r].clone();
        for i in 0..self.m {
            if i == r || d[i].is_zero() {
                continue;
            }
            let f = &d[i];
            for (v, p) in self.binv[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= f * p;
                }
            }
            self.xb[i] -= f * &xr;
        }
        self.basic[self.basis[r]] = false;
        self.basic[q] = true;
        self.basis[r] = q;
        self.iterations += 1;
    }

    /// Runs simplex iterations; returns false when unbounded.
    fn run(&mut self, phase: Phase) -> bool {
        let mut bland = false;
        loop {
            let pi = self.multipliers(phase);
            let mut entering: Option<(usize, Rational)> = None;
            for j in 0..self.n {
                if self.basic[j] {
                    continue;
                }
                let mut r = self.var_cost(j, phase);
                for (k, a) in &self.cols[j] {
                    if !pi[*k].is_zero() {
                        r -= &pi[*k] * a;
                    }
                }
                if r.is_negative() {
                    if bland {
                        entering = Some((j, r));
                        break;
                    }
                    if entering.as_ref().is_none_or(|(_, best)| r < *best) {
                        entering = Some((j, r));
                    }
                }
            }
            let Some((q, _)) = entering else {
                return true;
            };
            let d = self.ftran(q);
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.m {
                let di = &d[i];
                if di.is_zero() {
                    continue;
                }
                let ratio = if phase == Phase::Two && self.basis[i] >= self.n {
                    // artificial kept in the basis of a redundant row: must stay at zero
                    Rational::zero()
                } else if di.is_positive() {
                    &self.xb[i] / di
                } else {
                    continue;
                };
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, ratio)) = leave else {
                return false;
            };
            bland = ratio.is_zero();
            self.pivot(r, q, &d);
        }
    }

    /// Pivots basic artificials out wherever a structural column allows it.
    fn drive_out_artificials(&mut self) {
        for r in 0..self.m {
            if self.basis[r] < self.n {
                continue;
            }
            let row = &self.binv[r];
            let q = (0..self.n).find(|&j| {
                !self.basic[j]
                    && !self.cols[j]
                        .iter()
                        .fold(Rational::zero(), |acc, (k, a)| acc + &row[*k] * a)
                        .is_zero()
            });
            if let Some(q) = q {
                let d = self.ftran(q);
                self.pivot(r, q, &d);
            }
        }
    }
}

/// Solves `min cost·y s.t. Σ_j cols[j]·y_j = rhs, y ≥ 0` with `m` rows.
pub fn solve_standard(m: usize, cols: &[SparseCol], rhs: &[Rational], cost: &[Rational]) -> (Outcome, usize) {
    let n = cols.len();
    let signs: Vec<bool> = rhs.iter().map(|b| b.is_negative()).collect();
    let flipped: Vec<SparseCol> = cols
        .iter()
        .map(|c| {
            c.iter()
                .filter(|(_, a)| !a.is_zero())
                .map(|(k, a)| (*k, if signs[*k] { -a.clone() } else { a.clone() }))
                .collect()
        })
        .collect();
    let mut binv = vec![vec![Rational::zero(); m]; m];
    for (i, row) in binv.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    let mut basic = vec![false; n + m];
    for b in basic.iter_mut().skip(n) {
        *b = true;
    }
    let mut s = Revised {
        m,
        n,
        cols: flipped,
        cost,
        binv,
        basis: (n..n + m).collect(),
        basic,
        xb: rhs.iter().map(|b| b.abs()).collect(),
        iterations: 0,
    };
    s.run(Phase::One);
    let infeas = s
        .basis
        .iter()
        .zip(&s.xb)
        .filter(|(&b, _)| b >= n)
        .fold(Rational::zero(), |acc, (_, v)| acc + v);
    if infeas.is_positive() {
        return (Outcome::Infeasible, s.iterations);
    }
    s.drive_out_artificials();
    if !s.run(Phase::Two) {
        return (Outcome::Unbounded, s.iterations);
    }
    let mut y = vec![Rational::zero(); n];
    for (i, &b) in s.basis.iter().enumerate() {
        if b < n {
            y[b] = s.xb[i].clone();
        }
    }
    let value = y.iter().zip(cost).fold(Rational::zero(), |acc, (v, c)| acc + v * c);
    let pi = s
        .multipliers(Phase::Two)
        .into_iter()
        .zip(&signs)
        .map(|(p, &neg)| if neg { -p } else { p })
        .collect();
    let iters = s.iterations;
    (Outcome::Optimal { y, pi, value }, iters)
}
