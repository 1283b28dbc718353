use serde::Serialize;

use crate::rational::{int, Rational};

#[derive(Clone, Debug, Serialize)]
pub struct SequenceReport {
    pub hypothesis_holds: bool,
    /// Interior positions i where ½r_{i−1} + ½r_{i+1} ≤ r_i + C fails.
    pub hypothesis_failures: Vec<usize>,
    /// Conclusions that failed although the hypothesis held. Always empty for a correct checker.
    pub conclusion_failures: Vec<String>,
    pub conclusions_checked: usize,
}

/// Checks the weak-concavity hypothesis on `r` and, if it holds, every derived conclusion.
pub fn verify_weak_concave_sequence(r: &[Rational], c: &Rational) -> SequenceReport {
    assert!(r.len() >= 2, "sequence needs at least two terms");
    let n = r.len() - 1;
    let half = Rational::new(1.into(), 2.into());
    let hypothesis_failures: Vec<usize> = (1..n)
        .filter(|&i| &half * (&r[i - 1] + &r[i + 1]) > &r[i] + c)
        .collect();
    let mut report = SequenceReport {
        hypothesis_holds: hypothesis_failures.is_empty(),
        hypothesis_failures,
        conclusion_failures: Vec::new(),
        conclusions_checked: 0,
    };
    if !report.hypothesis_holds {
        return report;
    }
    let mut check = |name: String, lhs: Rational, rhs: Rational| {
        report.conclusions_checked += 1;
        if lhs > rhs {
            report.conclusion_failures.push(format!("{name}: {lhs} > {rhs}"));
        }
    };
    let nn = int(n as i64);
    for i in 1..n {
        for j in i..n {
            check(
                format!("(i) i={i} j={j}"),
                &half * (&r[i - 1] + &r[j + 1]),
                &half * (&r[i] + &r[j]) + int((j - i + 1) as i64) * c,
            );
        }
    }
    check(
        "(ii)".into(),
        (int(n as i64 - 1) * &r[0] + &r[n]) / &nn,
        &r[1] + int(n as i64 - 1) * c,
    );
    for k in 1..=n {
        check(
            format!("(iii) k={k}"),
            (int((n - k) as i64) * &r[0] + int(k as i64) * &r[n]) / &nn,
            &r[k] + int((k * (n - k)) as i64) * c,
        );
    }
    for p in 0..=n {
        for l in 0..=p {
            for k in 0..=(n - p) {
                if k + l == 0 {
                    continue;
                }
                let kl = int((k + l) as i64);
                check(
                    format!("(symmetric) p={p} k={k} l={l}"),
                    (int(k as i64) * &r[p - l] + int(l as i64) * &r[p + k]) / kl,
                    &r[p] + int((k * l) as i64) * c,
                );
            }
        }
    }
    report
}
