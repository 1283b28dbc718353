use serde::Serialize;
use serde_json::{json, Value};

use super::objective::{compare_for_m_ge_1, eval_objective, orbit_max_objective, ObjectiveSpec, ShiftCertificate};
use super::SparsePolynomial;
use crate::cone::{af_polytope, dominance_maxima, enumerate_vertices, orbit_decomposition, Orbit};
use crate::error::{Error, Result};
use crate::geometry::{extremal_tuple, full_configuration};
use crate::index::{dominates, Configuration, IndexPoint, Scale};
use crate::lp::{max_over_af, verify_certificate};
use crate::published::af3_representatives;
use crate::rational::{self, exact_log2, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    VertexListMatch,
    Dominance,
    ShiftPowerNonneg,
    Lp,
    /// Exact polynomial or configuration equality.
    Identity,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProofStep {
    pub statement: String,
    pub kind: StepKind,
    pub data: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Conclusion {
    pub ell: usize,
    /// Upper bound on the normalized volume of K_1 + … + K_ell when MV(1) = m.
    pub maximum: SparsePolynomial,
    pub closed_form: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub dimension: usize,
    pub steps: Vec<ProofStep>,
    pub conclusions: Vec<Conclusion>,
}

impl TheoremReport {
    fn step(&mut self, kind: StepKind, statement: impl Into<String>, data: Value) {
        self.steps.push(ProofStep { statement: statement.into(), kind, data });
    }
}

fn fail(msg: String) -> Error {
    Error::VerificationFailed(msg)
}

fn require(cert: &ShiftCertificate, what: &str) -> Result<Value> {
    if !cert.nonneg {
        return Err(fail(format!(
            "{what}: {} − ({}) at m = (1+x)^{} is {} with a negative coefficient",
            cert.upper,
            cert.lower,
            cert.power,
            cert.shifted.render("x")
        )));
    }
    Ok(serde_json::to_value(cert).expect("serializable"))
}

fn values_json(c: &Configuration) -> Value {
    Value::Array(c.values().iter().map(|v| Value::String(rational::format(v))).collect())
}

/// max m^{w(corner)} over AF_d via the LP, with a checked certificate.
fn single_volume_step(report: &mut TheoremReport, d: usize) -> Result<Conclusion> {
    let corner = IndexPoint::corner(d, d as u32, 0);
    let lp = max_over_af(d, &corner, false)?;
    let value = lp.value()?.clone();
    let cert = lp.certificate()?;
    if !verify_certificate(cert, &lp.program.rows())? {
        return Err(fail(format!("dual certificate for max w{corner} does not check")));
    }
    if value != rational::int(d as i64) {
        return Err(fail(format!("max w{corner} over AF_{d} is {value}, expected {d}")));
    }
    report.step(
        StepKind::Lp,
        format!("max of w{corner} over AF_{d} is {d}, so Vol(K_1) ≤ m^{d}"),
        json!({ "value": rational::format(&value), "certificate": cert }),
    );
    Ok(Conclusion {
        ell: 1,
        maximum: SparsePolynomial::monomial(rational::int(1), rational::int(d as i64)),
        closed_form: format!("m^{d}"),
    })
}

/// The extremal tuple (mS, S, …) has log-configuration log2(m)·w for a vertex w attaining
/// every listed maximum.
fn equality_witness(
    report: &mut TheoremReport,
    d: usize,
    vertices: &[Configuration],
    maxima: &[(ObjectiveSpec, &SparsePolynomial)],
) -> Result<()> {
    let mut vertex = None;
    let mut checked = Vec::new();
    for k in 1..=3i64 {
        let m = 1u32 << k;
        let config = full_configuration(&extremal_tuple(d, m, d)?)?;
        let logs: Vec<Rational> = config
            .values()
            .iter()
            .map(|v| exact_log2(v).map(|e| rational::ratio(e, k)))
            .collect::<Option<_>>()
            .ok_or_else(|| fail(format!("extremal configuration at m={m} is not a power of 2")))?;
        let normalized = Configuration::from_values(d, d as u32, Scale::Logarithmic, logs)?;
        if !vertices.contains(&normalized) {
            return Err(fail(format!("extremal tuple at m={m} is not at a vertex")));
        }
        for (spec, max) in maxima {
            if eval_objective(&normalized, *spec)? != **max {
                return Err(fail(format!("extremal tuple at m={m} misses the ell={} maximum", spec.ell)));
            }
        }
        checked.push(m);
        vertex = Some(normalized);
    }
    report.step(
        StepKind::Identity,
        format!("(mS, S, …) realizes the maximizing vertex, so the bounds are attained in dimension {d}"),
        json!({ "m": checked, "vertex": vertex.as_ref().map(values_json) }),
    );
    Ok(())
}

/// Certified maximum of the ell = d objective over a vertex list.
fn best_of(
    report: &mut TheoremReport,
    spec: ObjectiveSpec,
    candidates: &[(String, SparsePolynomial)],
) -> Result<usize> {
    for (i, (label, p)) in candidates.iter().enumerate() {
        let mut certs = Vec::new();
        let mut all = true;
        for (j, (other, q)) in candidates.iter().enumerate() {
            if i == j || p == q {
                continue;
            }
            let cert = compare_for_m_ge_1(p, q)?;
            if !cert.nonneg {
                all = false;
                break;
            }
            certs.push((other.clone(), cert));
        }
        if all {
            for (other, cert) in certs {
                let data = require(&cert, "comparison")?;
                report.step(
                    StepKind::ShiftPowerNonneg,
                    format!("ell={}: objective at {label} ≥ objective at {other} for m ≥ 1", spec.ell),
                    data,
                );
            }
            return Ok(i);
        }
    }
    Err(Error::Incomparable(format!("no vertex objective dominates for ell = {}", spec.ell)))
}

fn check_closed_form(maximum: &SparsePolynomial, shift: i64, d: u32) -> Result<()> {
    let expected = SparsePolynomial::shifted_power(shift, d);
    if *maximum != expected {
        return Err(fail(format!("maximum {maximum} differs from (m+{shift})^{d} = {expected}")));
    }
    Ok(())
}

/// Maxima of Vol(K_1) and Vol(K_1+K_2) for planar pairs with MV(K_1,K_2) = m.
pub fn verify_dim2() -> Result<TheoremReport> {
    let mut report = TheoremReport { dimension: 2, steps: Vec::new(), conclusions: Vec::new() };
    let vs = enumerate_vertices(&af_polytope(2))?;
    if !vs.is_bounded() || vs.vertices.len() != 3 {
        return Err(fail(format!("AF_2 has {} vertices and {} rays", vs.vertices.len(), vs.rays.len())));
    }
    report.step(
        StepKind::VertexListMatch,
        "AF_2 is a triangle",
        json!({ "vertices": vs.vertices.iter().map(values_json).collect::<Vec<_>>() }),
    );
    let single = single_volume_step(&mut report, 2)?;
    let top = vs.vertices.iter().map(|v| v.values()[0].clone()).max().expect("vertices");
    if top != rational::int(2) {
        return Err(fail(format!("max w(2,0) over the vertices is {top}")));
    }
    report.conclusions.push(single);

    let spec = ObjectiveSpec::new(2, 2)?;
    let candidates: Vec<(String, SparsePolynomial)> = vs
        .vertices
        .iter()
        .map(|v| Ok((format!("{:?}", v.values().iter().map(rational::format).collect::<Vec<_>>()), eval_objective(v, spec)?)))
        .collect::<Result<_>>()?;
    let best = best_of(&mut report, spec, &candidates)?;
    let maximum = candidates[best].1.clone();
    check_closed_form(&maximum, 1, 2)?;
    report.step(
        StepKind::Identity,
        format!("the maximal objective {maximum} equals (m+1)^2"),
        json!({ "vertex": values_json(&vs.vertices[best]) }),
    );
    equality_witness(&mut report, 2, &vs.vertices, &[(spec, &maximum)])?;
    report.conclusions.push(Conclusion { ell: 2, maximum, closed_form: "(m+1)^2".into() });
    Ok(report)
}

/// Labels 1..=7 of the published representatives, one per orbit.
fn label_orbits(orbits: &[Orbit]) -> Result<Vec<usize>> {
    let published = af3_representatives();
    let mut labels = vec![0; orbits.len()];
    for (i, v) in published.iter().enumerate() {
        let hits: Vec<usize> = (0..orbits.len()).filter(|&o| orbits[o].contains(v)).collect();
        match hits.as_slice() {
            [o] if labels[*o] == 0 => labels[*o] = i + 1,
            _ => return Err(fail(format!("published v{} lies in {} orbits", i + 1, hits.len()))),
        }
    }
    Ok(labels)
}

/// Maxima of Vol(K_1), Vol(K_1+K_2) and Vol(K_1+K_2+K_3) for triples with MV(K_1,K_2,K_3) = m.
pub fn verify_dim3() -> Result<TheoremReport> {
    let mut report = TheoremReport { dimension: 3, steps: Vec::new(), conclusions: Vec::new() };
    let vs = enumerate_vertices(&af_polytope(3))?;
    if !vs.is_bounded() {
        return Err(fail(format!("AF_3 has {} recession rays", vs.rays.len())));
    }
    let orbits = orbit_decomposition(&vs.vertices, 3)?;
    if vs.vertices.len() != 24 || orbits.len() != 7 {
        return Err(fail(format!("AF_3 has {} vertices in {} orbits", vs.vertices.len(), orbits.len())));
    }
    let labels = label_orbits(&orbits)?;
    let orbit_of = |label: usize| &orbits[labels.iter().position(|&l| l == label).expect("labelled")];
    report.step(
        StepKind::VertexListMatch,
        "AF_3 has 24 vertices in 7 orbits, each containing exactly one published representative",
        json!({
            "vertices": vs.vertices.len(),
            "orbits": orbits.iter().zip(&labels).map(|(o, l)| json!({
                "label": format!("v{l}"),
                "size": o.members.len(),
                "representative": values_json(&o.representative),
            })).collect::<Vec<_>>(),
        }),
    );

    let published = af3_representatives();
    for (a, b) in [(1, 2), (2, 3), (4, 5), (5, 6)] {
        if !dominates(&published[a - 1], &published[b - 1])? {
            return Err(fail(format!("v{a} ≤ v{b} fails")));
        }
    }
    let maxima = dominance_maxima(&vs.vertices)?;
    let mut surviving: Vec<usize> = maxima
        .iter()
        .map(|v| labels[orbits.iter().position(|o| o.contains(v)).expect("vertex in an orbit")])
        .collect();
    surviving.sort_unstable();
    surviving.dedup();
    if surviving != [3, 6, 7] {
        return Err(fail(format!("dominance leaves orbits {surviving:?}")));
    }
    report.step(
        StepKind::Dominance,
        "v1 ≤ v2 ≤ v3 and v4 ≤ v5 ≤ v6; the undominated vertices lie in the orbits of v3, v6, v7",
        json!({ "undominated": maxima.len(), "orbits": surviving }),
    );

    let single = single_volume_step(&mut report, 3)?;
    report.conclusions.push(single);

    // ell = 2: the objective is not S3-invariant, so maximize over each orbit first
    let spec2 = ObjectiveSpec::new(3, 2)?;
    let mut phi = Vec::new();
    for label in [3, 6, 7] {
        let best = orbit_max_objective(orbit_of(label), spec2)?;
        for cert in &best.comparisons {
            require(cert, &format!("orbit maximum of v{label}"))?;
        }
        report.step(
            StepKind::ShiftPowerNonneg,
            format!("the orbit of v{label} has largest ell=2 objective {}", best.polynomial),
            json!({ "member": values_json(&best.member), "comparisons": best.comparisons }),
        );
        phi.push(best.polynomial);
    }
    for (i, j, what) in [(1, 0, "φ6 ≥ φ3"), (0, 2, "φ3 ≥ φ7"), (1, 2, "φ6 ≥ φ7")] {
        let data = require(&compare_for_m_ge_1(&phi[i], &phi[j])?, what)?;
        report.step(StepKind::ShiftPowerNonneg, format!("{what} for m ≥ 1"), data);
    }
    check_closed_form(&phi[1], 1, 3)?;
    report.step(StepKind::Identity, format!("φ6 = {} = (m+1)^3", phi[1]), Value::Null);
    report.conclusions.push(Conclusion { ell: 2, maximum: phi[1].clone(), closed_form: "(m+1)^3".into() });

    // ell = 3: invariant objective, one value per orbit
    let spec3 = ObjectiveSpec::new(3, 3)?;
    let mut f = Vec::new();
    for label in [3, 6, 7] {
        let orbit = orbit_of(label);
        let value = eval_objective(&orbit.members[0], spec3)?;
        for m in &orbit.members[1..] {
            if eval_objective(m, spec3)? != value {
                return Err(fail(format!("ell=3 objective is not constant on the orbit of v{label}")));
            }
        }
        f.push(value);
    }
    report.step(
        StepKind::Identity,
        "the ell=3 objective is constant on each orbit",
        json!({ "v3": f[0], "v6": f[1], "v7": f[2] }),
    );
    for (i, j, what) in [(1, 0, "f(v6) ≥ f(v3)"), (1, 2, "f(v6) ≥ f(v7)")] {
        let data = require(&compare_for_m_ge_1(&f[i], &f[j])?, what)?;
        report.step(StepKind::ShiftPowerNonneg, format!("{what} for m ≥ 1"), data);
    }
    check_closed_form(&f[1], 2, 3)?;
    report.step(StepKind::Identity, format!("f(v6) = {} = (m+2)^3", f[1]), Value::Null);
    report.conclusions.push(Conclusion { ell: 3, maximum: f[1].clone(), closed_form: "(m+2)^3".into() });

    equality_witness(&mut report, 3, &vs.vertices, &[(spec2, &phi[1]), (spec3, &f[1])])?;
    Ok(report)
}
