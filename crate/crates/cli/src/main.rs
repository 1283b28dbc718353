use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mixvol::bounds::{self, MinkMethod};
use mixvol::cone::{self, Orbit};
use mixvol::geometry::{self, BodyTuple, HeineMatrix, HeineReport};
use mixvol::index::{enumerate_delta, IndexPoint};
use mixvol::inequality::{check_config, generate, linearize, parse_families, Caps, Family};
use mixvol::lp::{self, verify_certificate, BoundLp};
use mixvol::poly::{self, TheoremReport};
use mixvol::published::af3_representatives;
use mixvol::rational::{self, Rational};

mod table;

#[derive(Parser)]
#[command(name = "mixvol", version, about = "Exact workbench for inequalities between mixed volumes")]
struct Cli {
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// List Δ_{n,d} in canonical order.
    Delta {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
    },
    #[command(subcommand)]
    Ineq(IneqCmd),
    #[command(subcommand)]
    Cone(ConeCmd),
    #[command(subcommand)]
    Bound(BoundCmd),
    #[command(subcommand)]
    Mv(MvCmd),
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Heine conditions for three planar bodies, or for a raw symmetric matrix.
    Heine {
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
        bodies: Option<PathBuf>,
        /// Rows separated by ';', entries by ',', e.g. "1,1,2;1,1,1;2,1,1".
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Seeded random tuple of lattice polytopes.
    RandTuple {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long = "box")]
        box_size: u64,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        full_dim: bool,
    },
    /// Configuration satisfying every AF inequality but not of the form MV_K.
    Counterexample {
        #[arg(long)]
        d: usize,
    },
    /// The tuple (mS, S, …, S) and the values it attains.
    Extremal {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        ell: usize,
    },
}

#[derive(Subcommand)]
enum IneqCmd {
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        d: usize,
        /// Emit linearized rows instead of multiplicative form.
        #[arg(long)]
        log: bool,
        /// Largest index set |I| for set-based families.
        #[arg(long)]
        max_i: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ConeCmd {
    Vertices {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        orbits: bool,
        /// Compare the vertex document byte for byte against this file.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Target {
    #[arg(long)]
    d: usize,
    /// Comma-separated index point, e.g. "2,2,2,0,0,0".
    #[arg(long)]
    p: String,
}

#[derive(Subcommand)]
enum BoundCmd {
    /// Exact maximum of w(p) over AF_d.
    Af {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        certificate: bool,
    },
    /// LP maximum of mv(p) under selected families with mv ≥ 0 and mv(1) = t.
    Square {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        t: String,
        #[arg(long, default_value = "af,square,generalized_square,weak_concavity")]
        families: String,
        #[arg(long)]
        certificate: bool,
    },
    /// Admissible-path certificate.
    Path {
        #[command(flatten)]
        target: Target,
    },
    /// Closed-form bound on the normalized volume of K_1 + … + K_d.
    Mink {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: String,
        #[arg(long)]
        method: String,
    },
}

#[derive(Subcommand)]
enum MvCmd {
    Compute {
        #[arg(long)]
        bodies: PathBuf,
        /// Emit the full configuration over Δ_{n,d} instead of one mixed volume.
        #[arg(long)]
        config: bool,
        #[arg(long, requires = "config")]
        n: Option<usize>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Check a tuple's configuration against inequality families.
    Config {
        #[arg(long)]
        bodies: PathBuf,
        #[arg(long, default_value = "all")]
        families: String,
    },
    /// Multinomial expansion of the volume of the Minkowski sum.
    Identity {
        #[arg(long)]
        bodies: PathBuf,
    },
    Dim2,
    Dim3,
}

/// A rendered command result: JSON payload, table text, and whether every check passed.
pub struct Report {
    pub json: Value,
    pub table: String,
    pub ok: bool,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<mixvol::Error> for Failure {
    fn from(e: mixvol::Error) -> Self {
        use mixvol::Error::*;
        match e {
            VerificationFailed(_) | Incomparable(_) | LimitExceeded(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<Report, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn parse_rational(s: &str) -> Result<Rational, Failure> {
    Ok(rational::parse(s)?)
}

fn parse_point(t: &Target) -> Result<IndexPoint, Failure> {
    let coords = t
        .p
        .split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| usage(format!("bad coordinate '{x}' in --p"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IndexPoint::in_domain(coords, t.d, t.d as u32)?)
}

fn parse_family_list(s: &str) -> Result<Vec<Family>, Failure> {
    if s.trim() == "all" {
        return Ok(Family::ALL.to_vec());
    }
    Ok(parse_families(s)?)
}

fn read_tuple(path: &PathBuf) -> Result<BodyTuple, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let t: BodyTuple =
        serde_json::from_str(&text).map_err(|e| usage(format!("malformed tuple JSON in {}: {e}", path.display())))?;
    let cap = geometry::dimension_cap();
    if t.dim() > cap {
        return Err(usage(format!("ambient dimension {} exceeds the cap {cap} (MIXVOL_MAX_DIM)", t.dim())));
    }
    Ok(BodyTuple::new(t.role, t.bodies)?)
}

fn delta(n: usize, d: u32) -> Outcome {
    if n == 0 {
        return Err(usage("n must be positive"));
    }
    let pts = enumerate_delta(n, d);
    Ok(Report {
        table: table::lines(pts.iter().map(|p| p.to_string())),
        json: json!({ "n": n, "d": d, "count": pts.len(), "points": pts }),
        ok: true,
    })
}

fn ineq_gen(family: &str, d: usize, log: bool, max_i: Option<usize>) -> Outcome {
    let family: Family = family.parse()?;
    if d < 2 {
        return Err(usage("inequality families need d ≥ 2"));
    }
    let mut caps = Caps::default_for(d);
    if let Some(k) = max_i {
        caps.max_set = k;
    }
    let ineqs = generate(family, d, &caps);
    let (rows, text): (Vec<Value>, Vec<String>) = if log {
        ineqs.iter().map(|mi| (to_json(&linearize(mi)), table::linear(&linearize(mi)))).unzip()
    } else {
        ineqs.iter().map(|mi| (to_json(mi), table::monomial(mi))).unzip()
    };
    Ok(Report {
        json: json!({ "family": family, "d": d, "count": rows.len(), "inequalities": rows }),
        table: table::lines(text),
        ok: true,
    })
}

/// Published label (1-based) of the orbit, when d = 3.
fn published_label(orbit: &Orbit) -> Option<(usize, mixvol::Configuration)> {
    af3_representatives().into_iter().enumerate().find(|(_, v)| orbit.contains(v)).map(|(i, v)| (i + 1, v))
}

fn cone_vertices(d: usize, orbits: bool, golden: Option<&PathBuf>) -> Outcome {
    if d < 2 {
        return Err(usage("the AF polytope needs d ≥ 2"));
    }
    let vs = cone::enumerate_vertices(&cone::af_polytope(d))?;
    let doc = cone::vertex_document(d, &vs.vertices)?;
    let mut json: Value = serde_json::from_str(&doc).expect("own document");
    json["bounded"] = json!(vs.is_bounded());
    json["rays"] = json!(vs.rays.len());
    let mut text = vec![format!("{} vertices, {} rays", vs.vertices.len(), vs.rays.len())];
    let mut ok = vs.is_bounded();
    if orbits {
        let list = cone::orbit_decomposition(&vs.vertices, d)?;
        let mut out = Vec::new();
        for o in &list {
            let values = |c: &mixvol::Configuration| c.values().iter().map(rational::format).collect::<Vec<_>>();
            let mut entry = json!({ "size": o.members.len(), "representative": values(&o.representative) });
            let mut line = format!("orbit of size {}: {}", o.members.len(), values(&o.representative).join(" "));
            if d == 3 {
                if let Some((label, v)) = published_label(o) {
                    entry["label"] = json!(format!("v{label}"));
                    entry["published_member"] = json!(values(&v));
                    line = format!("v{label} {line}");
                }
            }
            text.push(line);
            out.push(entry);
        }
        json["orbit_count"] = json!(list.len());
        json["orbits"] = Value::Array(out);
    }
    if let Some(path) = golden {
        let expected = fs::read(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        let matches = expected == doc.as_bytes();
        json["golden"] = json!({ "path": path.display().to_string(), "matches": matches });
        text.push(format!("golden {}: {}", path.display(), if matches { "match" } else { "MISMATCH" }));
        ok &= matches;
    }
    Ok(Report { json, table: table::lines(text), ok })
}

fn lp_report(lp: &BoundLp, target: &IndexPoint, certificate: bool) -> Result<(Value, bool), Failure> {
    let value = lp.value()?;
    let cert = lp.certificate()?;
    let checked = verify_certificate(cert, &lp.program.rows())?;
    let mut json = json!({
        "target": target,
        "status": lp.result.status,
        "value": rational::format(value),
        "certificate_checked": checked,
        "iterations": lp.result.iterations,
    });
    if certificate {
        json["certificate"] = to_json(cert);
    }
    Ok((json, checked))
}

fn bound_af(target: &Target, certificate: bool) -> Outcome {
    let p = parse_point(target)?;
    let lp = lp::max_over_af(target.d, &p, true)?;
    let (mut json, checked) = lp_report(&lp, &p, certificate)?;
    let expected = bounds::af_point_bound(&p);
    let matches = lp.value()? == &expected;
    json["product_bound"] = json!(rational::format(&expected));
    json["matches_product"] = json!(matches);
    let table = format!("max w{p} over AF_{} = {} (product {expected})", target.d, json["value"].as_str().unwrap());
    Ok(Report { json, table: table + "\n", ok: checked && matches })
}

fn bound_square(target: &Target, t: &str, families: &str, certificate: bool) -> Outcome {
    let p = parse_point(target)?;
    let t = parse_rational(t)?;
    let fams = parse_family_list(families)?;
    let lp = lp::max_with_squares(target.d, &p, &t, &fams)?;
    let (mut json, checked) = lp_report(&lp, &p, certificate)?;
    let path = bounds::certify_sq_bound(&p)?;
    let bound = path.at(&t);
    let within = lp.value()? <= &bound;
    json["t"] = json!(rational::format(&t));
    json["families"] = to_json(&fams);
    json["path_bound"] = json!(rational::format(&bound));
    json["within_path_bound"] = json!(within);
    let table = format!(
        "max mv{p} at mv(1)={t}: {} (path bound {bound})",
        json["value"].as_str().unwrap()
    );
    Ok(Report { json, table: table + "\n", ok: checked && within })
}

fn bound_path(target: &Target) -> Outcome {
    let p = parse_point(target)?;
    let cert = bounds::certify_sq_bound(&p)?;
    let ok = cert.verify()?;
    let mut json = to_json(&cert);
    json["replayed"] = json!(ok);
    let mut text = vec![format!("mv{p} ≤ {}·mv(1) + {}", cert.slope, cert.constant)];
    for link in &cert.chain {
        let one = |v: &[usize]| v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
        text.push(format!("  from {} I={{{}}} J={{{}}} mu={}", link.from, one(&link.set), one(&link.other), link.mu));
    }
    Ok(Report { json, table: table::lines(text), ok })
}

fn bound_mink(d: usize, m: &str, method: &str) -> Outcome {
    let method: MinkMethod = method.parse()?;
    let m = parse_rational(m)?;
    let form = bounds::mink_bound_form(d, method)?;
    let value = bounds::mink_bound(d, &m, method)?;
    let json = json!({
        "d": d,
        "method": method,
        "m": rational::format(&m),
        "coefficient": rational::format(&form.coefficient),
        "exponent": form.exponent,
        "value": rational::format(&value),
    });
    let table = format!("Vol ≤ {} · m^{} = {value} at m = {m}\n", form.coefficient, form.exponent);
    Ok(Report { json, table, ok: true })
}

fn mv_compute(path: &PathBuf, config: bool, n: Option<usize>) -> Outcome {
    let t = read_tuple(path)?;
    if config {
        if let Some(n) = n {
            if n != t.len() {
                return Err(usage(format!("--n {n} but the file holds {} bodies", t.len())));
            }
        }
        let c = geometry::full_configuration(&t)?;
        let text = c.iter().map(|(p, v)| format!("{p} {v}"));
        return Ok(Report { table: table::lines(text), json: to_json(&c), ok: true });
    }
    let v = geometry::mixed_volume(&t)?;
    Ok(Report {
        json: json!({ "dim": t.dim(), "mixed_volume": rational::format(&v) }),
        table: format!("{v}\n"),
        ok: true,
    })
}

fn verify_config(path: &PathBuf, families: &str) -> Outcome {
    let t = read_tuple(path)?;
    let d = t.dim();
    if t.len() != d {
        return Err(usage(format!("families live on Δ_({d},{d}); the file holds {} bodies", t.len())));
    }
    let fams = parse_family_list(families)?;
    let caps = Caps::default_for(d);
    let config = geometry::full_configuration(&t)?;
    let mut per_family = Vec::new();
    let mut text = Vec::new();
    let mut ok = true;
    for f in fams {
        let report = check_config(&config, &generate(f, d, &caps))?;
        text.push(format!("{}: {}/{} satisfied", f.name(), report.satisfied, report.total));
        ok &= report.ok();
        per_family.push(json!({ "family": f, "report": report }));
    }
    Ok(Report { json: json!({ "config": config, "families": per_family, "ok": ok }), table: table::lines(text), ok })
}

fn verify_identity(path: &PathBuf) -> Outcome {
    let t = read_tuple(path)?;
    let (lhs, rhs) = geometry::vol_sum_sides(&t)?;
    let ok = lhs == rhs;
    Ok(Report {
        json: json!({ "volume_of_sum": rational::format(&lhs), "multinomial_sum": rational::format(&rhs), "holds": ok }),
        table: format!("Vol(sum) = {lhs}, Σ multinomial·MV = {rhs}\n"),
        ok,
    })
}

fn theorem(report: TheoremReport) -> Outcome {
    let mut text: Vec<String> = report.steps.iter().map(|s| format!("[{:?}] {}", s.kind, s.statement)).collect();
    for c in &report.conclusions {
        text.push(format!("ell={}: maximum {} = {}", c.ell, c.closed_form, c.maximum));
    }
    Ok(Report { json: to_json(&report), table: table::lines(text), ok: true })
}

fn parse_matrix(s: &str) -> Result<HeineMatrix, Failure> {
    let rows: Vec<Vec<Rational>> = s
        .split(';')
        .map(|r| r.split(',').map(|x| parse_rational(x.trim())).collect())
        .collect::<Result<_, _>>()?;
    if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
        return Err(usage("--matrix needs three rows of three entries"));
    }
    let mut m: [[Rational; 3]; 3] = Default::default();
    for (i, r) in rows.into_iter().enumerate() {
        for (j, x) in r.into_iter().enumerate() {
            m[i][j] = x;
        }
    }
    Ok(HeineMatrix::new(m)?)
}

fn heine(bodies: Option<&PathBuf>, matrix: Option<&str>) -> Outcome {
    let (report, geometric): (HeineReport, bool) = match (bodies, matrix) {
        (Some(path), _) => (geometry::heine_check(&read_tuple(path)?)?, true),
        (None, Some(m)) => (parse_matrix(m)?.check(), false),
        (None, None) => return Err(usage("give --bodies or --matrix")),
    };
    let table = format!(
        "det {}  minors {}  satisfied {}\n",
        report.det,
        report.minors.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" "),
        report.satisfied
    );
    // an unrealizable raw matrix is a valid answer; geometric input must always satisfy
    let ok = report.satisfied || !geometric;
    Ok(Report { json: to_json(&report), table, ok })
}

fn rand_tuple(seed: u64, d: usize, n: usize, box_size: u64, points: usize, full_dim: bool) -> Outcome {
    let t = geometry::random_lattice_tuple(d, n, seed, box_size, points, full_dim)?;
    let text = t.bodies.iter().enumerate().map(|(i, b)| {
        let verts: Vec<String> = b
            .vertices()
            .iter()
            .map(|v| format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        format!("K{}: {}", i + 1, verts.join(" "))
    });
    Ok(Report { table: table::lines(text), json: to_json(&t), ok: true })
}

fn counterexample(d: usize) -> Outcome {
    let r = bounds::counterexample_report(d)?;
    let ok = r.confirmed();
    let table = format!(
        "AF: {}/{} satisfied; square: {} violations; witness {} > {}\n",
        r.af.satisfied,
        r.af.total,
        r.square.violations.len(),
        r.witness.lhs,
        r.witness.rhs
    );
    Ok(Report { json: json!({ "report": r, "confirmed": ok }), table, ok })
}

fn extremal(d: usize, m: u32, ell: usize) -> Outcome {
    let full = geometry::extremal_tuple(d, m, d)?;
    let prefix = geometry::extremal_tuple(d, m, ell)?;
    let mv = geometry::mixed_volume(&full)?;
    let vol = prefix.sum()?.normalized_volume();
    let (mv_expected, vol_expected) = geometry::extremal_values(d, m, ell);
    let ok = mv == mv_expected && vol == vol_expected;
    Ok(Report {
        json: json!({
            "tuple": full,
            "mixed_volume": rational::format(&mv),
            "prefix_volume": rational::format(&vol),
            "expected_mixed_volume": rational::format(&mv_expected),
            "expected_prefix_volume": rational::format(&vol_expected),
            "attained": ok,
        }),
        table: format!("MV = {mv} (expected {mv_expected}); Vol(K1+…+K{ell}) = {vol} (expected {vol_expected})\n"),
        ok,
    })
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Delta { n, d } => delta(*n, *d),
        Command::Ineq(IneqCmd::Gen { family, d, log, max_i }) => ineq_gen(family, *d, *log, *max_i),
        Command::Cone(ConeCmd::Vertices { d, orbits, golden }) => cone_vertices(*d, *orbits, golden.as_ref()),
        Command::Bound(BoundCmd::Af { target, certificate }) => bound_af(target, *certificate),
        Command::Bound(BoundCmd::Square { target, t, families, certificate }) => {
            bound_square(target, t, families, *certificate)
        }
        Command::Bound(BoundCmd::Path { target }) => bound_path(target),
        Command::Bound(BoundCmd::Mink { d, m, method }) => bound_mink(*d, m, method),
        Command::Mv(MvCmd::Compute { bodies, config, n }) => mv_compute(bodies, *config, *n),
        Command::Verify(VerifyCmd::Config { bodies, families }) => verify_config(bodies, families),
        Command::Verify(VerifyCmd::Identity { bodies }) => verify_identity(bodies),
        Command::Verify(VerifyCmd::Dim2) => theorem(poly::verify_dim2()?),
        Command::Verify(VerifyCmd::Dim3) => theorem(poly::verify_dim3()?),
        Command::Heine { bodies, matrix } => heine(bodies.as_ref(), matrix.as_deref()),
        Command::RandTuple { d, n, box_size, points, full_dim } => {
            rand_tuple(cli.seed, *d, *n, *box_size, *points, *full_dim)
        }
        Command::Counterexample { d } => counterexample(*d),
        Command::Extremal { d, m, ell } => extremal(*d, *m, *ell),
    }
}

fn emit(cli: &Cli, report: &Report) -> anyhow::Result<()> {
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report.json)? + "\n",
        Format::Table => report.table.clone(),
    };
    match &cli.output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            if let Err(e) = emit(&cli, &report) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
