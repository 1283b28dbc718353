use super::{dedupe, Family, MonomialInequality, Provenance, SimplexParams};
use crate::error::{Error, Result};
use crate::index::{binomial, enumerate_delta, Direction, IndexPoint};

/// Subsets of `items` of size `k`, lexicographic.
pub(crate) fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for idx in start..items.len() {
            if items.len() - idx < k - cur.len() {
                break;
            }
            cur.push(items[idx]);
            rec(items, k, idx + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Non-negative integer vectors of length n summing to s (s may be 0).
fn compositions(n: usize, s: u32) -> Vec<Vec<u32>> {
    if s == 0 {
        return vec![vec![0; n]];
    }
    enumerate_delta(n, s).into_iter().map(|p| p.coords().to_vec()).collect()
}

/// MV(p+e_i−e_j)·MV(p−e_i+e_j) ≤ MV(p)² for every p and pair {i, j} with p_i, p_j ≥ 1.
pub fn gen_af(d: usize) -> Vec<MonomialInequality> {
    let mut out = Vec::new();
    for p in enumerate_delta(d, d as u32) {
        for i in 0..d {
            for j in i + 1..d {
                if p.get(i) == 0 || p.get(j) == 0 {
                    continue;
                }
                let e = Direction::elementary(d, i, j).unwrap();
                let plus = p.shift(&e.coords, 1).unwrap();
                let minus = p.shift(&e.coords, -1).unwrap();
                let prov = Provenance { i: Some(i), j: Some(j), ..Provenance::at(p.clone()) };
                out.push(MonomialInequality::new(
                    Family::Af,
                    prov,
                    [(plus, 1), (minus, 1)],
                    [(p.clone(), 2)],
                    0,
                ));
            }
        }
    }
    dedupe(out)
}

/// MV(p)·MV(p+u_{I,j}+u_{i,j}) ≤ 2^{|I|}·MV(p+u_{I,j})·MV(p+u_{i,j}), or `None` if a point leaves the simplex.
fn square_instance(family: Family, p: &IndexPoint, set: &[usize], i: usize, j: usize) -> Option<MonomialInequality> {
    let d = p.n();
    let u_set = Direction::one_to_one(d, set, j).ok()?;
    let u_i = Direction::one_to_one(d, &[i], j).ok()?;
    if set.contains(&i) {
        return None;
    }
    let a = p.shift(&u_set.coords, 1)?;
    let b = p.shift(&u_i.coords, 1)?;
    let ab = p.shift(&u_set.add(&u_i), 1)?;
    let prov = Provenance {
        i: Some(i),
        j: Some(j),
        set: Some(set.to_vec()),
        ..Provenance::at(p.clone())
    };
    Some(MonomialInequality::new(family, prov, [(p.clone(), 1), (ab, 1)], [(a, 1), (b, 1)], set.len() as u32))
}

/// MV(p)·MV(p+u1+u2) ≤ 2·MV(p+u1)·MV(p+u2) with u_k = e_{i_k} − e_j and p_j ≥ 2.
pub fn gen_square(d: usize) -> Vec<MonomialInequality> {
    let mut out = Vec::new();
    for p in enumerate_delta(d, d as u32) {
        for j in 0..d {
            if p.get(j) < 2 {
                continue;
            }
            let others: Vec<usize> = (0..d).filter(|&x| x != j).collect();
            for pair in combinations(&others, 2) {
                if let Some(mi) = square_instance(Family::Square, &p, &pair[..1], pair[1], j) {
                    out.push(mi);
                }
            }
        }
    }
    dedupe(out)
}

/// Square inequalities along u_{I,j} and u_{i,j} for 1 ≤ |I| ≤ max_set and p_j > |I|.
pub fn gen_generalized_square(d: usize, max_set: usize) -> Vec<MonomialInequality> {
    let mut out = Vec::new();
    let points = enumerate_delta(d, d as u32);
    for j in 0..d {
        let others: Vec<usize> = (0..d).filter(|&x| x != j).collect();
        for size in 1..=max_set.min(d.saturating_sub(2)) {
            for set in combinations(&others, size) {
                for &i in others.iter().filter(|i| !set.contains(i)) {
                    for p in points.iter().filter(|p| p.get(j) as usize > size) {
                        if let Some(mi) = square_instance(Family::GeneralizedSquare, p, &set, i, j) {
                            out.push(mi);
                        }
                    }
                }
            }
        }
    }
    dedupe(out)
}

/// MV(p+k·u)^l · MV(p−l·u)^k ≤ 2^{(k+l)·k·l·C(|I|,2)} · MV(p)^{k+l} with u = u_{I,j}.
pub fn gen_weak_concavity(
    d: usize,
    set: &[usize],
    j: usize,
    k: u32,
    l: u32,
    p: &IndexPoint,
) -> Result<MonomialInequality> {
    if p.n() != d || p.d() as usize != d {
        return Err(Error::DomainMismatch(format!("{p} is not in Delta_{{{d},{d}}}")));
    }
    if k == 0 || l == 0 {
        return Err(Error::InvalidArgument("k and l must be positive".into()));
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    let u = Direction::one_to_one(d, &sorted, j)?;
    let (Some(fwd), Some(back)) = (p.shift(&u.coords, k as i64), p.shift(&u.coords, -(l as i64))) else {
        return Err(Error::InvalidArgument(format!(
            "shifts of {p} by {k}·u and −{l}·u leave the simplex"
        )));
    };
    let c = (k + l) as u64 * k as u64 * l as u64 * binomial(sorted.len() as u64, 2);
    let prov = Provenance {
        j: Some(j),
        set: Some(sorted),
        k: Some(k),
        l: Some(l),
        ..Provenance::at(p.clone())
    };
    Ok(MonomialInequality::new(
        Family::WeakConcavity,
        prov,
        [(fwd, l), (back, k)],
        [(p.clone(), k + l)],
        c as u32,
    ))
}

/// Every weak-concavity instance with |I| ≤ max_set, k ≤ max_k, l ≤ max_l.
pub fn gen_weak_concavity_all(d: usize, max_set: usize, max_k: u32, max_l: u32) -> Vec<MonomialInequality> {
    let mut out = Vec::new();
    let points = enumerate_delta(d, d as u32);
    for j in 0..d {
        let others: Vec<usize> = (0..d).filter(|&x| x != j).collect();
        for size in 1..=max_set.min(d - 1) {
            for set in combinations(&others, size) {
                for k in 1..=max_k {
                    for l in 1..=max_l {
                        for p in &points {
                            if let Ok(mi) = gen_weak_concavity(d, &set, j, k, l, p) {
                                out.push(mi);
                            }
                        }
                    }
                }
            }
        }
    }
    dedupe(out)
}

/// Π MV(b_j)^{c_j} ≤ MV(p)^k over the simplex copy with vertices b_j = k·e_{i_j} + t.
pub fn gen_simplex_concavity(d: usize, params: &SimplexParams, p: &IndexPoint) -> Result<MonomialInequality> {
    let SimplexParams { indices, shift, level } = params;
    let k = *level;
    if p.n() != d || p.d() as usize != d || shift.len() != d {
        return Err(Error::DomainMismatch("simplex parameters and point must live in Delta_{d,d}".into()));
    }
    if indices.len() < 2 || indices.windows(2).any(|w| w[0] >= w[1]) || indices.iter().any(|&i| i >= d) {
        return Err(Error::InvalidArgument("simplex indices must be increasing, at least two".into()));
    }
    if k == 0 || shift.iter().sum::<u32>() + k != d as u32 {
        return Err(Error::InvalidArgument("shift must sum to d − k with k ≥ 1".into()));
    }
    let mut c = Vec::with_capacity(indices.len());
    for a in 0..d {
        let diff = p.get(a) as i64 - shift[a] as i64;
        let on = indices.contains(&a);
        if diff < 0 || (!on && diff != 0) {
            return Err(Error::InvalidArgument(format!("{p} is outside the simplex copy")));
        }
    }
    for &a in indices {
        c.push(p.get(a) - shift[a]);
    }
    if c.iter().any(|&x| x == k) {
        return Err(Error::InvalidArgument(format!("{p} is a vertex of the simplex copy")));
    }
    let lhs = indices.iter().zip(&c).filter(|(_, &cj)| cj > 0).map(|(&a, &cj)| {
        let mut b = shift.clone();
        b[a] += k;
        (IndexPoint::new(b).unwrap(), cj)
    });
    let prov = Provenance { simplex: Some(params.clone()), ..Provenance::at(p.clone()) };
    Ok(MonomialInequality::new(Family::SimplexConcavity, prov, lhs, [(p.clone(), k)], 0))
}

/// All simplex-concavity instances with at most `max_vertices` vertices per copy.
pub fn gen_simplex_concavity_all(d: usize, max_vertices: usize) -> Vec<MonomialInequality> {
    let mut out = Vec::new();
    let all: Vec<usize> = (0..d).collect();
    for size in 2..=max_vertices.min(d) {
        for indices in combinations(&all, size) {
            for k in 2..=d as u32 {
                for shift in compositions(d, d as u32 - k) {
                    let params = SimplexParams { indices: indices.clone(), shift: shift.clone(), level: k };
                    for q in enumerate_delta(size, k) {
                        let mut coords = shift.clone();
                        for (&a, &x) in indices.iter().zip(q.coords()) {
                            coords[a] += x;
                        }
                        let p = IndexPoint::new(coords).unwrap();
                        if let Ok(mi) = gen_simplex_concavity(d, &params, &p) {
                            out.push(mi);
                        }
                    }
                }
            }
        }
    }
    dedupe(out)
}

/// MV(p+u_{I,J})·MV(p−u_{I,J}) ≤ 2⁴·MV(p)² for |I| = |J| = 2.
pub fn gen_double_square(d: usize) -> Vec<MonomialInequality> {
    let mut out = Vec::new();
    if d < 4 {
        return out;
    }
    let all: Vec<usize> = (0..d).collect();
    for p in enumerate_delta(d, d as u32) {
        for set in combinations(&all, 2) {
            let rest: Vec<usize> = all.iter().copied().filter(|x| !set.contains(x)).collect();
            for other in combinations(&rest, 2) {
                if other[0] < set[0] {
                    continue;
                }
                let u = Direction::set_to_set(d, &set, &other).unwrap();
                let (Some(a), Some(b)) = (p.shift(&u.coords, 1), p.shift(&u.coords, -1)) else {
                    continue;
                };
                let prov = Provenance {
                    set: Some(set.clone()),
                    other: Some(other.clone()),
                    ..Provenance::at(p.clone())
                };
                out.push(MonomialInequality::new(
                    Family::DoubleSquare,
                    prov,
                    [(a, 1), (b, 1)],
                    [(p.clone(), 2)],
                    4,
                ));
            }
        }
    }
    dedupe(out)
}

/// Parameter caps for the families with unbounded parameter ranges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Caps {
    /// Largest |I| for generalized-square and weak-concavity instances.
    pub max_set: usize,
    /// Largest step multipliers k and l in weak-concavity instances.
    pub max_k: u32,
    pub max_l: u32,
    /// Largest number of simplex vertices in simplex-concavity instances.
    pub max_simplex: usize,
}

impl Caps {
    /// Complete families for d ≤ 5; for larger d only |I| ≤ 3 and k = l = 1.
    pub fn default_for(d: usize) -> Self {
        if d <= 5 {
            Caps { max_set: d, max_k: d as u32, max_l: d as u32, max_simplex: d }
        } else {
            Caps { max_set: 3, max_k: 1, max_l: 1, max_simplex: 3 }
        }
    }
}

pub fn generate(family: Family, d: usize, caps: &Caps) -> Vec<MonomialInequality> {
    match family {
        Family::Af => gen_af(d),
        Family::Square => {
            if d >= 3 {
                gen_square(d)
            } else {
                Vec::new()
            }
        }
        Family::GeneralizedSquare => gen_generalized_square(d, caps.max_set),
        Family::WeakConcavity => gen_weak_concavity_all(d, caps.max_set, caps.max_k, caps.max_l),
        Family::SimplexConcavity => gen_simplex_concavity_all(d, caps.max_simplex),
        Family::DoubleSquare => gen_double_square(d),
    }
}
