use crate::index::{IndexPoint, Permutation};

/// Permutations σ of the coordinates with `p∘σ = p`.
pub fn stabilizer(p: &IndexPoint) -> Vec<Permutation> {
    Permutation::all(p.n())
        .into_iter()
        .filter(|s| p.permuted(s) == *p)
        .collect()
}

/// Orbit id per point (indexed by canonical rank) and the number of orbits.
/// Ids follow the canonical order of each orbit's first point.
pub fn orbits_of_points(points: &[IndexPoint], group: &[Permutation]) -> (Vec<usize>, usize) {
    let mut orbit = vec![usize::MAX; points.len()];
    let mut count = 0;
    for p in points {
        if orbit[p.rank()] != usize::MAX {
            continue;
        }
        for s in group {
            orbit[p.permuted(s).rank()] = count;
        }
        orbit[p.rank()] = count;
        count += 1;
    }
    (orbit, count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::enumerate_delta;

    #[test]
    fn stabilizer_sizes() {
        let p = IndexPoint::new(vec![2, 2, 2, 0, 0, 0]).unwrap();
        assert_eq!(stabilizer(&p).len(), 36);
        let pts = enumerate_delta(6, 6);
        let (_, k) = orbits_of_points(&pts, &stabilizer(&p));
        assert_eq!(k, 49);
        assert_eq!(stabilizer(&IndexPoint::ones(5)).len(), 120);
    }
}
