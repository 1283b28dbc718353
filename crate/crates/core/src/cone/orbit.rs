use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::{act, dominates, Configuration, Permutation};

/// An S_d-orbit of configurations; the representative has the lexicographically
/// smallest value vector in canonical index order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub representative: Configuration,
    pub members: Vec<Configuration>,
}

impl Orbit {
    pub fn contains(&self, c: &Configuration) -> bool {
        self.members.contains(c)
    }
}

/// Partitions `vertices` into orbits under coordinate permutations of S_d.
///
/// Fails if some image of a vertex is not itself in the list.
pub fn orbit_decomposition(vertices: &[Configuration], d: usize) -> Result<Vec<Orbit>> {
    let group = Permutation::all(d);
    let mut assigned = vec![false; vertices.len()];
    let mut orbits = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let mut members: Vec<Configuration> = Vec::new();
        for s in &group {
            let img = act(s, v)?;
            let Some(j) = vertices.iter().position(|w| *w == img) else {
                return Err(Error::VerificationFailed(format!(
                    "vertex set is not closed under the permutation {:?}",
                    s.images
                )));
            };
            assigned[j] = true;
            if !members.contains(&img) {
                members.push(img);
            }
        }
        members.sort_by(|a, b| a.values().cmp(b.values()));
        orbits.push(Orbit { representative: members[0].clone(), members });
    }
    orbits.sort_by(|a, b| a.representative.values().cmp(b.representative.values()));
    Ok(orbits)
}

/// Configurations not strictly dominated by another one in the list.
pub fn dominance_maxima(vertices: &[Configuration]) -> Result<Vec<Configuration>> {
    let mut out = Vec::new();
    for v in vertices {
        let mut dominated = false;
        for w in vertices {
            if w != v && dominates(v, w)? {
                dominated = true;
                break;
            }
        }
        if !dominated {
            out.push(v.clone());
        }
    }
    Ok(out)
}
