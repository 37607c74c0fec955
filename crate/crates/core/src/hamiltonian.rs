//! Hamiltonian paths and cycles of induced subtournaments.

use serde::{Deserialize, Serialize};

use crate::analysis::{is_strong_subset, normalize_subset};
use crate::error::{Error, Result};
use crate::tournament::{Tournament, VertexId};

/// Distinct vertices, each beating the next.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(pub Vec<VertexId>);

/// Distinct vertices, each beating the next and the last beating the first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cycle(pub Vec<VertexId>);

impl Path {
    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_valid_in(&self, t: &Tournament) -> bool {
        distinct(&self.0) && self.0.windows(2).all(|w| t.beats(w[0], w[1]))
    }
}

impl Cycle {
    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Consecutive pairs in cycle order, ending with the wrap-around arc.
    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let len = self.0.len();
        (0..len).map(move |i| (self.0[i], self.0[(i + 1) % len]))
    }

    pub fn is_valid_in(&self, t: &Tournament) -> bool {
        self.0.len() >= 3 && distinct(&self.0) && self.arcs().all(|(x, y)| t.beats(x, y))
    }

    /// The same cycle rotated so that `v` comes first.
    pub fn rotated_to(&self, v: VertexId) -> Option<Cycle> {
        let i = self.0.iter().position(|&w| w == v)?;
        let mut c = self.0[i..].to_vec();
        c.extend_from_slice(&self.0[..i]);
        Some(Cycle(c))
    }
}

fn distinct(vs: &[VertexId]) -> bool {
    let mut s = vs.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

/// Result of [`hamiltonian_cycle`]: one-vertex subsets have no cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Spanning {
    Singleton(VertexId),
    Cycle(Cycle),
}

impl Spanning {
    pub fn vertices(&self) -> &[VertexId] {
        match self {
            Spanning::Singleton(v) => std::slice::from_ref(v),
            Spanning::Cycle(c) => c.vertices(),
        }
    }
}

/// Hamiltonian path of the subtournament induced by `subset`, built by
/// inserting vertices in ascending order at the first valid slot (front,
/// then between consecutive vertices, then back).
pub fn hamiltonian_path(t: &Tournament, subset: &[VertexId]) -> Result<Path> {
    let s = normalize_subset(t, subset)?;
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut path: Vec<VertexId> = Vec::with_capacity(s.len());
    for &v in &s {
        let slot = if path.first().is_none_or(|&f| t.beats(v, f)) {
            0
        } else {
            path.windows(2)
                .position(|w| t.beats(w[0], v) && t.beats(v, w[1]))
                .map_or(path.len(), |i| i + 1)
        };
        path.insert(slot, v);
    }
    Ok(Path(path))
}

/// Hamiltonian cycle of a strong induced subtournament.
///
/// Seeds a 3-cycle, then grows it: an outside vertex with both an in- and an
/// out-neighbour on the cycle is spliced in at a switch `x -> z -> y`. When
/// no such vertex exists the outside splits into vertices beating the whole
/// cycle and vertices beaten by it; an arc `l -> w` from the latter to the
/// former gives `v1 .. vt l w`, absorbing two vertices at once.
pub fn hamiltonian_cycle(t: &Tournament, subset: &[VertexId]) -> Result<Spanning> {
    let s = normalize_subset(t, subset)?;
    match s.len() {
        0 => return Err(Error::EmptySubset),
        1 => return Ok(Spanning::Singleton(s[0])),
        2 => return Err(Error::OrderTwoSubset),
        _ => {}
    }
    if !is_strong_subset(t, &s)? {
        return Err(Error::NotStrongSubset);
    }

    let mut cycle = seed_triangle(t, &s).ok_or(Error::NotStrongSubset)?;
    let mut on_cycle = vec![false; t.n()];
    for &v in &cycle {
        on_cycle[v] = true;
    }

    while cycle.len() < s.len() {
        let outside: Vec<VertexId> = s.iter().copied().filter(|&v| !on_cycle[v]).collect();
        let spliced = outside.iter().find_map(|&z| {
            let len = cycle.len();
            (0..len)
                .find(|&i| t.beats(cycle[i], z) && t.beats(z, cycle[(i + 1) % len]))
                .map(|i| (z, i + 1))
        });
        if let Some((z, at)) = spliced {
            cycle.insert(at, z);
            on_cycle[z] = true;
            continue;
        }

        // Every outside vertex now beats the whole cycle or is beaten by it.
        let first = cycle[0];
        let (dominators, dominated): (Vec<_>, Vec<_>) =
            outside.iter().partition(|&&z| t.beats(z, first));
        let (l, w) = dominated
            .iter()
            .find_map(|&l| dominators.iter().find(|&&w| t.beats(l, w)).map(|&w| (l, w)))
            .ok_or(Error::NotStrongSubset)?;
        cycle.push(l);
        cycle.push(w);
        on_cycle[l] = true;
        on_cycle[w] = true;
    }
    Ok(Spanning::Cycle(Cycle(cycle)))
}

/// Lowest-index vertex `v` with in- and out-neighbours in `s`, its lowest
/// out-neighbour `u`, and the lowest `w` closing `v -> u -> w -> v`; falls
/// back to a full triple scan.
fn seed_triangle(t: &Tournament, s: &[VertexId]) -> Option<Vec<VertexId>> {
    let v = s
        .iter()
        .copied()
        .find(|&v| s.iter().any(|&u| t.beats(v, u)) && s.iter().any(|&u| t.beats(u, v)))?;
    let u = s.iter().copied().find(|&u| t.beats(v, u))?;
    if let Some(w) = s.iter().copied().find(|&w| t.beats(u, w) && t.beats(w, v)) {
        return Some(vec![v, u, w]);
    }
    for (i, &a) in s.iter().enumerate() {
        for &b in &s[i + 1..] {
            for &c in s {
                if c == a || c == b {
                    continue;
                }
                if t.beats(a, b) && t.beats(b, c) && t.beats(c, a) {
                    return Some(vec![a, b, c]);
                }
                if t.beats(b, a) && t.beats(a, c) && t.beats(c, b) {
                    return Some(vec![b, a, c]);
                }
            }
        }
    }
    None
}

/// Hamiltonian path of a strong induced subtournament ending at `target`:
/// the Hamiltonian cycle cut just after `target`.
pub fn path_ending_at(t: &Tournament, subset: &[VertexId], target: VertexId) -> Result<Path> {
    let s = normalize_subset(t, subset)?;
    if s.binary_search(&target).is_err() {
        return Err(Error::TargetNotInSubset(target));
    }
    let cycle = match hamiltonian_cycle(t, &s)? {
        Spanning::Singleton(v) => return Ok(Path(vec![v])),
        Spanning::Cycle(c) => c,
    };
    let i = cycle
        .0
        .iter()
        .position(|&v| v == target)
        .expect("target on cycle");
    let mut path = cycle.0[i + 1..].to_vec();
    path.extend_from_slice(&cycle.0[..=i]);
    Ok(Path(path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::is_strong;
    use crate::tournament::fixtures::*;
    use crate::tournament::{enumerate_all, random_tournament};
    use proptest::prelude::*;

    #[test]
    fn path_examples() {
        assert_eq!(
            hamiltonian_path(&transitive_triangle(), &[0, 1, 2])
                .unwrap()
                .0,
            vec![0, 1, 2]
        );
        let p = hamiltonian_path(&tri_cycle(), &[0, 1, 2]).unwrap();
        assert_eq!(p.0, vec![2, 0, 1]);
        assert!(p.is_valid_in(&tri_cycle()));
        assert_eq!(hamiltonian_path(&t4a(), &[3]).unwrap().0, vec![3]);
        assert_eq!(hamiltonian_path(&t4a(), &[]), Err(Error::EmptySubset));
    }

    #[test]
    fn cycle_examples() {
        assert_eq!(
            hamiltonian_cycle(&tri_cycle(), &[0, 1, 2]).unwrap(),
            Spanning::Cycle(Cycle(vec![0, 1, 2]))
        );
        assert_eq!(
            hamiltonian_cycle(&t4a(), &[2]).unwrap(),
            Spanning::Singleton(2)
        );
        assert!(Cycle(vec![0, 1, 2, 3]).is_valid_in(&t4a()));
        match hamiltonian_cycle(&t4a(), &[0, 1, 2, 3]).unwrap() {
            Spanning::Cycle(c) => {
                assert_eq!(c.len(), 4);
                assert!(c.is_valid_in(&t4a()));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            hamiltonian_cycle(&t4a(), &[2, 3]),
            Err(Error::OrderTwoSubset)
        );
        assert_eq!(
            hamiltonian_cycle(&transitive_triangle(), &[0, 1, 2]),
            Err(Error::NotStrongSubset)
        );
        assert_eq!(hamiltonian_cycle(&t4a(), &[]), Err(Error::EmptySubset));
    }

    #[test]
    fn two_vertex_absorption() {
        // Seed triangle 0 -> 1 -> 2 -> 0; vertex 3 is beaten by the triangle,
        // vertex 4 beats it, and 3 -> 4 closes the extension.
        let t = Tournament::from_fn(5, |u, v| match (u, v) {
            (0, 1) | (1, 2) | (3, 4) => true,
            (0, 2) => false,
            (_, 3) => true,
            (_, 4) => false,
            _ => unreachable!(),
        });
        assert!(is_strong(&t));
        let c = hamiltonian_cycle(&t, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(c, Spanning::Cycle(Cycle(vec![0, 1, 2, 3, 4])));
    }

    #[test]
    fn path_ending_examples() {
        assert_eq!(path_ending_at(&t4a(), &[3], 3).unwrap().0, vec![3]);
        assert_eq!(
            path_ending_at(&tri_cycle(), &[0, 1, 2], 2).unwrap().0,
            vec![0, 1, 2]
        );
        assert_eq!(
            path_ending_at(&tri_cycle(), &[0, 1], 2),
            Err(Error::TargetNotInSubset(2))
        );
        assert_eq!(
            path_ending_at(&transitive_triangle(), &[0, 1, 2], 2),
            Err(Error::NotStrongSubset)
        );
    }

    #[test]
    fn exhaustive_small_cycles() {
        for n in 3..=6 {
            for t in enumerate_all(n).unwrap().filter(is_strong) {
                let all: Vec<_> = (0..n).collect();
                match hamiltonian_cycle(&t, &all).unwrap() {
                    Spanning::Cycle(c) => assert!(c.is_valid_in(&t) && c.len() == n),
                    other => panic!("{other:?}"),
                }
                for target in 0..n {
                    let p = path_ending_at(&t, &all, target).unwrap();
                    assert!(p.is_valid_in(&t) && p.len() == n);
                    assert_eq!(*p.0.last().unwrap(), target);
                }
            }
        }
    }

    fn random_subset(n: usize, mask: u64) -> Vec<VertexId> {
        let s: Vec<_> = (0..n)
            .filter(|v| mask.rotate_left(*v as u32) & 1 == 1)
            .collect();
        if s.is_empty() {
            vec![0]
        } else {
            s
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn random_paths_and_cycles(n in 1usize..=50, seed: u64, mask: u64) {
            let t = random_tournament(n, seed).unwrap();
            let s = random_subset(n, mask);
            let p = hamiltonian_path(&t, &s).unwrap();
            prop_assert!(p.is_valid_in(&t));
            let mut covered = p.0.clone();
            covered.sort_unstable();
            prop_assert_eq!(&covered, &s);

            if s.len() >= 3 && is_strong_subset(&t, &s).unwrap() {
                let Spanning::Cycle(c) = hamiltonian_cycle(&t, &s).unwrap() else {
                    panic!("expected a cycle");
                };
                prop_assert!(c.is_valid_in(&t));
                let mut covered = c.0.clone();
                covered.sort_unstable();
                prop_assert_eq!(&covered, &s);
                let target = s[(seed % s.len() as u64) as usize];
                let p = path_ending_at(&t, &s, target).unwrap();
                prop_assert!(p.is_valid_in(&t));
                prop_assert_eq!(*p.0.last().unwrap(), target);
            }
        }
    }
}
