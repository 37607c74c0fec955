//! Construction of a chain of cycles `C_3 .. C_n` through a king `k` of a
//! strong tournament, with `k` a king of every induced subtournament.
//!
//! With `A = N+(k)`, `B = N-(k)` and `A_1 .. A_r` the ordered strong blocks of
//! `A`:
//!
//! 1. a shortest path from a vertex of `A_r` back to `k` ends with an arc
//!    `a* -> b* -> k`, `a*` in `A_r`, `b*` in `B`;
//! 2. a Hamiltonian path of `A_1 .. A_{r-1}` followed by one of `A_r` ending
//!    at `a*` gives the spine `a_1 .. a_d`;
//! 3. `k, a_{d-i+1} .. a_d, b*` is a cycle of length `i + 2` for `i` in
//!    `1..=d`, each obtained from the previous by inserting a spine vertex
//!    right after `k`;
//! 4. every remaining vertex lies in `B`, so it beats `k`, and some vertex
//!    of `A` beats it; walking the cycle from `k` finds an arc `x -> y` with
//!    `x -> z -> y`, and `z` is spliced in.
//!
//! Every choice takes the lowest index, so output is deterministic.

use std::collections::VecDeque;

use crate::analysis::{condensation, king_context, KingContext, ReidPartition};
use crate::error::{Error, Result};
use crate::hamiltonian::{hamiltonian_path, path_ending_at, Cycle, Path};
use crate::tournament::{Tournament, VertexId};

pub use crate::certificate::{Certificate, CycleChain, ExitEdge, InsertionRecord};

/// Cycles `C_3 .. C_{d+2}` and the records linking them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ladder {
    pub cycles: Vec<Cycle>,
    pub insertions: Vec<InsertionRecord>,
}

fn contradiction(msg: impl Into<String>) -> Error {
    Error::InternalContradiction(msg.into())
}

/// BFS from the lowest vertex of the last Reid block to the king, neighbours
/// in ascending order; the last two interior vertices are `(a*, b*)`.
pub fn find_exit_edge(t: &Tournament, ctx: &KingContext, reid: &ReidPartition) -> Result<ExitEdge> {
    let last = reid.last();
    let &start = last
        .first()
        .ok_or_else(|| contradiction("empty Reid partition"))?;
    let k = ctx.k;

    let mut parent = vec![usize::MAX; t.n()];
    parent[start] = start;
    let mut queue = VecDeque::from([start]);
    'bfs: while let Some(v) = queue.pop_front() {
        for u in t.out_neighbors(v) {
            if parent[u] == usize::MAX {
                parent[u] = v;
                if u == k {
                    break 'bfs;
                }
                queue.push_back(u);
            }
        }
    }
    if parent[k] == usize::MAX {
        return Err(contradiction(format!("king {k} unreachable from {start}")));
    }

    let mut path = vec![k];
    while *path.last().unwrap() != start {
        path.push(parent[*path.last().unwrap()]);
    }
    path.reverse();
    if path.len() < 3 {
        return Err(contradiction(format!(
            "{start} -> {k} contradicts {k} -> {start}"
        )));
    }
    let exit = ExitEdge {
        a_star: path[path.len() - 3],
        b_star: path[path.len() - 2],
    };
    if !last.contains(&exit.a_star) || ctx.b.binary_search(&exit.b_star).is_err() {
        return Err(contradiction(format!(
            "shortest path {path:?} leaves the last block before entering B"
        )));
    }
    Ok(exit)
}

/// Hamiltonian path through `A` ending at `a*`.
pub fn spine_path(t: &Tournament, reid: &ReidPartition, exit: &ExitEdge) -> Result<Path> {
    let (last, head) = reid
        .blocks
        .split_last()
        .ok_or_else(|| contradiction("empty Reid partition"))?;
    let mut spine = if head.is_empty() {
        Vec::new()
    } else {
        hamiltonian_path(t, &head.concat())?.0
    };
    spine.extend(path_ending_at(t, last, exit.a_star)?.0);
    Ok(Path(spine))
}

/// `C_{i+2} = (k, a_{d-i+1} .. a_d, b*)` for `i` in `1..=d`.
pub fn build_ladder(ctx: &KingContext, spine: &Path, exit: &ExitEdge) -> Ladder {
    let a = spine.vertices();
    let d = a.len();
    let mut cycles = Vec::with_capacity(d);
    let mut insertions = Vec::with_capacity(d.saturating_sub(1));
    for i in 1..=d {
        let mut c = Vec::with_capacity(i + 2);
        c.push(ctx.k);
        c.extend_from_slice(&a[d - i..]);
        c.push(exit.b_star);
        cycles.push(Cycle(c));
        if i < d {
            insertions.push(InsertionRecord {
                x: ctx.k,
                y: a[d - i],
                z: a[d - i - 1],
            });
        }
    }
    Ladder { cycles, insertions }
}

/// Splices the lowest-index vertex outside `c` into the first arc `x -> y`
/// (walking from the king) with `x -> z -> y`.
pub fn extend_cycle(
    t: &Tournament,
    ctx: &KingContext,
    c: &Cycle,
) -> Result<(Cycle, InsertionRecord)> {
    let cv = c.vertices();
    if cv.first() != Some(&ctx.k) {
        return Err(Error::PreconditionViolated(format!(
            "cycle does not start at king {}",
            ctx.k
        )));
    }
    if cv.len() >= t.n() {
        return Err(Error::CycleAlreadySpanning);
    }
    let mut on_cycle = vec![false; t.n()];
    for &v in cv {
        on_cycle[v] = true;
    }
    if let Some(&a) = ctx.a.iter().find(|&&a| !on_cycle[a]) {
        return Err(Error::PreconditionViolated(format!(
            "out-neighbour {a} of the king is off the cycle"
        )));
    }
    let z = (0..t.n())
        .find(|&v| !on_cycle[v])
        .expect("a non-spanning cycle misses some vertex");
    let slot = c
        .arcs()
        .position(|(x, y)| t.beats(x, z) && t.beats(z, y))
        .ok_or_else(|| contradiction(format!("no insertion slot for {z} on {cv:?}")))?;
    let record = InsertionRecord {
        x: cv[slot],
        y: cv[(slot + 1) % cv.len()],
        z,
    };
    let mut next = Vec::with_capacity(cv.len() + 1);
    next.extend_from_slice(&cv[..=slot]);
    next.push(z);
    next.extend_from_slice(&cv[slot + 1..]);
    Ok((Cycle(next), record))
}

pub fn build_chain(t: &Tournament, k: VertexId) -> Result<CycleChain> {
    let context = king_context(t, k)?;
    let reid = condensation(t, &context.a)?;
    let exit = find_exit_edge(t, &context, &reid)?;
    let spine = spine_path(t, &reid, &exit)?;
    let Ladder {
        mut cycles,
        mut insertions,
    } = build_ladder(&context, &spine, &exit);
    cycles.reserve(t.n() - 2 - cycles.len());
    while cycles.last().map_or(0, Cycle::len) < t.n() {
        let (next, record) = extend_cycle(t, &context, cycles.last().expect("ladder is nonempty"))?;
        cycles.push(next);
        insertions.push(record);
    }
    Ok(CycleChain {
        king: k,
        cycles,
        insertions,
        context,
        reid,
        exit,
        spine,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{is_king, is_strong, kings};
    use crate::tournament::fixtures::*;
    use crate::tournament::random_strong_tournament;
    use proptest::prelude::*;

    fn parts(t: &Tournament, k: VertexId) -> (KingContext, ReidPartition) {
        let ctx = king_context(t, k).unwrap();
        let reid = condensation(t, &ctx.a).unwrap();
        (ctx, reid)
    }

    #[test]
    fn exit_edge_examples() {
        let (ctx, reid) = parts(&tri_cycle(), 0);
        assert_eq!(
            find_exit_edge(&tri_cycle(), &ctx, &reid).unwrap(),
            ExitEdge {
                a_star: 1,
                b_star: 2
            }
        );
        let (ctx, reid) = parts(&t4a(), 1);
        assert_eq!(reid.blocks, vec![vec![2], vec![3]]);
        assert_eq!(
            find_exit_edge(&t4a(), &ctx, &reid).unwrap(),
            ExitEdge {
                a_star: 3,
                b_star: 0
            }
        );
    }

    #[test]
    fn spine_examples() {
        let (ctx, reid) = parts(&tri_cycle(), 0);
        let exit = find_exit_edge(&tri_cycle(), &ctx, &reid).unwrap();
        assert_eq!(spine_path(&tri_cycle(), &reid, &exit).unwrap().0, vec![1]);
        let (ctx, reid) = parts(&t4a(), 1);
        let exit = find_exit_edge(&t4a(), &ctx, &reid).unwrap();
        assert_eq!(spine_path(&t4a(), &reid, &exit).unwrap().0, vec![2, 3]);
    }

    #[test]
    fn ladder_examples() {
        let (ctx, reid) = parts(&t4a(), 1);
        let exit = find_exit_edge(&t4a(), &ctx, &reid).unwrap();
        let spine = spine_path(&t4a(), &reid, &exit).unwrap();
        let ladder = build_ladder(&ctx, &spine, &exit);
        assert_eq!(
            ladder.cycles,
            vec![Cycle(vec![1, 3, 0]), Cycle(vec![1, 2, 3, 0])]
        );
        assert_eq!(
            ladder.insertions,
            vec![InsertionRecord { x: 1, y: 3, z: 2 }]
        );

        let (ctx, reid) = parts(&tri_cycle(), 0);
        let exit = find_exit_edge(&tri_cycle(), &ctx, &reid).unwrap();
        let ladder = build_ladder(&ctx, &Path(vec![1]), &exit);
        assert_eq!(ladder.cycles, vec![Cycle(vec![0, 1, 2])]);
        assert!(ladder.insertions.is_empty());
    }

    #[test]
    fn extend_examples() {
        let ctx = king_context(&t4a(), 1).unwrap();
        assert_eq!(
            extend_cycle(&t4a(), &ctx, &Cycle(vec![1, 2, 3, 0])),
            Err(Error::CycleAlreadySpanning)
        );
        assert!(matches!(
            extend_cycle(&t4a(), &ctx, &Cycle(vec![3, 0, 1])),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            extend_cycle(&t4a(), &ctx, &Cycle(vec![1, 3, 0])),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn extend_appends_at_wrap_around() {
        // 0 -> 1 -> 2 -> 0 plus 3 with 2 -> 3 -> 0 and 1 -> 3: king 0 has
        // A = {1}, B = {2, 3}. Starting from (0, 1, 2), vertex 3 fits only
        // between 2 and 0.
        let t = Tournament::from_fn(4, |u, v| {
            matches!((u, v), (0, 1) | (1, 2) | (1, 3) | (2, 3))
        });
        assert!(is_strong(&t) && is_king(&t, 0).unwrap());
        let ctx = king_context(&t, 0).unwrap();
        let (c, r) = extend_cycle(&t, &ctx, &Cycle(vec![0, 1, 2])).unwrap();
        assert_eq!(c, Cycle(vec![0, 1, 2, 3]));
        assert_eq!(r, InsertionRecord { x: 2, y: 0, z: 3 });
    }

    #[test]
    fn chain_examples() {
        let c = build_chain(&tri_cycle(), 0).unwrap();
        assert_eq!(c.cycles, vec![Cycle(vec![0, 1, 2])]);
        assert!(c.insertions.is_empty());

        let c = build_chain(&t4a(), 1).unwrap();
        assert_eq!(
            c.cycles,
            vec![Cycle(vec![1, 3, 0]), Cycle(vec![1, 2, 3, 0])]
        );
        assert_eq!(c.insertions, vec![InsertionRecord { x: 1, y: 3, z: 2 }]);

        assert_eq!(
            build_chain(&transitive_triangle(), 0),
            Err(Error::NotStrong)
        );
        assert_eq!(build_chain(&t4a(), 3), Err(Error::NotAKing(3)));
        assert_eq!(
            build_chain(&Tournament::from_fn(1, |_, _| true), 0),
            Err(Error::OrderTooSmall(1))
        );
    }

    proptest! {
        #[test]
        fn structural_properties(n in 3usize..40, seed: u64) {
            let t = random_strong_tournament(n, seed, 1000).unwrap();
            for k in kings(&t) {
                let chain = build_chain(&t, k).unwrap();
                let d = chain.context.d;
                prop_assert_eq!(chain.cycles.len(), n - 2);
                prop_assert_eq!(chain.insertions.len(), n - 3);
                prop_assert!(chain.spine.is_valid_in(&t));
                prop_assert_eq!(chain.spine.0.last(), Some(&chain.exit.a_star));
                prop_assert_eq!(chain.cycles[0].vertices(), &[k, chain.exit.a_star, chain.exit.b_star][..]);
                for (i, c) in chain.cycles.iter().enumerate() {
                    prop_assert!(c.is_valid_in(&t));
                    prop_assert_eq!(c.len(), i + 3);
                    prop_assert_eq!(c.vertices()[0], k);
                    if i < d {
                        let mut got = c.0.clone();
                        got.sort_unstable();
                        let mut want = vec![k, chain.exit.b_star];
                        want.extend_from_slice(&chain.spine.0[d - 1 - i..]);
                        want.sort_unstable();
                        prop_assert_eq!(got, want);
                    } else {
                        prop_assert!(chain.context.a.iter().all(|a| c.0.contains(a)));
                    }
                }
                prop_assert_eq!(build_chain(&t, k).unwrap(), chain);
            }
        }
    }
}
