//! Structural queries: strong connectivity, the ordered condensation of an
//! induced subtournament, kings, and the king's neighbourhood split.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tournament::{Tournament, VertexId};

/// A king `k` together with its out-set `a`, in-set `b` and `d = |a|`.
/// Both sets are ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KingContext {
    pub k: VertexId,
    pub a: Vec<VertexId>,
    pub b: Vec<VertexId>,
    pub d: usize,
}

/// Strong components of an induced subtournament, ordered so that every arc
/// between two blocks goes from the earlier block to the later one. Each
/// block is ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReidPartition {
    pub blocks: Vec<Vec<VertexId>>,
}

impl ReidPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The last (dominated) block.
    pub fn last(&self) -> &[VertexId] {
        self.blocks.last().map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Sorted, deduplicated copy of `subset`, range-checked against `t`.
pub(crate) fn normalize_subset(t: &Tournament, subset: &[VertexId]) -> Result<Vec<VertexId>> {
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&v) = s.last() {
        t.check_vertex(v)?;
    }
    Ok(s)
}

pub fn is_strong(t: &Tournament) -> bool {
    let all: Vec<VertexId> = (0..t.n()).collect();
    strong_components(t, &all).len() == 1
}

/// Whether the subtournament induced by `subset` is strong.
pub fn is_strong_subset(t: &Tournament, subset: &[VertexId]) -> Result<bool> {
    let s = normalize_subset(t, subset)?;
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    Ok(strong_components(t, &s).len() == 1)
}

pub fn condensation(t: &Tournament, subset: &[VertexId]) -> Result<ReidPartition> {
    let s = normalize_subset(t, subset)?;
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    Ok(ReidPartition {
        blocks: strong_components(t, &s),
    })
}

/// Iterative Tarjan over the subtournament induced by `verts` (ascending).
/// Tarjan emits components sinks-first; the condensation of a tournament is
/// transitive, so reversing gives the unique dominance order.
fn strong_components(t: &Tournament, verts: &[VertexId]) -> Vec<Vec<VertexId>> {
    const UNSEEN: usize = usize::MAX;
    let m = verts.len();
    let mut index = vec![UNSEEN; m];
    let mut low = vec![0; m];
    let mut on_stack = vec![false; m];
    let mut stack = Vec::with_capacity(m);
    let mut call: Vec<(usize, usize)> = Vec::with_capacity(m);
    let mut comps = Vec::new();
    let mut counter = 0;

    for root in 0..m {
        if index[root] != UNSEEN {
            continue;
        }
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, 0));

        while let Some(frame) = call.last_mut() {
            let v = frame.0;
            if frame.1 < m {
                let w = frame.1;
                frame.1 += 1;
                if !t.beats(verts[v], verts[w]) {
                    continue;
                }
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(verts[w]);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps.reverse();
    comps
}

/// Whether every other vertex is reachable from `v` in at most two steps.
pub fn is_king(t: &Tournament, v: VertexId) -> Result<bool> {
    t.check_vertex(v)?;
    Ok(is_king_unchecked(t, v))
}

fn is_king_unchecked(t: &Tournament, v: VertexId) -> bool {
    let n = t.n();
    let mut reach = t.out_row(v).to_vec();
    for u in t.out_neighbors(v) {
        for (r, w) in reach.iter_mut().zip(t.out_row(u)) {
            *r |= w;
        }
    }
    reach[v / 64] |= 1 << (v % 64);
    let full_words = n / 64;
    reach[..full_words].iter().all(|&w| w == u64::MAX)
        && (n.is_multiple_of(64) || reach[full_words].count_ones() as usize == n % 64)
}

/// All kings, ascending. Never empty for `n >= 1`.
pub fn kings(t: &Tournament) -> Vec<VertexId> {
    (0..t.n()).filter(|&v| is_king_unchecked(t, v)).collect()
}

pub fn king_context(t: &Tournament, k: VertexId) -> Result<KingContext> {
    t.check_vertex(k)?;
    if t.n() < 3 {
        return Err(Error::OrderTooSmall(t.n()));
    }
    if !is_strong(t) {
        return Err(Error::NotStrong);
    }
    if !is_king_unchecked(t, k) {
        return Err(Error::NotAKing(k));
    }
    let (a, b) = t.neighborhood(k)?;
    Ok(KingContext {
        k,
        d: a.len(),
        a,
        b,
    })
}
