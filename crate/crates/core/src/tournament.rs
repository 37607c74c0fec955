//! Tournament representation, construction, generation, enumeration and
//! serialization.
//!
//! Vertices are `0..n`. The orientation of every unordered pair `{u, v}` with
//! `u < v` is one bit, stored at the pair's lexicographic index; a set bit
//! means `u -> v`. A per-vertex out-neighbourhood bitset is kept alongside for
//! constant-time arc queries.

use std::fmt::Write as _;
use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;

/// Largest order accepted by [`enumerate_all`].
pub const MAX_ENUMERATION_ORDER: usize = 8;

/// Number of unordered pairs on `n` vertices.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Lexicographic index of the pair `{u, v}`, `u != v`.
pub fn pair_index(n: usize, u: VertexId, v: VertexId) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    words: usize,
    pairs: Vec<u64>,
    rows: Vec<u64>,
}

impl std::fmt::Debug for Tournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Tournament")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// An explicit list of arcs `u -> v` on `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<(VertexId, VertexId)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Dot,
    Json,
}

impl Tournament {
    fn from_pair_bits(n: usize, pairs: Vec<u64>) -> Tournament {
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![0u64; n * words];
        let mut idx = 0;
        for u in 0..n {
            for v in (u + 1)..n {
                let (from, to) = if pairs[idx / 64] >> (idx % 64) & 1 == 1 {
                    (u, v)
                } else {
                    (v, u)
                };
                rows[from * words + to / 64] |= 1 << (to % 64);
                idx += 1;
            }
        }
        Tournament {
            n,
            words,
            pairs,
            rows,
        }
    }

    /// The tournament whose pair orientation bits are the binary digits of
    /// `index`. Requires `n(n-1)/2 <= 64`.
    pub fn from_index(n: usize, index: u64) -> Tournament {
        debug_assert!(pair_count(n) <= 64);
        Tournament::from_pair_bits(n, vec![index])
    }

    /// Builds a tournament from an explicit arc list, rejecting anything that
    /// is not a complete orientation.
    pub fn from_edge_list(spec: &EdgeList) -> Result<Tournament> {
        let n = spec.n;
        if n == 0 {
            return Err(Error::EmptyTournament);
        }
        let m = pair_count(n);
        let mut pairs = vec![0u64; m.div_ceil(64).max(1)];
        let mut seen = vec![false; m];
        for &(u, v) in &spec.edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { v: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let idx = pair_index(n, u, v);
            if seen[idx] {
                return Err(Error::DuplicatePair {
                    u: u.min(v),
                    v: u.max(v),
                });
            }
            seen[idx] = true;
            if u < v {
                pairs[idx / 64] |= 1 << (idx % 64);
            }
        }
        if let Some(idx) = seen.iter().position(|s| !s) {
            let (u, v) = pair_at(n, idx);
            return Err(Error::MissingPair { u, v });
        }
        Ok(Tournament::from_pair_bits(n, pairs))
    }

    /// Builds a tournament from an orientation predicate called once per
    /// pair `u < v`; `true` means `u -> v`.
    pub fn from_fn(
        n: usize,
        mut lower_beats_higher: impl FnMut(VertexId, VertexId) -> bool,
    ) -> Tournament {
        let m = pair_count(n);
        let mut pairs = vec![0u64; m.div_ceil(64).max(1)];
        let mut idx = 0;
        for u in 0..n {
            for v in (u + 1)..n {
                if lower_beats_higher(u, v) {
                    pairs[idx / 64] |= 1 << (idx % 64);
                }
                idx += 1;
            }
        }
        Tournament::from_pair_bits(n, pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Orientation bits in pair-index order.
    pub fn pair_bits(&self) -> &[u64] {
        &self.pairs
    }

    /// Whether the arc `u -> v` exists. Always false for `u == v`.
    #[inline]
    pub fn beats(&self, u: VertexId, v: VertexId) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Out-neighbourhood of `v` as a bitset of `words()` words.
    #[inline]
    pub fn out_row(&self, v: VertexId) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Number of `u64` words per bitset row.
    pub fn words(&self) -> usize {
        self.words
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_row(v)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn out_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n).filter(move |&u| self.beats(v, u))
    }

    pub fn in_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n).filter(move |&u| self.beats(u, v))
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { v, n: self.n })
        }
    }

    /// `(out_set, in_set)` of `v`, both ascending.
    pub fn neighborhood(&self, v: VertexId) -> Result<(Vec<VertexId>, Vec<VertexId>)> {
        self.check_vertex(v)?;
        Ok((0..self.n)
            .filter(|&u| u != v)
            .partition(|&u| self.beats(v, u)))
    }

    /// All arcs, ascending by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.n).flat_map(move |u| self.out_neighbors(u).map(move |v| (u, v)))
    }

    pub fn edge_list(&self) -> EdgeList {
        EdgeList {
            n: self.n,
            edges: self.edges().collect(),
        }
    }

    pub fn export(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut out = format!("{}\n", self.n);
                for (u, v) in self.edges() {
                    let _ = writeln!(out, "{u} {v}");
                }
                out
            }
            Format::Dot => self.to_dot(|_| None, |_, _| None),
            Format::Json => {
                let mut out =
                    serde_json::to_string(&self.edge_list()).expect("edge list serializes");
                out.push('\n');
                out
            }
        }
    }

    /// DOT output with optional per-vertex and per-arc attribute strings.
    pub fn to_dot(
        &self,
        vertex_attrs: impl Fn(VertexId) -> Option<String>,
        edge_attrs: impl Fn(VertexId, VertexId) -> Option<String>,
    ) -> String {
        let mut out = String::from("digraph tournament {\n");
        for v in 0..self.n {
            match vertex_attrs(v) {
                Some(a) => {
                    let _ = writeln!(out, "    {v} [{a}];");
                }
                None => {
                    let _ = writeln!(out, "    {v};");
                }
            }
        }
        for (u, v) in self.edges() {
            match edge_attrs(u, v) {
                Some(a) => {
                    let _ = writeln!(out, "    {u} -> {v} [{a}];");
                }
                None => {
                    let _ = writeln!(out, "    {u} -> {v};");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

fn pair_at(n: usize, mut idx: usize) -> (VertexId, VertexId) {
    for u in 0..n {
        let row = n - u - 1;
        if idx < row {
            return (u, u + 1 + idx);
        }
        idx -= row;
    }
    unreachable!("pair index out of range")
}

/// Parses the text format: a line with `n`, then one `u v` line per arc.
/// Blank lines are ignored; arc order is free.
pub fn parse_text(input: &str) -> Result<Tournament> {
    let mut lines = input.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::Parse(format!("bad order line {header:?}")))?;
    let mut edges = Vec::with_capacity(pair_count(n));
    for line in lines {
        let mut parts = line.split_whitespace();
        let parse = |s: Option<&str>| -> Result<VertexId> {
            s.and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad arc line {line:?}")))
        };
        let u = parse(parts.next())?;
        let v = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(Error::Parse(format!("bad arc line {line:?}")));
        }
        edges.push((u, v));
    }
    Tournament::from_edge_list(&EdgeList { n, edges })
}

pub fn parse_json(input: &str) -> Result<Tournament> {
    let list: EdgeList = serde_json::from_str(input)?;
    Tournament::from_edge_list(&list)
}

/// Every pair oriented by an independent fair coin from a ChaCha8 stream
/// seeded with `seed`, in pair-index order.
pub fn random_tournament(n: usize, seed: u64) -> Result<Tournament> {
    if n == 0 {
        return Err(Error::EmptyTournament);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(Tournament::from_fn(n, |_, _| rng.gen::<bool>()))
}

/// Rejection-samples [`random_tournament`] with seeds `seed, seed + 1, ...`
/// until a strong one appears.
pub fn random_strong_tournament(n: usize, seed: u64, max_tries: u64) -> Result<Tournament> {
    if n == 2 {
        return Err(Error::OrderTwoImpossible);
    }
    for i in 0..max_tries {
        let t = random_tournament(n, seed.wrapping_add(i))?;
        if crate::analysis::is_strong(&t) {
            return Ok(t);
        }
    }
    Err(Error::ExhaustedTries(max_tries))
}

/// A contiguous range of enumeration indices on `n` vertices. Index `i`
/// denotes the tournament whose pair bits are the binary digits of `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    n: usize,
    indices: Range<u64>,
}

/// All `2^(n(n-1)/2)` labeled tournaments on `n` vertices, in index order.
pub fn enumerate_all(n: usize) -> Result<Enumeration> {
    if n == 0 {
        return Err(Error::EmptyTournament);
    }
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::OrderTooLarge {
            n,
            max: MAX_ENUMERATION_ORDER,
        });
    }
    Ok(Enumeration {
        n,
        indices: 0..1u64 << pair_count(n),
    })
}

impl Enumeration {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn indices(&self) -> Range<u64> {
        self.indices.clone()
    }

    pub fn total(&self) -> u64 {
        self.indices.end - self.indices.start
    }

    /// Splits into at most `parts` disjoint contiguous ranges covering this
    /// one, in order.
    pub fn split(&self, parts: usize) -> Vec<Enumeration> {
        let parts = (parts.max(1) as u64).min(self.total().max(1));
        let chunk = self.total() / parts;
        let extra = self.total() % parts;
        let mut start = self.indices.start;
        (0..parts)
            .map(|i| {
                let len = chunk + u64::from(i < extra);
                let e = Enumeration {
                    n: self.n,
                    indices: start..start + len,
                };
                start += len;
                e
            })
            .collect()
    }
}

impl Iterator for Enumeration {
    type Item = Tournament;

    fn next(&mut self) -> Option<Tournament> {
        let i = self.indices.next()?;
        Some(Tournament::from_index(self.n, i))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.indices.size_hint()
    }
}
