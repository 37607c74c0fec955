//! Chain-of-cycles data and its JSON certificate form.
//!
//! The certificate is the contract between construction and verification.
//! Field names are fixed:
//!
//! ```json
//! {"n": 4, "king": 1, "A": [2,3], "B": [0], "reid_blocks": [[2],[3]],
//!  "a_star": 3, "b_star": 0, "spine": [2,3],
//!  "cycles": [[1,3,0],[1,2,3,0]], "insertions": [{"x":1,"y":3,"z":2}],
//!  "tournament": {"n": 4, "edges": [[0,1],[1,2],[1,3],[2,0],[2,3],[3,0]]}}
//! ```

use serde::{Deserialize, Serialize};

use crate::analysis::{KingContext, ReidPartition};
use crate::error::{Error, Result};
use crate::hamiltonian::{Cycle, Path};
use crate::tournament::{EdgeList, Tournament, VertexId};

/// An arc `a_star -> b_star` from the last Reid block into the king's
/// in-set, with `b_star -> king`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExitEdge {
    pub a_star: VertexId,
    pub b_star: VertexId,
}

/// The arc `(x, y)` of one cycle replaced by `x -> z -> y` in the next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsertionRecord {
    pub x: VertexId,
    pub y: VertexId,
    pub z: VertexId,
}

/// Cycles `C_3 .. C_n` through `king`, each starting at `king`, with
/// `insertions[i]` turning `cycles[i]` into `cycles[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleChain {
    pub king: VertexId,
    pub cycles: Vec<Cycle>,
    pub insertions: Vec<InsertionRecord>,
    pub context: KingContext,
    pub reid: ReidPartition,
    pub exit: ExitEdge,
    pub spine: Path,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub king: VertexId,
    #[serde(rename = "A")]
    pub a: Vec<VertexId>,
    #[serde(rename = "B")]
    pub b: Vec<VertexId>,
    pub reid_blocks: Vec<Vec<VertexId>>,
    pub a_star: VertexId,
    pub b_star: VertexId,
    pub spine: Vec<VertexId>,
    pub cycles: Vec<Vec<VertexId>>,
    pub insertions: Vec<InsertionRecord>,
    pub tournament: EdgeList,
}

impl Certificate {
    pub fn new(t: &Tournament, chain: &CycleChain) -> Certificate {
        Certificate {
            n: t.n(),
            king: chain.king,
            a: chain.context.a.clone(),
            b: chain.context.b.clone(),
            reid_blocks: chain.reid.blocks.clone(),
            a_star: chain.exit.a_star,
            b_star: chain.exit.b_star,
            spine: chain.spine.0.clone(),
            cycles: chain.cycles.iter().map(|c| c.0.clone()).collect(),
            insertions: chain.insertions.clone(),
            tournament: t.edge_list(),
        }
    }

    /// Rebuilds the tournament and chain. Only structural consistency is
    /// checked here; whether the chain is correct is for the oracle to say.
    pub fn into_parts(self) -> Result<(Tournament, CycleChain)> {
        if self.tournament.n != self.n {
            return Err(Error::MalformedCertificate(format!(
                "n = {} but the embedded tournament has order {}",
                self.n, self.tournament.n
            )));
        }
        let t = Tournament::from_edge_list(&self.tournament)
            .map_err(|e| Error::MalformedCertificate(format!("embedded tournament: {e}")))?;
        let chain = CycleChain {
            king: self.king,
            cycles: self.cycles.into_iter().map(Cycle).collect(),
            insertions: self.insertions,
            context: KingContext {
                k: self.king,
                d: self.a.len(),
                a: self.a,
                b: self.b,
            },
            reid: ReidPartition {
                blocks: self.reid_blocks,
            },
            exit: ExitEdge {
                a_star: self.a_star,
                b_star: self.b_star,
            },
            spine: Path(self.spine),
        };
        Ok((t, chain))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(input: &str) -> Result<Certificate> {
        Ok(serde_json::from_str(input)?)
    }
}
