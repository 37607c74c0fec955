//! Literal-definition checks. Nothing here calls the construction code or
//! the structural queries; only the tournament arc relation is trusted.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::certificate::CycleChain;
use crate::error::{Error, Result};
use crate::tournament::{Tournament, VertexId};

/// Checks of one cycle `C_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCheck {
    /// The required length `i`.
    pub length: usize,
    /// Every consecutive pair, including last-to-first, is an arc.
    pub is_cycle: bool,
    /// Exactly `i` entries, all distinct.
    pub correct_length: bool,
    pub contains_king: bool,
    pub king_of_induced: bool,
}

impl CycleCheck {
    pub fn pass(&self) -> bool {
        self.is_cycle && self.correct_length && self.contains_king && self.king_of_induced
    }
}

/// Check of the insertion turning `C_i` into `C_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepCheck {
    pub from_length: usize,
    pub valid_insertion: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub cycles: Vec<CycleCheck>,
    pub steps: Vec<StepCheck>,
    pub pass: bool,
    pub first_failure: Option<String>,
}

/// Whether `k` reaches every other vertex of `subset` in at most two steps
/// inside the subtournament induced by `subset`.
pub fn brute_is_king_of_induced(t: &Tournament, k: VertexId, subset: &[VertexId]) -> Result<bool> {
    for &v in subset {
        t.check_vertex(v)?;
    }
    if !subset.contains(&k) {
        return Err(Error::KingNotInSubset(k));
    }
    for &v in subset {
        if v == k || t.beats(k, v) {
            continue;
        }
        let mut reached = false;
        for &w in subset {
            if t.beats(k, w) && t.beats(w, v) {
                reached = true;
                break;
            }
        }
        if !reached {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All kings of `t` by the two-step definition.
pub fn brute_kings(t: &Tournament) -> Vec<VertexId> {
    let all: Vec<VertexId> = (0..t.n()).collect();
    all.iter()
        .copied()
        .filter(|&k| brute_is_king_of_induced(t, k, &all).unwrap_or(false))
        .collect()
}

/// Strong connectivity by transitive closure.
pub fn brute_is_strong(t: &Tournament) -> bool {
    let n = t.n();
    let mut reach = vec![false; n * n];
    for u in 0..n {
        for v in 0..n {
            reach[u * n + v] = u == v || t.beats(u, v);
        }
    }
    for w in 0..n {
        for u in 0..n {
            if reach[u * n + w] {
                for v in 0..n {
                    if reach[w * n + v] {
                        reach[u * n + v] = true;
                    }
                }
            }
        }
    }
    reach.iter().all(|&r| r)
}

fn is_closed_walk(t: &Tournament, c: &[VertexId]) -> bool {
    !c.is_empty() && (0..c.len()).all(|i| t.beats(c[i], c[(i + 1) % c.len()]))
}

fn sorted_set(c: &[VertexId]) -> Vec<VertexId> {
    let mut s = c.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

/// Checks every clause of the chain-of-cycles claim for `chain` in `t`.
/// Structurally inconsistent input (wrong counts, out-of-range vertices) is
/// an error rather than a failing report.
pub fn verify_chain(t: &Tournament, chain: &CycleChain) -> Result<VerificationReport> {
    let n = t.n();
    let k = chain.king;
    let malformed = |msg: String| Err(Error::MalformedCertificate(msg));
    if k >= n {
        return malformed(format!("king {k} out of range for order {n}"));
    }
    if n < 3 {
        return malformed(format!("order {n} has no cycles"));
    }
    if chain.cycles.len() != n - 2 {
        return malformed(format!(
            "expected {} cycles, found {}",
            n - 2,
            chain.cycles.len()
        ));
    }
    if chain.insertions.len() != n - 3 {
        return malformed(format!(
            "expected {} insertion records, found {}",
            n - 3,
            chain.insertions.len()
        ));
    }
    for c in &chain.cycles {
        if let Some(&v) = c.vertices().iter().find(|&&v| v >= n) {
            return malformed(format!("cycle vertex {v} out of range"));
        }
    }
    for r in &chain.insertions {
        if let Some(v) = [r.x, r.y, r.z].into_iter().find(|&v| v >= n) {
            return malformed(format!("insertion vertex {v} out of range"));
        }
    }

    let mut first_failure = None;
    let mut fail = |msg: String| {
        if first_failure.is_none() {
            first_failure = Some(msg);
        }
    };

    let mut cycles = Vec::with_capacity(chain.cycles.len());
    for (idx, c) in chain.cycles.iter().enumerate() {
        let c = c.vertices();
        let length = idx + 3;
        let contains_king = c.contains(&k);
        let check = CycleCheck {
            length,
            is_cycle: is_closed_walk(t, c),
            correct_length: c.len() == length && sorted_set(c).len() == length,
            contains_king,
            king_of_induced: contains_king && brute_is_king_of_induced(t, k, c)?,
        };
        for (ok, what) in [
            (check.is_cycle, "is not a directed cycle"),
            (
                check.correct_length,
                "does not have exactly that many distinct vertices",
            ),
            (check.contains_king, "does not contain the king"),
            (
                check.king_of_induced,
                "does not have the king as a king of its induced subtournament",
            ),
        ] {
            if !ok {
                fail(format!("C_{length} {c:?} {what}"));
            }
        }
        cycles.push(check);
    }

    let mut steps = Vec::with_capacity(chain.insertions.len());
    for (idx, r) in chain.insertions.iter().enumerate() {
        let prev = chain.cycles[idx].vertices();
        let next = chain.cycles[idx + 1].vertices();
        let consecutive =
            (0..prev.len()).any(|i| prev[i] == r.x && prev[(i + 1) % prev.len()] == r.y);
        let arcs = t.beats(r.x, r.z) && t.beats(r.z, r.y);
        let fresh = !prev.contains(&r.z);
        let mut grown = prev.to_vec();
        grown.push(r.z);
        let valid_insertion =
            consecutive && arcs && fresh && sorted_set(&grown) == sorted_set(next);
        if !valid_insertion {
            fail(format!(
                "insertion ({}, {}, {}) does not turn C_{} into C_{}",
                r.x,
                r.y,
                r.z,
                idx + 3,
                idx + 4
            ));
        }
        steps.push(StepCheck {
            from_length: idx + 3,
            valid_insertion,
        });
    }

    let pass = cycles.iter().all(CycleCheck::pass) && steps.iter().all(|s| s.valid_insertion);
    Ok(VerificationReport {
        cycles,
        steps,
        pass,
        first_failure,
    })
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "pass" } else { "FAIL" };
        for c in &self.cycles {
            writeln!(
                f,
                "C_{}: (a) cycle {} (b) length {} (c) king {} (d) king-of-induced {}",
                c.length,
                mark(c.is_cycle),
                mark(c.correct_length),
                mark(c.contains_king),
                mark(c.king_of_induced)
            )?;
        }
        for s in &self.steps {
            writeln!(
                f,
                "C_{} -> C_{}: (e) insertion {}",
                s.from_length,
                s.from_length + 1,
                mark(s.valid_insertion)
            )?;
        }
        match &self.first_failure {
            None => writeln!(f, "result: pass"),
            Some(why) => writeln!(f, "result: FAIL ({why})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::InsertionRecord;
    use crate::hamiltonian::Cycle;
    use crate::tournament::fixtures::*;

    /// The T4a, king 1 chain, written out by hand.
    pub(crate) fn t4a_chain() -> CycleChain {
        crate::certificate::Certificate::from_json(
            r#"{"n":4,"king":1,"A":[2,3],"B":[0],"reid_blocks":[[2],[3]],
                "a_star":3,"b_star":0,"spine":[2,3],
                "cycles":[[1,3,0],[1,2,3,0]],"insertions":[{"x":1,"y":3,"z":2}],
                "tournament":{"n":4,"edges":[[0,1],[1,2],[1,3],[2,0],[2,3],[3,0]]}}"#,
        )
        .unwrap()
        .into_parts()
        .unwrap()
        .1
    }

    #[test]
    fn king_of_induced_examples() {
        assert!(brute_is_king_of_induced(&tri_cycle(), 0, &[0, 1, 2]).unwrap());
        assert!(brute_is_king_of_induced(&t4a(), 1, &[0, 1, 3]).unwrap());
        assert!(!brute_is_king_of_induced(&t4a(), 3, &[0, 1, 2, 3]).unwrap());
        assert_eq!(
            brute_is_king_of_induced(&t4a(), 3, &[0, 1]),
            Err(Error::KingNotInSubset(3))
        );
        assert_eq!(brute_kings(&t4a()), vec![0, 1, 2]);
        assert_eq!(brute_kings(&transitive_triangle()), vec![0]);
    }

    #[test]
    fn brute_strongness() {
        assert!(brute_is_strong(&tri_cycle()));
        assert!(brute_is_strong(&t4a()));
        assert!(!brute_is_strong(&transitive_triangle()));
    }

    #[test]
    fn hand_chain_passes() {
        let r = verify_chain(&t4a(), &t4a_chain()).unwrap();
        assert!(r.pass, "{r}");
        assert_eq!(r.cycles.len(), 2);
        assert_eq!(r.steps.len(), 1);
        assert!(r.first_failure.is_none());
    }

    #[test]
    fn malformed_inputs() {
        let mut c = t4a_chain();
        c.king = 7;
        assert!(matches!(
            verify_chain(&t4a(), &c),
            Err(Error::MalformedCertificate(_))
        ));
        let mut c = t4a_chain();
        c.cycles.pop();
        assert!(matches!(
            verify_chain(&t4a(), &c),
            Err(Error::MalformedCertificate(_))
        ));
        let mut c = t4a_chain();
        c.insertions.clear();
        assert!(matches!(
            verify_chain(&t4a(), &c),
            Err(Error::MalformedCertificate(_))
        ));
        let mut c = t4a_chain();
        c.cycles[0] = Cycle(vec![1, 3, 9]);
        assert!(matches!(
            verify_chain(&t4a(), &c),
            Err(Error::MalformedCertificate(_))
        ));
        let mut c = t4a_chain();
        c.insertions[0] = InsertionRecord { x: 1, y: 3, z: 4 };
        assert!(matches!(
            verify_chain(&t4a(), &c),
            Err(Error::MalformedCertificate(_))
        ));
    }

    #[test]
    fn degenerate_cycles_fail_without_panicking() {
        let mut c = t4a_chain();
        c.cycles[0] = Cycle(vec![]);
        let r = verify_chain(&t4a(), &c).unwrap();
        assert!(!r.pass);
        assert!(
            !r.cycles[0].is_cycle && !r.cycles[0].contains_king && !r.cycles[0].king_of_induced
        );
    }

    #[test]
    fn display_lists_every_check() {
        let text = verify_chain(&t4a(), &t4a_chain()).unwrap().to_string();
        assert_eq!(
            text,
            "C_3: (a) cycle pass (b) length pass (c) king pass (d) king-of-induced pass\n\
             C_4: (a) cycle pass (b) length pass (c) king pass (d) king-of-induced pass\n\
             C_3 -> C_4: (e) insertion pass\n\
             result: pass\n"
        );
    }

    #[test]
    fn no_construction_code_is_imported() {
        let src = include_str!("verify.rs");
        let code = &src[..src.find("#[cfg(test)]").unwrap()];
        for forbidden in ["analysis", "hamiltonian", "chain::", "use crate::chain"] {
            assert!(
                !code.contains(forbidden),
                "verify.rs references {forbidden}"
            );
        }
    }
}
