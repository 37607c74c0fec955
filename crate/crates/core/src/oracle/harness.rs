//! Exhaustive and randomized drivers: build a chain for every king of every
//! strong tournament in scope and verify it with the brute-force checks.

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::verify::{brute_is_strong, brute_kings, verify_chain};
use crate::certificate::Certificate;
use crate::chain::build_chain;
use crate::error::{Error, Result};
use crate::tournament::{
    enumerate_all, random_strong_tournament, Enumeration, Format, Tournament, VertexId,
};

pub const EXHAUSTIVE_MIN_ORDER: usize = 3;
pub const EXHAUSTIVE_MAX_ORDER: usize = 7;

/// Rejection-sampling budget used by [`random_stress`].
const STRESS_MAX_TRIES: u64 = 10_000;

/// A `(tournament, king)` pair whose chain failed to build or verify.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Enumeration index, or trial number for random runs.
    pub index: u64,
    pub king: VertexId,
    pub reason: String,
    /// Text-format tournament.
    pub tournament: String,
    /// The certificate, when construction got that far.
    pub certificate: Option<Certificate>,
}

impl Counterexample {
    /// Writes `<stem>.txt` (tournament) and `<stem>.json` (everything) into
    /// `dir`, returning both paths.
    pub fn dump(&self, dir: &Path, stem: &str) -> Result<(PathBuf, PathBuf)> {
        let txt = dir.join(format!("{stem}.txt"));
        let json = dir.join(format!("{stem}.json"));
        std::fs::write(&txt, &self.tournament)?;
        let mut body = serde_json::to_string_pretty(self).expect("counterexample serializes");
        body.push('\n');
        std::fs::write(&json, body)?;
        Ok((txt, json))
    }
}

fn check_pair(t: &Tournament, k: VertexId, index: u64) -> Option<Counterexample> {
    let failure = |reason: String, certificate| Counterexample {
        index,
        king: k,
        reason,
        tournament: t.export(Format::Text),
        certificate,
    };
    let chain = match build_chain(t, k) {
        Ok(c) => c,
        Err(e) => return Some(failure(format!("{}: {e}", e.kind()), None)),
    };
    match verify_chain(t, &chain) {
        Ok(r) if r.pass => None,
        Ok(r) => Some(failure(
            r.first_failure
                .unwrap_or_else(|| "verification failed".into()),
            Some(Certificate::new(t, &chain)),
        )),
        Err(e) => Some(failure(
            format!("{}: {e}", e.kind()),
            Some(Certificate::new(t, &chain)),
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveSummary {
    pub n: usize,
    pub tournaments: u64,
    pub strong: u64,
    pub pairs: u64,
    pub failures: u64,
    /// Lowest-index failure. Counts stop at the first failure of each worker
    /// range, so they are only complete when this is `None`.
    pub counterexample: Option<Counterexample>,
}

impl ExhaustiveSummary {
    fn empty(n: usize) -> Self {
        ExhaustiveSummary {
            n,
            tournaments: 0,
            strong: 0,
            pairs: 0,
            failures: 0,
            counterexample: None,
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.tournaments += other.tournaments;
        self.strong += other.strong;
        self.pairs += other.pairs;
        self.failures += other.failures;
        self.counterexample = match (self.counterexample, other.counterexample) {
            (Some(a), Some(b)) => Some(if a.index <= b.index { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

impl fmt::Display for ExhaustiveSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "tournaments={}", self.tournaments)?;
        writeln!(f, "strong={}", self.strong)?;
        writeln!(f, "pairs={}", self.pairs)?;
        writeln!(f, "failures={}", self.failures)?;
        if let Some(c) = &self.counterexample {
            writeln!(f, "counterexample_index={}", c.index)?;
            writeln!(f, "counterexample_king={}", c.king)?;
            writeln!(f, "counterexample_reason={}", c.reason)?;
        }
        Ok(())
    }
}

fn check_range(range: Enumeration) -> ExhaustiveSummary {
    let n = range.n();
    let mut s = ExhaustiveSummary::empty(n);
    for index in range.indices() {
        s.tournaments += 1;
        let t = Tournament::from_index(n, index);
        if !brute_is_strong(&t) {
            continue;
        }
        s.strong += 1;
        for k in brute_kings(&t) {
            s.pairs += 1;
            if let Some(c) = check_pair(&t, k, index) {
                s.failures += 1;
                s.counterexample = Some(c);
                return s;
            }
        }
    }
    s
}

/// Builds and verifies a chain for every king of every strong labeled
/// tournament on `n` vertices, across `jobs` worker threads.
pub fn exhaustive_check(n: usize, jobs: usize) -> Result<ExhaustiveSummary> {
    if !(EXHAUSTIVE_MIN_ORDER..=EXHAUSTIVE_MAX_ORDER).contains(&n) {
        return Err(Error::OrderOutOfRange {
            n,
            min: EXHAUSTIVE_MIN_ORDER,
            max: EXHAUSTIVE_MAX_ORDER,
        });
    }
    let all = enumerate_all(n)?;
    let jobs = jobs.max(1);
    if jobs == 1 {
        return Ok(check_range(all));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Io(format!("thread pool: {e}")))?;
    let ranges = all.split(jobs * 16);
    Ok(pool.install(|| {
        ranges
            .into_par_iter()
            .map(check_range)
            .reduce(|| ExhaustiveSummary::empty(n), ExhaustiveSummary::merge)
    }))
}

/// Per-chain construction wall time, microseconds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub p50_us: f64,
    pub p90_us: f64,
    pub p99_us: f64,
    pub max_us: f64,
}

impl Timing {
    fn from_samples(mut us: Vec<f64>) -> Timing {
        if us.is_empty() {
            return Timing {
                p50_us: 0.0,
                p90_us: 0.0,
                p99_us: 0.0,
                max_us: 0.0,
            };
        }
        us.sort_by(f64::total_cmp);
        let pick = |q: f64| us[((us.len() - 1) as f64 * q).round() as usize];
        Timing {
            p50_us: pick(0.5),
            p90_us: pick(0.9),
            p99_us: pick(0.99),
            max_us: *us.last().unwrap(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StressSummary {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub pairs: u64,
    pub failures: u64,
    pub counterexample: Option<Counterexample>,
    pub timing: Timing,
}

impl StressSummary {
    /// Everything except wall-clock timing.
    pub fn counts(&self) -> (usize, u64, u64, u64, u64, Option<&Counterexample>) {
        (
            self.n,
            self.trials,
            self.seed,
            self.pairs,
            self.failures,
            self.counterexample.as_ref(),
        )
    }
}

impl fmt::Display for StressSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "trials={}", self.trials)?;
        writeln!(f, "seed={}", self.seed)?;
        writeln!(f, "pairs={}", self.pairs)?;
        writeln!(f, "failures={}", self.failures)?;
        writeln!(f, "chain_us_p50={:.1}", self.timing.p50_us)?;
        writeln!(f, "chain_us_p90={:.1}", self.timing.p90_us)?;
        writeln!(f, "chain_us_p99={:.1}", self.timing.p99_us)?;
        writeln!(f, "chain_us_max={:.1}", self.timing.max_us)?;
        if let Some(c) = &self.counterexample {
            writeln!(f, "counterexample_trial={}", c.index)?;
            writeln!(f, "counterexample_king={}", c.king)?;
            writeln!(f, "counterexample_reason={}", c.reason)?;
        }
        Ok(())
    }
}

/// `trials` random strong tournaments of order `n`; every king of each gets
/// a chain built, timed and verified. Trial seeds are drawn from a ChaCha8
/// stream seeded with `seed`.
pub fn random_stress(n: usize, trials: u64, seed: u64) -> Result<StressSummary> {
    if n < 3 {
        return Err(Error::OrderTooSmall(n));
    }
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = 0;
    let mut failures = 0;
    let mut counterexample = None;
    let mut samples = Vec::new();
    for trial in 0..trials {
        let t = random_strong_tournament(n, seeds.next_u64(), STRESS_MAX_TRIES)?;
        for k in brute_kings(&t) {
            pairs += 1;
            let start = Instant::now();
            let built = build_chain(&t, k);
            samples.push(start.elapsed().as_secs_f64() * 1e6);
            let failure = match built {
                Err(e) => Some((format!("{}: {e}", e.kind()), None)),
                Ok(chain) => match verify_chain(&t, &chain) {
                    Ok(r) if r.pass => None,
                    Ok(r) => Some((
                        r.first_failure.unwrap_or_default(),
                        Some(Certificate::new(&t, &chain)),
                    )),
                    Err(e) => Some((
                        format!("{}: {e}", e.kind()),
                        Some(Certificate::new(&t, &chain)),
                    )),
                },
            };
            if let Some((reason, certificate)) = failure {
                failures += 1;
                counterexample.get_or_insert(Counterexample {
                    index: trial,
                    king: k,
                    reason,
                    tournament: t.export(Format::Text),
                    certificate,
                });
            }
        }
    }
    Ok(StressSummary {
        n,
        trials,
        seed,
        pairs,
        failures,
        counterexample,
        timing: Timing::from_samples(samples),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_range() {
        assert!(matches!(
            exhaustive_check(2, 1),
            Err(Error::OrderOutOfRange { .. })
        ));
        assert!(matches!(
            exhaustive_check(8, 1),
            Err(Error::OrderOutOfRange { .. })
        ));
        assert_eq!(random_stress(2, 1, 0).unwrap_err(), Error::OrderTooSmall(2));
    }

    #[test]
    fn exhaustive_three() {
        let s = exhaustive_check(3, 1).unwrap();
        assert_eq!((s.tournaments, s.strong, s.pairs, s.failures), (8, 2, 6, 0));
        assert!(s.counterexample.is_none());
        assert_eq!(
            s.to_string(),
            "n=3\ntournaments=8\nstrong=2\npairs=6\nfailures=0\n"
        );
    }

    #[test]
    fn exhaustive_is_job_count_invariant() {
        let one = exhaustive_check(5, 1).unwrap();
        assert_eq!((one.tournaments, one.strong, one.failures), (1024, 544, 0));
        assert_eq!(exhaustive_check(5, 3).unwrap(), one);
    }

    #[test]
    fn merge_keeps_lowest_counterexample() {
        let mk = |index| ExhaustiveSummary {
            failures: 1,
            counterexample: Some(Counterexample {
                index,
                king: 0,
                reason: String::new(),
                tournament: String::new(),
                certificate: None,
            }),
            ..ExhaustiveSummary::empty(4)
        };
        let merged = mk(9).merge(mk(3));
        assert_eq!(merged.failures, 2);
        assert_eq!(merged.counterexample.unwrap().index, 3);
    }

    #[test]
    fn counterexample_dump() {
        let dir = tempfile::tempdir().unwrap();
        let c = Counterexample {
            index: 5,
            king: 1,
            reason: "test".into(),
            tournament: "3\n0 1\n1 2\n2 0\n".into(),
            certificate: None,
        };
        let (txt, json) = c.dump(dir.path(), "cx").unwrap();
        assert_eq!(std::fs::read_to_string(txt).unwrap(), "3\n0 1\n1 2\n2 0\n");
        let back: Counterexample =
            serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn stress_is_deterministic() {
        let a = random_stress(10, 20, 1).unwrap();
        let b = random_stress(10, 20, 1).unwrap();
        assert_eq!(a.failures, 0);
        assert!(a.pairs >= 20);
        assert_eq!(a.counts(), b.counts());
    }

    #[test]
    fn timing_percentiles() {
        let t = Timing::from_samples((1..=100).map(f64::from).collect());
        assert_eq!(
            (t.p50_us, t.p90_us, t.p99_us, t.max_us),
            (51.0, 90.0, 99.0, 100.0)
        );
    }
}
