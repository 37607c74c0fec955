//! The `kingchain` command line.
//!
//! Exit status: 0 on success, 1 on a domain error or failed verification,
//! 2 on a usage or parse error.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};

use crate::analysis::kings;
use crate::certificate::{Certificate, CycleChain};
use crate::chain::build_chain;
use crate::error::{Error, Result};
use crate::oracle::{exhaustive_check, random_stress, verify_chain};
use crate::tournament::{
    parse_text, random_strong_tournament, random_tournament, Format, Tournament, VertexId,
};

/// Rejection-sampling budget for `generate --strong`.
const GENERATE_MAX_TRIES: u64 = 10_000;

#[derive(Debug, Parser)]
#[command(
    name = "kingchain",
    version,
    about = "Chains of cycles through a king of a strong tournament"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum KingArg {
    Auto,
    Vertex(VertexId),
}

impl FromStr for KingArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "auto" {
            return Ok(KingArg::Auto);
        }
        s.parse()
            .map(KingArg::Vertex)
            .map_err(|_| format!("expected a vertex index or `auto`, got {s:?}"))
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a random tournament in text format.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Resample until the tournament is strong.
        #[arg(long)]
        strong: bool,
    },
    /// Build the chain of cycles for one king.
    Chain {
        /// Tournament file in text format, `-` for standard input.
        #[arg(long)]
        input: String,
        /// King vertex, or `auto` for the lowest-index king.
        #[arg(long)]
        king: KingArg,
        /// Write the certificate JSON here.
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Write a DOT drawing with the king and the final cycle marked.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check a certificate from first principles.
    Verify {
        #[arg(long)]
        certificate: PathBuf,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Check every king of every strong tournament of order N.
    Exhaustive {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Print the summary as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Check every king of random strong tournaments.
    Stress {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Print the summary as JSON.
        #[arg(long)]
        json: bool,
    },
    /// List all kings, one per line.
    Kings {
        #[arg(long)]
        input: String,
    },
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", e.kind());
            match e {
                Error::Parse(_) => 2,
                _ => 1,
            }
        }
    }
}

fn read_input(input: &str) -> Result<Tournament> {
    let text = if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        read_file(Path::new(input))?
    };
    parse_text(&text)
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    std::fs::write(path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Generate { n, seed, strong } => {
            let t = if strong {
                random_strong_tournament(n, seed, GENERATE_MAX_TRIES)?
            } else {
                random_tournament(n, seed)?
            };
            out.write_all(t.export(Format::Text).as_bytes())?;
            Ok(0)
        }
        Command::Chain {
            input,
            king,
            certificate,
            dot,
        } => {
            let t = read_input(&input)?;
            let k = match king {
                KingArg::Vertex(k) => k,
                KingArg::Auto => kings(&t)[0],
            };
            let chain = build_chain(&t, k)?;
            if let Some(path) = certificate {
                write_file(&path, &Certificate::new(&t, &chain).to_json())?;
            }
            if let Some(path) = dot {
                write_file(&path, &chain_dot(&t, &chain))?;
            }
            out.write_all(chain_summary(&t, &chain).as_bytes())?;
            Ok(0)
        }
        Command::Verify { certificate, json } => {
            let cert = Certificate::from_json(&read_file(&certificate)?)?;
            let (t, chain) = cert.into_parts()?;
            let report = verify_chain(&t, &chain)?;
            if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                )?;
            } else {
                write!(out, "{report}")?;
            }
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Exhaustive { n, jobs, json } => {
            let summary = exhaustive_check(n, jobs)?;
            if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&summary).expect("summary serializes")
                )?;
            } else {
                write!(out, "{summary}")?;
            }
            if let Some(c) = &summary.counterexample {
                let (txt, js) = c.dump(Path::new("."), &format!("counterexample-n{n}"))?;
                writeln!(
                    out,
                    "counterexample_files={} {}",
                    txt.display(),
                    js.display()
                )?;
            }
            Ok(if summary.failures == 0 { 0 } else { 1 })
        }
        Command::Stress {
            n,
            trials,
            seed,
            json,
        } => {
            let summary = random_stress(n, trials, seed)?;
            if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&summary).expect("summary serializes")
                )?;
            } else {
                write!(out, "{summary}")?;
            }
            Ok(if summary.failures == 0 { 0 } else { 1 })
        }
        Command::Kings { input } => {
            let t = read_input(&input)?;
            for k in kings(&t) {
                writeln!(out, "{k}")?;
            }
            Ok(0)
        }
    }
}

fn join(vs: &[VertexId]) -> String {
    vs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn chain_summary(t: &Tournament, chain: &CycleChain) -> String {
    let mut s = format!(
        "n={} king={} d={} reid_blocks={} a_star={} b_star={}\n",
        t.n(),
        chain.king,
        chain.context.d,
        chain.reid.len(),
        chain.exit.a_star,
        chain.exit.b_star
    );
    s += &format!("spine: {}\n", join(chain.spine.vertices()));
    for (i, c) in chain.cycles.iter().enumerate() {
        s += &format!("C_{}: {}", c.len(), join(c.vertices()));
        if i > 0 {
            let r = chain.insertions[i - 1];
            s += &format!("  (+{} between {} and {})", r.z, r.x, r.y);
        }
        s.push('\n');
    }
    s
}

fn chain_dot(t: &Tournament, chain: &CycleChain) -> String {
    let last = chain
        .cycles
        .last()
        .map(|c| c.arcs().collect::<Vec<_>>())
        .unwrap_or_default();
    t.to_dot(
        |v| (v == chain.king).then(|| "shape=doublecircle".to_string()),
        |u, v| {
            last.contains(&(u, v))
                .then(|| "color=red, penwidth=2".to_string())
        },
    )
}
