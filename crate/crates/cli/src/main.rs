//! `curvetta`: JSON in, JSON or a plain table out.
//!
//! Exit codes: 0 success, 1 unreadable or malformed input, 2 validation
//! failure, 3 inconclusive certificate.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "curvetta", version, about = "Curvetta germs, planar Lefschetz fibrations and line-arrangement certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Input JSON file ("-" for stdin).
    #[arg(value_name = "FILE")]
    pub file: Option<PathBuf>,
    #[arg(long, value_name = "FILE", conflicts_with = "file")]
    pub input: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a plumbing graph: tree, negative definite, reduced fundamental cycle.
    ValidateGraph(Common),
    /// Decorated germ of a graph with curvettas on all slots but one.
    Germ {
        #[command(flatten)]
        common: Common,
        /// Slot (0-based, in slot order) left without a curvetta.
        #[arg(long, default_value_t = 0)]
        slot: usize,
        /// Explicit curvetta vertex ids, overriding --slot.
        #[arg(long, value_delimiter = ',')]
        curvettas: Option<Vec<u64>>,
    },
    /// All extensions of a graph, one per slot, with isomorphism classes.
    Extensions(Common),
    /// Scott deformation of a decorated germ.
    Scott(Common),
    /// Gay–Mark vanishing cycles of a graph for one outer slot.
    GayMark {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        slot: usize,
    },
    /// Lefschetz fibration of a braided wiring diagram.
    ///
    /// Braid words are signed generator lists; the rightmost letter acts first.
    WiringToLefschetz(Common),
    /// Homology, intersection form, c1 and Euler characteristic of an incidence matrix (rows = holes).
    Invariants(Common),
    /// Circumnavigation monodromy against the product of vanishing-cycle twists.
    CompareMonodromy(Common),
    /// Lantern substitution on one column of an incidence matrix.
    Lantern {
        #[command(flatten)]
        common: Common,
        /// Column (1-based) enclosing exactly three holes.
        #[arg(long)]
        column: usize,
    },
    /// Plumbing graph from a laminar family of hole sets: {"m": .., "sets": [[..], ..]}.
    ArtinRecognize(Common),
    /// Decide whether a line arrangement is unexpected.
    CertifyUnexpected {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        trials: usize,
    },
    /// Replace lines by bundles of curvettas following attached trees.
    BundleExtend {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        builtin: Option<String>,
    },
}

/// Why a command stopped.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable file or malformed JSON.
    Input(String),
    /// Input parsed but was rejected.
    Invalid(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Invalid(_) => 2,
        }
    }
}

impl From<curvetta::Error> for Failure {
    fn from(e: curvetta::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Invalid,
    Inconclusive,
}

pub struct Report {
    pub headline: Option<String>,
    pub body: serde_json::Value,
    pub status: Status,
}

fn render(r: &Report, format: Format) -> String {
    match format {
        // serde_json maps are ordered by key.
        Format::Json => serde_json::to_string_pretty(&r.body).expect("values serialize") + "\n",
        Format::Table => {
            let mut out = String::new();
            if let Some(h) = &r.headline {
                out.push_str(h);
                out.push('\n');
            }
            match &r.body {
                serde_json::Value::Object(map) => {
                    let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
                    for (k, v) in map {
                        out.push_str(&format!("{k:<width$}  {v}\n"));
                    }
                }
                v => out.push_str(&format!("{v}\n")),
            }
            out
        }
    }
}

fn run(cmd: Command) -> Result<(Report, Common), Failure> {
    use commands as c;
    Ok(match cmd {
        Command::ValidateGraph(o) => (c::validate_graph(&o)?, o),
        Command::Germ { common, slot, curvettas } => (c::germ(&common, slot, curvettas)?, common),
        Command::Extensions(o) => (c::extensions(&o)?, o),
        Command::Scott(o) => (c::scott(&o)?, o),
        Command::GayMark { common, slot } => (c::gay_mark(&common, slot)?, common),
        Command::WiringToLefschetz(o) => (c::wiring_to_lefschetz(&o)?, o),
        Command::Invariants(o) => (c::invariants(&o)?, o),
        Command::CompareMonodromy(o) => (c::compare_monodromy(&o)?, o),
        Command::Lantern { common, column } => (c::lantern(&common, column)?, common),
        Command::ArtinRecognize(o) => (c::artin_recognize(&o)?, o),
        Command::CertifyUnexpected { common, builtin, seed, trials } => {
            (c::certify(&common, builtin.as_deref(), seed, trials)?, common)
        }
        Command::BundleExtend { common, builtin } => (c::bundle(&common, builtin.as_deref())?, common),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, opts) = match run(cli.command) {
        Ok(r) => r,
        Err(f) => {
            let msg = match &f {
                Failure::Input(m) | Failure::Invalid(m) => m,
            };
            eprintln!("error: {msg}");
            return ExitCode::from(f.code());
        }
    };
    let text = render(&report, opts.format);
    let written = match &opts.output {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(match report.status {
        Status::Ok => 0,
        Status::Invalid => 2,
        Status::Inconclusive => 3,
    })
}
