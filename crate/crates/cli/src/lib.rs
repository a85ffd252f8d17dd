//! The `latkit` command line.
//!
//! Every command prints one JSON document (DOT for `dot`) on stdout. Exit
//! code 0 means success, 2 means the input was refuted mathematically (for
//! example it is not a lattice), 1 covers usage errors.

pub mod dot;
pub mod dsl;
pub mod error;
pub mod report;

use std::ffi::OsString;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use latkit::congruence::{quotient, Congruence};
use latkit::constructors::{two_by_z_window, Coord, ImplicitTwoByZ};
use latkit::document::LatticeDocument;
use latkit::doubling::{day_double, DoublingSpec};
use latkit::predicates::reducible_antichain_bound_within;
use latkit::spanning::{check_theorem6_conclusion, verify_spanning_pair, DualView, EmbeddingWindow, SpanningPairWitness};
use latkit::terms::{explore_relatively_free, variety_corpus, Variety};
use latkit::{ElementSet, Lattice};
use serde_json::json;

pub use error::CliError;

/// Default element cap for constructions and loaded documents.
pub const DEFAULT_CAP: usize = 64;

#[derive(Debug, Parser)]
#[command(name = "latkit", version, about = "Exact computations on finite lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// `LATTICE` arguments are `-` for a JSON document on stdin, a path to a
/// JSON document, or a construction expression such as `product(chain(2), chain(3))`.
#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a construction and print its lattice document.
    Construct { lattice: String },
    /// Structural report: width, laws, decompositions, gadgets, verdicts.
    Analyze { lattice: String },
    /// Quotient by the congruence generated by the collapsed pairs.
    Quotient {
        lattice: String,
        #[arg(long, num_args = 2, value_names = ["A", "B"], required = true)]
        collapse: Vec<String>,
    },
    /// Day doubling of a convex region or an interval.
    Double {
        lattice: String,
        /// Comma-separated element names.
        #[arg(long, value_delimiter = ',', conflicts_with = "interval", required_unless_present = "interval")]
        region: Vec<String>,
        #[arg(long, num_args = 2, value_names = ["P", "Q"])]
        interval: Option<Vec<String>>,
    },
    /// Decide embeddability in a free lattice (distributive inputs only).
    Decide { lattice: String },
    /// List gadgets and their classes.
    Gadgets { lattice: String },
    /// Lower bounds on a relatively free lattice by probe separation.
    ExploreVariety {
        #[arg(long, value_enum)]
        variety: VarietyKind,
        #[arg(long, default_value_t = 2)]
        level: usize,
        #[arg(long, default_value_t = 3)]
        generators: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Probe lattices; without any, every lattice of the variety up to
        /// `--corpus-size` elements.
        #[arg(long)]
        probe: Vec<String>,
        #[arg(long, default_value_t = 6)]
        corpus_size: usize,
        /// Also print one term per separated class.
        #[arg(long)]
        terms: bool,
    },
    /// Check a spanning-pair witness on 2 x Z or a window of it.
    SpanningCheck {
        /// JSON witness file; the canonical witness (its dual under `--dual`) when absent.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        prefix: usize,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        window: Option<Vec<i64>>,
        /// Work in the order dual.
        #[arg(long)]
        dual: bool,
    },
    /// Hasse diagram in DOT.
    Dot { lattice: String },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VarietyKind {
    Distributive,
    SdMeet,
    SdJoin,
    Sd,
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// The cap from `LATKIT_CAP`, or [`DEFAULT_CAP`].
pub fn cap_from_env() -> Result<usize, CliError> {
    match std::env::var("LATKIT_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("LATKIT_CAP must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let result = cap_from_env().and_then(|cap| execute(cli.command, cap, stdin));
    match result {
        Ok(stdout) => Outcome { stdout, stderr: String::new(), code: 0 },
        Err(e) => Outcome { stdout: format!("{}\n", e.to_json()), stderr: format!("error: {e}\n"), code: e.exit_code() },
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

/// Reads a `LATTICE` argument.
pub fn load(arg: &str, cap: usize, stdin: &mut dyn Read) -> Result<Lattice, CliError> {
    let text = if arg == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(|e| CliError::Io(format!("reading stdin: {e}")))?;
        Some(s)
    } else if Path::new(arg).is_file() {
        Some(std::fs::read_to_string(arg).map_err(|e| CliError::Io(format!("reading {arg}: {e}")))?)
    } else {
        None
    };
    match text {
        Some(text) => {
            let doc = LatticeDocument::from_json(&text)?;
            if doc.elements.len() > cap {
                return Err(CliError::Cap { requested: doc.elements.len(), cap, position: 0 });
            }
            Ok(doc.to_lattice()?)
        }
        None => dsl::construct(arg, cap),
    }
}

fn element(l: &Lattice, name: &str) -> Result<usize, CliError> {
    l.index_of(name).ok_or_else(|| CliError::Usage(format!("no element named {name:?}")))
}

fn document(l: &Lattice) -> String {
    pretty(&LatticeDocument::from_lattice(l))
}

fn execute(command: Command, cap: usize, stdin: &mut dyn Read) -> Result<String, CliError> {
    match command {
        Command::Construct { lattice } => Ok(document(&load(&lattice, cap, stdin)?)),
        Command::Analyze { lattice } => Ok(pretty(&report::analyze(&load(&lattice, cap, stdin)?)?)),
        Command::Quotient { lattice, collapse } => {
            let l = load(&lattice, cap, stdin)?;
            let pairs = collapse
                .chunks(2)
                .map(|p| Ok((element(&l, &p[0])?, element(&l, &p[1])?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            let c = Congruence::generated(&l, &pairs)?;
            Ok(document(&quotient(&l, &c)?.lattice))
        }
        Command::Double { lattice, region, interval } => {
            let l = load(&lattice, cap, stdin)?;
            let spec = match interval {
                Some(pq) => DoublingSpec::interval(&l, element(&l, &pq[0])?, element(&l, &pq[1])?)?,
                None => {
                    let mut set = ElementSet::new(l.len());
                    for name in &region {
                        set.insert(element(&l, name)?);
                    }
                    DoublingSpec::region(&l, set)?
                }
            };
            if l.len() + spec.region.len() > cap {
                return Err(CliError::Cap { requested: l.len() + spec.region.len(), cap, position: 0 });
            }
            Ok(document(&day_double(&spec)?.lattice))
        }
        Command::Decide { lattice } => Ok(pretty(&report::verdict(&load(&lattice, cap, stdin)?))),
        Command::Gadgets { lattice } => Ok(pretty(&report::gadgets(&load(&lattice, cap, stdin)?)?)),
        Command::ExploreVariety { variety, level, generators, depth, probe, corpus_size, terms } => {
            let variety = match variety {
                VarietyKind::Distributive => Variety::Distributive,
                VarietyKind::SdMeet => Variety::SdMeet(level),
                VarietyKind::SdJoin => Variety::SdJoin(level),
                VarietyKind::Sd => Variety::Sd(level),
            };
            let probes = if probe.is_empty() {
                variety_corpus(variety, corpus_size)?
            } else {
                probe.iter().map(|p| load(p, cap, stdin)).collect::<Result<Vec<_>, _>>()?
            };
            let e = explore_relatively_free(variety, generators, depth, &probes)?;
            let mut out = json!({
                "variety": variety,
                "generators": generators,
                "probes": probes.len(),
                "counts_by_depth": e.counts_by_depth,
            });
            if terms {
                out["representatives"] = e.representatives.iter().map(ToString::to_string).collect::<Vec<_>>().into();
            }
            Ok(pretty(&out))
        }
        Command::SpanningCheck { witness, prefix, window, dual } => {
            let w: SpanningPairWitness<Coord> = match witness {
                None if dual => SpanningPairWitness::two_by_z_canonical().dual(),
                None => SpanningPairWitness::two_by_z_canonical(),
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
                    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad witness: {e}")))?
                }
            };
            let (spanning, window_report) = match &window {
                None if dual => (verify_spanning_pair(&DualView(ImplicitTwoByZ), &w, prefix)?, None),
                None => (verify_spanning_pair(&ImplicitTwoByZ, &w, prefix)?, None),
                Some(bounds) => {
                    let size = bounds[1].saturating_sub(bounds[0]).saturating_add(1).saturating_mul(2);
                    if usize::try_from(size).map_or(true, |s| s > cap) {
                        return Err(CliError::Cap { requested: usize::try_from(size).unwrap_or(usize::MAX), cap, position: 0 });
                    }
                    let win = two_by_z_window(bounds[0], bounds[1])?;
                    let spanning = if dual {
                        verify_spanning_pair(&DualView(win.clone()), &w, prefix)?
                    } else {
                        verify_spanning_pair(&win, &w, prefix)?
                    };
                    let report = json!({
                        "lo": win.lo,
                        "hi": win.hi,
                        "reducible_antichain_bound": reducible_antichain_bound_within(&win.lattice, &win.interior()),
                        "identity_embedding": check_theorem6_conclusion(&win.lattice, &EmbeddingWindow::identity(&win)),
                    });
                    (spanning, Some(report))
                }
            };
            let mut out = json!({ "passes": spanning.passes(), "spanning": spanning });
            if let Some(report) = window_report {
                out["window"] = report;
            }
            Ok(pretty(&out))
        }
        Command::Dot { lattice } => Ok(dot::emit_dot(&load(&lattice, cap, stdin)?)),
    }
}
