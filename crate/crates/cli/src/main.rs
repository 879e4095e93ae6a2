//! `digitop`: adjacency queries, certificate checking and contractibility
//! search for digital images.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use digitop::catalog::{self, CatalogObject, RefutationOptions, BUILTIN_NAMES};
use digitop::format::{Document, HomotopyDocument};
use digitop::search::{audit_closure, Caps, SearchVerdict, StrategyRegistry};
use digitop::{Adjacency, ContractionVerdict, LatticePoint, Verdict};

const TRUE: u8 = 0;
const FALSE: u8 = 1;
const INCONCLUSIVE: u8 = 2;
const INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(
    name = "digitop",
    version,
    about = "Digital topology on Z^n: adjacency, homotopy certificates, contractibility"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether two lattice points are adjacent
    Adjacent {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
        /// An adjacency name (2, 4, 8, 6, 18, 26) or c_u:n
        #[arg(long)]
        adjacency: String,
    },

    /// Check a homotopy certificate
    Verify {
        file: PathBuf,
        /// Require a contraction: identity to some constant map
        #[arg(long)]
        contraction: bool,
        #[arg(long)]
        json: bool,
    },

    /// Decide whether an image is contractible
    Contract {
        file: PathBuf,
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        #[arg(long, default_value_t = Caps::default().max_states)]
        max_states: usize,
        /// Wall-clock budget in seconds; 0 disables it
        #[arg(long, default_value_t = 900)]
        time_limit: u64,
        /// Where to write the contraction certificate, if one is found
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },

    /// Export a built-in image or certificate
    Builtin {
        name: String,
        /// Adjacency for MSS_18 and its slices (6, 18 or 26)
        #[arg(long)]
        adjacency: Option<u32>,
        /// Output file; stdout if omitted
        #[arg(long)]
        emit: Option<PathBuf>,
    },

    /// Verify the explicit contraction of MSS_18 under 18- and 26-adjacency
    RefuteHan {
        /// Also search for an independent 18-contraction
        #[arg(long)]
        search: bool,
        #[arg(long)]
        json: bool,
    },
}

/// Errors that end a command with exit code 3.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<u8, InputError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { TRUE };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Adjacent { p, q, adjacency } => adjacent(&p, &q, &adjacency),
        Command::Verify { file, contraction, json } => verify(&file, contraction, json),
        Command::Contract { file, mode, max_states, time_limit, emit_witness } => {
            let time_budget = (time_limit > 0).then(|| Duration::from_secs(time_limit));
            contract(&file, &mode, Caps { max_states, time_budget }, emit_witness.as_deref())
        }
        Command::Builtin { name, adjacency, emit } => builtin(&name, adjacency, emit.as_deref()),
        Command::RefuteHan { search, json } => refute(search, json),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn adjacent(p: &str, q: &str, adjacency: &str) -> Outcome {
    let p: LatticePoint = p.parse()?;
    let q: LatticePoint = q.parse()?;
    let adj: Adjacency = adjacency.parse()?;
    let yes = adj.adjacent(&p, &q)?;
    println!("{yes}");
    Ok(if yes { TRUE } else { FALSE })
}

fn read_document(path: &Path) -> Result<Document, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Document::parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn verify(path: &Path, contraction: bool, json: bool) -> Outcome {
    let doc = read_document(path)?
        .into_homotopy()
        .ok_or_else(|| InputError(format!("{}: expected a document of kind homotopy", path.display())))?;
    let h = &doc.homotopy;
    if contraction {
        let verdict = h.is_contraction()?;
        if json {
            println!("{}", serde_json::to_string_pretty(&verdict)?);
        }
        return Ok(match verdict {
            ContractionVerdict::Contraction { target } => {
                if !json {
                    println!("accept: contraction of length {} onto q = ({target})", h.m());
                }
                TRUE
            }
            ContractionVerdict::NotContraction { failure } => {
                if !json {
                    println!("reject: {failure}");
                }
                FALSE
            }
        });
    }
    let (f, g) = doc.endpoints()?;
    let verdict = h.verify(&f, &g)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&verdict)?);
    }
    Ok(match verdict {
        Verdict::Accepted => {
            if !json {
                println!("accept: homotopy of length {}", h.m());
            }
            TRUE
        }
        Verdict::Rejected { violation } => {
            if !json {
                println!("reject: {violation}");
            }
            FALSE
        }
    })
}

fn contract(path: &Path, mode: &str, caps: Caps, emit: Option<&Path>) -> Outcome {
    let registry = StrategyRegistry::builtin();
    let strategy = registry
        .get(mode)
        .map_err(|_| InputError(format!("unknown mode {mode:?}; available: {}", registry.names().join(", "))))?;
    let image = read_document(path)?
        .into_image()
        .ok_or_else(|| InputError(format!("{}: expected a document of kind image", path.display())))?;
    let image = std::sync::Arc::new(image);
    let out = strategy.search(&image, &caps);
    let s = out.stats;
    println!("verdict: {}", out.verdict);
    println!("reason: {}", out.reason);
    println!(
        "stats: strategy={} states={} expansions={} frontier_peak={} elapsed_ms={}",
        out.strategy, s.states_visited, s.expansions, s.frontier_peak, s.elapsed_ms
    );
    if let Some(w) = &out.witness {
        let q = w.last().constant_value().map(|q| q.to_string()).unwrap_or_default();
        println!("witness: length {} onto q = ({q})", w.m());
        if let Some(file) = emit {
            let text = Document::Homotopy(HomotopyDocument::contraction(w.clone())).to_text();
            fs::write(file, text).map_err(|e| InputError(format!("{}: {e}", file.display())))?;
            println!("witness written to {}", file.display());
        }
    }
    if let Some(reachable) = &out.reachable {
        match audit_closure(&image, reachable) {
            Ok(edges) => println!("closure audit: pass ({} maps, {edges} edges)", reachable.len()),
            Err(e) => {
                println!("closure audit: fail ({e})");
                return Ok(INCONCLUSIVE);
            }
        }
    }
    Ok(match out.verdict {
        SearchVerdict::Contractible => TRUE,
        SearchVerdict::NotContractible => FALSE,
        SearchVerdict::Inconclusive => INCONCLUSIVE,
    })
}

fn builtin(name: &str, adjacency: Option<u32>, emit: Option<&Path>) -> Outcome {
    let entry = catalog::lookup(name, adjacency).map_err(|e| match e {
        catalog::CatalogError::UnknownName(_) => InputError(format!("{e}; known: {}", BUILTIN_NAMES.join(", "))),
        other => InputError(other.to_string()),
    })?;
    let doc = match entry.object {
        CatalogObject::Image(img) => Document::Image(img),
        CatalogObject::Homotopy(h) => Document::Homotopy(HomotopyDocument::contraction(h)),
    };
    let text = format!("# {}: {}\n{}", entry.name, entry.provenance, doc.to_text());
    match emit {
        Some(file) => {
            fs::write(file, text).map_err(|e| InputError(format!("{}: {e}", file.display())))?;
            eprintln!("wrote {} to {}", entry.name, file.display());
        }
        None => print!("{text}"),
    }
    Ok(TRUE)
}

fn refute(search: bool, json: bool) -> Outcome {
    let report = catalog::refutation_report(&RefutationOptions { search, ..Default::default() });
    if json {
        println!("{}", report.to_json());
    } else {
        println!("{report}");
    }
    Ok(if report.passed() { TRUE } else { FALSE })
}
