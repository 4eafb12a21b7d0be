mod render;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use burnside_core::report::{self, Checks, CorpusSpec, Method};
use burnside_core::units::budget_from_env;
use burnside_core::{BurnsideRing, Error, Group, RingCache, SubgroupLattice};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "burnside", version, about = "Unit groups of Burnside rings of small finite groups")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Maximum number of sign vectors tested by the exhaustive unit search.
    #[arg(long, global = true, env = "BURNSIDE_BUDGET")]
    budget: Option<u64>,

    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Genetic,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Brute => Method::Brute,
            MethodArg::Genetic => Method::Genetic,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Order, type, centre and subgroup class count.
    Describe { group: String },
    /// All subgroups, their classes and the Möbius function.
    Lattice { group: String },
    /// Table of marks, optionally with the primitive rational idempotents.
    Marks {
        group: String,
        #[arg(long)]
        idempotents: bool,
    },
    /// The unit group of the Burnside ring.
    Units {
        group: String,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
    },
    /// A genetic basis of a p-group.
    Genetic { group: String },
    /// Image of the exponential map into the units.
    Exp { group: String },
    /// Cross-check every construction over a corpus of groups.
    Verify {
        /// JSON corpus file; the built-in corpus is used when absent.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Attach wall-clock timings to each group.
        #[arg(long)]
        timings: bool,
    },
}

/// A descriptor (`D16`, `dihedral:16`, `C2xC4`), inline ingestion JSON, or
/// a path to a JSON file.
fn load_group(arg: &str) -> Result<Group, Error> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') {
        return report::group_from_json(trimmed);
    }
    if arg.ends_with(".json") {
        let text = std::fs::read_to_string(arg).map_err(|e| Error::Input(format!("{arg}: {e}")))?;
        return report::group_from_json(&text);
    }
    report::parse_descriptor(arg)
}

fn emit<T: Serialize>(value: &T, json: bool) {
    let v = serde_json::to_value(value).expect("reports serialize");
    let text = if json {
        serde_json::to_string_pretty(&v).expect("reports serialize") + "\n"
    } else {
        render::text(&v)
    };
    let mut out = io::stdout().lock();
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
        }
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    let budget = cli.budget.unwrap_or_else(budget_from_env);
    let cache = RingCache::default();
    let ring = |arg: &str| -> Result<Arc<BurnsideRing>, Error> { cache.ring(&Arc::new(load_group(arg)?)) };
    match &cli.command {
        Command::Describe { group } => {
            let l = SubgroupLattice::new(Arc::new(load_group(group)?))?;
            emit(&report::describe(&l), cli.json);
        }
        Command::Lattice { group } => {
            let l = SubgroupLattice::new(Arc::new(load_group(group)?))?;
            emit(&report::lattice_report(&l)?, cli.json);
        }
        Command::Marks { group, idempotents } => {
            emit(&report::marks_report(&*ring(group)?, *idempotents), cli.json);
        }
        Command::Units { group, method } => {
            let r = report::units_report(&*ring(group)?, (*method).into(), budget, &cache)?;
            emit(&r, cli.json);
            return Ok(r.agreement);
        }
        Command::Genetic { group } => {
            let r = ring(group)?;
            emit(&report::genetic_report(r.lattice())?, cli.json);
        }
        Command::Exp { group } => {
            let r = report::exp_report(&*ring(group)?, budget, &cache)?;
            let ok = r.expected_image_rank.is_none_or(|e| e == r.image_rank);
            emit(&r, cli.json);
            return Ok(ok);
        }
        Command::Verify { corpus, timings } => {
            let spec = match corpus {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
                    CorpusSpec::from_json(&text)?
                }
                None => CorpusSpec::default(),
            };
            let budget = cli.budget.or(spec.budget).unwrap_or_else(budget_from_env);
            let groups = spec.resolve()?;
            let checks: Checks = spec.checks;
            let r = report::verify_corpus(&groups, checks, budget, *timings)?;
            emit(&r, cli.json);
            return Ok(r.pass);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
