//! `gsa`: checks, constructions and identity computations for graded
//! algebras with involution.  Every command prints one JSON report.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use gsa_core::budget::DEFAULT_MAX_EVALS;
use gsa_core::identities::CH_DEFAULT_MAX_T;
use gsa_core::Error;
use serde_json::json;

use commands::{ConstructArgs, Ctx, Outcome, Status};

#[derive(Parser)]
#[command(name = "gsa", version, about = "Graded algebras with involution: structure, constructions and identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Cap on scalar operations for the whole command.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_EVALS)]
    max_evals: u64,
    /// Seed for the spinning vectors of the simplicity test.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Exit with status 1 unless the outcome is as expected.
    #[arg(long, global = true, value_enum)]
    expect: Option<Expect>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expect {
    Ok,
    OkOrInconclusive,
}

#[derive(Subcommand)]
enum Command {
    /// Check the graded involution axioms.
    Verify { algebra: PathBuf },
    /// Jacobson radical and its nilpotency degree.
    Radical { algebra: PathBuf },
    /// Graded star simplicity.
    Simple { algebra: PathBuf },
    /// Check a claimed elementary decomposition.
    DecompVerify { algebra: PathBuf, decomposition: PathBuf },
    /// The parameters (dims_gi; nd; dim J) and a reduced product witness.
    Params { algebra: PathBuf, decomposition: PathBuf },
    /// Build an algebra from a family.
    Construct(ConstructArgs),
    /// Representatives of the simple families over Z/q.
    Classify {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 2)]
        kmax: usize,
        /// Include the full algebra documents.
        #[arg(long)]
        full: bool,
    },
    /// Decide whether a multilinear polynomial is an identity.
    CheckId { algebra: PathBuf, polynomial: PathBuf },
    /// Dimension of the identities of a given multidegree.
    Iddim {
        algebra: PathBuf,
        /// Variable counts per complete degree, e.g. "1,0,1,0".
        #[arg(long, value_delimiter = ',', required = true)]
        multidegree: Vec<usize>,
    },
    /// Check that a polynomial vanishes on all thin or incomplete evaluations.
    Exact { algebra: PathBuf, decomposition: PathBuf, polynomial: PathBuf },
    /// Check the trace form identities on a test polynomial.
    FormsCheck { algebra: PathBuf, decomposition: PathBuf, polynomial: Option<PathBuf> },
    /// Fit a Cayley-Hamilton type identity.
    ChFit {
        algebra: PathBuf,
        decomposition: PathBuf,
        #[arg(long, default_value_t = CH_DEFAULT_MAX_T)]
        max_t: usize,
    },
    /// A polynomial of the expected type with a nonzero evaluation.
    Witness {
        algebra: PathBuf,
        decomposition: PathBuf,
        #[arg(long, default_value_t = 1)]
        mu: usize,
    },
    /// Truncated algebra with free radical, optionally divided by identities.
    Freerad {
        algebra: PathBuf,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        identities: Option<PathBuf>,
    },
}

fn run(command: &Command, ctx: &Ctx) -> gsa_core::Result<Outcome> {
    use commands as c;
    match command {
        Command::Verify { algebra } => c::verify(algebra),
        Command::Radical { algebra } => c::radical(algebra),
        Command::Simple { algebra } => c::simple(ctx, algebra),
        Command::DecompVerify { algebra, decomposition } => c::decomp_verify(ctx, algebra, decomposition),
        Command::Params { algebra, decomposition } => c::params(ctx, algebra, decomposition),
        Command::Construct(args) => c::construct(args),
        Command::Classify { q, kmax, full } => c::classify(ctx, *q, *kmax, *full),
        Command::CheckId { algebra, polynomial } => c::check_id(ctx, algebra, polynomial),
        Command::Iddim { algebra, multidegree } => c::iddim(ctx, algebra, multidegree),
        Command::Exact { algebra, decomposition, polynomial } => c::exact(ctx, algebra, decomposition, polynomial),
        Command::FormsCheck { algebra, decomposition, polynomial } => {
            c::forms_check(ctx, algebra, decomposition, polynomial.as_deref())
        }
        Command::ChFit { algebra, decomposition, max_t } => c::ch_fit(ctx, algebra, decomposition, *max_t),
        Command::Witness { algebra, decomposition, mu } => c::witness(ctx, algebra, decomposition, *mu),
        Command::Freerad { algebra, q, s, identities } => c::freerad(ctx, algebra, *q, *s, identities.as_deref()),
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::ResourceCap(_) | Error::SizeCap(_) => 2,
        Error::Parse(_) | Error::Cyclo(gsa_core::cyclo::CycloError::Parse(_)) => 3,
        _ => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx { seed: cli.seed, budget: gsa_core::Budget::new(cli.max_evals) };
    let start = Instant::now();
    let result = run(&cli.command, &ctx);
    let seconds = start.elapsed().as_secs_f64();

    let (status, payload, code) = match result {
        Ok((status, payload)) => {
            let code = match (status, cli.expect) {
                (Status::Ok, _) | (_, None) => 0,
                (Status::Inconclusive, Some(Expect::OkOrInconclusive)) => 0,
                _ => 1,
            };
            (status.name(), payload, code)
        }
        Err(e) => ("error", json!({ "error": e.to_string() }), error_code(&e)),
    };
    let report = json!({
        "format": gsa_core::json::FORMAT,
        "command": std::env::args().skip(1).collect::<Vec<_>>(),
        "status": status,
        "payload": payload,
        "timing": { "seconds": seconds },
        "counters": { "evaluations": ctx.budget.used(), "max_evals": ctx.budget.limit() },
    });
    let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("gsa: cannot write {}: {e}", path.display());
                return ExitCode::from(4);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}
