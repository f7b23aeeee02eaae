use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use fibertope::exact::Strictness;
use fibertope::Budget;
use fibertope_cli::{cmd_build, cmd_fiber_polytope, cmd_nbar, cmd_verify, BuildObject, Options, DEFAULT_SEED};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "fibertope", version, about = "Fiber polytopes, refined normal fans and lattice-point checks")]
struct Cli {
    /// Write the computed object (polytope, projection, fiber polytope) to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Overwrite an existing --out file.
    #[arg(long, global = true)]
    force: bool,
    /// Seed for randomized spot checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Stop long computations after this many seconds and report what was done.
    #[arg(long, global = true)]
    budget_seconds: Option<f64>,
    /// Reject non-canonical rationals such as "2/4" in input files.
    #[arg(long, global = true)]
    strict: bool,
    /// Include wall-clock time in the report (makes reports differ between runs).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a named polytope, projection or lattice.
    Build {
        #[arg(value_enum)]
        object: BuildObject,
        #[arg(long)]
        n: Option<usize>,
        /// Highest weight, comma separated, e.g. 1,1,0,0.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Option<Vec<i64>>,
    },
    /// Fiber polytope and refined fiber fan of a polytope under a projection.
    FiberPolytope {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long)]
        projection: PathBuf,
    },
    /// Fiber polytope of the polygon polytope over the hypersimplex.
    Nbar {
        #[arg(long)]
        n: usize,
    },
    /// Run the verification suite up to the given n and k.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u64,
        /// Count in the full integer lattice instead of the parity lattice.
        #[arg(long)]
        disable_parity: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        out: cli.out.clone(),
        force: cli.force,
        seed: cli.seed,
        budget: cli.budget_seconds.map(Budget::seconds).unwrap_or_default(),
        strictness: if cli.strict { Strictness::Strict } else { Strictness::Lenient },
    };
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Build { object, n, lambda } => cmd_build(*object, *n, lambda.clone(), &opts),
        Command::FiberPolytope { polytope, projection } => cmd_fiber_polytope(polytope, projection, &opts),
        Command::Nbar { n } => cmd_nbar(*n, &opts),
        Command::Verify { n, k, disable_parity } => cmd_verify(*n, *k, !disable_parity, &opts),
    };
    let mut report = match outcome {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if cli.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis());
    }
    match cli.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    if !report.complete {
        ExitCode::from(3)
    } else if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
