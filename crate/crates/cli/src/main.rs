use std::io;
use std::path::PathBuf;
use std::process;

use clap::{ArgGroup, Parser, Subcommand};

use veerkit_cli::{
    cmd_covers, cmd_example, cmd_gen, cmd_qp, cmd_reduce, cmd_survey, cmd_veering, CliError,
    Options, DEFAULT_BUDGET, EXIT_USAGE,
};

#[derive(Parser)]
#[command(
    name = "veerkit",
    version,
    about = "Twist-knot braids, branched covers of their closures, and left-veering detection"
)]
struct Cli {
    /// print the full run report as a single JSON document
    #[arg(long, global = true)]
    json: bool,

    /// seed echoed into the report for reproducible pipelines
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// visited-word budget for exhaustive reductions
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the maximal self-linking braid of a twist knot
    Gen {
        /// twist parameter
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        /// representative index where the family has several
        #[arg(long)]
        rep: Option<usize>,
    },
    /// Enumerate branched covers of a braid closure
    #[command(group(ArgGroup::new("degrees").required(true).args(["k", "max_k"])))]
    Covers {
        /// braid word as signed integers, e.g. "2 -1 -1 -2 1 2"
        #[arg(long, allow_hyphen_values = true)]
        braid: String,
        /// single cover degree
        #[arg(long)]
        k: Option<usize>,
        /// enumerate every degree from 1 up to this
        #[arg(long)]
        max_k: Option<usize>,
    },
    /// Run the witness search over every cover of a twist knot
    Survey {
        /// twist parameter
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        /// largest cover degree to examine
        #[arg(long)]
        max_k: usize,
    },
    /// Reduce the built-in seven-sheet example to its short form
    Example,
    /// Verify the stored quasipositive factorization of an even negative twist knot
    Qp {
        /// twist parameter, even and at most -4
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        /// representative index
        #[arg(long)]
        rep: Option<usize>,
    },
    /// Exhaustively reduce a detailed branching word over a cover
    Reduce {
        /// path to a cover JSON file {"k":..., "initial":[[...]]}
        #[arg(long)]
        cover: PathBuf,
        /// detailed word, e.g. "A2{6->5} A3{5->4} A3{7->6}'"
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Search a cover of a braid closure for a left-veering witness
    Veering {
        /// braid word as signed integers
        #[arg(long, allow_hyphen_values = true)]
        braid: String,
        /// path to a cover JSON file
        #[arg(long)]
        cover: PathBuf,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Some(raw) = std::env::var_os("VEERKIT_THREADS") else {
        return Ok(());
    };
    let text = raw.to_string_lossy();
    let n: usize = text
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| {
            CliError::invalid(format!(
                "VEERKIT_THREADS must be a positive integer, got {text:?}"
            ))
        })?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::internal(format!("thread pool: {e}")))?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            process::exit(code);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {}", e.message);
        process::exit(e.code);
    }
    let opts = Options {
        json: cli.json,
        seed: cli.seed,
        budget: cli.budget,
    };
    let mut out = io::stdout().lock();
    let outcome = match cli.command {
        Command::Gen { m, rep } => cmd_gen(m, rep, &opts, &mut out),
        Command::Covers { braid, k, max_k } => cmd_covers(&braid, k, max_k, &opts, &mut out),
        Command::Survey { m, max_k } => cmd_survey(m, max_k, &opts, &mut out),
        Command::Example => cmd_example(&opts, &mut out),
        Command::Qp { m, rep } => cmd_qp(m, rep, &opts, &mut out),
        Command::Reduce { cover, word } => cmd_reduce(&cover, &word, &opts, &mut out),
        Command::Veering { braid, cover } => cmd_veering(&braid, &cover, &opts, &mut out),
    };
    if let Err(e) = outcome {
        if !e.message.is_empty() {
            eprintln!("error: {}", e.message);
        }
        process::exit(e.code);
    }
}
