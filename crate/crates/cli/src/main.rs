use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use oblivious_dicut::commands::{self, BoundArgs, MixmaxArgs, RatioArgs, SearchArgs};
use oblivious_dicut::CliError;

/// Certified approximation ratios of oblivious algorithms for Max DICUT.
#[derive(Parser)]
#[command(name = "oblivious-dicut", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify the approximation ratio of a selection function.
    Ratio {
        /// Built-in name (uniform, greedy-threshold, f-delta:D, clamped-linear:K, paper-0483) or a stepfn file.
        #[arg(long = "fn")]
        function: String,
        /// Write the witness graph here.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Write the certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Solve the program restricted to reversal-symmetric graphs.
        #[arg(long)]
        sym_reduce: bool,
        /// Give up after this many seconds.
        #[arg(long)]
        time_limit: Option<f64>,
    },
    /// Expected cut weight of a function on a graph.
    Eval {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long = "fn")]
        function: String,
        /// Also estimate by sampling this many cuts.
        #[arg(long)]
        mc: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Maximum directed cut by exhaustive search.
    Opt {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Best member of the discretized family with 2N intervals.
    Search {
        #[arg(long)]
        n: u32,
        /// Refine the winner by coordinate ascent: GRID ROUNDS.
        #[arg(long, num_args = 2, value_names = ["GRID", "ROUNDS"])]
        refine: Option<Vec<u32>>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write one line per candidate here.
        #[arg(long)]
        ledger: Option<PathBuf>,
        /// Write the best function here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Upper bounds from the gadget construction.
    Bound {
        #[arg(long)]
        c: String,
        #[arg(long, default_value_t = 1)]
        g1: usize,
        #[arg(long, default_value_t = 3)]
        g2: usize,
        /// Tabulate the ratio formula over alpha in steps of this size.
        #[arg(long)]
        alpha_grid: Option<String>,
        /// Evaluate this function on the gadgets and the even cycle.
        #[arg(long = "fn")]
        function: Option<String>,
        /// Write the combined gadget graph here.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Reduce a 2-AND instance to a DICUT instance.
    Reduce2and {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Replace a weighted graph by an unweighted one with the same ratio.
    Expand {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Largest number of copies per vertex.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Combine several algorithms on one graph.
    Mixmax {
        #[arg(long)]
        graph: PathBuf,
        /// Functions (as for --fn) or `greedy`.
        #[arg(long, num_args = 1.., required = true)]
        members: Vec<String>,
        /// Mixing weights, one per member.
        #[arg(long, num_args = 1..)]
        mix: Option<Vec<String>>,
        /// Estimate the expected best-of by sampling this many rounds.
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a certificate file against a function.
    Verify {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long = "fn")]
        function: String,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Ratio {
            function,
            witness,
            cert,
            sym_reduce,
            time_limit,
        } => {
            let time_limit = match time_limit {
                Some(s) if s.is_finite() && s >= 0.0 => Some(Duration::from_secs_f64(s)),
                Some(s) => return Err(CliError::Usage(format!("invalid time limit {s}"))),
                None => None,
            };
            commands::ratio(&RatioArgs {
                function: &function,
                witness: witness.as_deref(),
                cert: cert.as_deref(),
                symmetric_reduction: sym_reduce,
                time_limit,
            })
        }
        Command::Eval {
            graph,
            function,
            mc,
            seed,
        } => commands::eval(&graph, &function, mc.map(|t| (t, seed))),
        Command::Opt { graph } => commands::opt(&graph),
        Command::Search {
            n,
            refine,
            jobs,
            ledger,
            out,
        } => commands::search(&SearchArgs {
            n,
            refine: refine.map(|v| (v[0], v[1])),
            jobs,
            ledger: ledger.as_deref(),
            output: out.as_deref(),
        }),
        Command::Bound {
            c,
            g1,
            g2,
            alpha_grid,
            function,
            export,
        } => commands::bound(&BoundArgs {
            c: &c,
            g1,
            g2,
            alpha_grid: alpha_grid.as_deref(),
            function: function.as_deref(),
            export: export.as_deref(),
        }),
        Command::Reduce2and { input, out } => commands::reduce2and(&input, &out),
        Command::Expand { graph, out, limit } => commands::expand(&graph, &out, limit),
        Command::Mixmax {
            graph,
            members,
            mix,
            trials,
            seed,
        } => commands::mixmax(&MixmaxArgs {
            graph: &graph,
            members: &members,
            mix: mix.as_deref(),
            trials,
            seed,
        }),
        Command::Verify { cert, function } => commands::check_certificate(&cert, &function),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
