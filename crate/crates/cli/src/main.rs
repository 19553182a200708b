//! `pcw-lab`: pseudo-codeword analysis of binary parity-check matrices.
//!
//! Every subcommand reads a matrix with `-H`, prints a JSON report on stdout
//! and exits 0 on success, 1 on a negative verdict, 2 on any error.

mod commands;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pcw_core::formats::{parse_matrix, MatrixFormat};
use pcw_core::gf2::{BinaryMatrix, DEFAULT_MAX_DIMENSION};
use pcw_core::zeta::{ZetaOptions, DEFAULT_MAX_DIRECTED_EDGES};

use commands::{CliError, CliResult, Outcome, ZetaGraph};
use report::AnalysisReport;

#[derive(Parser, Debug)]
#[command(name = "pcw-lab", version, about = "Pseudo-codeword analysis of binary LDPC codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Plain,
    Alist,
}

#[derive(Args, Debug)]
struct Input {
    /// Parity-check matrix file.
    #[arg(short = 'H', long = "matrix", value_name = "PATH")]
    matrix: PathBuf,
    /// Input format; by default `.alist` files are alist and anything else is plain.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
struct ZetaLimits {
    /// Largest number of directed edges (twice the edge count) accepted.
    #[arg(long, default_value_t = DEFAULT_MAX_DIRECTED_EDGES)]
    max_directed_edges: usize,
    /// Evaluate the determinant both ways round and require agreement.
    #[arg(long)]
    verify_det: bool,
}

impl ZetaLimits {
    fn options(&self) -> ZetaOptions {
        ZetaOptions {
            max_directed_edges: self.max_directed_edges,
            verify: self.verify_det,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions, degrees and graph properties.
    Info {
        #[command(flatten)]
        input: Input,
    },
    /// List every codeword.
    Codewords {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_MAX_DIMENSION)]
        max_dim: usize,
    },
    /// Maximum-likelihood decoding on the binary symmetric channel.
    Decode {
        #[command(flatten)]
        input: Input,
        /// Received word, e.g. 1011010.
        #[arg(long)]
        received: String,
        #[arg(long, default_value_t = DEFAULT_MAX_DIMENSION)]
        max_dim: usize,
    },
    /// Fundamental cone queries.
    Cone {
        #[command(subcommand)]
        op: ConeOp,
    },
    /// Unscaled pseudo-codeword queries.
    Pcw {
        #[command(subcommand)]
        op: PcwOp,
    },
    /// Build a cover and a cover codeword realizing an unscaled pseudo-codeword.
    Realize {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        /// Re-check the balance invariant at every step.
        #[arg(long)]
        check_invariants: bool,
    },
    /// Graph covers.
    Cover {
        #[command(subcommand)]
        op: CoverOp,
    },
    /// Lift a codeword to the trivial M-fold cover.
    Lift {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        codeword: String,
        #[arg(long)]
        m: usize,
    },
    /// Matrix reductions.
    Reduce {
        #[command(subcommand)]
        op: ReduceOp,
    },
    /// Reciprocal edge zeta function and its series.
    Zeta {
        #[command(flatten)]
        input: Input,
        /// Use the normal graph (cycle codes only).
        #[arg(long, conflicts_with = "tanner")]
        normal: bool,
        /// Use the Tanner graph.
        #[arg(long)]
        tanner: bool,
        /// Also expand the zeta series up to this total degree.
        #[arg(long)]
        degree: Option<u32>,
        #[command(flatten)]
        limits: ZetaLimits,
    },
    /// Pseudo-codewords from the zeta series, up to a total degree.
    ///
    /// Cycle codes are expanded on the normal graph, so the degree bounds the
    /// weight of the pseudo-codeword. Other codes go through the Tanner graph
    /// (with every check doubled unless the graph is already bit-even) and the
    /// degree counts Tanner edges, each bit contributing its value times its
    /// degree.
    Enumerate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        degree: u32,
        #[command(flatten)]
        limits: ZetaLimits,
    },
}

#[derive(Subcommand, Debug)]
enum ConeOp {
    /// Test membership of a rational vector.
    Check {
        #[command(flatten)]
        input: Input,
        /// Entries as integers or p/q, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// Approximate a cone member by a scaled unscaled pseudo-codeword.
    Ray {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(long)]
        eps: String,
    },
}

#[derive(Subcommand, Debug)]
enum PcwOp {
    /// Decide whether an integer vector is an unscaled pseudo-codeword.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
}

#[derive(Subcommand, Debug)]
enum CoverOp {
    /// A uniformly random M-fold cover.
    Random {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum ReduceOp {
    /// Double every check so that the Tanner graph is bit-even.
    BitEven {
        #[command(flatten)]
        input: Input,
        /// Also write the reduced matrix here (alist if the name ends in .alist).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load(input: &Input) -> CliResult<BinaryMatrix> {
    let text = std::fs::read_to_string(&input.matrix)
        .map_err(|e| CliError(format!("{}: {e}", input.matrix.display())))?;
    let format = match input.format {
        Some(Format::Plain) => MatrixFormat::Plain,
        Some(Format::Alist) => MatrixFormat::Alist,
        None if has_alist_extension(&input.matrix) => MatrixFormat::Alist,
        None => MatrixFormat::Plain,
    };
    parse_matrix(&text, format).map_err(|e| CliError(format!("{}: {e}", input.matrix.display())))
}

fn has_alist_extension(p: &Path) -> bool {
    p.extension().is_some_and(|e| e.eq_ignore_ascii_case("alist"))
}

type Job<'a> = Box<dyn FnOnce(&BinaryMatrix) -> CliResult<Outcome> + 'a>;

fn dispatch(command: &Command) -> (&'static str, &Input, Job<'_>) {
    match command {
        Command::Info { input } => ("info", input, Box::new(commands::info)),
        Command::Codewords { input, max_dim } => ("codewords", input, Box::new(move |h| commands::codewords(h, *max_dim))),
        Command::Decode { input, received, max_dim } => {
            ("decode", input, Box::new(move |h| commands::decode(h, received, *max_dim)))
        }
        Command::Cone { op: ConeOp::Check { input, vector } } => {
            ("cone check", input, Box::new(move |h| commands::cone_check(h, vector)))
        }
        Command::Cone { op: ConeOp::Ray { input, vector, eps } } => {
            ("cone ray", input, Box::new(move |h| commands::cone_ray(h, vector, eps)))
        }
        Command::Pcw { op: PcwOp::Verify { input, vector } } => {
            ("pcw verify", input, Box::new(move |h| commands::pcw_verify(h, vector)))
        }
        Command::Realize {
            input,
            vector,
            check_invariants,
        } => ("realize", input, Box::new(move |h| commands::realize(h, vector, *check_invariants))),
        Command::Cover { op: CoverOp::Random { input, m, seed } } => {
            ("cover random", input, Box::new(move |h| commands::cover_random(h, *m, *seed)))
        }
        Command::Lift { input, codeword, m } => ("lift", input, Box::new(move |h| commands::lift(h, codeword, *m))),
        Command::Reduce { op: ReduceOp::BitEven { input, out } } => {
            ("reduce bit-even", input, Box::new(move |h| commands::reduce_bit_even(h, out.as_deref())))
        }
        Command::Zeta {
            input,
            normal,
            tanner,
            degree,
            limits,
        } => {
            let graph = match (normal, tanner) {
                (true, _) => Some(ZetaGraph::Normal),
                (_, true) => Some(ZetaGraph::Tanner),
                _ => None,
            };
            ("zeta", input, Box::new(move |h| commands::zeta(h, graph, *degree, limits.options())))
        }
        Command::Enumerate { input, degree, limits } => {
            ("enumerate", input, Box::new(move |h| commands::enumerate(h, *degree, limits.options())))
        }
    }
}

fn run(cli: &Cli) -> CliResult<bool> {
    let (name, input, job) = dispatch(&cli.command);
    let h = load(input)?;
    let start = Instant::now();
    let outcome = job(&h)?;
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let report = AnalysisReport::new(&h, name, outcome.parameters, outcome.results, elapsed_ms);
    let text = serde_json::to_string_pretty(&report).map_err(|e| CliError(e.to_string()))?;
    println!("{text}");
    Ok(!outcome.negative)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("pcw-lab: error: {e}");
            ExitCode::from(2)
        }
    }
}
