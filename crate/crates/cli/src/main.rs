//! `hats`: build, verify, and evaluate hat-game covering codes.

mod commands;
mod formats;
mod parallel;

use clap::{Args, Parser, Subcommand, ValueEnum};
use commands::Failure;
use hats_core::analysis::LogBase;
use std::path::PathBuf;
use std::process::ExitCode;

/// Exit codes: 0 ok/holds, 1 property fails, 2 input error,
/// 3 inadmissible construction, 4 budget exceeded.
#[derive(Parser)]
#[command(name = "hats", version, about = "Hat-guessing strategies and covering codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Cap on exhaustive enumeration; overrides the HATS_BUDGET
    /// environment variable (default 100000000).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads for exhaustive sweeps; results are identical for
    /// any thread count.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Repetition,
    HammingCoset,
    DirectSum,
    Syndrome,
    Generalized,
}

impl FamilyArg {
    fn name(self) -> &'static str {
        match self {
            FamilyArg::Repetition => "repetition",
            FamilyArg::HammingCoset => "hamming-coset",
            FamilyArg::DirectSum => "direct-sum",
            FamilyArg::Syndrome => "syndrome",
            FamilyArg::Generalized => "generalized",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyArg {
    Covering,
    Strong,
    PerfectStrong,
    SyndromeLevel,
}

impl PropertyArg {
    fn name(self) -> &'static str {
        match self {
            PropertyArg::Covering => "covering",
            PropertyArg::Strong => "strong",
            PropertyArg::PerfectStrong => "perfect-strong",
            PropertyArg::SyndromeLevel => "syndrome-level",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Exhaustive,
    Symmetric,
    Zeroinfo,
    PerfectScan,
    Greedy,
}

impl KindArg {
    fn name(self) -> &'static str {
        match self {
            KindArg::Exhaustive => "exhaustive",
            KindArg::Symmetric => "symmetric",
            KindArg::Zeroinfo => "zeroinfo",
            KindArg::PerfectScan => "perfect-scan",
            KindArg::Greedy => "greedy",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LogBaseArg {
    E,
    #[value(name = "2")]
    Two,
    #[value(name = "10")]
    Ten,
}

impl From<LogBaseArg> for LogBase {
    fn from(b: LogBaseArg) -> LogBase {
        match b {
            LogBaseArg::E => LogBase::Natural,
            LogBaseArg::Two => LogBase::Two,
            LogBaseArg::Ten => LogBase::Ten,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code family and emit it (text format for explicit codes,
    /// JSON descriptor for implicit ones).
    Construct {
        #[arg(long)]
        family: FamilyArg,
        /// Number of hat colors.
        #[arg(long)]
        q: Option<u32>,
        /// Syndrome order (the parity check has m rows).
        #[arg(long)]
        m: Option<u32>,
        /// Number of players.
        #[arg(long)]
        n: Option<u32>,
        /// Low-weight threshold for the generalized family, e.g. `2/5`.
        #[arg(long)]
        beta: Option<String>,
        /// Column-weight cutoff for the generalized family.
        #[arg(long)]
        max_weight: Option<u32>,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a covering property of a code file or descriptor.
    Verify {
        #[arg(long)]
        property: PropertyArg,
        /// Code file (text format) or implicit-code descriptor (JSON).
        #[arg(long)]
        code: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        radius: u32,
        /// Parameters for --property syndrome-level.
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        max_weight: Option<u32>,
    },
    /// Exhaustively evaluate the strategy derived from a code.
    Eval {
        #[arg(long)]
        code: PathBuf,
    },
    /// Print every applicable bound at one parameter point.
    Bounds(BoundsArgs),
    /// Optimality searches over strategies and codes.
    Search {
        #[arg(long)]
        kind: KindArg,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sweep one bound over a parameter range, e.g. `--eq 5 --q 3 --m 1..3`.
    Table {
        /// Which quantity: 3 (sphere bound), 4 (strong bound),
        /// 5 (syndrome losing probability), 7 (exponent), 8 (existence bound).
        #[arg(long)]
        eq: String,
        #[arg(long)]
        q: Option<String>,
        /// Inclusive range `a..b` or a single value.
        #[arg(long)]
        m: Option<String>,
        #[arg(long)]
        n: Option<String>,
        #[arg(long, value_enum, default_value_t = LogBaseArg::E)]
        log_base: LogBaseArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    max_weight: Option<u32>,
    /// Include the density of this binary code in the report.
    #[arg(long)]
    code: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = LogBaseArg::E)]
    log_base: LogBaseArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

fn resolve_budget(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var("HATS_BUDGET").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(hats_core::DEFAULT_BUDGET)
}

fn run(cli: Cli) -> Result<i32, Failure> {
    let budget = resolve_budget(cli.budget);
    let threads = cli.threads;
    match cli.command {
        Command::Construct { family, q, m, n, beta, max_weight, out } => {
            commands::construct(commands::ConstructParams {
                family: family.name().into(),
                q,
                m,
                n,
                beta,
                max_weight,
                out,
            })
        }
        Command::Verify { property, code, radius, q, m, beta, max_weight } => {
            commands::verify(commands::VerifyParams {
                property: property.name().into(),
                code,
                radius,
                q,
                m,
                beta,
                max_weight,
                budget,
                threads,
            })
        }
        Command::Eval { code } => commands::eval(commands::EvalParams { code, budget, threads }),
        Command::Bounds(args) => commands::bounds(commands::BoundsParams {
            q: args.q,
            n: args.n,
            m: args.m,
            beta: args.beta,
            max_weight: args.max_weight,
            code: args.code,
            log_base: args.log_base.into(),
            csv: matches!(args.format, FormatArg::Csv),
        }),
        Command::Search { kind, n, q, seed } => commands::run_search(commands::SearchParams {
            kind: kind.name().into(),
            n,
            q,
            seed,
            budget,
            threads,
        }),
        Command::Table { eq, q, m, n, log_base, format } => {
            commands::table(commands::TableParams {
                eq,
                q,
                m,
                n,
                log_base: log_base.into(),
                csv: matches!(format, FormatArg::Csv),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.exit_code as u8)
        }
    }
}
