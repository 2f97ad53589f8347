//! Command-line front end: argument parsing, command dispatch, the report
//! model and the character cache.

pub mod cache;
pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use lambdag::closedforms::Partition;
use lambdag::gradedchar::CharacterMode;
use lambdag::{RootType, Weight};

use commands::{CliError, Context, Outcome};
use report::Format;

#[derive(Debug, Parser)]
#[command(
    name = "lambdag",
    version,
    about = "Graded multiplicities in the exterior algebra of a simple Lie algebra"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Directory for cached characters.
    #[arg(long, global = true, env = "LAMBDAG_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub budget_seconds: Option<u64>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Report `runtime_ms` as 0 so that reports are byte-identical across runs.
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    #[arg(long = "type")]
    pub type_tag: RootType,
    #[arg(long)]
    pub rank: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root system summary.
    Roots(AlgebraArgs),
    /// Graded multiplicity of one irreducible module.
    Gm {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Highest weight in fundamental-weight coordinates, e.g. 1,0,2.
        #[arg(long, allow_hyphen_values = true)]
        weight: Weight,
    },
    /// Little adjoint module: closed form, oracle and product form.
    Bazlov(AlgebraArgs),
    /// Type A hook formula for a partition against the oracle.
    Stembridge {
        #[arg(long)]
        partition: Partition,
    },
    /// Freeness test over every small module.
    Census {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, conflicts_with = "targeted")]
        full: bool,
        #[arg(long)]
        targeted: bool,
        #[arg(long)]
        box_bound: Option<i64>,
    },
    /// Divisibility scan over the partitions of n in type A.
    ScanA {
        #[arg(long)]
        n: u32,
    },
    /// Pairing identity and Koszul properties in sl_n.
    VerifySl {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Property suite up to rank 3.
    Selftest,
}

pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn dispatch(cli: &Cli, ctx: &Context) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Roots(a) => commands::roots(a.type_tag, a.rank),
        Command::Gm { algebra, weight } => {
            commands::gm(ctx, algebra.type_tag, algebra.rank, weight)
        }
        Command::Bazlov(a) => commands::bazlov(ctx, a.type_tag, a.rank),
        Command::Stembridge { partition } => commands::stembridge(ctx, partition),
        Command::Census {
            algebra,
            full,
            targeted,
            box_bound,
        } => {
            let mode = match (full, targeted) {
                (true, _) => Some(CharacterMode::Full),
                (_, true) => Some(CharacterMode::Targeted),
                _ => None,
            };
            commands::census(ctx, algebra.type_tag, algebra.rank, mode, *box_bound)
        }
        Command::ScanA { n } => commands::scan_a(*n),
        Command::VerifySl { n, trials, seed } => commands::verify_sl(*n, *trials, *seed),
        Command::Selftest => commands::selftest(ctx),
    }
}

/// Exit codes: 0 when every check holds, 1 on a failed check, 2 on a usage
/// or budget error.
pub fn run<I, T>(argv: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Execution {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Execution {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let start = Instant::now();
    let ctx = Context {
        cache_dir: cli.cache_dir.as_deref(),
        budget: cli.budget_seconds.map(Duration::from_secs),
        start,
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let result = match pool.build() {
        Ok(p) => p.install(|| dispatch(&cli, &ctx)),
        Err(e) => Err(CliError::Usage(e.to_string())),
    };
    match result {
        Ok(Outcome {
            mut report,
            budget_note,
        }) => {
            let elapsed = start.elapsed();
            report.runtime_ms = if cli.no_timing {
                0
            } else {
                elapsed.as_millis() as u64
            };
            let over = ctx.budget.is_some_and(|b| elapsed > b);
            let note = budget_note.or_else(|| {
                over.then(|| format!("ran {} ms, over the budget", elapsed.as_millis()))
            });
            let stdout = report.render(cli.format);
            match note {
                Some(n) => Execution {
                    code: 2,
                    stdout,
                    stderr: format!("budget exceeded: {n}\n"),
                },
                None => Execution {
                    code: if report.all_pass() { 0 } else { 1 },
                    stdout,
                    stderr: String::new(),
                },
            }
        }
        Err(e) => Execution {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
