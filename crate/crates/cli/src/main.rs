//! `nbkemeny`: Kemeny constants of simple and non-backtracking walks, per graph
//! or over a graph6 corpus.
//!
//! Exit status: 0 clean, 1 when a result carries violations or per-graph
//! errors, 2 when the command itself fails (a JSON error object goes to stderr).

mod commands;
mod error;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use nbkemeny::nb_vertex::CONDITION_TOLERANCE;

use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "nbkemeny",
    version,
    about = "Kemeny constants of simple and non-backtracking random walks"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Spread tolerance for the uniform-return-time condition.
    #[arg(long, global = true, default_value_t = CONDITION_TOLERANCE)]
    pub tol: f64,
    /// Output encoding. Defaults to json for analyze, families and
    /// extremal-check, csv otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for corpus commands (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyse one graph and print every scalar both pipelines produce.
    Analyze(AnalyzeArgs),
    /// Survey a graph6 corpus: one CSV row per admitted graph plus a summary footer.
    Scan(CorpusArgs),
    /// Graphs meeting the uniform-return-time condition, split by edge-transitivity.
    ConditionSearch(CorpusArgs),
    /// Scatter data: fig2 is (trace form, hitting form), fig3 is (simple walk, hitting form).
    FigureData {
        #[arg(value_enum)]
        figure: FigureArg,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// List the graph families, or compare one family member with its closed forms.
    Families(FamilyOpts),
    /// Check the chord and barbell extremal statements at the given vertex counts.
    ExtremalCheck {
        #[arg(long = "n", num_args = 1.., default_values_t = [10, 12])]
        n: Vec<usize>,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["graph6", "input", "family"])))]
pub struct AnalyzeArgs {
    /// A graph6 string.
    pub graph6: Option<String>,
    /// File of graph6 lines; every line is analysed.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub family: FamilyOpts,
    /// Include every matrix (json only).
    #[arg(long)]
    pub emit_matrices: bool,
}

#[derive(Args, Debug)]
pub struct FamilyOpts {
    /// Family name, see `nbkemeny families`.
    #[arg(long)]
    pub family: Option<String>,
    /// Family parameters as `k=v,...`.
    #[arg(long, requires = "family")]
    pub params: Option<String>,
}

#[derive(Args, Debug)]
pub struct CorpusArgs {
    /// graph6 corpus, one graph per line.
    #[arg(long)]
    pub input: PathBuf,
    /// Skip graphs with a vertex of smaller degree.
    #[arg(long, default_value_t = 2)]
    pub min_degree: usize,
    /// Admit cycles (their trace-form fields stay empty).
    #[arg(long)]
    pub allow_cycles: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum FigureArg {
    Fig2,
    Fig3,
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    if cli.global.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.jobs)
            .build_global()
            .map_err(|e| CliError::new("invalid_input", e.to_string()))?;
    }
    let g = &cli.global;
    match cli.command {
        Command::Analyze(args) => commands::analyze(&args, g, out),
        Command::Scan(args) => commands::scan(&args, g, out),
        Command::ConditionSearch(args) => commands::condition_search(&args, g, out),
        Command::FigureData { figure, corpus } => commands::figure_data(figure, &corpus, g, out),
        Command::Families(args) => commands::families(&args, g, out),
        Command::ExtremalCheck { n } => commands::extremal_check(&n, g, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out).and_then(|clean| {
        out.flush()?;
        Ok(clean)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            eprintln!("{}", e.to_json());
            ExitCode::from(2)
        }
    }
}
