//! `diffprim`: command-line front end for the differential-field workbench.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diffprim::search::SearchConfig;

use report::RunReport;

#[derive(Debug, Parser)]
#[command(name = "diffprim", version, about = "Exact differential-algebra workbench")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    /// One JSON document, byte-stable for identical inputs and seed.
    Machine,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Compute ranks by symbolic elimination instead of random evaluation.
    #[arg(long, global = true)]
    symbolic: bool,
    #[arg(long, global = true, value_name = "N")]
    max_p_degree: Option<u32>,
    #[arg(long, global = true, value_name = "N")]
    max_coeff_height: Option<u32>,
    #[arg(long, global = true, value_name = "N")]
    lambda_height: Option<u32>,
    #[arg(long, global = true, value_name = "N")]
    retries: Option<u32>,
    #[arg(long, global = true, value_name = "N")]
    membership_degree_cap: Option<u32>,
    #[arg(long, global = true, value_name = "N")]
    max_candidates: Option<usize>,
    /// Skip the symbolic re-check of search results.
    #[arg(long, global = true)]
    no_symbolic_confirm: bool,
    /// Run batches on the current thread only.
    #[arg(long, global = true)]
    sequential: bool,
}

impl GlobalArgs {
    fn config(&self) -> SearchConfig {
        let d = SearchConfig::default();
        SearchConfig {
            max_p_degree: self.max_p_degree.unwrap_or(d.max_p_degree),
            max_coeff_height: self.max_coeff_height.unwrap_or(d.max_coeff_height),
            lambda_height: self.lambda_height.unwrap_or(d.lambda_height),
            retries: self.retries.unwrap_or(d.retries),
            seed: self.seed,
            membership_degree_cap: self.membership_degree_cap.unwrap_or(d.membership_degree_cap),
            symbolic_confirm: !self.no_symbolic_confirm,
            symbolic_rank: self.symbolic,
            max_candidates: self.max_candidates.unwrap_or(d.max_candidates),
            parallel: !self.sequential,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Differential and algebraic transcendence degree of elements.
    Trdeg {
        file: PathBuf,
        /// Element names or expressions, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        elements: Vec<String>,
    },
    /// Wronskian of elements under the field's derivation.
    Wronskian {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        elements: Vec<String>,
    },
    /// W_{k,l} with its A/B/C/D decomposition.
    Wkl {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// First p with trdeg k<a + c·p(b)> = trdeg k<a, b>.
    Density {
        file: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: Option<String>,
    },
    /// A primitive element with membership certificates.
    Primitive {
        file: PathBuf,
        /// Defaults to the field's generators.
        #[arg(long, value_delimiter = ',')]
        generators: Option<Vec<String>>,
    },
    /// Certificate that the target lies in k(z, z', ..., z^(order)).
    Member {
        file: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long)]
        tower: String,
        /// Defaults to the differential transcendence degree of the tower element.
        #[arg(long)]
        order: Option<u32>,
        #[arg(long)]
        deg_cap: Option<u32>,
    },
    /// Check every Wronskian identity up to k_max.
    VerifyLemmas {
        #[arg(long, default_value_t = 4)]
        k_max: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = cli.global.config();
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Trdeg { file, elements } => commands::trdeg(file, elements, &cfg),
        Command::Wronskian { file, elements } => commands::wronskian(file, elements),
        Command::Wkl { k, l } => commands::wkl(*k, *l),
        Command::Density { file, a, b, c } => commands::density(file, a, b, c.as_deref(), &cfg),
        Command::Primitive { file, generators } => commands::primitive(file, generators.as_deref(), &cfg),
        Command::Member { file, target, tower, order, deg_cap } => {
            commands::member(file, target, tower, *order, *deg_cap, &cfg)
        }
        Command::VerifyLemmas { k_max } => commands::verify_lemmas(*k_max, &cfg),
    };
    let report = RunReport {
        command: std::env::args().skip(1).collect(),
        config: cfg,
        outcome,
        elapsed: start.elapsed(),
    };
    report.print(cli.global.format);
    ExitCode::from(report.exit_code())
}
