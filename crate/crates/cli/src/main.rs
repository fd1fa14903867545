use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use extalg::corpus::Profile;
use extalg::{analyze, poset, run_suite, HarnessError, SuiteConfig, SuiteReport};
use extalg_core::props::DEFAULT_ORACLE_CAP;

#[derive(Parser)]
#[command(name = "extalg", version, about = "Checks ideal-theoretic laws on ring extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the full report here and print only the summary.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Runs the registered laws over a corpus.
    Verify {
        /// `builtin`, a corpus file or a directory of instance files.
        #[arg(long, default_value = "builtin")]
        corpus: String,
        /// Comma list of law ids, or `all`.
        #[arg(long, default_value = "all")]
        laws: String,
        #[arg(long, default_value_t = 64)]
        max_ring_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
        /// Size of the builtin corpus: `small` or `standard`.
        #[arg(long, default_value = "standard")]
        profile: String,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluates properties on one instance file.
    Analyze {
        #[arg(long)]
        file: PathBuf,
        /// Comma list of property names, or `all`.
        #[arg(long, default_value = "all", value_delimiter = ',')]
        props: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Checks the poset hypotheses and equivalence on a poset file.
    Poset {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

fn emit(report: &SuiteReport, output: &Output) -> Result<(), HarnessError> {
    let full = match output.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &output.out {
        Some(path) => {
            std::fs::write(path, full)?;
            print!("{}", report.summary_text());
        }
        None => print!("{full}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, HarnessError> {
    match cli.command {
        Command::Verify { corpus, laws, max_ring_size, seed, oracle_cap, profile, output } => {
            let profile = Profile::parse(&profile)
                .ok_or_else(|| HarnessError::ConfigInvalid(format!("unknown profile `{profile}`")))?;
            let cfg = SuiteConfig { corpus, profile, laws, max_ring_size, seed, oracle_cap };
            let report = run_suite(&cfg)?;
            emit(&report, &output)?;
            Ok(report.summary.passed)
        }
        Command::Analyze { file, props, seed, oracle_cap, output } => {
            let props: Vec<String> = props.into_iter().map(|p| p.trim().to_string()).filter(|p| !p.is_empty()).collect();
            let report = analyze(&file, &props, oracle_cap, seed)?;
            emit(&report, &output)?;
            Ok(true)
        }
        Command::Poset { file, output } => {
            let report = poset(&file)?;
            emit(&report, &output)?;
            Ok(report.summary.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("extalg: {e}");
            ExitCode::from(2)
        }
    }
}
