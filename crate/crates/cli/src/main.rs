use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use milnorkit::{corpus, CliError, CliResult, Format, Input};
use milnorkit_core::basing::DEFAULT_CAP;
use milnorkit_core::limits::set_max_degree;

#[derive(Parser)]
#[command(name = "milnorkit", version, about = "Milnor invariants and basing data for links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// PD JSON file
    input: Option<PathBuf>,
    /// Braid word such as "s1 s2^-1 s1", used instead of a file
    #[arg(long, requires = "strands")]
    braid: Option<String>,
    #[arg(long)]
    strands: Option<usize>,
}

impl InputArgs {
    fn resolve(&self) -> CliResult<Input> {
        match (&self.input, &self.braid, self.strands) {
            (Some(p), None, _) => Ok(Input::Pd(p.clone())),
            (None, Some(w), Some(s)) => Ok(Input::Braid { word: w.clone(), strands: s }),
            _ => Err(CliError::Usage("give either an input file or --braid with --strands".into())),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Print the mu / Delta / mu-bar table up to a length bound
    Compute {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Maximal basing length relative to the unlink or another link
    Basing {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        relative: Option<PathBuf>,
    },
    /// Compare the first possibly nonzero mu-bar layer of two links
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Compute tables for every PD file in a directory
    Corpus {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Output directory, `<dir>/results` by default
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> CliResult<(String, u8)> {
    match cli.command {
        Command::Compute { input, degree, format } => {
            let format = match format {
                FormatArg::Json => Format::Json,
                FormatArg::Text => Format::Text,
            };
            Ok((milnorkit::compute(&input.resolve()?, degree, format)?, 0))
        }
        Command::Basing { input, cap, relative } => {
            let relative = relative.map(Input::Pd);
            let report = milnorkit::basing_report(&input.resolve()?, cap, relative.as_ref())?;
            Ok((report.to_json() + "\n", 0))
        }
        Command::Compare { a, b, n } => Ok((milnorkit::compare(&Input::Pd(a), &Input::Pd(b), n)?, 0)),
        Command::Corpus { dir, degree, cache, out } => {
            let out = out.unwrap_or_else(|| dir.join("results"));
            let summary = corpus::run(&dir, degree, cache.as_deref(), &out)?;
            let code = if summary.failures.is_empty() { 0 } else { 1 };
            Ok((serde_json::to_string(&summary).expect("summary") + "\n", code))
        }
    }
}

fn main() -> ExitCode {
    if let Ok(v) = std::env::var("MILNORKIT_MAX_DEGREE") {
        match v.parse::<usize>() {
            Ok(n) => set_max_degree(n),
            Err(_) => {
                eprintln!("error: MILNORKIT_MAX_DEGREE must be a positive integer, got `{v}`");
                return ExitCode::from(2);
            }
        }
    }
    match run(Cli::parse()) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
