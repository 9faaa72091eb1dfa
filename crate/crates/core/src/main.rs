use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pst_core::cli::{
    cmd_analyze, cmd_trace, cmd_verify, load_network, AnalyzeOptions, CliError, NetworkDocument,
    NetworkSource,
};
use pst_core::fidelity::DEFAULT_PST_TOLERANCE;

#[derive(Debug, Parser)]
#[command(
    name = "pst",
    version,
    about = "Perfect state transfer analysis of spin networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Stratify, reduce, compute the spectral measure and search for PST.
    Analyze {
        #[command(flatten)]
        net: NetworkArgs,
        /// Upper end of the search window (default: spectral period).
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_PST_TOLERANCE)]
        tolerance: f64,
    },
    /// Write the antipodal-layer amplitude as CSV.
    Trace {
        #[command(flatten)]
        net: NetworkArgs,
        #[arg(long, default_value_t = 0.0)]
        t_start: f64,
        /// Defaults to the spectral period.
        #[arg(long)]
        t_end: Option<f64>,
        #[arg(long, default_value_t = 1001)]
        samples: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare quotient amplitudes with full-space evolution at seeded random times.
    Verify {
        #[command(flatten)]
        net: NetworkArgs,
        /// Number of random sample times
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print a network as a TOML document.
    Export {
        #[command(flatten)]
        net: NetworkArgs,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct NetworkArgs {
    /// chain:N, hypercube:d, w-network, tree7, tree16, star5, circulant6
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    demo: Option<String>,
    /// TOML network document.
    #[arg(long)]
    input: Option<PathBuf>,
    /// 1-based reference vertex (overrides the document)
    #[arg(long)]
    reference: Option<usize>,
    /// Coupling scale λ (overrides the document)
    #[arg(long)]
    scale: Option<f64>,
}

impl NetworkArgs {
    fn source(&self) -> NetworkSource {
        match (&self.demo, &self.input) {
            (Some(name), _) => NetworkSource::Demo(name.clone()),
            (None, Some(path)) => NetworkSource::File(path.clone()),
            (None, None) => unreachable!("clap enforces one network source"),
        }
    }
}

fn write_out(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Analyze {
            net,
            t_max,
            tolerance,
        } => {
            let source = net.source();
            let network = load_network(&source, net.reference, net.scale)?;
            let report = cmd_analyze(&source, &network, &AnalyzeOptions { t_max, tolerance })?;
            print!("{}", report.to_text());
        }
        Command::Trace {
            net,
            t_start,
            t_end,
            samples,
            out,
        } => {
            let network = load_network(&net.source(), net.reference, net.scale)?;
            let csv = cmd_trace(&network, t_start, t_end, samples, out.as_deref())?;
            if out.is_none() {
                print!("{csv}");
            }
        }
        Command::Verify { net, trials, seed } => {
            let source = net.source();
            let network = load_network(&source, net.reference, net.scale)?;
            let report = cmd_verify(&source, &network, trials, seed)?;
            print!("{}", report.to_text());
            if !report.passed {
                eprintln!(
                    "error: quotient and full-space amplitudes disagree: residual {} at t = {}",
                    report.max_residual, report.worst_time
                );
                return Ok(ExitCode::from(1));
            }
        }
        Command::Export { net, out } => {
            let network = load_network(&net.source(), net.reference, net.scale)?;
            write_out(
                &NetworkDocument::from_network(&network).to_toml(),
                out.as_ref(),
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
