use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bellctl::{CliError, CliResult};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "bellctl",
    version,
    about = "Bell-Mermin and Bell-Zukowski calculations on noisy Bell pairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Output format. CSV is available for `sweep` only.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// X/Y correlators of one noisy pair and their CHSH quadruple.
    Correlators {
        #[arg(long)]
        visibility: f64,
    },
    /// Bell-Mermin and Bell-Zukowski values for N copies.
    Analyze {
        #[arg(long)]
        visibility: f64,
        #[arg(long, default_value_t = 2)]
        copies: usize,
    },
    /// Visibility grid for each copy count, as CSV by default.
    Sweep {
        #[arg(long, default_value_t = 0.0)]
        v_min: f64,
        #[arg(long, default_value_t = 1.0)]
        v_max: f64,
        #[arg(long, default_value_t = 0.01)]
        v_step: f64,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        copies: Vec<usize>,
    },
    /// Numerical checks of the all-angle operator and its functionals.
    VerifyAppendix {
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Local hidden variable test of a correlation table read from PATH or stdin.
    Lhv {
        /// JSON file; `-` or absent reads standard input.
        input: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> CliResult<String> {
    let format = cli.format;
    let json_only = |name: &str| {
        if format == Some(Format::Csv) {
            Err(CliError::Usage(format!("{name} has no CSV output")))
        } else {
            Ok(())
        }
    };
    match cli.command {
        Command::Correlators { visibility } => {
            json_only("correlators")?;
            Ok(bellctl::correlators(visibility)?.to_json())
        }
        Command::Analyze { visibility, copies } => {
            json_only("analyze")?;
            Ok(bellctl::analyze(visibility, copies)?.to_json())
        }
        Command::Sweep {
            v_min,
            v_max,
            v_step,
            copies,
        } => {
            let s = bellctl::sweep(v_min, v_max, v_step, &copies)?;
            Ok(match format.unwrap_or(Format::Csv) {
                Format::Csv => s.to_csv(),
                Format::Json => s.to_report().to_json(),
            })
        }
        Command::VerifyAppendix { grid, trials, seed } => {
            json_only("verify-appendix")?;
            Ok(bellctl::verify_appendix(grid, trials, seed)?.to_json())
        }
        Command::Lhv { input } => {
            json_only("lhv")?;
            let (text, source) = match input {
                Some(p) if p.as_os_str() != "-" => {
                    let text = fs::read_to_string(&p)
                        .map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
                    (text, p.display().to_string())
                }
                _ => {
                    let mut text = String::new();
                    io::stdin()
                        .read_to_string(&mut text)
                        .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
                    (text, "-".to_string())
                }
            };
            let table = bellctl::parse_table(&text)?;
            Ok(bellctl::lhv(&table, &source)?.to_json())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.clone();
    let text = match run(cli) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("bellctl: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let written = match &output {
        Some(path) => fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("bellctl: {e}");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
