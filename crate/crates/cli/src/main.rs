use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

use commands::{Report, Window};

#[derive(Parser, Debug)]
#[command(
    name = "projtri",
    version,
    about = "Triangulations of categories of projective modules"
)]
struct Cli {
    /// Emit the machine-readable report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether proj(R) admits a triangulation with suspension [n].
    Classify {
        ring: PathBuf,
        #[arg(long, default_value_t = 0)]
        n: i64,
    },
    /// Quasi-Frobenius test with a double-annihilator witness.
    Qf { ring: PathBuf },
    /// Check that the third Heller shift returns each module up to projectives.
    Heller {
        ring: PathBuf,
        #[arg(required = true)]
        modules: Vec<PathBuf>,
    },
    /// Build the DG algebra, report its homology and verify random triangles.
    DgVerify(DgArgs),
    /// Generating hypothesis verdict for the cyclic group of order p^n.
    Ggh {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "-6:6", allow_hyphen_values = true)]
        window: Window,
    },
    /// Run a fast built-in check suite.
    Selftest,
}

#[derive(Args, Debug)]
struct DgArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    i: i64,
    #[arg(long)]
    n: i64,
    #[arg(long, default_value = "-6:6", allow_hyphen_values = true)]
    window: Window,
    /// Truncation of the u-exponent; defaults to the smallest safe value.
    #[arg(long)]
    weight: Option<u32>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn run(cli: &Cli) -> Result<Report, String> {
    match &cli.command {
        Command::Classify { ring, n } => commands::classify(ring, *n),
        Command::Qf { ring } => commands::qf(ring),
        Command::Heller { ring, modules } => commands::heller(ring, modules),
        Command::DgVerify(a) => {
            commands::dg_verify(a.p, a.i, a.n, a.window, a.weight, a.trials, a.seed)
        }
        Command::Ggh { p, n, window } => commands::ggh(*p, *n, *window),
        Command::Selftest => commands::selftest(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("reports serialize")
                );
            } else {
                print!("{}", report.text);
            }
            if report.positive {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                let v = serde_json::json!({ "schema_version": projtri::classify::SCHEMA_VERSION, "error": e });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&v).expect("reports serialize")
                );
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
