use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use vecpart::cli::{run_json, Command, Identity, EXIT_USAGE};

#[derive(Parser)]
#[command(
    name = "vecpart",
    version,
    about = "Exact vector partition functions and identity checks"
)]
struct Args {
    /// Emit structured JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certify that the cone spanned by the matrix columns is pointed.
    Pointed { input: Option<PathBuf> },
    /// Evaluate P_A(target) or, with a weight, P_A(target; weight).
    Count { input: Option<PathBuf> },
    /// Print the generating series of P_A(lambda; weight) up to `bound`.
    Series { input: Option<PathBuf> },
    /// Print generalized lattice path counts up to `bound`.
    Paths { input: Option<PathBuf> },
    /// Check an identity: thm1, rec, prop1, prop2, prop3, cb or cb1d.
    Verify {
        #[arg(value_parser = |s: &str| s.parse::<Identity>())]
        identity: Identity,
        input: Option<PathBuf>,
    },
}

fn read_input(path: Option<&PathBuf>) -> io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (command, input) = match &args.command {
        Cmd::Pointed { input } => (Command::Pointed, input),
        Cmd::Count { input } => (Command::Count, input),
        Cmd::Series { input } => (Command::Series, input),
        Cmd::Paths { input } => (Command::Paths, input),
        Cmd::Verify { identity, input } => (Command::Verify(*identity), input),
    };

    let text = match read_input(input.as_ref()) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read input: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };

    let outcome = run_json(command, &text, args.json);
    let _ = io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
