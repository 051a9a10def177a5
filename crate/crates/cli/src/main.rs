mod commands;
mod job;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use job::{GlobalOpts, JobSpec};

/// Pfaffian ideals of tangent cones to orthogonal Schubert varieties.
#[derive(Debug, Parser)]
#[command(name = "orthocone", version, about)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List I(d) in lexicographic order.
    EnumId,
    /// The generic patch matrix around e^v.
    PatchMatrix,
    /// f_tau for --v/--tau, or the Pfaffian of a numeric --matrix.
    Pfaffian(commands::PfaffianArgs),
    /// The Pfaffians f_tau generating the ideal of the tangent cone.
    Generators(commands::IdealArgs),
    /// Reduced Gröbner basis under --order.
    Groebner(commands::IdealArgs),
    /// Minimal generators of the initial ideal under --order.
    InitialIdeal(commands::IdealArgs),
    /// Stanley-Reisner complex of the initial ideal.
    Complex(commands::IdealArgs),
    /// New forms of a v-chain in ON(v).
    Newform(commands::NewformArgs),
    /// Run a verification suite.
    Verify(commands::VerifyArgs),
}

/// An error carrying its process exit status.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(EXIT_USAGE, message)
    }

    pub fn failure(message: impl Into<String>) -> Self {
        Self::new(EXIT_FAILURE, message)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = JobSpec::resolve(&cli.global).and_then(|job| {
        let out = match &cli.command {
            Command::EnumId => commands::enum_id(&job),
            Command::PatchMatrix => commands::patch_matrix(&job),
            Command::Pfaffian(a) => commands::pfaffian(&job, a),
            Command::Generators(a) => commands::generators(&job, a),
            Command::Groebner(a) => commands::groebner(&job, a),
            Command::InitialIdeal(a) => commands::initial_ideal(&job, a),
            Command::Complex(a) => commands::complex(&job, a),
            Command::Newform(a) => commands::newform(&job, a),
            Command::Verify(a) => commands::verify(&job, a),
        }?;
        let text = out.render(job.out)?;
        let mut stdout = std::io::stdout().lock();
        stdout
            .write_all(text.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|e| CliError::failure(format!("writing output: {e}")))?;
        Ok(out.status)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
