//! `hgflow` command-line interface.
//!
//! Every subcommand prints its result to stdout in the selected format and
//! reports problems on stderr.  Exit code 0 means all residuals passed, 1
//! means at least one check failed, 2 means the input was rejected.
//! Identical command lines (including the seed) produce byte-identical
//! output, regardless of the HGFLOW_THREADS setting.

mod input;
mod output;
mod tasks;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use output::Format;

const COMPLEX_HELP: &str = "\
Complex numbers are written `re` or `re+imj` / `re-imj`, for example 0.3,\n\
-0.25, or 0.1-0.7j.  Lists may be space separated (--x 0.15 0.08) or comma\n\
separated (--x 0.15,0.08); when the first entry starts with a minus sign,\n\
attach the list with `=` (--x=-0.5+0.1j,0.3).\n\n\
Parameters come from exactly one source: --params FILE, inline --alpha/\n\
--beta/--gamma, inline --e/--kappa/--theta, or a deterministic draw from\n\
--seed when no parameters are given.\n\n\
HGFLOW_THREADS caps the number of worker threads; results are assembled in\n\
a fixed order, so the output never depends on it.";

#[derive(Parser)]
#[command(
    name = "hgflow",
    version,
    about = "Hypergeometric series, Pfaffian systems, Hamiltonian flows and their checks",
    after_help = COMPLEX_HELP,
    propagate_version = true
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Seed for every randomized draw (parameters, probe points, states).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the hypergeometric function at a point.
    Eval(tasks::EvalArgs),
    /// Check that the series satisfies its defining differential equations.
    PdeCheck(tasks::PdeArgs),
    /// Check the first-order system: flatness, matrix/scalar derivative
    /// agreement, and the holomorphic vector solution.
    PfaffianCheck(tasks::PfaffianArgs),
    /// Transport a solution vector along a waypoint path.
    Continue(tasks::ContinueArgs),
    /// Check the canonical vector fields against finite differences and
    /// staircase flow commutation.
    HamiltonianCheck(tasks::HamiltonianArgs),
    /// Check residue spectra, trace constraints, and zero curvature of the
    /// reduced linear problem.
    LaxCheck(tasks::LaxArgs),
    /// Verify the hypergeometric particular solution of the Hamiltonian
    /// system.
    VerifyTheorem(tasks::TheoremArgs),
    /// Check the parameter-shift operator identities coefficientwise.
    ContiguityCheck(tasks::ContiguityArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Eval(a) => tasks::eval_cmd(a, cli.seed),
        Cmd::PdeCheck(a) => tasks::pde_cmd(a, cli.seed),
        Cmd::PfaffianCheck(a) => tasks::pfaffian_cmd(a, cli.seed),
        Cmd::Continue(a) => tasks::continue_cmd(a, cli.seed),
        Cmd::HamiltonianCheck(a) => tasks::hamiltonian_cmd(a, cli.seed),
        Cmd::LaxCheck(a) => tasks::lax_cmd(a, cli.seed),
        Cmd::VerifyTheorem(a) => tasks::theorem_cmd(a, cli.seed),
        Cmd::ContiguityCheck(a) => tasks::contiguity_cmd(a, cli.seed),
    };
    match result {
        Ok(payload) => {
            print!("{}", payload.render(cli.format));
            if payload.pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
