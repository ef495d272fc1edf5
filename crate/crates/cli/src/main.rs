use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use telecloning::mc::workers_from_env;
use telecloning_cli::{
    cmd_curve, cmd_heisenberg, cmd_simulate, cmd_solve, cmd_verify, parse_weights, CliError, Format, OutputRecord,
    VerifyArgs,
};

/// Optimal asymmetric telecloning: solver, oracles, monogamy curves and
/// Heisenberg bounds.
#[derive(Parser)]
#[command(name = "sm-toolkit", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimal cloner for given weights.
    Solve {
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Comma-separated weights; rescaled to sum to one.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Option<Vec<f64>>,
        /// Equal weights over N clones.
        #[arg(long, value_name = "N")]
        symmetric: Option<usize>,
    },
    /// Two-clone singlet-fraction trade-off.
    Curve {
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 101)]
        points: usize,
        /// Add the qubit tangle-monogamy curve.
        #[arg(long)]
        include_tangle: bool,
    },
    /// Check the solver against the full operator.
    Verify {
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long)]
        n_clones: usize,
        /// Random weight vectors and Haar probes.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Samples for the Monte Carlo twirl (0 skips it).
        #[arg(long, default_value_t = 20_000)]
        mc_samples: usize,
    },
    /// Ground-energy and mean-field bounds for spin-1/2 Heisenberg lattices.
    Heisenberg {
        /// Coordination number.
        #[arg(long)]
        c: Option<usize>,
        /// Comma-separated bond couplings, one per neighbour.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        couplings: Option<Vec<f64>>,
        #[arg(long, default_value_t = 0.0)]
        magnetization: f64,
    },
    /// Monte Carlo run of the telecloning protocol.
    Simulate {
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Option<Vec<f64>>,
        #[arg(long, value_name = "N")]
        symmetric: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn workers() -> usize {
    workers_from_env().unwrap_or(1)
}

fn weights(
    alpha: &Option<Vec<f64>>,
    symmetric: Option<usize>,
    warnings: &mut String,
) -> Result<telecloning::cloner::CloneWeights, CliError> {
    let (w, warning) = parse_weights(alpha.as_deref(), symmetric)?;
    if let Some(msg) = warning {
        warnings.push_str(&format!("warning: {msg}\n"));
    }
    Ok(w)
}

fn run(cli: Cli, warnings: &mut String) -> Result<(OutputRecord, Vec<String>, Format), CliError> {
    let format = cli.format;
    let (record, failures) = match cli.command {
        Command::Solve { d, alpha, symmetric } => (cmd_solve(d, &weights(&alpha, symmetric, warnings)?)?, vec![]),
        Command::Curve {
            d,
            points,
            include_tangle,
        } => (cmd_curve(d, points, include_tangle)?, vec![]),
        Command::Verify {
            d,
            n_clones,
            trials,
            seed,
            mc_samples,
        } => {
            let (rec, failures) = cmd_verify(&VerifyArgs {
                d,
                num_clones: n_clones,
                trials,
                seed,
                mc_samples,
                workers: workers(),
            })?;
            (rec, failures)
        }
        Command::Heisenberg {
            c,
            couplings,
            magnetization,
        } => (cmd_heisenberg(c, couplings.as_deref(), magnetization)?, vec![]),
        Command::Simulate {
            d,
            alpha,
            symmetric,
            samples,
            seed,
        } => (
            cmd_simulate(d, &weights(&alpha, symmetric, warnings)?, samples, seed, workers())?,
            vec![],
        ),
    };
    Ok((record, failures, format))
}

/// Result of one invocation: exit code plus the text for each stream.
struct Execution {
    code: u8,
    stdout: String,
    stderr: String,
}

fn execute<I, T>(args: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let done = |code, stdout: String, stderr: String| Execution { code, stdout, stderr };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                done(2, String::new(), text)
            } else {
                done(0, text, String::new())
            };
        }
    };
    let mut warnings = String::new();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(cli, &mut warnings)));
    match outcome {
        Ok(Ok((record, failures, format))) => {
            let mut err = warnings;
            for f in &failures {
                err.push_str(&format!("FAILED: {f}\n"));
            }
            done(u8::from(!failures.is_empty()), record.render(format), err)
        }
        Ok(Err(CliError::Usage(msg))) => done(2, String::new(), format!("{warnings}error: {msg}\n")),
        Ok(Err(CliError::Failure(msg))) => done(1, String::new(), format!("{warnings}error: {msg}\n")),
        Err(_) => done(1, String::new(), "error: internal failure\n".into()),
    }
}

fn main() -> ExitCode {
    let result = execute(std::env::args_os());
    let _ = std::io::stdout().lock().write_all(result.stdout.as_bytes());
    let _ = std::io::stderr().lock().write_all(result.stderr.as_bytes());
    ExitCode::from(result.code)
}
