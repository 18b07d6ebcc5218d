//! `qdf` - Bell-diagonal dephasing dynamics from the command line.
//!
//! Exit codes: 0 success, 1 evaluation failure, 2 invalid request,
//! 3 unphysical state, 4 unsupported noise regime.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CommandOutput, ConditionFilter, Format};
use qdf_core::Error;

#[derive(Parser)]
#[command(
    name = "qdf",
    version,
    about = "Quantum discord of Bell-diagonal states under phase damping",
    long_about = "Evaluates correlation measures, simulates dephasing trajectories, decides \
                  the discord-freezing conditions and exports the freezing surface as \
                  machine-readable data.\n\nStates are given as key=value lists: c1,c2,c3 \
                  (correlation parameters), l1,l2,l3,l4 (eigenvalues) or \
                  c11,c12,c21,c22,c33 (extended family). Schedules are markovian:gamma=<v> \
                  or rtn:a=<v>,gamma=<v>."
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConditionArg {
    CondA,
    CondB,
    Both,
}

impl From<ConditionArg> for ConditionFilter {
    fn from(c: ConditionArg) -> ConditionFilter {
        match c {
            ConditionArg::CondA => ConditionFilter::CondA,
            ConditionArg::CondB => ConditionFilter::CondB,
            ConditionArg::Both => ConditionFilter::Both,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Write the document to a file instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Correlation measures of a state at a single parametrized time
    Eval {
        /// State spec, e.g. l1=0.75,l2=0.1875,l3=0.05,l4=0.0125
        #[arg(long)]
        state: String,
        /// Parametrized time q = 1 - d(t)
        #[arg(long, default_value_t = 0.0)]
        q: f64,
        /// Also run the measurement-grid discord oracle at this resolution
        #[arg(long, value_name = "N")]
        grid_n: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate the evolution over a q-range, or over a t-range driven
    /// by a noise schedule
    Trajectory {
        /// State spec (c1..c3, l1..l4 or c11..c33 key=value list)
        #[arg(long)]
        state: String,
        /// Noise schedule, e.g. markovian:gamma=1 or rtn:a=16,gamma=1
        #[arg(long)]
        schedule: Option<String>,
        /// Parametrized-time range start:stop:steps (no schedule)
        #[arg(long, value_name = "A:B:N")]
        q_range: Option<String>,
        /// Laboratory-time range start:stop:steps (needs --schedule)
        #[arg(long, value_name = "A:B:N")]
        t_range: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide the freezing conditions and report frozen value,
    /// transition point and post-transition rate
    CheckFreeze {
        /// State spec (c1..c3, l1..l4 or c11..c33 key=value list)
        #[arg(long)]
        state: String,
        /// Relative tolerance on the product equality
        #[arg(long, default_value_t = qdf_core::DEFAULT_CONDITION_TOL)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Export the freezing surface as points in sqrt-eigenvalue space
    Surface {
        /// Which condition's sheet to sample
        #[arg(long, value_enum, default_value = "both")]
        condition: ConditionArg,
        /// Grid resolution per parameter axis
        #[arg(long, default_value_t = 101)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Export the four transition-boundary curves
    Boundary {
        /// Samples per curve
        #[arg(long, default_value_t = 201)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Discord rate dQ/dq at a single parametrized time
    Rate {
        /// State spec (c1..c3, l1..l4 or c11..c33 key=value list)
        #[arg(long)]
        state: String,
        /// Parametrized time q = 1 - d(t)
        #[arg(long, default_value_t = 0.0)]
        q: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn run(cmd: &Cmd) -> qdf_core::Result<(CommandOutput, &OutputArgs)> {
    match cmd {
        Cmd::Eval {
            state,
            q,
            grid_n,
            output,
        } => Ok((
            commands::eval(state, *q, *grid_n, output.format.into())?,
            output,
        )),
        Cmd::Trajectory {
            state,
            schedule,
            q_range,
            t_range,
            output,
        } => Ok((
            commands::trajectory(
                state,
                schedule.as_deref(),
                q_range.as_deref(),
                t_range.as_deref(),
                output.format.into(),
            )?,
            output,
        )),
        Cmd::CheckFreeze { state, tol, output } => Ok((
            commands::check_freeze(state, *tol, output.format.into())?,
            output,
        )),
        Cmd::Surface {
            condition,
            n,
            output,
        } => Ok((
            commands::surface((*condition).into(), *n, output.format.into())?,
            output,
        )),
        Cmd::Boundary { n, output } => Ok((commands::boundary(*n, output.format.into())?, output)),
        Cmd::Rate { state, q, output } => {
            Ok((commands::rate(state, *q, output.format.into())?, output))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::StateParse(_)
        | Error::ScheduleParse(_)
        | Error::InvalidGrid(_)
        | Error::TimeOutOfRange(_)
        | Error::NegativeTime(_)
        | Error::NonPositiveRate(_) => 2,
        Error::Unphysical(_)
        | Error::ProbabilitySum(_)
        | Error::NegativeProbability(_)
        | Error::InvalidDensityMatrix(_)
        | Error::NotHermitian(_) => 3,
        Error::OverdampedRegime { .. } => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((result, output)) => {
            if let Some(summary) = &result.summary {
                eprintln!("{summary}");
            }
            match &output.out {
                Some(path) => {
                    if let Err(err) = std::fs::write(path, result.document.as_bytes()) {
                        eprintln!("error: cannot write {}: {err}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{}", result.document),
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
