use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use jetbound::report::{run, run_pullback, Command, InputError, Problem, ProblemSpec};
use jetbound::{JetSpace, PeelStrategy};

#[derive(Parser)]
#[command(
    name = "jetbound",
    version,
    about = "Euler-Lagrange equations and natural boundary conditions"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// JSON problem file
    #[arg(long, global = true)]
    problem: Option<PathBuf>,
    /// Peel strategy for the Green decomposition
    #[arg(long, global = true, value_parser = parse_strategy)]
    strategy: Option<PeelStrategy>,
    /// Number of random probe points for numeric checks
    #[arg(long, global = true)]
    probes: Option<usize>,
    /// Seed for random probes and test sections
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    /// Euler-Lagrange expressions
    El,
    /// Euler-Lagrange expressions and natural boundary conditions
    RelEuler,
    /// Green decomposition of the linearization
    Green,
    /// Run the invariant suite; exit 1 if any check fails
    Check,
    /// Pull an interior expression back to the boundary x_n = 0
    Pullback {
        expr: String,
        /// Base dimension when no problem file is given
        #[arg(long)]
        n: Option<usize>,
        /// Fiber dimension when no problem file is given
        #[arg(long)]
        m: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_strategy(s: &str) -> Result<PeelStrategy, String> {
    s.parse()
}

fn load_spec(path: &PathBuf) -> Result<ProblemSpec, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    ProblemSpec::from_json(&text)
}

fn execute(cli: &Cli) -> Result<bool, InputError> {
    if let Cmd::Pullback { expr, n, m } = &cli.command {
        let space = match (&cli.problem, n, m) {
            (_, Some(n), m) => JetSpace::new(*n, m.unwrap_or(1))?,
            (Some(path), None, _) => {
                let spec = load_spec(path)?;
                JetSpace::new(spec.n, spec.m)?
            }
            (None, None, _) => {
                return Err(InputError::Invalid(
                    "pullback needs --problem or --n".into(),
                ))
            }
        };
        let r = run_pullback(&space, expr)?;
        match cli.format {
            Format::Text => println!("{}", r.pullback),
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(&r).expect("report serializes")
            ),
        }
        return Ok(true);
    }

    let command = match cli.command {
        Cmd::El => Command::El,
        Cmd::RelEuler => Command::RelEuler,
        Cmd::Green => Command::Green,
        Cmd::Check => Command::Check,
        Cmd::Pullback { .. } => unreachable!(),
    };
    let path = cli
        .problem
        .as_ref()
        .ok_or_else(|| InputError::Invalid(format!("{} needs --problem <file>", command.name())))?;
    let mut problem = Problem::from_spec(&load_spec(path)?)?;
    if let Some(s) = cli.strategy {
        problem.options.strategy = s;
    }
    if let Some(p) = cli.probes {
        problem.options.probes = p;
    }
    if let Some(s) = cli.seed {
        problem.options.seed = s;
    }
    let report = run(command, &problem)?;
    match cli.format {
        Format::Text => print!("{}", report.to_text(command, &problem.space)),
        Format::Json => print!("{}", report.to_json()),
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
