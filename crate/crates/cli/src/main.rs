use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tropcount_cli::{
    render_count, render_selftest, run_count, run_counterexample, run_invariance, run_sweep,
    selftest, CliError, CliResult, ConfigSource, ProblemSpec,
};

#[derive(Parser)]
#[command(name = "tropcount", version, about = "Exact tropical curve counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Output {
    /// json, csv or pretty
    #[arg(long, default_value = "json")]
    format: String,
    /// Worker threads for enumeration (0: all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args, Clone)]
struct Problem {
    /// `triangle:d` or `poly:(x,y);(x,y);...`
    #[arg(long)]
    polygon: String,
    #[arg(long, default_value_t = 0)]
    genus: i64,
    /// Comma-separated `int*K`, `pair@P`, `bnd:SIDE:M`, `pairbnd:SIDE`; interior points if omitted
    #[arg(long)]
    conditions: Option<String>,
    /// complex, refined, real or mixed
    #[arg(long, default_value = "complex")]
    scheme: String,
    /// Seed for the brute-force engine's random points
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Count curves for one problem
    Count {
        #[command(flatten)]
        problem: Problem,
        /// path, floor, brute or all
        #[arg(long, default_value = "path")]
        engine: String,
        #[command(flatten)]
        out: Output,
    },
    /// Mixed counts with one conjugate pair at every position
    SweepPair {
        #[arg(long, default_value = "triangle:4")]
        polygon: String,
        #[arg(long, default_value_t = 1)]
        genus: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Compare a count across configurations
    Invariance {
        #[command(flatten)]
        problem: Problem,
        /// Condition orders separated by `;` (lattice-path configurations)
        #[arg(long, conflicts_with = "seeds")]
        orders: Option<String>,
        /// Comma-separated seeds for random configurations (brute-force engine)
        #[arg(long)]
        seeds: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// The quartic of genus one with a conjugate pair: 63 versus 69
    Counterexample {
        #[command(flatten)]
        out: Output,
    },
    /// Fast consistency checks
    Selftest {
        #[command(flatten)]
        out: Output,
    },
}

fn spec(p: &Problem, engine: &str, out: &Output) -> CliResult<ProblemSpec> {
    ProblemSpec::parse(
        &p.polygon,
        p.genus,
        p.conditions.as_deref(),
        &p.scheme,
        engine,
        &out.format,
        p.seed,
        out.jobs,
    )
}

fn run(cmd: &Command) -> CliResult<(String, bool)> {
    match cmd {
        Command::Count {
            problem,
            engine,
            out,
        } => {
            let s = spec(problem, engine, out)?;
            let rep = run_count(&s)?;
            Ok((render_count(&s, &rep), rep.agree()))
        }
        Command::SweepPair {
            polygon,
            genus,
            out,
        } => {
            let p = polygon.parse().map_err(CliError::Core)?;
            Ok((run_sweep(&p, *genus, out.jobs, out.format.parse()?)?, true))
        }
        Command::Invariance {
            problem,
            orders,
            seeds,
            out,
        } => {
            let s = spec(problem, "path", out)?;
            let source = match (orders, seeds) {
                (Some(o), _) => {
                    ConfigSource::Orders(o.split(';').map(|x| x.trim().to_string()).collect())
                }
                (None, Some(ss)) => ConfigSource::Seeds(
                    ss.split(',')
                        .map(|x| {
                            x.trim()
                                .parse()
                                .map_err(|_| CliError::Usage(format!("bad seed {x:?}")))
                        })
                        .collect::<CliResult<_>>()?,
                ),
                (None, None) => ConfigSource::Seeds(vec![1, 2, 3]),
            };
            Ok((run_invariance(&s, &source)?, true))
        }
        Command::Counterexample { out } => Ok((run_counterexample(out.format.parse()?)?, true)),
        Command::Selftest { out } => {
            let checks = selftest();
            let ok = checks.iter().all(|c| c.pass);
            Ok((render_selftest(&checks, out.format.parse()?), ok))
        }
    }
}

fn format_of(cmd: &Command) -> &str {
    match cmd {
        Command::Count { out, .. }
        | Command::SweepPair { out, .. }
        | Command::Invariance { out, .. }
        | Command::Counterexample { out }
        | Command::Selftest { out } => &out.format,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let wants_json = std::env::args()
                .collect::<Vec<_>>()
                .windows(2)
                .any(|w| w == ["--format", "json"]);
            if wants_json && e.use_stderr() {
                println!(
                    "{}",
                    CliError::Usage(e.render().to_string().trim().to_string()).to_json()
                );
                return ExitCode::from(2);
            }
            e.exit();
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run(&cli.command) {
        Ok((doc, ok)) => {
            let _ = stdout.write_all(doc.as_bytes());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if format_of(&cli.command) == "json" {
                let _ = writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&e.to_json()).unwrap_or_default()
                );
            } else {
                eprintln!("error[{}]: {e}", e.kind());
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
