//! Command-line front end for the gossip optimization library.
//!
//! Exit codes: 0 success, 2 usage or size-guard errors, 3 solver failures,
//! 4 verification failures.

mod descriptor;
mod dispatch;

use clap::{Parser, Subcommand, ValueEnum};
use gossip_core::analytic::ClockMode;
use gossip_core::simulator::{self, SimConfig};
use gossip_core::{gossip, quantum, tables, topology, Assignment, Error};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "gossip",
    about = "Optimize and simulate randomized gossip averaging over a topology catalog",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClockArg {
    Uniform,
    Nonuniform,
}

impl From<ClockArg> for ClockMode {
    fn from(c: ClockArg) -> Self {
        match c {
            ClockArg::Uniform => ClockMode::UniformClock,
            ClockArg::Nonuniform => ClockMode::NonuniformClock,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args)]
struct TopologySource {
    /// Generator descriptor, e.g. symstar:n=5,k=2 or cartesian:complete(2)xcomplete(3)
    #[arg(long, conflicts_with = "topology")]
    gen: Option<String>,
    /// Topology JSON file ({"generator":..} or {"edges":[..]})
    #[arg(long)]
    topology: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Find the optimal probabilities for a topology and write the result
    Optimize {
        #[command(flatten)]
        source: TopologySource,
        #[arg(long, value_enum, default_value = "uniform")]
        clock: ClockArg,
        /// Center clock share for the symmetric star (weighted clocks only)
        #[arg(long, default_value_t = 0.0)]
        p0: f64,
        /// Evaluation budget for the numeric fallback
        #[arg(long, default_value_t = 50_000)]
        budget: usize,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate the protocol and report decay statistics
    Simulate {
        #[command(flatten)]
        source: TopologySource,
        #[arg(long, value_enum, default_value = "uniform")]
        clock: ClockArg,
        /// Use the analytic optimum instead of uniform rows
        #[arg(long)]
        optimal: bool,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1000)]
        ticks: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also estimate the averaging time at this accuracy
        #[arg(long)]
        epsilon: Option<f64>,
        /// Output prefix: writes PREFIX.csv and PREFIX.stats.json
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate the reference tables and diff them against embedded values
    VerifyTables {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the coefficient-space reduction against the classical spectrum
    QuantumCheck {
        #[command(flatten)]
        source: TopologySource,
        /// Qudit dimension
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Use uniform rows instead of the analytic weighted-clock optimum
        #[arg(long)]
        uniform: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the canonical topology JSON (and the optimum when available)
    Export {
        #[command(flatten)]
        source: TopologySource,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, value_enum, default_value = "uniform")]
        clock: ClockArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidParameter(_)
        | Error::UnsupportedDescriptor(_)
        | Error::SizeGuard(_, _)
        | Error::DimensionMismatch(_)
        | Error::Io(_)
        | Error::Json(_) => 2,
        _ => 3,
    }
}

fn resolve(source: &TopologySource) -> gossip_core::Result<topology::Topology> {
    match (&source.gen, &source.topology) {
        (Some(desc), None) => descriptor::parse(desc).and_then(|g| topology::generate(&g)),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            topology::from_json(&text)
        }
        _ => Err(Error::InvalidParameter(
            "exactly one of --gen or --topology is required".into(),
        )),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> gossip_core::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> gossip_core::Result<ExitCode> {
    match cli.command {
        Command::Optimize {
            source,
            clock,
            p0,
            budget,
            out,
        } => {
            let topo = resolve(&source)?;
            let result = dispatch::optimize_with(&topo, clock.into(), p0, budget)?;
            emit(&out, &serde_json::to_string_pretty(&result)?)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Simulate {
            source,
            clock,
            optimal,
            trials,
            ticks,
            seed,
            epsilon,
            out,
        } => {
            let topo = resolve(&source)?;
            let assignment: Assignment = if optimal {
                dispatch::optimize_with(&topo, clock.into(), 0.0, 50_000)?.assignment
            } else {
                Assignment::uniform(&topo)
            };
            let lambda2 = gossip::lambda2_of(&topo, &assignment)?;
            let config = SimConfig {
                seed,
                rates: simulator::rates_from_clock(&assignment.clock),
                max_ticks: ticks,
                initial_state: adversarial_start(topo.n_vertices),
                record_states: false,
            };
            let trace = simulator::run(&topo, &assignment, &config)?;
            let decay = simulator::estimate_decay_rate(&topo, &assignment, trials, ticks, seed)?;
            let t_ave = match epsilon {
                Some(eps) => Some(simulator::estimate_averaging_time(
                    &topo,
                    &assignment,
                    eps,
                    trials,
                    seed,
                )?),
                None => None,
            };
            let stats = serde_json::json!({
                "lambda2": lambda2,
                "decay_rate": decay,
                "t_ave": t_ave,
                "trials": trials,
                "ticks": ticks,
                "seed": seed,
            });
            match &out {
                Some(prefix) => {
                    std::fs::write(prefix.with_extension("csv"), trace.to_csv())?;
                    std::fs::write(
                        prefix.with_extension("stats.json"),
                        serde_json::to_string_pretty(&stats)?,
                    )?;
                }
                None => {
                    println!("{}", serde_json::to_string_pretty(&stats)?);
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::VerifyTables { out } => {
            let report = tables::verify_all()?;
            let mut lines = String::new();
            for row in &report.catalog {
                lines.push_str(&format!(
                    "catalog {:10} expected {:.9} got {:.9} [{}]\n",
                    row.name,
                    row.expected,
                    row.got,
                    status_str(row.status)
                ));
            }
            for cell in &report.grid {
                lines.push_str(&format!(
                    "{:?} n={} k={}: m {} vs {}, s {:.8} vs {:.8} [{}]\n",
                    cell.family,
                    cell.n,
                    cell.k,
                    cell.got_m,
                    cell.table_m,
                    cell.got_s,
                    cell.table_s,
                    status_str(cell.status)
                ));
            }
            let (matched, documented, mismatched) = report.counts();
            lines.push_str(&format!(
                "summary: {matched} matched, {documented} documented discrepancies, {mismatched} unexplained\n"
            ));
            emit(&out, &lines)?;
            if report.all_accounted_for() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(4))
            }
        }

        Command::QuantumCheck {
            source,
            d,
            uniform,
            out,
        } => {
            let topo = resolve(&source)?;
            let assignment = if uniform {
                Assignment::uniform(&topo)
            } else {
                dispatch::optimize_with(&topo, ClockMode::NonuniformClock, 0.0, 50_000)?.assignment
            };
            let report = quantum::verify_spectral_collapse(&topo, &assignment, d, 1e-9)?;
            emit(&out, &serde_json::to_string_pretty(&report)?)?;
            Ok(if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            })
        }

        Command::Export {
            source,
            format,
            clock,
            out,
        } => {
            let topo = resolve(&source)?;
            match format {
                Format::Json => {
                    let opt = dispatch::optimize_with(&topo, clock.into(), 0.0, 50_000).ok();
                    let doc = serde_json::json!({
                        "topology": serde_json::from_str::<serde_json::Value>(
                            &topology::to_json(&topo)
                        )?,
                        "n_vertices": topo.n_vertices,
                        "edges": topo.edges,
                        "optimum": opt,
                    });
                    emit(&out, &serde_json::to_string_pretty(&doc)?)?;
                }
                Format::Csv => {
                    let mut text = String::from("a,b,edge_orbit\n");
                    for (e, o) in topo.edges.iter().zip(topo.edge_orbit.iter()) {
                        text.push_str(&format!("{},{},{}\n", e.0, e.1, o));
                    }
                    emit(&out, &text)?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn status_str(s: tables::CellStatus) -> &'static str {
    match s {
        tables::CellStatus::Match => "pass",
        tables::CellStatus::Documented => "documented discrepancy",
        tables::CellStatus::Mismatch => "MISMATCH",
    }
}

/// Coordinate start recentred to mean zero: the conventional worst case.
fn adversarial_start(n: usize) -> Vec<f64> {
    let mut x = vec![-1.0 / n as f64; n];
    x[0] += 1.0;
    x
}
