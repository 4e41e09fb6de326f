use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ctperiod_cli::scenario::{BackendSpec, FieldSpec, TaskKind, TaskSpec, TiltingKeyword, TiltingSpec};
use ctperiod_cli::{run_scenario, single_task, verify_report, CliError, Report, Scenario};

#[derive(Parser)]
#[command(name = "ctperiod", version, about = "Stable endomorphism algebras of cluster-tilting objects and their periodicity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Override the scenario seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task of a scenario.
    Run {
        scenario: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Re-check the witness matrices of a report.
    VerifyReport { report: PathBuf },
    /// Detect the period of Γ.
    Period {
        scenario: PathBuf,
        #[arg(long)]
        nmax: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Check rigidity of T.
    Rigid {
        scenario: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Compute Γ, its vertices and quiver.
    StableEnd {
        scenario: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Realize a Γ-module and resolve it by approximations.
    Resolve {
        scenario: PathBuf,
        /// simple:i or projective:i
        #[arg(long = "X", alias = "x")]
        x: String,
        #[arg(long)]
        d: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Tor over Λ.
    Tor {
        scenario: PathBuf,
        #[arg(long, default_value_t = 6)]
        imax: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Calabi-Yau duality check.
    Cy {
        scenario: PathBuf,
        #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
        s: i64,
        #[command(flatten)]
        common: Common,
    },
    /// The BIKR object of a reduced plane curve.
    Bikr {
        /// Comma-separated factors, e.g. x,y,x+y
        #[arg(long, value_delimiter = ',')]
        factors: Vec<String>,
        #[arg(long, default_value_t = 5)]
        p: u32,
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Tasks to run (default: bikr quiver).
        tasks: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
}

fn load(path: &Path) -> Result<Scenario, CliError> {
    Scenario::load(path)
}

fn execute(s: &Scenario, common: &Common) -> Result<i32, CliError> {
    let report = run_scenario(s, common.seed)?;
    print!("{}", report.summary());
    if let Some(path) = &common.report {
        std::fs::write(path, report.to_json()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    for t in &report.tasks {
        if t.status == ctperiod_cli::Status::Failed {
            eprintln!("{}: {}", t.task, t.summary);
        }
    }
    Ok(report.exit_code())
}

fn parse_task(name: &str) -> Result<TaskKind, CliError> {
    serde_json::from_value(serde_json::json!({ "task": name }))
        .map_err(|e| CliError::Input(format!("unknown or incomplete task {name:?}: {e}")))
}

fn dispatch(cmd: Command) -> Result<i32, CliError> {
    match cmd {
        Command::Run { scenario, common } => execute(&load(&scenario)?, &common),
        Command::VerifyReport { report } => {
            let text = std::fs::read_to_string(&report).map_err(|e| CliError::Io(format!("{}: {e}", report.display())))?;
            let r: Report = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("report: {e}")))?;
            let checks = verify_report(&r);
            for c in &checks {
                println!("  {:<16} {:<6} {}", c.task, if c.ok { "ok" } else { "FAILED" }, c.detail);
            }
            println!("{} certificate(s) checked", checks.len());
            Ok(if checks.iter().all(|c| c.ok) { 0 } else { 1 })
        }
        Command::Period { scenario, nmax, common } => {
            execute(&single_task(&load(&scenario)?, TaskKind::DetectPeriod { nmax }), &common)
        }
        Command::Rigid { scenario, common } => execute(&single_task(&load(&scenario)?, TaskKind::Rigid), &common),
        Command::StableEnd { scenario, common } => execute(&single_task(&load(&scenario)?, TaskKind::StableEnd), &common),
        Command::Resolve { scenario, x, d, common } => {
            let mut s = single_task(&load(&scenario)?, TaskKind::Resolve { x });
            if let Some(d) = d {
                s.d = d;
            }
            execute(&s, &common)
        }
        Command::Tor { scenario, imax, common } => execute(&single_task(&load(&scenario)?, TaskKind::Tor { imax }), &common),
        Command::Cy { scenario, s, common } => execute(&single_task(&load(&scenario)?, TaskKind::Cy { s }), &common),
        Command::Bikr { factors, p, d, tasks, common } => {
            let names = if tasks.is_empty() { vec!["bikr".to_string(), "quiver".to_string()] } else { tasks };
            let tasks = names
                .iter()
                .map(|n| Ok(TaskSpec { kind: parse_task(n)?, expect: None }))
                .collect::<Result<Vec<_>, CliError>>()?;
            let s = Scenario {
                name: Some(format!("bikr {}", factors.join(","))),
                field: FieldSpec { p },
                backend: BackendSpec::PlaneCurve { factors },
                tilting: Some(TiltingSpec::Keyword(TiltingKeyword::Bikr)),
                d,
                tasks,
                seed: common.seed.unwrap_or(0),
            };
            execute(&s, &common)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match dispatch(cli.command) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
