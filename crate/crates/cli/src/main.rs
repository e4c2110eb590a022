mod commands;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use bipcert::par::Exec;
use clap::{Parser, Subcommand};

use commands::Command;
use run::{Ctx, RunError, RunManifest, Status};

/// Certificate-producing tools for bipartiteness of graphs without a forbidden family
/// and an odd cycle.
#[derive(Parser)]
#[command(name = "bipcert", version)]
struct Cli {
    /// Directory for artifacts and manifest.json.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Worker threads for sweeps and searches; 1 runs sequentially.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    top: Top,
}

#[derive(Subcommand)]
enum Top {
    #[command(flatten)]
    Run(Command),
    /// Re-run a recorded manifest into --out and compare artifact hashes.
    Replay { manifest: PathBuf },
}

fn exec_for(jobs: Option<usize>) -> Result<Exec, RunError> {
    match jobs {
        None => Ok(Exec::default()),
        Some(0) => Err(RunError::input("--jobs must be at least 1")),
        Some(1) => Ok(Exec::Sequential),
        Some(n) => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| RunError::input(e.to_string()))?;
            Ok(Exec::Parallel)
        }
    }
}

fn run_command(cmd: &Command, mut ctx: Ctx) -> Result<RunManifest, RunError> {
    let (status, summary) = match cmd.execute(&mut ctx) {
        Ok(r) => r,
        Err(e) => (e.status, e.message),
    };
    ctx.finish(cmd.name(), cmd.config(), cmd.seed(), status, summary)
}

fn replay(path: &PathBuf, out: PathBuf, exec: Exec) -> Result<(RunManifest, Status), RunError> {
    let recorded = RunManifest::load(path)?;
    if recorded.version != env!("CARGO_PKG_VERSION") {
        eprintln!(
            "warning: manifest written by version {}, replaying with {}",
            recorded.version,
            env!("CARGO_PKG_VERSION")
        );
    }
    let cmd = Command::from_parts(&recorded.subcommand, recorded.config.clone())?;
    let ctx = Ctx::replaying(out, exec, &recorded.inputs)?;
    let fresh = run_command(&cmd, ctx)?;
    let mut diffs = Vec::new();
    let names: std::collections::BTreeSet<_> = recorded
        .outcome
        .artifacts
        .keys()
        .chain(fresh.outcome.artifacts.keys())
        .collect();
    for name in names {
        if recorded.outcome.artifacts.get(name) != fresh.outcome.artifacts.get(name) {
            diffs.push(name.clone());
        }
    }
    if !diffs.is_empty() {
        return Err(RunError::failure(format!("artifacts differ from the manifest: {}", diffs.join(", "))));
    }
    if fresh.outcome.status != recorded.outcome.status {
        return Err(RunError::failure("outcome status differs from the manifest"));
    }
    let status = fresh.outcome.status;
    Ok((fresh, status))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = exec_for(cli.jobs).and_then(|exec| match &cli.top {
        Top::Run(cmd) => {
            let m = run_command(cmd, Ctx::new(cli.out.clone(), exec)?)?;
            let status = m.outcome.status;
            Ok((m, status))
        }
        Top::Replay { manifest } => replay(manifest, cli.out.clone(), exec),
    });
    match result {
        Ok((m, status)) => {
            println!("{}: {}", m.subcommand, m.outcome.summary);
            if let Top::Replay { .. } = cli.top {
                println!("reproduced {} artifacts", m.outcome.artifacts.len());
            }
            if status != Status::Success {
                eprintln!("status: {status:?}");
            }
            ExitCode::from(status.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status.exit_code())
        }
    }
}
