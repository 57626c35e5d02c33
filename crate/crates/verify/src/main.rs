use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use eqtrees_verify::scenario::{apply_guards, parse_check_list};
use eqtrees_verify::{parse_scenario, run_scenario, RunConfig, Verdict};

/// Run verification checks on a group and G-set scenario.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Cli {
    /// Scenario file.
    scenario: PathBuf,
    /// Check to run (repeatable); replaces the scenario's list.
    #[arg(long = "check", value_name = "NAME")]
    checks: Vec<String>,
    /// Write the JSON report here.
    #[arg(long, value_name = "OUT")]
    json: Option<PathBuf>,
    /// Write the Markdown report here.
    #[arg(long, value_name = "OUT")]
    md: Option<PathBuf>,
    /// Override a size guard (repeatable).
    #[arg(long = "guard", value_name = "KEY=VALUE")]
    guards: Vec<String>,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Samples for randomized checks.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Worker threads (0 for one per core).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Record wall-clock time per check.
    #[arg(long)]
    timing: bool,
}

fn usage_error(message: String) -> ExitCode {
    eprintln!("verify: {message}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let text = match std::fs::read_to_string(&cli.scenario) {
        Ok(t) => t,
        Err(e) => return usage_error(format!("{}: {e}", cli.scenario.display())),
    };
    let mut scenario = match parse_scenario(&text) {
        Ok(s) => s,
        Err(e) => return usage_error(format!("{}: {e}", cli.scenario.display())),
    };
    if !cli.checks.is_empty() {
        match parse_check_list(&cli.checks.join(",")) {
            Ok(c) => scenario.checks = c,
            Err(e) => return usage_error(e),
        }
    }
    for g in &cli.guards {
        if let Err(e) = apply_guards(&mut scenario.guards, g) {
            return usage_error(e);
        }
    }
    let config = RunConfig {
        seed: cli.seed,
        samples: cli.samples,
        workers: cli.workers,
    };
    let mut report = run_scenario(&scenario, config);
    report.timing = cli.timing;

    for o in &report.outcomes {
        eprintln!("{:<24} {:<12} {}", o.check.name(), o.verdict.as_str(), o.summary);
    }
    let mut wrote = false;
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            return usage_error(format!("{}: {e}", path.display()));
        }
        wrote = true;
    }
    if let Some(path) = &cli.md {
        if let Err(e) = std::fs::write(path, report.to_markdown()) {
            return usage_error(format!("{}: {e}", path.display()));
        }
        wrote = true;
    }
    if !wrote {
        print!("{}", report.to_markdown());
    }
    if report.outcomes.iter().any(|o| o.verdict == Verdict::Fail) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
