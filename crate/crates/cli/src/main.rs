use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use lumpcheck::commands::{run, Command};

#[derive(Debug, Parser)]
#[command(name = "lumpcheck", version, about = "Exact checks for polynomial lump solutions")]
struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        pool = pool.num_threads(j);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let outcome = match pool.install(|| run(&cli.command)) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if e.usage { 2 } else { 1 });
        }
    };

    let json = serde_json::to_string_pretty(&outcome.report).expect("reports serialize");
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, &json) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }

    let csv_to_stdout = match (&cli.command, &outcome.table) {
        (Command::ScanJn(a), Some(table)) => match &a.out {
            Some(path) => {
                if let Err(e) = std::fs::write(path, table) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
                false
            }
            None => true,
        },
        _ => false,
    };

    let mut stdout = std::io::stdout().lock();
    if csv_to_stdout {
        let _ = stdout.write_all(outcome.table.as_deref().unwrap_or("").as_bytes());
        eprintln!("{json}");
    } else {
        let _ = writeln!(stdout, "{json}");
    }
    ExitCode::from(outcome.verdict.exit_code() as u8)
}
