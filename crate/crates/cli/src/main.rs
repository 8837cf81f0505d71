mod config;
mod error;
mod jobs;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use fbs_core::crystal::DEFAULT_BUDGET;

use config::{Format, JobConfig};
use error::CliError;
use jobs::Settings;

/// Runs one flag Bott–Samelson job described by a JSON config.
#[derive(Parser, Debug)]
#[command(name = "fbs", version)]
struct Args {
    /// Job file, or `-` for standard input.
    #[arg(long)]
    config: String,
    /// Directory for the artifact; relative `output.path` values resolve here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the job's Monte-Carlo seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Maximum number of crystal elements any single step may hold.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Append the reduced words used (and whether they were auto-selected) to the summary.
    #[arg(long)]
    echo_word: bool,
    /// Overrides `output.format`.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

fn read_config(source: &str) -> Result<String, CliError> {
    if source == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(source).map_err(|e| CliError::Config(format!("cannot read {source}: {e}")))
    }
}

/// Write via a temp file in the destination directory, then rename over the target.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn execute(args: &Args) -> Result<String, CliError> {
    let job = JobConfig::parse(&read_config(&args.config)?)?;
    let allowed = job.command.formats();
    let format = args.format.or(job.output.format).unwrap_or(allowed[0]);
    if !allowed.contains(&format) {
        return Err(CliError::Config(format!(
            "{} cannot write {}",
            job.command,
            format.extension()
        )));
    }
    let settings = Settings { budget: args.budget, seed: args.seed, echo_word: args.echo_word };
    let outcome = jobs::run(&job, format, &settings)?;
    let target = match (&args.out, &job.output.path) {
        (Some(dir), Some(p)) => Some(dir.join(p)),
        (Some(dir), None) => Some(dir.join(format!("{}.{}", job.command, format.extension()))),
        (None, Some(p)) => Some(PathBuf::from(p)),
        (None, None) => None,
    };
    if let Some(path) = target {
        write_atomic(&path, &outcome.artifact)?;
    }
    Ok(outcome.summary)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", CliError::Config(e.to_string().trim_end().to_string()).to_json());
            return ExitCode::from(2);
        }
    };
    match execute(&args) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
