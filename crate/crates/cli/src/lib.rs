//! Command-line front end for the `degree-trees` library.
//!
//! [`run`] parses an argument vector, executes one subcommand on a dedicated
//! thread pool and writes the rendering to `out`. Every rendering echoes the
//! [`RunConfig`], and identical configurations give identical bytes.

mod args;
mod commands;
mod markdown;
mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};

pub use args::{Cli, Command, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_ARITHMETIC: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("usage: {0}")]
    Usage(String),
    #[error("guard: {0}")]
    Guard(String),
    #[error("arithmetic inconsistency: {0}")]
    Arithmetic(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Guard(_) => EXIT_GUARD,
            Failure::Arithmetic(_) => EXIT_ARITHMETIC,
        }
    }
}

impl From<degree_trees::Error> for Failure {
    fn from(e: degree_trees::Error) -> Self {
        use degree_trees::Error::*;
        match e {
            GuardViolation { .. } => Failure::Guard(e.to_string()),
            NonIntegral { .. } | InexactDivision { .. } | SingularPoint { .. } | Internal(_) => {
                Failure::Arithmetic(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Guards {
    pub max_oracle_n: usize,
    pub max_terms: usize,
}

/// Everything that determines the output of a run.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub command: Command,
    pub format: Format,
    pub seed: u64,
    pub guards: Guards,
    pub workers: usize,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, Failure> {
        let workers = match cli.workers {
            Some(0) => return Err(Failure::Usage("--workers must be positive".into())),
            Some(w) => w,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        Ok(Self {
            format: cli.format.unwrap_or_else(|| cli.command.default_format()),
            command: cli.command,
            seed: cli.seed,
            guards: Guards { max_oracle_n: cli.max_oracle_n, max_terms: cli.max_terms },
            workers,
        })
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("config serializes")
    }
}

/// The three renderings of one result.
#[derive(Debug, Clone)]
pub struct Doc {
    pub result: Value,
    pub markdown: String,
    pub plain: String,
}

pub fn render(cfg: &RunConfig, doc: &Doc) -> String {
    match cfg.format {
        Format::Json => {
            let full = json!({ "config": cfg.to_json(), "result": doc.result });
            let mut s = serde_json::to_string_pretty(&full).expect("json renders");
            s.push('\n');
            s
        }
        Format::Markdown => format!("<!-- config: {} -->\n\n{}", cfg.to_json(), doc.markdown),
        Format::Plain => doc.plain.clone(),
    }
}

pub fn execute(cfg: &RunConfig) -> Result<Doc, Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start {} workers: {e}", cfg.workers)))?;
    pool.install(|| commands::dispatch(cfg))
}

/// Runs the tool on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let info = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if info { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if info { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let outcome = RunConfig::from_cli(cli).and_then(|cfg| execute(&cfg).map(|doc| render(&cfg, &doc)));
    match outcome {
        Ok(text) => match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_IO
            }
        },
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.exit_code()
        }
    }
}
