//! Command-line front end for `pointfree-core`: structure files in, reports
//! out. [`run`] is the whole program minus process plumbing.

pub mod commands;
pub mod format;
pub mod report;
pub mod structure;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::report::Report;
use crate::structure::{CliError, EXIT_INVALID, EXIT_OK};

#[derive(Parser, Debug)]
#[command(name = "pointfree", version, about = "Point-free topology on finite structures")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,

    /// Largest base (points, elements, or product size) a scan may range over.
    #[arg(long, global = true, default_value_t = 16)]
    pub max_base: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct One {
    pub file: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Audit the axioms of a frame, covering relation, monoid or presentation.
    Check(One),
    /// List the points of a frame or space.
    Points(One),
    /// Decide whether a frame or space is spatial.
    Spatial(One),
    /// Locally fine coreflection of a monoid or covering relation.
    Lambda {
        file: PathBuf,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        rank: bool,
        /// Use the current stage instead of the base in the derivative.
        #[arg(long)]
        classical: bool,
    },
    /// Least covering relation generated by a relation file.
    Saturate {
        file: PathBuf,
        #[arg(long)]
        trace: bool,
    },
    /// Noetherian witness for a cover.
    Witness {
        file: PathBuf,
        /// A set list such as "{a, b}, {c}".
        #[arg(long)]
        cover: String,
    },
    /// Products of spaces or monoids.
    Product {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Coproduct of frames or spaces.
    Coproduct {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Compare with the topology of the product space.
        #[arg(long)]
        compare_space: bool,
    },
    /// Solve the covering game.
    Game {
        file: PathBuf,
        #[arg(long)]
        strategy: bool,
    },
    /// Decide a judgment of a formal presentation.
    Entail {
        file: PathBuf,
        /// A judgment such as "1 : {b, c}".
        #[arg(long)]
        judgment: String,
        #[arg(long)]
        proof: bool,
    },
    /// Depth-bounded witness search.
    Bounded {
        file: PathBuf,
        #[arg(long)]
        cover: String,
        #[arg(long)]
        depth: usize,
    },
    /// Print a structure file in canonical form.
    Fmt(One),
}

/// What a run printed and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let name = commands::name(&cli.command);
    let report = match commands::dispatch(&cli) {
        Ok(r) => r,
        Err(e) => Report::error(name, &e),
    };
    render(&cli, report)
}

fn render(cli: &Cli, report: Report) -> Outcome {
    if cli.json {
        return Outcome {
            code: report.code,
            stdout: report.json(),
            stderr: String::new(),
        };
    }
    if let Command::Fmt(_) = cli.command {
        if let Some((_, serde_json::Value::String(text))) =
            report.fields.iter().find(|(k, _)| k == "text")
        {
            return Outcome {
                code: report.code,
                stdout: text.clone(),
                stderr: String::new(),
            };
        }
    }
    match report.fields.iter().find(|(k, _)| k == "error") {
        Some((_, msg)) if report.code != EXIT_OK => Outcome {
            code: report.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.as_str().unwrap_or_default()),
        },
        _ => Outcome {
            code: report.code,
            stdout: report.text(),
            stderr: String::new(),
        },
    }
}

pub(crate) fn read(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))
}
