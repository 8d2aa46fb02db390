mod commands;
mod document;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::document::DocumentError;

/// Exact computations on polyhedra, collages and their points.
#[derive(Parser)]
#[command(name = "polyrig", version)]
struct Cli {
    /// Emit reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Float tolerance for sampling checks; overrides COLLAGE_TOL.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
pub struct ChartArgs {
    pub doc: PathBuf,
    /// Chart name; may be omitted when the document has a single chart.
    #[arg(long)]
    pub chart: Option<String>,
}

#[derive(Args)]
pub struct DocArgs {
    pub doc: PathBuf,
}

#[derive(Args)]
pub struct BaseArgs {
    pub doc: PathBuf,
    /// Base chart for the development (default: the first chart).
    #[arg(long)]
    pub base: Option<String>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Canonical inequalities and generators of each chart.
    Canonicalize {
        #[command(flatten)]
        chart: ChartArgs,
        /// Print the whole document in canonical form instead.
        #[arg(long)]
        document: bool,
    },
    /// Face lattice of a chart.
    Faces(ChartArgs),
    /// Normal cone of every face of a chart.
    NormalFan(ChartArgs),
    /// Strata at infinity of a chart.
    InfiniteFaces(ChartArgs),
    /// Generators of the bounded affine functions on a chart.
    Monoid(ChartArgs),
    /// Check the collage axioms.
    Validate(DocArgs),
    /// Whether the listed charts and open families cover the collage.
    CoverCheck {
        doc: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        pieces: Vec<String>,
    },
    /// Common refinement of a chart by the listed charts and open families.
    Refine {
        #[command(flatten)]
        chart: ChartArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        pieces: Vec<String>,
    },
    /// Develop all charts into the base chart's space.
    Develop(BaseArgs),
    /// Monodromy generators at the base chart.
    Monodromy(BaseArgs),
    /// Whether an open family is an overconvergent open.
    Overconvergent {
        doc: PathBuf,
        #[arg(long)]
        open: String,
    },
    /// Whether the collage is separated.
    Separated(DocArgs),
    /// Whether the collage is a compact affine manifold without boundary.
    ManifoldCheck(DocArgs),
    /// Build the torus collage for the document's lattice.
    Torus {
        doc: PathBuf,
        /// Write the collage document here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Point type of a named point, optionally along a named flag.
    ClassifyPoint {
        doc: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long)]
        flag: Option<String>,
    },
    /// Oriented flags at a named point with small covectors.
    Flags {
        doc: PathBuf,
        #[arg(long)]
        point: String,
        /// Maximal flag length.
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Covector entries range over [-window, window].
        #[arg(long, default_value_t = 1)]
        window: i64,
    },
    /// Local ring of integers at a named rational point.
    LocalIntegers {
        doc: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Valuation attached to a named flag.
    Valuation {
        doc: PathBuf,
        #[arg(long)]
        flag: String,
        /// Affine function `s1,s2,...;c` to evaluate; may be repeated.
        #[arg(long = "function")]
        functions: Vec<String>,
    },
    /// l1_q norm of a monoid-algebra element on a chart.
    Norm {
        #[command(flatten)]
        chart: ChartArgs,
        #[arg(long)]
        q: f64,
        /// Term `re[,im]@s1,s2,...@c`; may be repeated.
        #[arg(long = "term", required = true)]
        terms: Vec<String>,
    },
    /// CSV samples of the torus fibration over a grid of base points.
    FibrationSample {
        #[command(flatten)]
        chart: ChartArgs,
        #[arg(long)]
        q: f64,
        /// Points per axis.
        #[arg(long, default_value_t = 16)]
        grid: usize,
        /// Phase angles, one per coordinate (default: all zero).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        phase: Option<Vec<f64>>,
    },
    /// Torus collage of the document's lattice and its properties.
    Mumford(DocArgs),
    /// Split the document's cocycle into translation and slope parts.
    Pic(DocArgs),
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Document(#[from] DocumentError),
    #[error("{1}")]
    Lookup(&'static str, String),
    #[error("{0}")]
    Domain(#[from] polyrig_core::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Document(DocumentError::Syntax { .. }) => 2,
            _ => 3,
        }
    }

    fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Document(e) => e.code(),
            CliError::Lookup(code, _) => code,
            CliError::Domain(e) => commands::domain_code(e),
        }
    }
}

fn tolerance(flag: Option<f64>) -> Result<f64, CliError> {
    if let Some(t) = flag {
        return Ok(t);
    }
    match std::env::var("COLLAGE_TOL") {
        Ok(s) => s
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| t.is_finite() && *t >= 0.0)
            .ok_or_else(|| CliError::Usage(format!("COLLAGE_TOL must be a nonnegative number, got {s:?}"))),
        Err(_) => Ok(commands::DEFAULT_TOL),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = tolerance(cli.tol).and_then(|tol| commands::run(&cli.command, tol, cli.json));
    match result {
        Ok(out) => {
            match out {
                commands::Output::Report(r) if cli.json => {
                    println!("{}", serde_json::to_string_pretty(&r.to_json()).expect("json"));
                }
                commands::Output::Report(r) => print!("{}", r.render_text()),
                commands::Output::Raw(text) => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if cli.json {
                let mut err = json!({ "code": e.code(), "message": e.to_string() });
                if let CliError::Document(DocumentError::Syntax { line, column, .. } | DocumentError::Semantic { line, column, .. }) = &e {
                    err["line"] = json!(line);
                    err["column"] = json!(column);
                }
                eprintln!("{}", json!({ "error": err }));
            } else {
                eprintln!("error[{}]: {e}", e.code());
            }
            ExitCode::from(e.exit_code())
        }
    }
}
