use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod load;
mod report;

#[derive(Debug, Parser)]
#[command(name = "rigidlift", version, about = "Graph Jacobians, rigidity divisors and isomorphism lifting")]
struct Cli {
    /// Leave wall-clock timings out of the JSON output.
    #[arg(long, global = true)]
    no_timings: bool,

    /// Upper bound on enumerated divisor classes.
    #[arg(long, global = true, env = "RIGIDLIFT_MAX_CLASSES", default_value_t = rigidlift::divisor::DEFAULT_MAX_CLASSES)]
    max_classes: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Genus, connectivity, series classes and spanning-tree count of a graph file.
    Info { graph: PathBuf },
    /// Rigidity analysis of a morphism file.
    Rigidity {
        morphism: PathBuf,
        /// Produce a verified witness when the morphism is not rigid.
        #[arg(long)]
        witness: bool,
        /// Construct the graph isomorphism when the morphism is rigid.
        #[arg(long)]
        lift: bool,
        /// Exit with status 1 unless the morphism is rigid.
        #[arg(long)]
        expect_rigid: bool,
    },
    /// Lift a cyclic bijection to a graph isomorphism by choosing the base image.
    LiftMatroid { source: PathBuf, target: PathBuf, map: PathBuf },
    /// Divisor arithmetic on a graph.
    #[command(subcommand)]
    Divisor(DivisorCmd),
    /// Partial orientations and their Chern classes.
    #[command(subcommand)]
    Orient(OrientCmd),
    /// Reproduce the bundled fixture computations.
    Selftest,
}

#[derive(Debug, Subcommand)]
pub enum DivisorCmd {
    /// q-reduced form; q defaults to the head of the base edge.
    Reduce {
        graph: PathBuf,
        divisor: String,
        #[arg(long)]
        q: Option<String>,
    },
    /// Linear equivalence of two divisors.
    Equiv { graph: PathBuf, a: String, b: String },
    /// Whether the class contains an effective divisor.
    Effective { graph: PathBuf, divisor: String },
    /// Special or nonspecial, for degree g - 1.
    Classify { graph: PathBuf, divisor: String },
    /// All classes of the theta divisor based at the base edge.
    Theta { graph: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum OrientCmd {
    /// Chern class of an orientation.
    Chern { graph: PathBuf, orientation: String },
    /// Partial orientation with the given Chern class.
    Liftdiv {
        graph: PathBuf,
        divisor: String,
        /// Comma-separated edges to leave unoriented.
        #[arg(long, value_delimiter = ',')]
        unoriented: Vec<String>,
    },
    /// Sourceless or acyclic certificate for a divisor of degree at most g - 1.
    Certify { graph: PathBuf, divisor: String },
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input: unreadable files, malformed text or JSON, failed validation.
    Input(String),
    /// Valid input with a negative answer the caller asked to treat as failure.
    Domain(String),
    Lib(rigidlift::Error),
}

impl CliError {
    pub fn at(path: &Path, e: rigidlift::Error) -> Self {
        CliError::Input(format!("{}: {e}", path.display()))
    }

    fn exit_code(&self) -> u8 {
        use rigidlift::Error as E;
        match self {
            CliError::Input(_) => 2,
            CliError::Domain(_) => 1,
            CliError::Lib(
                E::EnumerationBoundExceeded(_)
                | E::NoIsomorphismLift
                | E::MorphismIsRigid
                | E::MorphismNotRigid
                | E::QIsEffective
                | E::Internal(_),
            ) => 1,
            CliError::Lib(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) | CliError::Domain(m) => f.write_str(m),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<rigidlift::Error> for CliError {
    fn from(e: rigidlift::Error) -> Self {
        CliError::Lib(e)
    }
}

/// What a command produced: JSON to print, and an optional domain failure to report after it.
pub struct Outcome {
    pub json: serde_json::Value,
    pub failure: Option<String>,
}

impl Outcome {
    pub fn ok(json: serde_json::Value) -> Self {
        Outcome { json, failure: None }
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let opts = commands::Options {
        timings: !cli.no_timings,
        max_classes: cli.max_classes,
    };
    match cli.command {
        Command::Info { graph } => commands::info(&graph),
        Command::Rigidity {
            morphism,
            witness,
            lift,
            expect_rigid,
        } => commands::rigidity(&opts, &morphism, witness, lift, expect_rigid),
        Command::LiftMatroid { source, target, map } => commands::lift_matroid(&opts, &source, &target, &map),
        Command::Divisor(cmd) => commands::divisor(&opts, cmd),
        Command::Orient(cmd) => commands::orient(cmd),
        Command::Selftest => commands::selftest(&opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable report"));
            match out.failure {
                Some(msg) => {
                    eprintln!("error: {msg}");
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
