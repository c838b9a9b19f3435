//! `flatlab` — exact verification for flat affine structures.
//!
//! Ingests JSON definitions (structure constants, connections, vector
//! fields, group charts), runs the library pipelines, and prints
//! deterministic reports: exact tables as reduced fractions and canonical
//! expression strings, CSV orbit samples as floats. Exit code 0 iff every
//! check in the report passes; 2 on input or usage errors.

mod pipelines;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pipelines::{CliError, CommandOutput};

#[derive(Parser)]
#[command(
    name = "flatlab",
    version,
    about = "Exact checks for flat affine structures: left-symmetric algebras, \
             derived connections, associative envelopes, frame-bundle criteria"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structure-constant pipelines on an lsa.json input.
    Lsa {
        #[command(subcommand)]
        action: LsaAction,
    },
    /// Connection pipelines on connection.json (+ fields.json) inputs.
    Conn {
        #[command(subcommand)]
        action: ConnAction,
    },
    /// Lie group charts: built-ins by name or custom group.json files.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Frame-bundle checks built over a connection.json chart.
    Fb {
        #[command(subcommand)]
        action: FbAction,
    },
    /// Re-run a bundled worked example and compare against its golden output.
    Paper {
        id: PaperId,
        /// Rewrite the golden file from the current run.
        #[arg(long)]
        regolden: bool,
        /// With --regolden: verify the on-disk golden is regenerable instead of writing.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Subcommand)]
enum LsaAction {
    /// Verify the left-symmetric and associativity identities.
    Check { path: PathBuf },
    /// Print the commutator Lie bracket table (validates Jacobi).
    Commutator { path: PathBuf },
    /// Close the affine representation matrices under multiplication.
    Envelope {
        path: PathBuf,
        /// Basis-size cap for the closure (default: ambient matrix dimension).
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Print the affine representation and check it is a Lie homomorphism.
    Rep { path: PathBuf },
    /// Sample the affine orbit of the origin over a parameter grid (CSV).
    Orbit {
        path: PathBuf,
        /// Grid points per parameter axis over [-1, 1].
        #[arg(long, default_value_t = 21)]
        grid: usize,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ConnAction {
    /// Verify zero torsion and curvature.
    Check { path: PathBuf },
    /// Product table of named fields under the connection.
    Table { conn: PathBuf, fields: PathBuf },
    /// Solve for all polynomial infinitesimal affine fields up to a degree.
    Solve {
        path: PathBuf,
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Close named fields under the connection product.
    Envelope {
        conn: PathBuf,
        fields: PathBuf,
        /// Basis-size cap for the closure (default: 64).
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Subcommand)]
enum GroupAction {
    /// Print the chart, identity, and invariant frames.
    Show { group: String },
    /// Derive the left-invariant connection from structure constants.
    Derive { group: String, lsa: PathBuf },
}

#[derive(Subcommand)]
enum FbAction {
    /// Evaluate the bracket identities and structure equations on the
    /// spanning probes of the frame bundle.
    Check { path: PathBuf },
    /// Rank of the orbit map of affine fields at a chart point.
    Rank {
        conn: PathBuf,
        fields: PathBuf,
        /// Base point as comma-separated rationals, e.g. "1,0".
        #[arg(long)]
        at: String,
    },
}

#[derive(Clone, ValueEnum)]
enum PaperId {
    #[value(name = "ex3_8")]
    Ex3_8,
    #[value(name = "ex3_9")]
    Ex3_9,
    #[value(name = "ex3_12_a1")]
    Ex3_12A1,
    #[value(name = "ex3_12_a2")]
    Ex3_12A2,
    #[value(name = "ex3_13")]
    Ex3_13,
    #[value(name = "ex2_7")]
    Ex2_7,
}

impl PaperId {
    fn as_str(&self) -> &'static str {
        match self {
            PaperId::Ex3_8 => "ex3_8",
            PaperId::Ex3_9 => "ex3_9",
            PaperId::Ex3_12A1 => "ex3_12_a1",
            PaperId::Ex3_12A2 => "ex3_12_a2",
            PaperId::Ex3_13 => "ex3_13",
            PaperId::Ex2_7 => "ex2_7",
        }
    }
}

/// Worker-count cap from the environment. The pipelines in this build
/// evaluate serially (a valid schedule under any positive cap), so the
/// value only needs validation.
fn worker_cap() -> Result<Option<usize>, CliError> {
    match std::env::var("FLATLAB_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!(
                "FLATLAB_THREADS must be a positive integer, got {v:?}"
            ))),
        },
    }
}

fn run(cli: Cli) -> Result<CommandOutput, CliError> {
    worker_cap()?;
    match cli.command {
        Command::Lsa { action } => match action {
            LsaAction::Check { path } => pipelines::lsa_check(&path),
            LsaAction::Commutator { path } => pipelines::lsa_commutator(&path),
            LsaAction::Envelope { path, cap } => pipelines::lsa_envelope(&path, cap),
            LsaAction::Rep { path } => pipelines::lsa_rep(&path),
            LsaAction::Orbit { path, grid, out } => {
                pipelines::lsa_orbit(&path, grid, out.as_deref())
            }
        },
        Command::Conn { action } => match action {
            ConnAction::Check { path } => pipelines::conn_check(&path),
            ConnAction::Table { conn, fields } => pipelines::conn_table(&conn, &fields),
            ConnAction::Solve { path, degree } => pipelines::conn_solve(&path, degree),
            ConnAction::Envelope { conn, fields, cap } => {
                pipelines::conn_envelope(&conn, &fields, cap)
            }
        },
        Command::Group { action } => match action {
            GroupAction::Show { group } => pipelines::group_show(&group),
            GroupAction::Derive { group, lsa } => pipelines::group_derive(&group, &lsa),
        },
        Command::Fb { action } => match action {
            FbAction::Check { path } => pipelines::fb_check(&path),
            FbAction::Rank { conn, fields, at } => pipelines::fb_rank(&conn, &fields, &at),
        },
        Command::Paper { id, regolden, verify } => {
            pipelines::paper(id.as_str(), regolden, verify)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(CommandOutput::Report(r)) => {
            print!("{}", r.render());
            if r.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Ok(CommandOutput::Raw { text, ok }) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
