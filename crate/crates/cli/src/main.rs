//! `multfree`: batch front end. Exit codes: 0 positive, 1 negative,
//! 2 input or usage error, 3 undecided.

mod commands;
mod report;

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use report::{envelope, Format};

#[derive(Parser)]
#[command(name = "multfree", version, about = "Exact checks for multiplicity free manifolds")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Faces {
    Vertices,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex-by-vertex Delzant test of `polytope` against `lattice` (default Z^n).
    DelzantCheck { input: PathBuf },
    /// Classify an SU(2) momentum image with principal lattice dZ.
    Su2Classify {
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long, num_args = 2, allow_hyphen_values = true, value_names = ["X", "Y"])]
        interval: Option<Vec<String>>,
        #[arg(long, default_value_t = 0)]
        d: u64,
    },
    /// Face-by-face multiplicity free check of `polytope` with lattice Λ₀.
    MfCheck {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Faces::Vertices)]
        faces: Faces,
        /// Extra local cone table rows.
        #[arg(long)]
        oracle: Option<PathBuf>,
    },
    /// Glue local Weyl groups from an assignment (or the one induced by `datum`).
    GlueWeyl { input: PathBuf },
    /// Assemble the root datum on Λ_M from glued local data.
    PhiM { input: PathBuf },
    /// Group-scheme fibers of `datum` at `points` or at face samples of `polytope`.
    Fibers { input: PathBuf },
    /// Sections of K⁺ over the polytope and each cover piece.
    Sections { input: PathBuf },
    /// Čech cohomology of K⁺ on a convex cover.
    CechVanish {
        input: PathBuf,
        /// Shrink each piece by ε before computing the nerve.
        #[arg(long, value_name = "EPS")]
        strict_open: Option<String>,
        /// Use the constant sheaf instead of K⁺.
        #[arg(long)]
        constant: bool,
    },
    /// Fiber table and identities of the rank-one group scheme.
    Rank1Demo {
        #[arg(long, default_value = "-1,0,1/4,4", allow_hyphen_values = true)]
        s: String,
        /// Slope of the line through the identity used to pick sample points.
        #[arg(long, default_value = "1/3", allow_hyphen_values = true)]
        parameter: String,
    },
    /// Cut a simple vertex off `polytope` at distance ε.
    CutCorner {
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        vertex: String,
        #[arg(long)]
        eps: String,
    },
}

fn run(cli: &Cli) -> commands::Result<report::Report> {
    match &cli.command {
        Command::DelzantCheck { input } => commands::delzant(input),
        Command::Su2Classify { point, interval, d } => commands::su2(point.as_deref(), interval.as_deref(), *d),
        Command::MfCheck { input, faces, oracle } => commands::mf(input, *faces == Faces::All, oracle.as_deref()),
        Command::GlueWeyl { input } => commands::glue(input),
        Command::PhiM { input } => commands::phi_m(input),
        Command::Fibers { input } => commands::fibers(input),
        Command::Sections { input } => commands::sections(input),
        Command::CechVanish { input, strict_open, constant } => {
            commands::cech(input, strict_open.as_deref(), *constant)
        }
        Command::Rank1Demo { s, parameter } => commands::rank1(s, parameter),
        Command::CutCorner { input, vertex, eps } => commands::corner(input, vertex, eps),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::DelzantCheck { .. } => "delzant-check",
        Command::Su2Classify { .. } => "su2-classify",
        Command::MfCheck { .. } => "mf-check",
        Command::GlueWeyl { .. } => "glue-weyl",
        Command::PhiM { .. } => "phi-m",
        Command::Fibers { .. } => "fibers",
        Command::Sections { .. } => "sections",
        Command::CechVanish { .. } => "cech-vanish",
        Command::Rank1Demo { .. } => "rank1-demo",
        Command::CutCorner { .. } => "cut-corner",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(report) => {
            match report.emit(cli.format, &mut io::stdout().lock()) {
                // a closed downstream pipe is not an input error
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
                _ => {}
            }
            ExitCode::from(report.outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            if cli.format == Format::Structured {
                let rec = json!({ "kind": "error", "message": e.to_string(), "exit_code": 2 });
                println!("{}", envelope(command_name(&cli.command), rec));
            }
            ExitCode::from(2)
        }
    }
}
