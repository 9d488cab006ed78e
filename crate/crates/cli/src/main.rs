mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::Format;

#[derive(Parser, Debug)]
#[command(name = "cubecomb", version, about = "Hyperplane combinatorics of finite CAT(0) cube complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Graph document (JSON).
    #[arg(long, global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Generator spec such as `grid:3,3` or `product:path:2*tree:3,2`.
    #[arg(long, global = true, value_name = "SPEC")]
    pub generator: Option<String>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Seed for every randomised choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct WallArgs {
    /// Comma-separated wall ids, or `all`.
    #[arg(long, default_value = "all")]
    pub walls: String,
    /// `lex`, `toward:<vertex>` or `random`.
    #[arg(long, default_value = "lex")]
    pub orientation: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the median property.
    Validate,
    /// List walls with halfspaces, carriers and crossings.
    Walls {
        #[arg(long)]
        h: Option<usize>,
    },
    /// Contact graph, with optional distance, geodesic and single-point check.
    Contact {
        #[arg(long)]
        h: Option<usize>,
        #[arg(long)]
        v: Option<usize>,
        /// Also compute the four-point hyperbolicity constant.
        #[arg(long)]
        hyperbolicity: bool,
    },
    /// Convexity test and convex hull of a vertex set.
    Hull {
        /// Vertex labels separated by `;`. May repeat.
        #[arg(long, required = true)]
        set: Vec<String>,
    },
    /// Gate of a vertex onto a convex set or onto a wall.
    Gate {
        #[arg(long)]
        x: String,
        #[arg(long)]
        set: Vec<String>,
        #[arg(long)]
        h: Option<usize>,
    },
    /// Long chain in a wall set without large facing tuples.
    Chains {
        #[command(flatten)]
        walls: WallArgs,
        #[arg(long = "N", default_value_t = 2)]
        n: usize,
    },
    /// Geodesic crossing many walls, or the chain inside one geodesic.
    Geodesic {
        #[command(flatten)]
        walls: WallArgs,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
    },
    /// Grid embedding of a ball, or a facing tuple.
    Embed {
        #[arg(long)]
        x0: Option<String>,
        #[arg(long = "R", default_value_t = 2)]
        r: usize,
        #[arg(long = "N", default_value_t = 2)]
        n: usize,
    },
    /// Restriction quotient to a wall subset.
    Quotient {
        #[arg(long, required = true)]
        walls: String,
    },
    /// Which quarterspaces of a crossing pair contain whole walls.
    Quarterspaces {
        #[arg(long)]
        h: Option<usize>,
        #[arg(long)]
        v: Option<usize>,
    },
    /// Hierarchy path between two vertices.
    Hierarchy {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        hx: Option<usize>,
        #[arg(long)]
        hy: Option<usize>,
    },
    /// Orbit statistics of an automorphism of a periodic complex.
    Dynamics {
        /// `shift`, `identity`, `translate:a,b,..` or `word:a,b,..`.
        #[arg(long, default_value = "shift")]
        auto: String,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        /// Window radius; defaults to 4 * nmax.
        #[arg(long = "R")]
        r: Option<usize>,
        /// Extra radii for the contact-orbit series.
        #[arg(long)]
        radii: Option<String>,
    },
    /// Ball volume, wall count and facing tuples per radius.
    Growth {
        #[arg(long, default_value = "0,1,2,3,4")]
        radii: String,
        /// Add halfspace depths and wall depths.
        #[arg(long)]
        essentiality: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Walls { .. } => "walls",
            Command::Contact { .. } => "contact",
            Command::Hull { .. } => "hull",
            Command::Gate { .. } => "gate",
            Command::Chains { .. } => "chains",
            Command::Geodesic { .. } => "geodesic",
            Command::Embed { .. } => "embed",
            Command::Quotient { .. } => "quotient",
            Command::Quarterspaces { .. } => "quarterspaces",
            Command::Hierarchy { .. } => "hierarchy",
            Command::Dynamics { .. } => "dynamics",
            Command::Growth { .. } => "growth",
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    ExitCode::from(commands::run(&cli))
}
