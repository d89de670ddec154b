mod commands;
mod config;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Format, Method, SourceArgs};

/// Crystal graphs, polyhedral inequality systems and braid maps.
#[derive(Debug, Parser)]
#[command(name = "crystalpoly", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Breadth-first crystal graph of B(λ) or B(∞) from the highest element.
    Graph {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Emit an inequality system with its saturation, positivity and ampleness report.
    Inequalities {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare BFS nodes with the lattice points of a system, up to a depth.
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List lattice points of a system with coordinate sum at most the depth.
    Enumerate {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Apply a braid map, or fuzz its morphism and involution properties.
    Braid(BraidArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    #[arg(long, value_enum, default_value_t = Method::Generate)]
    pub method: Method,
    /// Support bound K for generation.
    #[arg(long)]
    pub support: Option<usize>,
    /// Number of positions kept by the rank-2 system when l_max is infinite.
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long, default_value_t = 64)]
    pub max_rounds: usize,
}

#[derive(Debug, Clone, Args)]
pub struct BraidArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Run the seeded property suite instead of mapping elements.
    #[arg(long)]
    pub fuzz: bool,
    #[arg(long)]
    pub c1: Option<i64>,
    #[arg(long)]
    pub c2: Option<i64>,
    /// Random inputs per (c1, c2) pair.
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Letter values are drawn from [-range, range].
    #[arg(long, default_value_t = 10)]
    pub range: i64,
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long)]
    pub j: Option<usize>,
    /// Positions the map acts on, e.g. 4,5,6.
    #[arg(long, value_delimiter = ',')]
    pub window: Vec<usize>,
    /// JSON array of Z-vector documents to transport.
    #[arg(long)]
    pub map_set: Option<std::path::PathBuf>,
    /// A single tensor element, e.g. [[1,3],[2,5]].
    #[arg(long, allow_hyphen_values = true)]
    pub element: Option<String>,
    /// Expected output set; a mismatch exits with status 4.
    #[arg(long)]
    pub expect: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Graph {
            source,
            depth,
            format,
        } => commands::graph(&source, depth, format),
        Command::Inequalities {
            source,
            system,
            format,
        } => commands::inequalities(&source, &system, format),
        Command::Verify {
            source,
            system,
            depth,
            format,
        } => commands::verify(&source, &system, depth, format),
        Command::Enumerate {
            source,
            system,
            depth,
            format,
        } => commands::enumerate(&source, &system, depth, format),
        Command::Braid(args) => commands::braid(&args),
    };
    match result {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e) as u8)
        }
    }
}
