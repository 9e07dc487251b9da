use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tropint_cli::commands::{self, Input, Output};
use tropint_cli::error::CliError;
use tropint_cli::report::{render, write_atomic};

#[derive(Parser)]
#[command(name = "tropint", version, about = "Tropical hypersurfaces, stable intersections and degree bounds")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vertices, facets and weights of one hypersurface.
    Hypersurface {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        poly: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Normalized mixed volume of the chosen Newton polytopes, by two algorithms.
    MixedVolume {
        input: PathBuf,
        #[arg(long, required = true, value_delimiter = ',')]
        indices: Vec<usize>,
    },
    /// Stable intersection of two plane curves.
    StableIntersect {
        input: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Transverse intersection counts with random tropical lines.
    DegreeBound {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        poly: usize,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, env = "TROPINT_SEED")]
        seed: Option<u64>,
    },
    /// Largest mixed volume over codimension-r subsystems.
    BezoutBound {
        input: PathBuf,
        #[arg(long)]
        codim: usize,
    },
}

fn emit(out: Option<&Path>, svg_path: Option<&Path>, output: Output) -> Result<(), CliError> {
    if let (Some(path), Some(svg)) = (svg_path, &output.svg) {
        write_atomic(path, svg)?;
    }
    let text = render(&output.report);
    match out {
        Some(path) => write_atomic(path, &text)?,
        None => print!("{text}"),
    }
    output.failure.map_or(Ok(()), Err)
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().map_err(|e| CliError::Internal(e.to_string()))?;
    }
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Hypersurface { input, poly, svg } => {
            let input = Input::load(input)?;
            emit(out, svg.as_deref(), commands::hypersurface_cmd(&input, *poly, svg.is_some())?)
        }
        Command::MixedVolume { input, indices } => {
            emit(out, None, commands::mixed_volume_cmd(&Input::load(input)?, indices)?)
        }
        Command::StableIntersect { input, svg } => {
            let input = Input::load(input)?;
            emit(out, svg.as_deref(), commands::stable_intersect_cmd(&input, svg.is_some())?)
        }
        Command::DegreeBound { input, poly, samples, seed } => {
            let input = Input::load(input)?;
            // flag, then TROPINT_SEED (both through clap), then the file, then 0
            let seed = seed.or(input.system.seed).unwrap_or(0);
            emit(out, None, commands::degree_bound_cmd(&input, *poly, *samples, seed)?)
        }
        Command::BezoutBound { input, codim } => {
            emit(out, None, commands::bezout_bound_cmd(&Input::load(input)?, *codim)?)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tropint: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
