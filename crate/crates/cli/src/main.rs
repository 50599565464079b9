use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use simdual_cli::{cmd_derive, cmd_draw, cmd_gen, cmd_plan, cmd_render, cmd_verify, DrawArgs, Failure, Placement, RenderOptions};

#[derive(Parser)]
#[command(name = "simdual", version, about = "Rectangular duals with straight-line primal drawings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlacementArg {
    Compact,
    Centered,
}

#[derive(Subcommand)]
enum Command {
    /// Rescale a subdivision and place one vertex per rectangle.
    Draw {
        input: PathBuf,
        output: PathBuf,
        #[arg(long)]
        no_verify: bool,
        /// Write one SVG per induction step into this directory.
        #[arg(long, value_name = "DIR")]
        steps: Option<PathBuf>,
        /// Check the partial layout after every step.
        #[arg(long)]
        check_steps: bool,
        #[arg(long, value_enum, default_value = "compact")]
        placement: PlacementArg,
    },
    /// Generate a random subdivision of [0, 100]^2.
    Gen {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Probability of a pinwheel substitution per refinement.
        #[arg(long, default_value_t = 0.0)]
        pinwheel: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Render a drawing as SVG.
    Render {
        input: PathBuf,
        output: PathBuf,
        /// Pixels per unit (default: fit to 800 px).
        #[arg(long)]
        scale: Option<f64>,
        #[arg(long, default_value_t = 2)]
        precision: usize,
        #[arg(long)]
        no_rects: bool,
        #[arg(long)]
        no_labels: bool,
        #[arg(long)]
        no_edges: bool,
        #[arg(long)]
        gates: bool,
        #[arg(long)]
        wedges: bool,
    },
    /// Print the labeled adjacency graph of a subdivision.
    Derive {
        input: PathBuf,
        /// Add the four pole rectangles first.
        #[arg(long)]
        augment: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the faces of the red st-digraph and their processing order.
    Plan {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a drawing against its input subdivision.
    Verify { input: PathBuf, drawing: PathBuf },
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Internal(anyhow::anyhow!("cannot write {}: {e}", p.display()))),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Draw { input, output, no_verify, steps, check_steps, placement } => {
            let placement = match placement {
                PlacementArg::Compact => Placement::Compact,
                PlacementArg::Centered => Placement::Centered,
            };
            let s = cmd_draw(&DrawArgs { input, output, verify: !no_verify, steps, check_steps, placement })?;
            let status = if s.verified { "verified" } else { "not verified" };
            println!("{} rectangles, {} steps, {status}", s.rects, s.steps);
            if s.frames > 0 {
                println!("{} step frames written", s.frames);
            }
            Ok(())
        }
        Command::Gen { count, seed, pinwheel, output } => emit(&cmd_gen(count as usize, seed, pinwheel)?, output.as_deref()),
        Command::Render { input, output, scale, precision, no_rects, no_labels, no_edges, gates, wedges } => {
            let opts = RenderOptions { scale, precision, rects: !no_rects, labels: !no_labels, edges: !no_edges, gates, wedges };
            cmd_render(&input, &output, &opts)
        }
        Command::Derive { input, augment, output } => emit(&cmd_derive(&input, augment)?, output.as_deref()),
        Command::Plan { input, output } => emit(&cmd_plan(&input)?, output.as_deref()),
        Command::Verify { input, drawing } => {
            print!("{}", cmd_verify(&input, &drawing)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Failure::Verification(report) = &e {
                print!("{report}");
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
