use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use depthzero::finlab::TableCache;
use depthzero::verify::{run_verify, VerifyConfig};
use depthzero::Exec;
use depthzero_cli::commands::{self, CommandError, MackeyArgs};
use depthzero_cli::report::Report;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "depthzero", version, about = "Depth-zero branching combinatorics and finite-group checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run every sweep on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Root system counts, Weyl group order and degrees, and q-polynomials.
    Rootinfo {
        #[arg(long)]
        spec: String,
    },
    /// Mackey components of a depth-zero supercuspidal at x restricted to y.
    Mackey {
        #[arg(long)]
        spec: String,
        /// Vertex carrying the cuspidal, in coroot coordinates, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Special vertex, in coroot coordinates, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = 2)]
        bound: i64,
        /// Assert that the torus meets proper parabolics only in the centre.
        #[arg(long)]
        torus_in_centre: bool,
    },
    /// Run the verification suite.
    Verify {
        /// q values for SL(3, q).
        #[arg(long, value_delimiter = ',', default_values_t = vec![2u32, 3])]
        q: Vec<u32>,
        /// q values for SL(2, q).
        #[arg(long, value_delimiter = ',', default_values_t = vec![3u32, 5])]
        sl2_q: Vec<u32>,
        /// Include the level-two double coset count.
        #[arg(long)]
        level2: bool,
        /// Allow SL(3, 5).
        #[arg(long)]
        enable_big_q: bool,
        /// Cartan types for the stabiliser comparison sweep, comma separated.
        #[arg(long, value_delimiter = ',')]
        gxromega: Vec<String>,
        /// Character table cache file, created if absent.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

fn run(cli: &Cli) -> Result<(Report, bool), CommandError> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    match &cli.command {
        Command::Rootinfo { spec } => {
            let spec = commands::parse_spec(spec)?;
            Ok((Report::Rootinfo(commands::rootinfo(&spec)?), true))
        }
        Command::Mackey {
            spec,
            x,
            y,
            bound,
            torus_in_centre,
        } => {
            let spec = commands::parse_spec(spec)?;
            let report = commands::mackey(&MackeyArgs {
                spec: &spec,
                x,
                y,
                bound: *bound,
                torus_in_centre: *torus_in_centre,
                exec,
            })?;
            Ok((Report::Mackey(report), true))
        }
        Command::Verify {
            q,
            sl2_q,
            level2,
            enable_big_q,
            gxromega,
            cache,
        } => {
            for label in gxromega {
                commands::parse_spec(label)?;
            }
            let config = VerifyConfig {
                sl2_q: sl2_q.clone(),
                sl3_q: q.clone(),
                allow_big_q: *enable_big_q,
                level2: *level2,
                gxromega: gxromega.clone(),
                exec,
                ..VerifyConfig::default()
            };
            let mut table_cache = match cache {
                Some(path) => Some(TableCache::load(path).map_err(|e| CommandError::Usage(e.to_string()))?),
                None => None,
            };
            let report = run_verify(&config, table_cache.as_mut());
            if let (Some(path), Some(c)) = (cache, &table_cache) {
                c.save(path).map_err(|e| CommandError::Runtime(e.to_string()))?;
            }
            let ok = report.passed();
            Ok((Report::Verify(report), ok))
        }
    }
}

fn emit(cli: &Cli, report: &Report) -> anyhow::Result<()> {
    let text = match cli.format {
        Format::Text => report.to_text(),
        Format::Structured => report.to_structured()? + "\n",
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, ok)) => match emit(&cli, &report) {
            Ok(()) if ok => ExitCode::SUCCESS,
            Ok(()) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
        Err(CommandError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CommandError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
