use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use circula::McmcConfig;
use circula_cli::commands::{
    cmd_fit, cmd_loglik, cmd_rose, cmd_simulate, render_rose, FitOptions, RoseOptions,
};
use circula_cli::dataset::write_csv;

/// Multivariate circular time-series modelling with pair circulas.
#[derive(Parser)]
#[command(name = "circula", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit the stationary Markov model to a CSV dataset by MCMC
    Fit {
        /// Dataset CSV: optional "time" column, then one angle column per series
        #[arg(long)]
        data: PathBuf,
        /// Markov order
        #[arg(long, default_value_t = 2)]
        p: usize,
        /// Number of chains
        #[arg(long, default_value_t = 3)]
        chains: usize,
        /// Iterations per chain, warmup included
        #[arg(long, default_value_t = 3000)]
        iters: usize,
        /// Warmup iterations (adaptation window, discarded)
        #[arg(long, default_value_t = 100)]
        warmup: usize,
        /// Keep every n-th post-warmup draw
        #[arg(long, default_value_t = 1)]
        thin: usize,
        /// Random seed
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write the posterior summary JSON here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate a series from a model JSON file
    Simulate {
        #[arg(long)]
        model: PathBuf,
        /// Number of time points
        #[arg(long = "T")]
        t: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output CSV path; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Joint log density of a dataset under a model
    Loglik {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        data: PathBuf,
    },
    /// Polar histogram table (CSV to stdout) for one column
    Rose {
        #[arg(long)]
        data: PathBuf,
        /// Column name from the dataset header
        #[arg(long)]
        column: String,
        /// Number of equal-width bins starting at angle zero
        #[arg(long, default_value_t = 12)]
        bins: usize,
        /// Also tabulate this model's fitted marginal density at midpoints
        #[arg(long)]
        model: Option<PathBuf>,
    },
}

fn main() {
    if let Err(err) = run() {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run() -> anyhow::Result<()> {
    match Cli::parse().command {
        Command::Fit {
            data,
            p,
            chains,
            iters,
            warmup,
            thin,
            seed,
            out,
        } => {
            let opts = FitOptions {
                data,
                p,
                config: McmcConfig {
                    chains,
                    iterations: iters,
                    warmup,
                    thinning: thin,
                    seed,
                    ..McmcConfig::default()
                },
                out,
            };
            let (summary, _) = cmd_fit(&opts)?;
            print!("{}", summary.render_table());
        }
        Command::Simulate {
            model,
            t,
            seed,
            out,
        } => {
            let dataset = cmd_simulate(&model, t, seed)?;
            match out {
                Some(path) => {
                    let file = std::fs::File::create(&path)?;
                    write_csv(std::io::BufWriter::new(file), &dataset)?;
                }
                None => {
                    let stdout = std::io::stdout();
                    write_csv(stdout.lock(), &dataset)?;
                }
            }
        }
        Command::Loglik { model, data } => {
            let value = cmd_loglik(&model, &data)?;
            println!("{value:.9e}");
        }
        Command::Rose {
            data,
            column,
            bins,
            model,
        } => {
            let rows = cmd_rose(&RoseOptions {
                data,
                column,
                bins,
                model,
            })?;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(render_rose(&rows).as_bytes())?;
        }
    }
    Ok(())
}
