//! `relmi`: generate, embed, compare, classify, and profile bivariate
//! relationships through mutual-information embeddings.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::RunConfig;

const CONFIG_HELP: &str = "\
Config file: a flat key = value document ('#' starts a comment). Keys and \
defaults: seed = 42, bin_ceiling = 16, windows = 50,100,200, \
stride_fraction = 0.5, per_class = 20, noise = 0,0.05,0.1,0.2, \
k = 1, window_bins = 6, corr_bins = 8, with_windows = false, out. \
Command-line flags override file values.";

#[derive(Parser)]
#[command(name = "relmi", version, about, after_help = CONFIG_HELP)]
struct Cli {
    /// Config file with key = value defaults (flags take precedence)
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// RNG seed for generation [default: 42]
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Exclusive upper bound of the bin-count sweep [default: 16]
    #[arg(long, global = true)]
    bin_ceiling: Option<usize>,

    /// Comma-separated sliding-window sizes [default: 50,100,200]
    #[arg(long, global = true, value_delimiter = ',', value_name = "SIZES")]
    windows: Option<Vec<usize>>,

    /// Window stride as a fraction of the window size [default: 0.5]
    #[arg(long, global = true)]
    stride_fraction: Option<f64>,

    /// Datasets generated per relationship class [default: 20]
    #[arg(long, global = true)]
    per_class: Option<usize>,

    /// Comma-separated noise multipliers of the curve's half-range
    /// [default: 0,0.05,0.1,0.2]
    #[arg(long, global = true, value_delimiter = ',', value_name = "LEVELS")]
    noise: Option<Vec<f64>>,

    /// Output file or directory (per-command default otherwise)
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Neighbor count for classification [default: 1]
    #[arg(long, global = true)]
    k: Option<usize>,

    /// Bin count per axis inside each window [default: 6]
    #[arg(long, global = true)]
    window_bins: Option<usize>,

    /// Equal-width x bins for the correlation profile [default: 8]
    #[arg(long, global = true)]
    corr_bins: Option<usize>,

    /// Append multi-scale windowed MI values to embeddings
    #[arg(long, global = true)]
    with_windows: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a labeled synthetic corpus (CSV files + manifest.json)
    Generate,
    /// Embed dataset CSVs into embedding JSON files
    Embed {
        /// Dataset CSV paths
        #[arg(required = true)]
        datasets: Vec<PathBuf>,
    },
    /// Class-by-class mean cosine similarity matrix of labeled embeddings
    Similarity {
        /// Embedding JSON paths
        #[arg(required = true)]
        embeddings: Vec<PathBuf>,
    },
    /// Classify a query dataset against training embeddings
    Classify {
        /// Training embedding JSON paths
        #[arg(required = true)]
        train: Vec<PathBuf>,
        /// Query dataset CSV
        #[arg(long, value_name = "FILE")]
        query: PathBuf,
    },
    /// Project embeddings onto their top two principal components
    Pca {
        /// Embedding JSON paths
        #[arg(required = true)]
        embeddings: Vec<PathBuf>,
    },
    /// Windowed MI, MI gradients, and per-bin correlations of one dataset
    Gradients {
        /// Dataset CSV path
        dataset: PathBuf,
    },
}

impl Cli {
    fn resolve_config(&self) -> anyhow::Result<RunConfig> {
        let mut config = RunConfig::default();
        if let Some(path) = &self.config {
            config.apply_file(path)?;
        }
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        if let Some(bin_ceiling) = self.bin_ceiling {
            config.bin_ceiling = bin_ceiling;
        }
        if let Some(windows) = &self.windows {
            config.windows = windows.clone();
        }
        if let Some(stride_fraction) = self.stride_fraction {
            config.stride_fraction = stride_fraction;
        }
        if let Some(per_class) = self.per_class {
            config.per_class = per_class;
        }
        if let Some(noise) = &self.noise {
            config.noise = noise.clone();
        }
        if let Some(out) = &self.out {
            config.out = Some(out.clone());
        }
        if let Some(k) = self.k {
            config.k = k;
        }
        if let Some(window_bins) = self.window_bins {
            config.window_bins = window_bins;
        }
        if let Some(corr_bins) = self.corr_bins {
            config.corr_bins = corr_bins;
        }
        if self.with_windows {
            config.with_windows = true;
        }
        Ok(config)
    }
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let config = cli.resolve_config()?;
    match &cli.command {
        Command::Generate => commands::cmd_generate(&config),
        Command::Embed { datasets } => commands::cmd_embed(&config, datasets),
        Command::Similarity { embeddings } => commands::cmd_similarity(&config, embeddings),
        Command::Classify { train, query } => commands::cmd_classify(&config, train, query),
        Command::Pca { embeddings } => commands::cmd_pca(&config, embeddings),
        Command::Gradients { dataset } => commands::cmd_gradients(&config, dataset),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
