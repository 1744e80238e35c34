//! Run configuration: defaults, config-file values, and flag overrides, in
//! ascending precedence.
//!
//! The config file is a flat key = value document. Recognized keys mirror
//! the long flags: seed, bin_ceiling, windows, stride_fraction, per_class,
//! noise, out, k, window_bins, corr_bins, with_windows. Lines starting with
//! `#` are comments.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use relmi::{
    MultiScaleSpec, DEFAULT_BIN_CEILING, DEFAULT_NOISE_GRID, DEFAULT_STRIDE_FRACTION,
    DEFAULT_WINDOW_BINS, DEFAULT_WINDOW_SIZES,
};

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: u64,
    pub bin_ceiling: usize,
    pub windows: Vec<usize>,
    pub stride_fraction: f64,
    pub per_class: usize,
    pub noise: Vec<f64>,
    pub out: Option<PathBuf>,
    pub k: usize,
    pub window_bins: usize,
    pub corr_bins: usize,
    pub with_windows: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            bin_ceiling: DEFAULT_BIN_CEILING,
            windows: DEFAULT_WINDOW_SIZES.to_vec(),
            stride_fraction: DEFAULT_STRIDE_FRACTION,
            per_class: 20,
            noise: DEFAULT_NOISE_GRID.to_vec(),
            out: None,
            k: 1,
            window_bins: DEFAULT_WINDOW_BINS,
            corr_bins: 8,
            with_windows: false,
        }
    }
}

impl RunConfig {
    /// The multi-scale window spec the config describes.
    pub fn window_spec(&self) -> MultiScaleSpec {
        MultiScaleSpec::new(
            self.windows.clone(),
            self.stride_fraction,
            self.window_bins,
            self.window_bins,
        )
    }

    /// Window spec for embedding, present only when windows are enabled.
    pub fn embedding_spec(&self) -> Option<MultiScaleSpec> {
        self.with_windows.then(|| self.window_spec())
    }

    /// Applies `key = value` pairs from a config file.
    pub fn apply_file(&mut self, path: &Path) -> anyhow::Result<()> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("{}:{}: expected key = value", path.display(), idx + 1);
            };
            let key = key.trim();
            let value = value.trim();
            let parse_context = || format!("{}:{}: invalid {key}", path.display(), idx + 1);
            match key {
                "seed" => self.seed = value.parse().with_context(parse_context)?,
                "bin_ceiling" => self.bin_ceiling = value.parse().with_context(parse_context)?,
                "windows" => self.windows = parse_list(value).with_context(parse_context)?,
                "stride_fraction" => {
                    self.stride_fraction = value.parse().with_context(parse_context)?
                }
                "per_class" => self.per_class = value.parse().with_context(parse_context)?,
                "noise" => self.noise = parse_list(value).with_context(parse_context)?,
                "out" => self.out = Some(PathBuf::from(value)),
                "k" => self.k = value.parse().with_context(parse_context)?,
                "window_bins" => self.window_bins = value.parse().with_context(parse_context)?,
                "corr_bins" => self.corr_bins = value.parse().with_context(parse_context)?,
                "with_windows" => self.with_windows = value.parse().with_context(parse_context)?,
                _ => bail!("{}:{}: unknown key '{key}'", path.display(), idx + 1),
            }
        }
        Ok(())
    }
}

fn parse_list<T: std::str::FromStr>(value: &str) -> anyhow::Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    value
        .split(',')
        .map(|item| item.trim().parse::<T>().map_err(Into::into))
        .collect()
}
