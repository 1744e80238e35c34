//! Sliding-window MI profiles, their finite-difference gradients, and
//! per-bin Pearson correlation profiles along the x axis.
//!
//! Windows slide over x-sorted data so that "a point along the relationship"
//! means a location on the x axis. Each window covers `window_size`
//! consecutive samples and starts `stride` samples after its predecessor;
//! a trailing window that would not fill completely is dropped, keeping all
//! MI estimates at equal sample support.

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::mi::{scheme_score, BinningScheme};

/// Geometry and binning of one sliding-window pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowConfig {
    window_size: usize,
    stride: usize,
    scheme: BinningScheme,
}

impl WindowConfig {
    pub fn new(window_size: usize, stride: usize, scheme: BinningScheme) -> Result<Self> {
        if window_size < 4 {
            return Err(Error::WindowTooSmall(window_size));
        }
        if stride < 1 {
            return Err(Error::ZeroStride);
        }
        Ok(Self {
            window_size,
            stride,
            scheme,
        })
    }

    pub fn window_size(self) -> usize {
        self.window_size
    }

    pub fn stride(self) -> usize {
        self.stride
    }

    pub fn scheme(self) -> BinningScheme {
        self.scheme
    }
}

/// Window start offsets for a dataset of `n` samples:
/// `k * stride` for every k with `k * stride + window_size <= n`.
fn window_starts(n: usize, cfg: &WindowConfig) -> Result<Vec<usize>> {
    if cfg.window_size > n {
        return Err(Error::WindowTooLarge);
    }
    Ok((0..)
        .map(|k| k * cfg.stride)
        .take_while(|start| start + cfg.window_size <= n)
        .collect())
}

/// Number of full windows: `floor((n - window_size) / stride) + 1`.
pub fn window_count(n: usize, cfg: &WindowConfig) -> Result<usize> {
    if cfg.window_size > n {
        return Err(Error::WindowTooLarge);
    }
    Ok((n - cfg.window_size) / cfg.stride + 1)
}

/// The full windows of an x-sorted copy of the dataset, in slide order.
pub fn sliding_windows(d: &Dataset, cfg: &WindowConfig) -> Result<Vec<Dataset>> {
    let sorted = d.sorted_by_x();
    window_starts(sorted.len(), cfg)?
        .into_iter()
        .map(|start| {
            let end = start + cfg.window_size;
            Dataset::with_label(
                sorted.xs()[start..end].to_vec(),
                sorted.ys()[start..end].to_vec(),
                sorted.label(),
            )
        })
        .collect()
}

/// Per-window normalized MI values with centers and forward-difference
/// gradients.
#[derive(Debug, Clone, PartialEq)]
pub struct MiProfile {
    centers: Vec<f64>,
    values: Vec<f64>,
    gradients: Vec<f64>,
}

impl MiProfile {
    /// Mean window x, one per window.
    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    /// Normalized MI, one per window.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `(values[i+1] - values[i]) / stride`, one fewer than the windows.
    pub fn gradients(&self) -> &[f64] {
        &self.gradients
    }
}

/// Normalized MI per window along the x-sorted dataset.
///
/// Gradients are forward differences of consecutive window values with the
/// stride (in samples) as the step.
pub fn windowed_mi(d: &Dataset, cfg: &WindowConfig) -> Result<MiProfile> {
    let sorted = d.sorted_by_x();
    let starts = window_starts(sorted.len(), cfg)?;

    let mut centers = Vec::with_capacity(starts.len());
    let mut values = Vec::with_capacity(starts.len());
    for start in starts {
        let end = start + cfg.window_size;
        let window = Dataset::new(
            sorted.xs()[start..end].to_vec(),
            sorted.ys()[start..end].to_vec(),
        )?;
        centers.push(window.xs().iter().sum::<f64>() / window.len() as f64);
        values.push(scheme_score(&window, cfg.scheme)?);
    }

    let step = cfg.stride as f64;
    let gradients = values.windows(2).map(|w| (w[1] - w[0]) / step).collect();

    Ok(MiProfile {
        centers,
        values,
        gradients,
    })
}

/// Forward-difference MI gradient between windows `t` and `t + 1`,
/// identical to `windowed_mi(d, cfg).gradients()[t]`.
pub fn mi_gradient_at(d: &Dataset, cfg: &WindowConfig, t: usize) -> Result<f64> {
    let profile = windowed_mi(d, cfg)?;
    profile
        .gradients
        .get(t)
        .copied()
        .ok_or(Error::WindowIndexOutOfRange {
            index: t,
            windows: profile.values.len(),
        })
}

/// Sample Pearson correlation coefficient, clamped to `[-1, 1]`.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(Error::TooFewSamples {
            got: xs.len(),
            min: 2,
        });
    }

    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;

    let mut covariance = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - mean_x;
        let dy = y - mean_y;
        covariance += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    if var_x == 0.0 || var_y == 0.0 {
        return Err(Error::UndefinedCorrelation);
    }
    Ok((covariance / (var_x * var_y).sqrt()).clamp(-1.0, 1.0))
}

/// Pearson correlations over equal-width x bins. Bins holding fewer than
/// three points, or with zero variance on either axis, carry `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationProfile {
    bin_centers: Vec<f64>,
    correlations: Vec<Option<f64>>,
}

impl CorrelationProfile {
    pub fn bin_centers(&self) -> &[f64] {
        &self.bin_centers
    }

    pub fn correlations(&self) -> &[Option<f64>] {
        &self.correlations
    }

    /// Count of sign alternations across consecutive defined bins.
    pub fn sign_alternations(&self) -> usize {
        let signs: Vec<f64> = self
            .correlations
            .iter()
            .flatten()
            .map(|c| c.signum())
            .filter(|s| *s != 0.0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

/// Per-bin Pearson correlation across the x range. Sparse or degenerate
/// bins yield sentinels rather than errors, since equal-width bins go empty
/// for clustered data.
pub fn windowed_correlation(d: &Dataset, nbins: usize) -> Result<CorrelationProfile> {
    if nbins < 2 {
        return Err(Error::BinCountTooSmall(nbins));
    }

    let low = d.xs().iter().cloned().fold(f64::INFINITY, f64::min);
    let high = d.xs().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let width = (high - low) / nbins as f64;

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); nbins];
    for (i, &x) in d.xs().iter().enumerate() {
        let bin = if width > 0.0 {
            (((x - low) / width) as usize).min(nbins - 1)
        } else {
            0
        };
        members[bin].push(i);
    }

    let bin_centers = (0..nbins).map(|i| low + (i as f64 + 0.5) * width).collect();
    let correlations = members
        .iter()
        .map(|idx| {
            if idx.len() < 3 {
                return None;
            }
            let xs: Vec<f64> = idx.iter().map(|&i| d.xs()[i]).collect();
            let ys: Vec<f64> = idx.iter().map(|&i| d.ys()[i]).collect();
            pearson(&xs, &ys).ok()
        })
        .collect();

    Ok(CorrelationProfile {
        bin_centers,
        correlations,
    })
}

/// A set of window sizes swept at a fixed stride fraction, all sharing one
/// in-window binning scheme. Sizes are kept in ascending order so profile
/// concatenations are reproducible.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MultiScaleSpec {
    pub window_sizes: Vec<usize>,
    pub stride_fraction: f64,
    pub x_bins: usize,
    pub y_bins: usize,
}

/// Window sizes used when no explicit scales are configured.
pub const DEFAULT_WINDOW_SIZES: [usize; 3] = [50, 100, 200];

/// Stride as a fraction of the window size (50% overlap).
pub const DEFAULT_STRIDE_FRACTION: f64 = 0.5;

/// Bin counts used inside each window.
pub const DEFAULT_WINDOW_BINS: usize = 6;

impl Default for MultiScaleSpec {
    fn default() -> Self {
        Self::new(
            DEFAULT_WINDOW_SIZES.to_vec(),
            DEFAULT_STRIDE_FRACTION,
            DEFAULT_WINDOW_BINS,
            DEFAULT_WINDOW_BINS,
        )
    }
}

impl MultiScaleSpec {
    pub fn new(
        mut window_sizes: Vec<usize>,
        stride_fraction: f64,
        x_bins: usize,
        y_bins: usize,
    ) -> Self {
        window_sizes.sort_unstable();
        window_sizes.dedup();
        Self {
            window_sizes,
            stride_fraction,
            x_bins,
            y_bins,
        }
    }

    /// One window config per scale, ascending by size.
    pub fn configs(&self) -> Result<Vec<WindowConfig>> {
        self.window_sizes
            .iter()
            .map(|&size| {
                let stride = ((size as f64 * self.stride_fraction) as usize).max(1);
                WindowConfig::new(size, stride, BinningScheme::new(self.x_bins, self.y_bins)?)
            })
            .collect()
    }
}

/// One MI profile per configured scale, ascending by window size.
pub fn multi_scale_mi(d: &Dataset, spec: &MultiScaleSpec) -> Result<Vec<MiProfile>> {
    spec.configs()?
        .iter()
        .map(|cfg| windowed_mi(d, cfg))
        .collect()
}
