//! Seeded generators for the five relationship families, with randomized
//! coefficients, scale/translation diversity, and additive Gaussian noise
//! on y.
//!
//! Everything here is a pure function of its arguments including the seed:
//! the same parameters always produce byte-identical datasets.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::dataset::{Dataset, RelationshipClass};
use crate::error::{Error, Result};

/// Noise standard deviations as multiples of a draw's amplitude scale.
pub const DEFAULT_NOISE_GRID: [f64; 4] = [0.0, 0.05, 0.1, 0.2];

/// Sample count per generated dataset.
pub const DEFAULT_SAMPLES: usize = 1000;

/// Generation x range.
pub const DEFAULT_X_RANGE: (f64, f64) = (-3.0, 3.0);

/// Everything needed to generate one dataset.
///
/// Coefficient meaning per class:
/// - Linear `[a, b]`: `a*x + b`
/// - Quadratic `[a, b, c]`: `a*x^2 + b*x + c`
/// - Quartic `[a, b, c, d, e]`: `a*x^4 + b*x^3 + c*x^2 + d*x + e`
/// - Gaussian `[a, mu, sigma]`: `a * exp(-(x - mu)^2 / (2 sigma^2))`, sigma > 0
/// - Sinusoid `[a, f, phi]`: `a * sin(2 pi f x + phi)`
#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    pub class: RelationshipClass,
    pub coefficients: Vec<f64>,
    pub noise_sigma: f64,
    pub x_low: f64,
    pub x_high: f64,
    pub n: usize,
    pub seed: u64,
}

impl GenParams {
    fn validate(&self) -> Result<()> {
        if self.coefficients.len() != self.class.arity() {
            return Err(Error::CoefficientArity {
                class: self.class.name(),
                expected: self.class.arity(),
                got: self.coefficients.len(),
            });
        }
        if self.class == RelationshipClass::Gaussian && self.coefficients[2] <= 0.0 {
            return Err(Error::NonPositiveWidth);
        }
        if self.n < 2 {
            return Err(Error::TooFewSamples {
                got: self.n,
                min: 2,
            });
        }
        if self.x_low >= self.x_high {
            return Err(Error::InvalidRange);
        }
        if self.noise_sigma < 0.0 {
            return Err(Error::NegativeNoise);
        }
        Ok(())
    }

    /// The noise-free function value at x.
    pub fn eval(&self, x: f64) -> f64 {
        evaluate(self.class, &self.coefficients, x)
    }
}

fn evaluate(class: RelationshipClass, c: &[f64], x: f64) -> f64 {
    match class {
        RelationshipClass::Linear => c[0] * x + c[1],
        RelationshipClass::Quadratic => c[0] * x * x + c[1] * x + c[2],
        RelationshipClass::Quartic => {
            c[0] * x.powi(4) + c[1] * x.powi(3) + c[2] * x * x + c[3] * x + c[4]
        }
        RelationshipClass::Gaussian => {
            let d = x - c[1];
            c[0] * (-d * d / (2.0 * c[2] * c[2])).exp()
        }
        RelationshipClass::Sinusoid => c[0] * (2.0 * std::f64::consts::PI * c[1] * x + c[2]).sin(),
    }
}

/// Half the function's range over the x interval, measured on a uniform
/// grid. This is the signal scale the noise grid multiplies, so a 0.2 draw
/// means noise at 20% of the curve's swing regardless of class.
fn amplitude_scale(class: RelationshipClass, c: &[f64], x_low: f64, x_high: f64) -> f64 {
    const GRID: usize = 512;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for k in 0..=GRID {
        let x = x_low + (x_high - x_low) * k as f64 / GRID as f64;
        let y = evaluate(class, c, x);
        lo = lo.min(y);
        hi = hi.max(y);
    }
    (hi - lo) / 2.0
}

/// Generates a labeled dataset: x drawn uniformly over the range and sorted
/// ascending, y the class function of x plus zero-mean Gaussian noise.
pub fn generate(p: &GenParams) -> Result<Dataset> {
    p.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);

    let mut xs: Vec<f64> = (0..p.n)
        .map(|_| rng.random_range(p.x_low..p.x_high))
        .collect();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let ys: Vec<f64> = if p.noise_sigma > 0.0 {
        let noise = Normal::new(0.0, p.noise_sigma).expect("validated sigma");
        xs.iter()
            .map(|&x| p.eval(x) + noise.sample(&mut rng))
            .collect()
    } else {
        xs.iter().map(|&x| p.eval(x)).collect()
    };

    Dataset::with_label(xs, ys, Some(p.class))
}

/// Uniform draw from `[-max, -min] ∪ [min, max]`, used to keep leading
/// coefficients away from zero so classes do not collapse into each other.
fn signed_away_from_zero(rng: &mut ChaCha8Rng, min: f64, max: f64) -> f64 {
    let magnitude = rng.random_range(min..=max);
    if rng.random_bool(0.5) {
        magnitude
    } else {
        -magnitude
    }
}

/// Draws generation parameters for a class from the documented ranges,
/// using the default noise grid.
pub fn sample_params(class: RelationshipClass, seed: u64) -> GenParams {
    sample_params_with(class, seed, &DEFAULT_NOISE_GRID)
}

/// Draws generation parameters with an explicit noise grid.
///
/// Ranges per class (leading coefficients exclude a dead zone around zero):
/// - Linear: a in ±[0.1, 3], b in [-2, 2]
/// - Quadratic: a in ±[0.1, 2], b and c in [-1, 1]
/// - Quartic: a in ±[0.05, 1], b..e in [-1, 1]
/// - Gaussian: a in [0.5, 3], mu in [-2, 2], sigma in [0.3, 1.5]
/// - Sinusoid: a in [0.5, 3], f in [0.5, 2], phi in [0, 2 pi)
///
/// The noise sigma is one grid entry times the amplitude scale (half the
/// drawn function's range over the x interval).
pub fn sample_params_with(class: RelationshipClass, seed: u64, noise_grid: &[f64]) -> GenParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let coefficients = match class {
        RelationshipClass::Linear => vec![
            signed_away_from_zero(&mut rng, 0.1, 3.0),
            rng.random_range(-2.0..=2.0),
        ],
        RelationshipClass::Quadratic => vec![
            signed_away_from_zero(&mut rng, 0.1, 2.0),
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
        ],
        RelationshipClass::Quartic => vec![
            signed_away_from_zero(&mut rng, 0.05, 1.0),
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
        ],
        RelationshipClass::Gaussian => vec![
            rng.random_range(0.5..=3.0),
            rng.random_range(-2.0..=2.0),
            rng.random_range(0.3..=1.5),
        ],
        RelationshipClass::Sinusoid => vec![
            rng.random_range(0.5..=3.0),
            rng.random_range(0.5..=2.0),
            rng.random_range(0.0..std::f64::consts::TAU),
        ],
    };

    let (x_low, x_high) = DEFAULT_X_RANGE;
    let amplitude = amplitude_scale(class, &coefficients, x_low, x_high);
    let noise_multiplier = if noise_grid.is_empty() {
        0.0
    } else {
        noise_grid[rng.random_range(0..noise_grid.len())]
    };

    GenParams {
        class,
        coefficients,
        noise_sigma: noise_multiplier * amplitude,
        x_low,
        x_high,
        n: DEFAULT_SAMPLES,
        seed: rng.random(),
    }
}

/// A corpus of `per_class` labeled datasets per relationship class, in
/// canonical class order, with sub-seeds derived from the corpus seed.
pub fn corpus(per_class: usize, seed: u64) -> Result<Vec<Dataset>> {
    corpus_with(per_class, seed, &DEFAULT_NOISE_GRID)
}

/// Like `corpus`, with an explicit noise grid (an all-zero grid gives a
/// noise-free corpus).
pub fn corpus_with(per_class: usize, seed: u64, noise_grid: &[f64]) -> Result<Vec<Dataset>> {
    corpus_params(per_class, seed, noise_grid)
        .iter()
        .map(generate)
        .collect()
}

/// The generation parameters behind `corpus_with`, exposed so callers can
/// record them alongside the datasets.
pub fn corpus_params(per_class: usize, seed: u64, noise_grid: &[f64]) -> Vec<GenParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut params = Vec::with_capacity(5 * per_class);
    for class in RelationshipClass::ALL {
        for _ in 0..per_class {
            params.push(sample_params_with(class, rng.random(), noise_grid));
        }
    }
    params
}
