//! Mutual-information embeddings of bivariate functional relationships.
//!
//! The pipeline: discretize paired samples under many binning schemes,
//! score each scheme with normalized mutual information, and treat the
//! resulting score vector as an embedding of the relationship's shape.
//! Embeddings can be compared with cosine similarity, classified by nearest
//! neighbor, and projected to two principal components. Sliding-window MI
//! profiles and their finite-difference gradients expose how the dependence
//! structure moves along the x axis.
//!
//! ```
//! use relmi::{embed, sample_params, generate, RelationshipClass};
//!
//! let params = sample_params(RelationshipClass::Sinusoid, 7);
//! let data = generate(&params).unwrap();
//! let embedding = embed(&data, 16, None).unwrap();
//! assert_eq!(embedding.scores().len(), 182);
//! ```
//!
//! All operations are pure functions over immutable inputs and are safe to
//! call concurrently.

mod dataset;
mod error;
mod mi;
mod pca;
mod synth;
mod windows;

pub mod embedding;
pub mod io;

pub use dataset::{Dataset, RelationshipClass};
pub use embedding::{
    cosine_similarity, embed, knn_classify, loo_accuracy, nn_classify, pca_2d, similarity_matrix,
    top_k_neighbors, MiEmbedding, SimilarityMatrix, DEFAULT_BIN_CEILING,
};
pub use error::{Error, Result};
pub use mi::{
    bin_combination_scores, bin_schemes, discretize, joint_histogram, mic_max, mutual_information,
    scheme_score, BinningScheme, JointHistogram, MiScore, MI_ROUNDING_TOLERANCE,
};
pub use pca::{covariance_matrix, pca_2d_points, symmetric_eigen, PcaProjection};
pub use synth::{
    corpus, corpus_params, corpus_with, generate, sample_params, sample_params_with, GenParams,
    DEFAULT_NOISE_GRID, DEFAULT_SAMPLES, DEFAULT_X_RANGE,
};
pub use windows::{
    mi_gradient_at, multi_scale_mi, pearson, sliding_windows, window_count, windowed_correlation,
    windowed_mi, CorrelationProfile, MiProfile, MultiScaleSpec, WindowConfig,
    DEFAULT_STRIDE_FRACTION, DEFAULT_WINDOW_BINS, DEFAULT_WINDOW_SIZES,
};
