//! MI embeddings of datasets and the comparisons built on them: cosine
//! similarity, class-by-class similarity matrices, nearest-neighbor
//! classification, and 2-D projection.
//!
//! An embedding is the bin-combination sweep of a dataset, optionally
//! followed by the concatenated multi-scale windowed MI values. Two
//! embeddings are comparable only if they were built with the same bin
//! ceiling and window spec.

use crate::dataset::{Dataset, RelationshipClass};
use crate::error::{Error, Result};
use crate::mi::bin_combination_scores;
use crate::pca::{pca_2d_points, PcaProjection};
use crate::windows::{multi_scale_mi, MultiScaleSpec};

/// Default sweep ceiling; gives a 182-dimensional bin-sweep embedding.
pub const DEFAULT_BIN_CEILING: usize = 16;

/// A deterministic-order vector of normalized MI scores characterizing one
/// dataset's relationship, tagged with the configuration that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct MiEmbedding {
    scores: Vec<f64>,
    bin_ceiling: usize,
    window_spec: Option<MultiScaleSpec>,
    label: Option<RelationshipClass>,
}

impl MiEmbedding {
    /// Reassembles an embedding from stored parts (e.g. a JSON file).
    pub fn from_parts(
        scores: Vec<f64>,
        bin_ceiling: usize,
        window_spec: Option<MultiScaleSpec>,
        label: Option<RelationshipClass>,
    ) -> Self {
        Self {
            scores,
            bin_ceiling,
            window_spec,
            label,
        }
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn bin_ceiling(&self) -> usize {
        self.bin_ceiling
    }

    pub fn window_spec(&self) -> Option<&MultiScaleSpec> {
        self.window_spec.as_ref()
    }

    pub fn label(&self) -> Option<RelationshipClass> {
        self.label
    }

    pub fn set_label(&mut self, label: Option<RelationshipClass>) {
        self.label = label;
    }

    /// Whether two embeddings were built under the same configuration.
    pub fn comparable(&self, other: &MiEmbedding) -> bool {
        self.bin_ceiling == other.bin_ceiling && self.window_spec == other.window_spec
    }
}

/// Embeds a dataset: the bin-combination sweep, then (when a window spec is
/// given) the windowed MI values of each scale in ascending window-size
/// order. The dataset's label is carried over.
pub fn embed(
    d: &Dataset,
    bin_ceiling: usize,
    window_spec: Option<&MultiScaleSpec>,
) -> Result<MiEmbedding> {
    let mut scores = bin_combination_scores(d, bin_ceiling)?;
    if let Some(spec) = window_spec {
        for profile in multi_scale_mi(d, spec)? {
            scores.extend_from_slice(profile.values());
        }
    }
    Ok(MiEmbedding {
        scores,
        bin_ceiling,
        window_spec: window_spec.cloned(),
        label: d.label(),
    })
}

/// Cosine similarity of two comparable embeddings.
pub fn cosine_similarity(a: &MiEmbedding, b: &MiEmbedding) -> Result<f64> {
    if !a.comparable(b) || a.scores.len() != b.scores.len() {
        return Err(Error::IncompatibleEmbeddings);
    }
    let dot: f64 = a.scores.iter().zip(&b.scores).map(|(x, y)| x * y).sum();
    let norm_a: f64 = a.scores.iter().map(|x| x * x).sum::<f64>().sqrt();
    let norm_b: f64 = b.scores.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm_a == 0.0 || norm_b == 0.0 {
        return Err(Error::DegenerateEmbedding);
    }
    Ok(dot / (norm_a * norm_b))
}

/// Class-by-class mean cosine similarities between embedding groups.
///
/// Diagonal entries average over distinct unordered pairs within the class;
/// off-diagonal entries average over all cross pairs. Each unordered pair is
/// computed once, so the matrix is symmetric by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    classes: Vec<RelationshipClass>,
    means: Vec<Vec<f64>>,
}

impl SimilarityMatrix {
    pub fn classes(&self) -> &[RelationshipClass] {
        &self.classes
    }

    pub fn means(&self) -> &[Vec<f64>] {
        &self.means
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.means[i][j]
    }

    /// Builds a matrix directly from entries (used when reading files).
    pub fn from_parts(classes: Vec<RelationshipClass>, means: Vec<Vec<f64>>) -> Self {
        Self { classes, means }
    }
}

/// Mean pairwise cosine similarity per class pair, classes in canonical
/// order. Every present class needs at least two members for its diagonal.
pub fn similarity_matrix(embeddings: &[MiEmbedding]) -> Result<SimilarityMatrix> {
    for (i, e) in embeddings.iter().enumerate() {
        if e.label().is_none() {
            return Err(Error::UnlabeledEmbedding(i));
        }
    }

    let classes: Vec<RelationshipClass> = RelationshipClass::ALL
        .into_iter()
        .filter(|c| embeddings.iter().any(|e| e.label() == Some(*c)))
        .collect();
    if classes.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }

    let groups: Vec<Vec<&MiEmbedding>> = classes
        .iter()
        .map(|&c| embeddings.iter().filter(|e| e.label() == Some(c)).collect())
        .collect();
    for (class, group) in classes.iter().zip(&groups) {
        if group.len() < 2 {
            return Err(Error::ClassTooSmall(class.name()));
        }
    }

    let k = classes.len();
    let mut means = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in i..k {
            let mut sum = 0.0;
            let mut pairs = 0usize;
            if i == j {
                for a in 0..groups[i].len() {
                    for b in (a + 1)..groups[i].len() {
                        sum += cosine_similarity(groups[i][a], groups[i][b])?;
                        pairs += 1;
                    }
                }
            } else {
                for a in groups[i].iter() {
                    for b in groups[j].iter() {
                        sum += cosine_similarity(a, b)?;
                        pairs += 1;
                    }
                }
            }
            let mean = sum / pairs as f64;
            means[i][j] = mean;
            means[j][i] = mean;
        }
    }

    Ok(SimilarityMatrix { classes, means })
}

/// The `k` training embeddings most similar to the query, as
/// `(training index, cosine similarity)` in descending similarity. Ties
/// favor the earlier training index.
pub fn top_k_neighbors(
    train: &[MiEmbedding],
    query: &MiEmbedding,
    k: usize,
) -> Result<Vec<(usize, f64)>> {
    if train.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    if k < 1 || k > train.len() {
        return Err(Error::InvalidNeighborCount {
            k,
            train: train.len(),
        });
    }
    let mut scored: Vec<(usize, f64)> = train
        .iter()
        .enumerate()
        .map(|(i, e)| Ok((i, cosine_similarity(e, query)?)))
        .collect::<Result<_>>()?;
    // Stable sort by descending similarity keeps index order for ties.
    scored.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    scored.truncate(k);
    Ok(scored)
}

/// Label of the single most similar training embedding.
pub fn nn_classify(train: &[MiEmbedding], query: &MiEmbedding) -> Result<RelationshipClass> {
    knn_classify(train, query, 1)
}

/// Majority label among the `k` most similar training embeddings; ties are
/// broken in favor of the class appearing earliest in the neighbor list.
pub fn knn_classify(
    train: &[MiEmbedding],
    query: &MiEmbedding,
    k: usize,
) -> Result<RelationshipClass> {
    let neighbors = top_k_neighbors(train, query, k)?;
    let mut votes: Vec<(RelationshipClass, usize)> = Vec::new();
    for &(idx, _) in &neighbors {
        let label = train[idx].label().ok_or(Error::UnlabeledEmbedding(idx))?;
        match votes.iter_mut().find(|(c, _)| *c == label) {
            Some((_, count)) => *count += 1,
            None => votes.push((label, 1)),
        }
    }
    // First-encountered order breaks count ties.
    let mut best = votes[0];
    for &(class, count) in &votes[1..] {
        if count > best.1 {
            best = (class, count);
        }
    }
    Ok(best.0)
}

/// Fraction of embeddings whose nearest neighbor among the others carries
/// the true label.
pub fn loo_accuracy(embeddings: &[MiEmbedding]) -> Result<f64> {
    if embeddings.len() < 2 {
        return Err(Error::TooFewSamples {
            got: embeddings.len(),
            min: 2,
        });
    }
    let mut correct = 0usize;
    for (i, query) in embeddings.iter().enumerate() {
        let truth = query.label().ok_or(Error::UnlabeledEmbedding(i))?;
        let rest: Vec<MiEmbedding> = embeddings
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, e)| e.clone())
            .collect();
        if nn_classify(&rest, query)? == truth {
            correct += 1;
        }
    }
    Ok(correct as f64 / embeddings.len() as f64)
}

/// Projects a set of comparable embeddings onto their top two principal
/// components.
pub fn pca_2d(embeddings: &[MiEmbedding]) -> Result<PcaProjection> {
    for pair in embeddings.windows(2) {
        if !pair[0].comparable(&pair[1]) {
            return Err(Error::IncompatibleEmbeddings);
        }
    }
    let rows: Vec<Vec<f64>> = embeddings.iter().map(|e| e.scores.clone()).collect();
    let labels: Vec<Option<RelationshipClass>> = embeddings.iter().map(|e| e.label()).collect();
    pca_2d_points(&rows, &labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;

    fn fixed(scores: Vec<f64>, label: Option<RelationshipClass>) -> MiEmbedding {
        MiEmbedding::from_parts(scores, 16, None, label)
    }

    fn seeded_dataset(class: RelationshipClass, seed: u64) -> Dataset {
        synth::generate(&synth::sample_params_with(class, seed, &[0.0])).unwrap()
    }

    #[test]
    fn sweep_only_embedding_has_182_scores() {
        let d = seeded_dataset(RelationshipClass::Linear, 1);
        let e = embed(&d, 16, None).unwrap();
        assert_eq!(e.scores().len(), 182);
        assert_eq!(e.label(), Some(RelationshipClass::Linear));
        assert!(e.scores().iter().all(|s| (0.0..1.0).contains(s)));
    }

    #[test]
    fn windowed_embedding_length_follows_window_counts() {
        let d = seeded_dataset(RelationshipClass::Sinusoid, 2);
        let spec = MultiScaleSpec::default();
        let e = embed(&d, 16, Some(&spec)).unwrap();
        // 182 sweep scores plus 39 + 19 + 9 windows for n = 1000.
        assert_eq!(e.scores().len(), 182 + 39 + 19 + 9);
    }

    #[test]
    fn embedding_is_pure() {
        let d = seeded_dataset(RelationshipClass::Gaussian, 3);
        assert_eq!(embed(&d, 16, None).unwrap(), embed(&d, 16, None).unwrap());
    }

    #[test]
    fn cosine_basics() {
        let a = fixed(vec![1.0, 2.0, 3.0], None);
        assert_eq!(cosine_similarity(&a, &a).unwrap(), 1.0);

        let e1 = fixed(vec![1.0, 0.0], None);
        let e2 = fixed(vec![0.0, 1.0], None);
        assert_eq!(cosine_similarity(&e1, &e2).unwrap(), 0.0);

        let e3 = fixed(vec![1.0, 1.0], None);
        let r = cosine_similarity(&e1, &e3).unwrap();
        assert!((r - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-9);
    }

    #[test]
    fn cosine_rejects_mismatched_configs() {
        let a = MiEmbedding::from_parts(vec![1.0, 2.0], 16, None, None);
        let b = MiEmbedding::from_parts(vec![1.0, 2.0], 8, None, None);
        assert!(matches!(
            cosine_similarity(&a, &b),
            Err(Error::IncompatibleEmbeddings)
        ));

        let zero = fixed(vec![0.0, 0.0], None);
        let one = fixed(vec![1.0, 0.0], None);
        assert!(matches!(
            cosine_similarity(&zero, &one),
            Err(Error::DegenerateEmbedding)
        ));
    }

    #[test]
    fn cosine_is_symmetric_and_bounded() {
        let d1 = seeded_dataset(RelationshipClass::Quadratic, 4);
        let d2 = seeded_dataset(RelationshipClass::Sinusoid, 5);
        let a = embed(&d1, 8, None).unwrap();
        let b = embed(&d2, 8, None).unwrap();
        let ab = cosine_similarity(&a, &b).unwrap();
        let ba = cosine_similarity(&b, &a).unwrap();
        assert!((ab - ba).abs() <= 1e-12);
        assert!((-1.0..=1.0).contains(&ab));
    }

    #[test]
    fn identical_embeddings_give_unit_matrix() {
        let scores = vec![0.5, 0.25, 0.125];
        let embeddings = vec![
            fixed(scores.clone(), Some(RelationshipClass::Linear)),
            fixed(scores.clone(), Some(RelationshipClass::Linear)),
            fixed(scores.clone(), Some(RelationshipClass::Gaussian)),
            fixed(scores, Some(RelationshipClass::Gaussian)),
        ];
        let m = similarity_matrix(&embeddings).unwrap();
        assert_eq!(
            m.classes(),
            &[RelationshipClass::Linear, RelationshipClass::Gaussian]
        );
        for row in m.means() {
            for &v in row {
                assert!((v - 1.0).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn orthogonal_supports_give_zero_off_diagonal() {
        let embeddings = vec![
            fixed(vec![1.0, 0.0], Some(RelationshipClass::Linear)),
            fixed(vec![2.0, 0.0], Some(RelationshipClass::Linear)),
            fixed(vec![0.0, 1.0], Some(RelationshipClass::Sinusoid)),
            fixed(vec![0.0, 3.0], Some(RelationshipClass::Sinusoid)),
        ];
        let m = similarity_matrix(&embeddings).unwrap();
        assert_eq!(m.get(0, 1), 0.0);
        assert_eq!(m.get(1, 0), 0.0);
        assert!((m.get(0, 0) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn matrix_is_exactly_symmetric() {
        let mut embeddings = Vec::new();
        for (i, class) in RelationshipClass::ALL.into_iter().enumerate() {
            for seed in 0..3u64 {
                let d = seeded_dataset(class, seed + i as u64 * 31);
                embeddings.push(embed(&d, 6, None).unwrap());
            }
        }
        let m = similarity_matrix(&embeddings).unwrap();
        for i in 0..m.classes().len() {
            for j in 0..m.classes().len() {
                assert_eq!(m.get(i, j), m.get(j, i), "asymmetry at ({i},{j})");
            }
        }
    }

    #[test]
    fn small_class_is_rejected() {
        let embeddings = vec![
            fixed(vec![1.0, 0.0], Some(RelationshipClass::Linear)),
            fixed(vec![1.0, 0.1], Some(RelationshipClass::Linear)),
            fixed(vec![0.0, 1.0], Some(RelationshipClass::Sinusoid)),
        ];
        assert!(matches!(
            similarity_matrix(&embeddings),
            Err(Error::ClassTooSmall("Sinusoid"))
        ));
    }

    #[test]
    fn nn_returns_exact_match_label() {
        let train = vec![
            fixed(vec![1.0, 0.0, 0.0], Some(RelationshipClass::Linear)),
            fixed(vec![0.0, 1.0, 0.0], Some(RelationshipClass::Gaussian)),
            fixed(vec![0.0, 0.0, 1.0], Some(RelationshipClass::Sinusoid)),
        ];
        let query = fixed(vec![0.0, 1.0, 0.0], None);
        assert_eq!(
            nn_classify(&train, &query).unwrap(),
            RelationshipClass::Gaussian
        );
    }

    #[test]
    fn single_class_training_always_wins() {
        let train = vec![
            fixed(vec![1.0, 0.2], Some(RelationshipClass::Quartic)),
            fixed(vec![0.3, 1.0], Some(RelationshipClass::Quartic)),
        ];
        for scores in [vec![1.0, 0.0], vec![0.0, 1.0], vec![0.5, 0.5]] {
            let query = fixed(scores, None);
            assert_eq!(
                nn_classify(&train, &query).unwrap(),
                RelationshipClass::Quartic
            );
        }
    }

    #[test]
    fn ties_break_toward_earliest_index() {
        let train = vec![
            fixed(vec![1.0, 0.0], Some(RelationshipClass::Quadratic)),
            fixed(vec![2.0, 0.0], Some(RelationshipClass::Sinusoid)),
        ];
        // Both training points have cosine 1 with the query.
        let query = fixed(vec![3.0, 0.0], None);
        assert_eq!(
            nn_classify(&train, &query).unwrap(),
            RelationshipClass::Quadratic
        );
    }

    #[test]
    fn knn_vote_ties_favor_the_nearest() {
        let train = vec![
            fixed(vec![1.0, 0.0], Some(RelationshipClass::Linear)),
            fixed(vec![0.9, 0.1], Some(RelationshipClass::Gaussian)),
            fixed(vec![0.8, 0.2], Some(RelationshipClass::Sinusoid)),
        ];
        // k=3 gives one vote each; the closest neighbor's class must win.
        let query = fixed(vec![1.0, 0.0], None);
        assert_eq!(
            knn_classify(&train, &query, 3).unwrap(),
            RelationshipClass::Linear
        );
    }

    #[test]
    fn nn_rejects_bad_inputs() {
        let query = fixed(vec![1.0], None);
        assert!(matches!(
            nn_classify(&[], &query),
            Err(Error::EmptyTrainingSet)
        ));
        let train = vec![fixed(vec![1.0], Some(RelationshipClass::Linear))];
        assert!(matches!(
            knn_classify(&train, &query, 2),
            Err(Error::InvalidNeighborCount { k: 2, train: 1 })
        ));
    }

    #[test]
    fn loo_on_identical_pairs() {
        let same = vec![
            fixed(vec![1.0, 1.0], Some(RelationshipClass::Linear)),
            fixed(vec![1.0, 1.0], Some(RelationshipClass::Linear)),
        ];
        assert_eq!(loo_accuracy(&same).unwrap(), 1.0);

        let different = vec![
            fixed(vec![1.0, 1.0], Some(RelationshipClass::Linear)),
            fixed(vec![1.0, 1.0], Some(RelationshipClass::Gaussian)),
        ];
        assert_eq!(loo_accuracy(&different).unwrap(), 0.0);
    }

    #[test]
    fn loo_beats_chance_on_noise_free_corpus() {
        let datasets = synth::corpus_with(4, 11, &[0.0]).unwrap();
        let embeddings: Vec<MiEmbedding> = datasets
            .iter()
            .map(|d| embed(d, 16, None).unwrap())
            .collect();
        let acc = loo_accuracy(&embeddings).unwrap();
        assert!(acc > 0.2, "accuracy {acc} should beat chance");
    }

    #[test]
    fn pca_over_embeddings_requires_matching_configs() {
        let a = MiEmbedding::from_parts(vec![1.0, 2.0], 16, None, None);
        let b = MiEmbedding::from_parts(vec![1.0, 3.0], 8, None, None);
        let c = MiEmbedding::from_parts(vec![2.0, 3.0], 16, None, None);
        assert!(matches!(
            pca_2d(&[a, b, c]),
            Err(Error::IncompatibleEmbeddings)
        ));
    }
}
