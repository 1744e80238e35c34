//! Equal-width discretization and binned mutual information, including the
//! sweep over ordered bin-count pairs that produces the embedding features.
//!
//! The discretization rule is pinned down exactly because every downstream
//! feature value depends on it: with `low = min(values)` and
//! `high = max(values)`, the edges are `low + k * (high - low) / nbins` for
//! `k = 0..nbins-1`, and the index of a value is the number of edges less
//! than or equal to it. Indices therefore run from 1 to `nbins`, and a
//! zero-range sequence maps every value to bin `nbins`.

use std::collections::BTreeMap;

use crate::dataset::Dataset;
use crate::error::{Error, Result};

/// Tolerance below which a negative MI sum is treated as rounding residue.
pub const MI_ROUNDING_TOLERANCE: f64 = 1e-12;

/// An ordered pair of bin counts: `x_bins` for the first axis, `y_bins` for
/// the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinningScheme {
    x_bins: usize,
    y_bins: usize,
}

impl BinningScheme {
    pub fn new(x_bins: usize, y_bins: usize) -> Result<Self> {
        if x_bins < 2 {
            return Err(Error::BinCountTooSmall(x_bins));
        }
        if y_bins < 2 {
            return Err(Error::BinCountTooSmall(y_bins));
        }
        Ok(Self { x_bins, y_bins })
    }

    pub fn x_bins(self) -> usize {
        self.x_bins
    }

    pub fn y_bins(self) -> usize {
        self.y_bins
    }
}

/// Maps each value to its equal-width bin index in `1..=nbins`.
///
/// Edges start at the minimum and step by `(max - min) / nbins`; a value's
/// index is the count of edges at or below it, so the maximum always lands
/// in bin `nbins`. A constant sequence collapses every value to bin `nbins`.
pub fn discretize(values: &[f64], nbins: usize) -> Result<Vec<usize>> {
    if values.is_empty() {
        return Err(Error::EmptySequence);
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    if nbins < 2 {
        return Err(Error::BinCountTooSmall(nbins));
    }

    let low = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let high = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let width = (high - low) / nbins as f64;
    let edges: Vec<f64> = (0..nbins).map(|k| low + k as f64 * width).collect();

    Ok(values
        .iter()
        .map(|&v| edges.partition_point(|&e| e <= v))
        .collect())
}

/// Joint and marginal counts over co-occurring bin-index pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointHistogram {
    counts: BTreeMap<(usize, usize), u64>,
    x_marginals: BTreeMap<usize, u64>,
    y_marginals: BTreeMap<usize, u64>,
    total: u64,
}

impl JointHistogram {
    pub fn counts(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.counts
    }

    pub fn x_marginals(&self) -> &BTreeMap<usize, u64> {
        &self.x_marginals
    }

    pub fn y_marginals(&self) -> &BTreeMap<usize, u64> {
        &self.y_marginals
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

/// Counts co-occurring index pairs, together with the per-axis marginals.
pub fn joint_histogram(x_binned: &[usize], y_binned: &[usize]) -> Result<JointHistogram> {
    if x_binned.len() != y_binned.len() {
        return Err(Error::LengthMismatch(x_binned.len(), y_binned.len()));
    }
    if x_binned.is_empty() {
        return Err(Error::EmptySequence);
    }

    let mut counts = BTreeMap::new();
    let mut x_marginals = BTreeMap::new();
    let mut y_marginals = BTreeMap::new();
    for (&a, &b) in x_binned.iter().zip(y_binned) {
        *counts.entry((a, b)).or_insert(0u64) += 1;
        *x_marginals.entry(a).or_insert(0u64) += 1;
        *y_marginals.entry(b).or_insert(0u64) += 1;
    }

    Ok(JointHistogram {
        counts,
        x_marginals,
        y_marginals,
        total: x_binned.len() as u64,
    })
}

/// A mutual-information estimate in nats plus its bounded normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiScore {
    raw: f64,
    normalized: f64,
}

impl MiScore {
    /// Wraps a raw MI value (nats), clamping rounding residue in
    /// `[-1e-12, 0)` to zero and mapping onto `[0, 1)` via `1 - exp(-2 * raw)`.
    pub fn from_raw(raw: f64) -> Result<Self> {
        if raw < -MI_ROUNDING_TOLERANCE {
            return Err(Error::NegativeMutualInformation(raw));
        }
        let raw = raw.max(0.0);
        Ok(Self {
            raw,
            normalized: 1.0 - (-2.0 * raw).exp(),
        })
    }

    /// MI in nats.
    pub fn raw(self) -> f64 {
        self.raw
    }

    /// `1 - exp(-2 * raw)`, in `[0, 1)`.
    pub fn normalized(self) -> f64 {
        self.normalized
    }
}

/// Mutual information of a joint histogram, in nats.
///
/// Sums `p(x,y) * ln(p(x,y) / (p(x) p(y)))` over occupied cells in
/// deterministic key order; empty cells contribute nothing.
pub fn mutual_information(h: &JointHistogram) -> Result<MiScore> {
    let total = h.total as f64;
    let mut mi = 0.0;
    for (&(a, b), &count) in &h.counts {
        let joint = count as f64 / total;
        let x_marginal = h.x_marginals[&a] as f64 / total;
        let y_marginal = h.y_marginals[&b] as f64 / total;
        mi += joint * (joint / (x_marginal * y_marginal)).ln();
    }
    MiScore::from_raw(mi)
}

/// Ordered pairs of distinct bin counts drawn from `{2, .., bin_ceiling - 1}`,
/// in lexicographic order.
pub fn bin_schemes(bin_ceiling: usize) -> Result<Vec<BinningScheme>> {
    if bin_ceiling < 4 {
        return Err(Error::NoValidBinPairs);
    }
    let mut schemes = Vec::with_capacity((bin_ceiling - 2) * (bin_ceiling - 3));
    for x_bins in 2..bin_ceiling {
        for y_bins in 2..bin_ceiling {
            if x_bins != y_bins {
                schemes.push(BinningScheme { x_bins, y_bins });
            }
        }
    }
    Ok(schemes)
}

/// Normalized MI of a dataset under one binning scheme.
pub fn scheme_score(d: &Dataset, scheme: BinningScheme) -> Result<f64> {
    let x_binned = discretize(d.xs(), scheme.x_bins)?;
    let y_binned = discretize(d.ys(), scheme.y_bins)?;
    let h = joint_histogram(&x_binned, &y_binned)?;
    Ok(mutual_information(&h)?.normalized())
}

/// Normalized MI per scheme, over the full sweep of `bin_schemes`.
///
/// The output holds `(bin_ceiling - 2) * (bin_ceiling - 3)` scores in sweep
/// order and is a pure function of the dataset and ceiling.
pub fn bin_combination_scores(d: &Dataset, bin_ceiling: usize) -> Result<Vec<f64>> {
    bin_schemes(bin_ceiling)?
        .into_iter()
        .map(|scheme| scheme_score(d, scheme))
        .collect()
}

/// The maximum score of a sweep.
pub fn mic_max(scores: &[f64]) -> Result<f64> {
    if scores.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    /// Direct summation of the MI definition over the full cell grid,
    /// independent of the histogram walk above. Takes raw count matrices so
    /// it shares nothing with `JointHistogram`.
    fn mi_oracle(counts: &[Vec<u64>]) -> f64 {
        let rows = counts.len();
        let cols = counts[0].len();
        let total: u64 = counts.iter().flatten().sum();
        let row_sums: Vec<u64> = counts.iter().map(|r| r.iter().sum()).collect();
        let col_sums: Vec<u64> = (0..cols)
            .map(|j| counts.iter().map(|r| r[j]).sum())
            .collect();

        let n = total as f64;
        let mut mi = 0.0;
        for i in 0..rows {
            for j in 0..cols {
                if counts[i][j] == 0 {
                    continue;
                }
                let p_xy = counts[i][j] as f64 / n;
                let p_x = row_sums[i] as f64 / n;
                let p_y = col_sums[j] as f64 / n;
                mi += p_xy * (p_xy / (p_x * p_y)).ln();
            }
        }
        mi
    }

    /// Dense counts from index pairs, for feeding the oracle.
    fn dense_counts(x: &[usize], y: &[usize]) -> Vec<Vec<u64>> {
        let rows = x.iter().max().unwrap() + 1;
        let cols = y.iter().max().unwrap() + 1;
        let mut m = vec![vec![0u64; cols]; rows];
        for (&a, &b) in x.iter().zip(y) {
            m[a][b] += 1;
        }
        m
    }

    #[test]
    fn discretize_two_bins() {
        assert_eq!(discretize(&[0.0, 0.5, 1.0], 2).unwrap(), vec![1, 2, 2]);
    }

    #[test]
    fn discretize_constant_input_collapses_to_top_bin() {
        assert_eq!(discretize(&[3.0, 3.0, 3.0], 4).unwrap(), vec![4, 4, 4]);
    }

    #[test]
    fn discretize_four_bins() {
        assert_eq!(
            discretize(&[0.0, 0.26, 0.51, 0.76, 1.0], 4).unwrap(),
            vec![1, 2, 3, 4, 4]
        );
    }

    #[test]
    fn discretize_rejects_bad_input() {
        assert!(matches!(discretize(&[], 2), Err(Error::EmptySequence)));
        assert!(matches!(
            discretize(&[1.0, f64::NAN], 2),
            Err(Error::NonFinite)
        ));
        assert!(matches!(
            discretize(&[1.0, 2.0], 1),
            Err(Error::BinCountTooSmall(1))
        ));
    }

    #[test]
    fn histogram_counts_pairs() {
        let h = joint_histogram(&[1, 1, 2, 2], &[1, 2, 1, 2]).unwrap();
        assert_eq!(h.total(), 4);
        for count in h.counts().values() {
            assert_eq!(*count, 1);
        }
        assert_eq!(h.x_marginals()[&1], 2);
        assert_eq!(h.x_marginals()[&2], 2);
        assert_eq!(h.y_marginals()[&1], 2);
        assert_eq!(h.y_marginals()[&2], 2);
    }

    #[test]
    fn histogram_single_cell() {
        let h = joint_histogram(&[1, 1], &[1, 1]).unwrap();
        assert_eq!(h.counts()[&(1, 1)], 2);
        assert_eq!(h.total(), 2);
    }

    #[test]
    fn histogram_constant_y() {
        let h = joint_histogram(&[1, 2, 1], &[3, 3, 3]).unwrap();
        assert_eq!(h.counts()[&(1, 3)], 2);
        assert_eq!(h.counts()[&(2, 3)], 1);
        assert_eq!(h.y_marginals()[&3], 3);
    }

    #[test]
    fn histogram_rejects_mismatch() {
        assert!(matches!(
            joint_histogram(&[1, 2], &[1]),
            Err(Error::LengthMismatch(2, 1))
        ));
    }

    #[test]
    fn histogram_marginals_are_consistent() {
        let h = joint_histogram(&[1, 2, 1, 3, 3], &[4, 4, 5, 5, 4]).unwrap();
        assert_eq!(h.counts().values().sum::<u64>(), h.total());
        for (&a, &count) in h.x_marginals() {
            let from_joint: u64 = h
                .counts()
                .iter()
                .filter(|((x, _), _)| *x == a)
                .map(|(_, c)| c)
                .sum();
            assert_eq!(count, from_joint);
        }
    }

    #[test]
    fn independent_joint_has_zero_mi() {
        let h = joint_histogram(&[1, 1, 2, 2], &[1, 2, 1, 2]).unwrap();
        let score = mutual_information(&h).unwrap();
        assert_eq!(score.raw(), 0.0);
        assert_eq!(score.normalized(), 0.0);
    }

    #[test]
    fn perfect_two_symbol_dependence() {
        let h = joint_histogram(&[1, 2], &[7, 9]).unwrap();
        let score = mutual_information(&h).unwrap();
        assert_abs_diff_eq!(score.raw(), std::f64::consts::LN_2, epsilon = 1e-15);
        assert_abs_diff_eq!(score.normalized(), 0.75, epsilon = 1e-15);
    }

    #[test]
    fn three_by_three_matches_oracle() {
        // counts [[2,1,0],[0,3,1],[1,0,2]], expected value frozen from the
        // oracle before mutual_information existed.
        let counts = vec![vec![2u64, 1, 0], vec![0, 3, 1], vec![1, 0, 2]];
        let expected = mi_oracle(&counts);
        assert_abs_diff_eq!(expected, 0.4820574165208126, epsilon = 1e-12);

        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (i, row) in counts.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                for _ in 0..c {
                    xs.push(i + 1);
                    ys.push(j + 1);
                }
            }
        }
        let h = joint_histogram(&xs, &ys).unwrap();
        let score = mutual_information(&h).unwrap();
        assert_abs_diff_eq!(score.raw(), expected, epsilon = 1e-12);
    }

    #[test]
    fn product_form_joint_is_independent() {
        let r = [3usize, 1, 2];
        let c = [2usize, 5];
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (i, &ri) in r.iter().enumerate() {
            for (j, &cj) in c.iter().enumerate() {
                for _ in 0..ri * cj {
                    xs.push(i);
                    ys.push(j);
                }
            }
        }
        let h = joint_histogram(&xs, &ys).unwrap();
        let score = mutual_information(&h).unwrap();
        assert!(score.raw().abs() <= 1e-12);
    }

    #[test]
    fn normalization_is_exact_and_bounded() {
        // Discrete MI over n samples is at most ln(n), so raw values stay
        // far below the ~18.7 where 1 - exp(-2r) would round to 1.0.
        for r in [0.0, 1e-9, 0.1, 0.5, 1.0, 3.0, 10.0] {
            let s = MiScore::from_raw(r).unwrap();
            assert_eq!(s.normalized(), 1.0 - (-2.0 * r).exp());
            assert!(s.normalized() >= 0.0 && s.normalized() < 1.0);
        }
        assert!(matches!(
            MiScore::from_raw(-1e-6),
            Err(Error::NegativeMutualInformation(_))
        ));
        assert_eq!(MiScore::from_raw(-1e-13).unwrap().raw(), 0.0);
    }

    #[test]
    fn scheme_order_for_ceiling_five() {
        let schemes = bin_schemes(5).unwrap();
        let pairs: Vec<(usize, usize)> = schemes.iter().map(|s| (s.x_bins(), s.y_bins())).collect();
        assert_eq!(pairs, vec![(2, 3), (2, 4), (3, 2), (3, 4), (4, 2), (4, 3)]);
    }

    #[test]
    fn sweep_lengths() {
        let d = line_dataset(100);
        assert_eq!(bin_combination_scores(&d, 4).unwrap().len(), 2);
        assert_eq!(bin_combination_scores(&d, 16).unwrap().len(), 182);
        assert!(matches!(
            bin_combination_scores(&d, 3),
            Err(Error::NoValidBinPairs)
        ));
    }

    #[test]
    fn line_beats_shuffled_line_everywhere() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;

        let d = line_dataset(1000);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut shuffled_ys = d.ys().to_vec();
        shuffled_ys.shuffle(&mut rng);
        let shuffled = Dataset::new(d.xs().to_vec(), shuffled_ys).unwrap();

        let line_scores = bin_combination_scores(&d, 5).unwrap();
        let shuffled_scores = bin_combination_scores(&shuffled, 5).unwrap();
        for (a, b) in line_scores.iter().zip(&shuffled_scores) {
            assert!(a > b, "line {a} should exceed shuffled {b}");
        }
    }

    #[test]
    fn sweep_is_deterministic() {
        let d = line_dataset(500);
        assert_eq!(
            bin_combination_scores(&d, 10).unwrap(),
            bin_combination_scores(&d, 10).unwrap()
        );
    }

    #[test]
    fn mic_max_basics() {
        assert_eq!(mic_max(&[0.1, 0.9, 0.3]).unwrap(), 0.9);
        assert_eq!(mic_max(&[0.0]).unwrap(), 0.0);
        assert!(matches!(mic_max(&[]), Err(Error::EmptySequence)));
    }

    #[test]
    fn mic_of_clean_line_saturates() {
        let d = line_dataset(1000);
        let scores = bin_combination_scores(&d, 16).unwrap();
        let mic = mic_max(&scores).unwrap();
        assert!(mic > 0.9 && mic < 1.0, "mic = {mic}");
    }

    fn line_dataset(n: usize) -> Dataset {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let mut xs: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let ys = xs.clone();
        Dataset::new(xs, ys).unwrap()
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        /// Random small index sequences: lengths 4..=50, alphabet <= 6.
        fn index_pairs() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
            (4usize..=50).prop_flat_map(|len| {
                (
                    proptest::collection::vec(0usize..6, len),
                    proptest::collection::vec(0usize..6, len),
                )
            })
        }

        proptest! {
            #[test]
            fn matches_direct_summation_oracle((xs, ys) in index_pairs()) {
                let h = joint_histogram(&xs, &ys).unwrap();
                let score = mutual_information(&h).unwrap();
                let expected = mi_oracle(&dense_counts(&xs, &ys));
                prop_assert!((score.raw() - expected.max(0.0)).abs() <= 1e-12);
            }

            #[test]
            fn symmetric_in_axes((xs, ys) in index_pairs()) {
                let a = mutual_information(&joint_histogram(&xs, &ys).unwrap()).unwrap();
                let b = mutual_information(&joint_histogram(&ys, &xs).unwrap()).unwrap();
                prop_assert!((a.raw() - b.raw()).abs() <= 1e-12);
            }

            #[test]
            fn nonnegative_and_bounded((xs, ys) in index_pairs()) {
                let score = mutual_information(&joint_histogram(&xs, &ys).unwrap()).unwrap();
                prop_assert!(score.raw() >= 0.0);
                prop_assert!(score.normalized() >= 0.0 && score.normalized() < 1.0);
            }

            #[test]
            fn normalization_monotone(a in 0.0f64..10.0, b in 0.0f64..10.0) {
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                let s_lo = MiScore::from_raw(lo).unwrap();
                let s_hi = MiScore::from_raw(hi).unwrap();
                prop_assert!(s_lo.normalized() <= s_hi.normalized());
            }
        }
    }
}
