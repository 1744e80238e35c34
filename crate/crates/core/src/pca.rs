//! Two-component principal component analysis over embedding vectors,
//! backed by a cyclic Jacobi eigensolver for symmetric matrices.
//!
//! The solver and the sign convention (largest-magnitude coordinate of each
//! component forced positive) are both deterministic, so projections are
//! reproducible across runs and platforms.

use crate::dataset::RelationshipClass;
use crate::error::{Error, Result};

/// A 2-D projection of a set of points, with the fitted basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PcaProjection {
    components: [Vec<f64>; 2],
    mean: Vec<f64>,
    projected: Vec<[f64; 2]>,
    labels: Vec<Option<RelationshipClass>>,
}

impl PcaProjection {
    /// The two orthonormal principal directions, strongest first.
    pub fn components(&self) -> &[Vec<f64>; 2] {
        &self.components
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    /// `(pc1, pc2)` coordinates, one per input point, in input order.
    pub fn projected(&self) -> &[[f64; 2]] {
        &self.projected
    }

    pub fn labels(&self) -> &[Option<RelationshipClass>] {
        &self.labels
    }
}

/// Eigenvalues (descending) and matching orthonormal eigenvectors of a
/// symmetric matrix, via cyclic Jacobi rotations.
///
/// Deterministic: sweeps visit the upper triangle in a fixed order and ties
/// in the final sort keep the original diagonal order.
#[allow(clippy::needless_range_loop)]
pub fn symmetric_eigen(matrix: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    let off_diagonal_norm = |a: &[Vec<f64>]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += a[i][j] * a[i][j];
            }
        }
        s.sqrt()
    };
    let scale = matrix
        .iter()
        .flatten()
        .fold(0.0f64, |acc, x| acc.max(x.abs()))
        .max(1.0);

    for _sweep in 0..100 {
        if off_diagonal_norm(&a) <= 1e-14 * scale * n as f64 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].partial_cmp(&a[i][i]).unwrap());

    let eigenvalues = order.iter().map(|&i| a[i][i]).collect();
    let eigenvectors = order
        .iter()
        .map(|&col| (0..n).map(|row| v[row][col]).collect())
        .collect();
    (eigenvalues, eigenvectors)
}

/// Sample covariance of the rows after mean-centering.
#[allow(clippy::needless_range_loop)]
pub fn covariance_matrix(rows: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = rows.len();
    let dim = rows[0].len();
    let mut mean = vec![0.0; dim];
    for row in rows {
        for (m, &x) in mean.iter_mut().zip(row) {
            *m += x;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }

    let mut cov = vec![vec![0.0; dim]; dim];
    for row in rows {
        let centered: Vec<f64> = row.iter().zip(&mean).map(|(x, m)| x - m).collect();
        for i in 0..dim {
            for j in i..dim {
                cov[i][j] += centered[i] * centered[j];
            }
        }
    }
    let denom = (n - 1) as f64;
    for i in 0..dim {
        for j in i..dim {
            cov[i][j] /= denom;
            cov[j][i] = cov[i][j];
        }
    }
    (mean, cov)
}

/// Flips a vector so its largest-magnitude coordinate is positive. The
/// first maximal coordinate wins ties, which keeps the convention total.
fn orient(mut component: Vec<f64>) -> Vec<f64> {
    let mut idx = 0;
    for (i, value) in component.iter().enumerate() {
        if value.abs() > component[idx].abs() {
            idx = i;
        }
    }
    if component[idx] < 0.0 {
        for value in &mut component {
            *value = -*value;
        }
    }
    component
}

/// Projects points onto their top two principal components.
///
/// Requires at least three points of dimension two or more that are not all
/// identical.
pub fn pca_2d_points(
    rows: &[Vec<f64>],
    labels: &[Option<RelationshipClass>],
) -> Result<PcaProjection> {
    if rows.len() < 3 {
        return Err(Error::TooFewPoints {
            got: rows.len(),
            min: 3,
        });
    }
    let dim = rows[0].len();
    if dim < 2 {
        return Err(Error::TooFewPoints { got: dim, min: 2 });
    }
    if rows.iter().any(|r| r.len() != dim) {
        return Err(Error::LengthMismatch(
            dim,
            rows.iter().map(Vec::len).max().unwrap(),
        ));
    }

    let (mean, cov) = covariance_matrix(rows);
    if cov.iter().enumerate().all(|(i, row)| row[i] == 0.0) {
        return Err(Error::ZeroVariance);
    }

    let (_, eigenvectors) = symmetric_eigen(&cov);
    let mut iter = eigenvectors.into_iter();
    let pc1 = orient(iter.next().expect("dim >= 2"));
    let pc2 = orient(iter.next().expect("dim >= 2"));

    let projected = rows
        .iter()
        .map(|row| {
            let centered: Vec<f64> = row.iter().zip(&mean).map(|(x, m)| x - m).collect();
            [
                centered.iter().zip(&pc1).map(|(x, c)| x * c).sum(),
                centered.iter().zip(&pc2).map(|(x, c)| x * c).sum(),
            ]
        })
        .collect();

    Ok(PcaProjection {
        components: [pc1, pc2],
        mean,
        projected,
        labels: labels.to_vec(),
    })
}
