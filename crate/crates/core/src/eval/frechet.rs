//! Fréchet distance between Gaussian fits of two feature sets.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::features::FeatureVector;
use crate::error::{MotionError, Result};

fn moments(set: &[FeatureVector], dim: usize) -> (DVector<f64>, DMatrix<f64>) {
    let n = set.len() as f64;
    let mut mu = DVector::zeros(dim);
    for f in set {
        mu += DVector::from_column_slice(&f.values);
    }
    mu /= n;
    let mut cov = DMatrix::zeros(dim, dim);
    for f in set {
        let d = DVector::from_column_slice(&f.values) - &mu;
        cov += &d * d.transpose();
    }
    cov /= n - 1.0;
    (mu, cov)
}

/// Square root of a symmetric PSD matrix; negative round-off eigenvalues
/// become 0.
fn sqrt_psd(m: &DMatrix<f64>) -> DMatrix<f64> {
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let d = DMatrix::from_diagonal(&DVector::from_vec(clamped_roots(eig.eigenvalues.as_slice())));
    &eig.eigenvectors * d * eig.eigenvectors.transpose()
}

/// Square roots of eigenvalues, with values that are round-off relative to
/// the largest one taken as 0. Rank-deficient covariances are common with
/// few samples, and the root would otherwise blow their noise up.
fn clamped_roots(eigenvalues: &[f64]) -> Vec<f64> {
    let top = eigenvalues.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    let floor = top * EIGEN_RELATIVE_FLOOR;
    eigenvalues.iter().map(|&l| if l > floor { l.sqrt() } else { 0.0 }).collect()
}

const EIGEN_RELATIVE_FLOOR: f64 = 1e-12;

/// `|mu1 - mu2|^2 + tr(S1 + S2 - 2 (S1 S2)^(1/2))` between the Gaussian fits
/// (sample covariance) of two feature sets.
pub fn frechet_distance(a: &[FeatureVector], b: &[FeatureVector]) -> Result<f64> {
    if a.len() < 2 || b.len() < 2 {
        return Err(MotionError::InvalidParameter("need at least two feature vectors per set".into()));
    }
    let dim = a[0].values.len();
    for f in a.iter().chain(b) {
        if f.values.len() != dim {
            return Err(MotionError::DimensionMismatch { expected: dim, actual: f.values.len() });
        }
        if f.kind != a[0].kind {
            return Err(MotionError::InvalidParameter("feature kinds differ".into()));
        }
    }
    let (mu1, s1) = moments(a, dim);
    let (mu2, s2) = moments(b, dim);
    // tr((S1 S2)^(1/2)) is the sum of singular values of S1^(1/2) S2^(1/2);
    // going through the SVD avoids squaring the eigenvalue range.
    let tr_cross: f64 = (sqrt_psd(&s1) * sqrt_psd(&s2)).singular_values().sum();
    let d = (mu1 - mu2).norm_squared() + s1.trace() + s2.trace() - 2.0 * tr_cross;
    Ok(d.max(0.0))
}
