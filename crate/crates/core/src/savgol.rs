//! Savitzky-Golay smoothing with polynomial-fit edge handling.
//!
//! Interior samples use the centred convolution kernel. The first and last
//! `window / 2` samples evaluate the polynomial fitted to the first and last
//! full window, so any polynomial of degree `<= order` passes through
//! unchanged everywhere, edges included.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{MotionError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SavGolParams {
    pub window: usize,
    pub order: usize,
}

impl Default for SavGolParams {
    /// About 150 ms of support at 60 fps.
    fn default() -> Self {
        Self { window: 9, order: 3 }
    }
}

impl SavGolParams {
    pub fn validate(&self) -> Result<()> {
        if self.window % 2 == 0 {
            return Err(MotionError::InvalidParameter(format!(
                "savgol window must be odd, got {}",
                self.window
            )));
        }
        if self.order < 1 || self.window <= self.order {
            return Err(MotionError::InvalidParameter(format!(
                "savgol needs window > order >= 1, got window {} order {}",
                self.window, self.order
            )));
        }
        Ok(())
    }

    /// Parameters usable on a series of `len` samples: the window shrinks to
    /// the largest odd length that fits. `None` when no window larger than
    /// the order fits, in which case the series is left unfiltered.
    pub fn fitted_to(&self, len: usize) -> Option<SavGolParams> {
        let mut w = self.window.min(len);
        if w % 2 == 0 {
            w = w.saturating_sub(1);
        }
        (w > self.order).then_some(SavGolParams { window: w, order: self.order })
    }
}

/// Precomputed kernel rows for one (window, order) pair.
#[derive(Debug, Clone)]
pub struct SavGol {
    params: SavGolParams,
    /// `rows[q][i]`: weight of window sample `i` when evaluating the fit at
    /// window position `q`.
    rows: Vec<Vec<f64>>,
}

impl SavGol {
    pub fn new(params: SavGolParams) -> Result<Self> {
        params.validate()?;
        let w = params.window;
        let half = (w / 2) as f64;
        let cols = params.order + 1;
        let design = DMatrix::from_fn(w, cols, |i, k| (i as f64 - half).powi(k as i32));
        let gram = design.transpose() * &design;
        let inv = gram
            .try_inverse()
            .ok_or_else(|| MotionError::InvalidParameter("singular savgol design".into()))?;
        // Hat matrix: maps window samples to fitted values at each position.
        let hat = &design * inv * design.transpose();
        let rows = (0..w).map(|q| hat.row(q).iter().copied().collect()).collect();
        Ok(Self { params, rows })
    }

    pub fn params(&self) -> SavGolParams {
        self.params
    }

    /// Smooth a series whose length is at least the window.
    pub fn smooth(&self, series: &[f64]) -> Vec<f64> {
        let n = series.len();
        let w = self.params.window;
        assert!(n >= w, "series shorter than savgol window");
        let half = w / 2;
        let mut out = Vec::with_capacity(n);
        for t in 0..n {
            let (start, q) = if t < half {
                (0, t)
            } else if t + half >= n {
                (n - w, t - (n - w))
            } else {
                (t - half, half)
            };
            let row = &self.rows[q];
            out.push(row.iter().zip(&series[start..start + w]).map(|(c, y)| c * y).sum());
        }
        out
    }
}

/// Smooth `series`, shrinking the window for short inputs and passing the
/// series through unchanged when no usable window fits.
pub fn smooth_adaptive(params: SavGolParams, series: &[f64]) -> Result<Vec<f64>> {
    params.validate()?;
    match params.fitted_to(series.len()) {
        Some(p) => Ok(SavGol::new(p)?.smooth(series)),
        None => Ok(series.to_vec()),
    }
}
