//! Agreement measures between flattened images.

use crate::error::{Error, Result};

/// A named scalar diagnostic.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    pub name: String,
    pub value: f64,
}

impl MetricReport {
    pub fn new(name: impl Into<String>, value: f64) -> Self {
        Self {
            name: name.into(),
            value,
        }
    }
}

fn check_lengths(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "vectors of length {} and {}",
            x.len(),
            y.len()
        )));
    }
    if x.is_empty() {
        return Err(Error::param("vectors must be nonempty"));
    }
    Ok(())
}

/// Uncentered cosine correlation `x·y / (‖x‖‖y‖)`.
pub fn cosine_correlation(x: &[f64], y: &[f64]) -> Result<f64> {
    check_lengths(x, y)?;
    let (mut dot, mut xx, mut yy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        dot += a * b;
        xx += a * a;
        yy += b * b;
    }
    if xx == 0.0 || yy == 0.0 {
        return Err(Error::Degenerate(
            "cosine correlation of a zero-norm vector".into(),
        ));
    }
    // Rounding can push |ρ| a hair past 1 for parallel inputs.
    Ok((dot / (xx.sqrt() * yy.sqrt())).clamp(-1.0, 1.0))
}

/// Root-mean-square difference.
pub fn rmse(x: &[f64], y: &[f64]) -> Result<f64> {
    check_lengths(x, y)?;
    let sum: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok((sum / x.len() as f64).sqrt())
}
