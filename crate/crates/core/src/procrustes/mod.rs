//! Complex orthogonal Procrustes: the unitary `Ω` minimizing
//! `‖Ω·x_d − x_t‖²` for a pair of vectors.
//!
//! The cross-product `M = x_t·x_dᴴ` has rank one, so every minimizer maps
//! `x_d` to `‖x_d‖·x_t/‖x_t‖` whatever orthonormal completion the SVD picks.
//! The implicit operator exploits this and never stores an `N × N` matrix;
//! the dense operator follows the textbook route through a full SVD
//! (one-sided Jacobi, see [`jacobi`]) and is capped in size.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::ComplexVector;

mod jacobi;

/// Largest dimension accepted for the dense operator (a 4096² complex
/// matrix is 256 MiB).
pub const EXPLICIT_DIM_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OperatorMode {
    #[default]
    ImplicitRank1,
    ExplicitDense,
}

/// A unitary Procrustes solution.
#[derive(Debug, Clone)]
pub enum RotationOperator {
    /// `Ω = phase · (I − 2uuᴴ)(I − 2wwᴴ)`: two reflections carrying `v` onto
    /// `u`, acting as `phase` on everything orthogonal to `span{u, v}`.
    ImplicitRank1 {
        /// `x_t / ‖x_t‖`
        u: ComplexVector,
        /// `x_d / ‖x_d‖`
        v: ComplexVector,
        /// Unit reflection normal.
        w: Vec<Complex64>,
        phase: Complex64,
    },
    /// `Ω = U·Vᴴ` from a full SVD of `x_t·x_dᴴ`.
    ExplicitDense { omega: DMatrix<Complex64> },
}

fn unit(x: &ComplexVector, name: &str) -> Result<ComplexVector> {
    let norm = x.norm();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::Degenerate(format!("{name} has zero norm")));
    }
    Ok(x.scaled(Complex64::new(1.0 / norm, 0.0)))
}

/// Solves for the unitary map taking `x_d` as close as possible to `x_t`.
pub fn solve_rotation(
    x_d: &ComplexVector,
    x_t: &ComplexVector,
    mode: OperatorMode,
) -> Result<RotationOperator> {
    if x_d.len() != x_t.len() {
        return Err(Error::DimensionMismatch(format!(
            "distorted vector has length {}, target has {}",
            x_d.len(),
            x_t.len()
        )));
    }
    if x_d.len() < 2 {
        return Err(Error::param("Procrustes vectors need at least 2 entries"));
    }
    match mode {
        OperatorMode::ImplicitRank1 => implicit(x_d, x_t),
        OperatorMode::ExplicitDense => explicit(x_d, x_t),
    }
}

fn implicit(x_d: &ComplexVector, x_t: &ComplexVector) -> Result<RotationOperator> {
    let v = unit(x_d, "distorted vector")?;
    let u = unit(x_t, "target vector")?;

    // a = rot·v has aᴴu = |vᴴu| ≥ 0. The reflection with normal a + u sends
    // a to −u and the reflection through u sends −u to u. ‖a + u‖² ≥ 2, so
    // the normal never cancels.
    let overlap = v.hdot(&u);
    let rot = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let sum: Vec<Complex64> = v
        .as_slice()
        .iter()
        .zip(u.as_slice())
        .map(|(a, b)| a * rot + b)
        .collect();
    let sum_norm = sum.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    let w = sum.iter().map(|d| d / sum_norm).collect();
    Ok(RotationOperator::ImplicitRank1 {
        u,
        v,
        w,
        phase: rot,
    })
}

fn explicit(x_d: &ComplexVector, x_t: &ComplexVector) -> Result<RotationOperator> {
    let n = x_d.len();
    if n > EXPLICIT_DIM_CAP {
        return Err(Error::Capacity {
            dim: n,
            cap: EXPLICIT_DIM_CAP,
        });
    }
    if x_d.norm() == 0.0 {
        return Err(Error::Degenerate("distorted vector has zero norm".into()));
    }
    if x_t.norm() == 0.0 {
        return Err(Error::Degenerate("target vector has zero norm".into()));
    }
    let xt = DVector::from_column_slice(x_t.as_slice());
    let xd = DVector::from_column_slice(x_d.as_slice());
    let m = &xt * xd.adjoint();
    let svd = jacobi::svd(&m);
    Ok(RotationOperator::ExplicitDense {
        omega: svd.u * svd.v.adjoint(),
    })
}

impl RotationOperator {
    pub fn dim(&self) -> usize {
        match self {
            RotationOperator::ImplicitRank1 { u, .. } => u.len(),
            RotationOperator::ExplicitDense { omega } => omega.nrows(),
        }
    }

    pub fn mode(&self) -> OperatorMode {
        match self {
            RotationOperator::ImplicitRank1 { .. } => OperatorMode::ImplicitRank1,
            RotationOperator::ExplicitDense { .. } => OperatorMode::ExplicitDense,
        }
    }

    /// Computes `Ω·x`.
    pub fn apply(&self, x: &ComplexVector) -> Result<ComplexVector> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "operator of dimension {} applied to a vector of length {}",
                self.dim(),
                x.len()
            )));
        }
        let out = match self {
            RotationOperator::ImplicitRank1 { u, w, phase, .. } => {
                let y = reflect(w, x.as_slice());
                reflect(u.as_slice(), &y)
                    .into_iter()
                    .map(|yi| phase * yi)
                    .collect()
            }
            RotationOperator::ExplicitDense { omega } => {
                let y = omega * DVector::from_column_slice(x.as_slice());
                y.iter().copied().collect()
            }
        };
        Ok(ComplexVector::from_vec_unchecked(out))
    }

    /// Materializes `Ω` as a dense matrix. Quadratic in memory; meant for
    /// diagnostics on small problems.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        match self {
            RotationOperator::ExplicitDense { omega } => omega.clone(),
            RotationOperator::ImplicitRank1 { u, w, phase, .. } => {
                let n = self.dim();
                let eye = DMatrix::<Complex64>::identity(n, n);
                let householder = |x: &[Complex64]| {
                    let x = DVector::from_column_slice(x);
                    &eye - (&x * x.adjoint()) * Complex64::new(2.0, 0.0)
                };
                householder(u.as_slice()) * householder(w) * *phase
            }
        }
    }
}

/// `(I − 2nnᴴ)·x` for a unit normal `n`.
fn reflect(n: &[Complex64], x: &[Complex64]) -> Vec<Complex64> {
    let proj: Complex64 = n
        .iter()
        .zip(x)
        .map(|(a, b)| a.conj() * b)
        .sum::<Complex64>()
        * 2.0;
    x.iter().zip(n).map(|(xi, ni)| xi - ni * proj).collect()
}

/// `max |(ΩΩᴴ − I)_ij|`.
pub fn unitarity_error(omega: &DMatrix<Complex64>) -> f64 {
    let n = omega.nrows();
    let gram = omega * omega.adjoint();
    (gram - DMatrix::<Complex64>::identity(n, n))
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max)
}

/// Real orthogonal Procrustes: `Ω = U·Vᵀ` from the SVD of `M = B·Aᵀ`,
/// minimizing `‖Ω·A − B‖_F`.
///
/// Runs the same Jacobi SVD as the complex path; on real input every
/// rotation phase is `±1`, so the factors stay real.
pub fn solve_rotation_real(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch(format!(
            "A is {:?}, B is {:?}",
            a.shape(),
            b.shape()
        )));
    }
    if a.is_empty() {
        return Err(Error::param("Procrustes matrices must be nonempty"));
    }
    let m = (b * a.transpose()).map(|v| Complex64::new(v, 0.0));
    let svd = jacobi::svd(&m);
    Ok((svd.u * svd.v.adjoint()).map(|c| c.re))
}
