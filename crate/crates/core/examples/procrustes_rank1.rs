//! Solves a small complex Procrustes problem both ways: through the
//! implicit rank-1 operator and through the dense SVD operator, and shows
//! that both send the source vector to `‖x_d‖·x_t/‖x_t‖`.
//!
//! ```text
//! cargo run --example procrustes_rank1 -- [n]
//! ```

use fft_procrustes::procrustes::{solve_rotation, unitarity_error, OperatorMode};
use fft_procrustes::ComplexVector;
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(6);
    let x_d = ComplexVector::new(
        (0..n)
            .map(|i| Complex64::new((1.3 * i as f64).sin() + 0.2, (0.7 * i as f64).cos()))
            .collect(),
    )?;
    let x_t = ComplexVector::new(
        (0..n)
            .map(|i| Complex64::new((0.4 * i as f64).cos(), (2.1 * i as f64).sin() - 0.1))
            .collect(),
    )?;
    let closed = x_t.scaled(Complex64::new(x_d.norm() / x_t.norm(), 0.0));

    for mode in [OperatorMode::ImplicitRank1, OperatorMode::ExplicitDense] {
        let op = solve_rotation(&x_d, &x_t, mode)?;
        let mapped = op.apply(&x_d)?;
        println!(
            "{mode:?}: |Ω x_d − closed form| = {:.3e}, |ΩΩᴴ − I|max = {:.3e}, residual = {:.6}",
            mapped.distance(&closed),
            unitarity_error(&op.to_dense()),
            mapped.distance(&x_t),
        );
    }
    Ok(())
}
