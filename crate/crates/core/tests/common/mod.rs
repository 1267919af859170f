//! Test-only oracles, written without touching the crate's transform code.
#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Unitary DFT matrix `[F]_{k,m} = e^{∓2πikm/n}/√n`.
pub fn dft_matrix(n: usize, inverse: bool) -> Vec<Complex64> {
    let sign = if inverse { 1.0 } else { -1.0 };
    let scale = 1.0 / (n as f64).sqrt();
    let mut f = Vec::with_capacity(n * n);
    for k in 0..n {
        for m in 0..n {
            let angle = sign * 2.0 * PI * ((k * m) % n) as f64 / n as f64;
            f.push(Complex64::from_polar(scale, angle));
        }
    }
    f
}

/// Direct matrix-vector DFT of one line.
pub fn dft_1d(matrix: &[Complex64], input: &[Complex64]) -> Vec<Complex64> {
    let n = input.len();
    (0..n)
        .map(|k| {
            matrix[k * n..(k + 1) * n]
                .iter()
                .zip(input)
                .map(|(a, b)| a * b)
                .sum()
        })
        .collect()
}

/// Row-major `height × width` grid, transformed along rows then columns by
/// explicit DFT matrices.
pub fn dft2_naive(
    grid: &[Complex64],
    width: usize,
    height: usize,
    inverse: bool,
) -> Vec<Complex64> {
    let fw = dft_matrix(width, inverse);
    let fh = dft_matrix(height, inverse);
    let mut rows: Vec<Complex64> = grid.chunks(width).flat_map(|r| dft_1d(&fw, r)).collect();
    for col in 0..width {
        let column: Vec<Complex64> = (0..height).map(|r| rows[r * width + col]).collect();
        for (r, v) in dft_1d(&fh, &column).into_iter().enumerate() {
            rows[r * width + col] = v;
        }
    }
    rows
}

/// Fully direct double sum for tiny grids.
pub fn dft2_double_sum(grid: &[f64], width: usize, height: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); width * height];
    let scale = 1.0 / ((width * height) as f64).sqrt();
    for k in 0..height {
        for l in 0..width {
            let mut acc = Complex64::new(0.0, 0.0);
            for m in 0..height {
                for n in 0..width {
                    let phase = -2.0
                        * PI
                        * ((k * m) as f64 / height as f64 + (l * n) as f64 / width as f64);
                    acc += Complex64::from_polar(grid[m * width + n], phase);
                }
            }
            out[k * width + l] = acc * scale;
        }
    }
    out
}

pub fn to_complex(values: &[f64]) -> Vec<Complex64> {
    values.iter().map(|&v| Complex64::new(v, 0.0)).collect()
}

/// Whether natural-layout index `i` of an `n`-point axis falls in the
/// retained band of signed frequencies `[−keep/2, keep/2 − 1]`.
pub fn in_band(i: usize, n: usize, keep: usize) -> bool {
    let signed = if i < n / 2 {
        i as i64
    } else {
        i as i64 - n as i64
    };
    let half = (keep / 2) as i64;
    (-half..half).contains(&signed)
}

/// Ideal low-pass by truncation: naive DFT, zero every bin outside the
/// band, naive inverse. Returns the truncated spectrum's norm and the real
/// part of the reconstruction.
pub fn lowpass_oracle(
    image: &[f64],
    width: usize,
    height: usize,
    keep_w: usize,
    keep_h: usize,
) -> (f64, Vec<f64>) {
    let mut spec = dft2_naive(&to_complex(image), width, height, false);
    for r in 0..height {
        for c in 0..width {
            if !(in_band(r, height, keep_h) && in_band(c, width, keep_w)) {
                spec[r * width + c] = Complex64::new(0.0, 0.0);
            }
        }
    }
    let norm = spec.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let back = dft2_naive(&spec, width, height, true);
    (norm, back.iter().map(|c| c.re).collect())
}

pub fn random_complex(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

pub fn random_real(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

pub fn norm(values: &[f64]) -> f64 {
    values.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn diff_norm(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Unitary factor of a QR decomposition of `I + scale·G` with complex Gaussian `G`.
pub fn random_unitary(r: &mut ChaCha8Rng, n: usize, scale: f64) -> DMatrix<Complex64> {
    let g = DMatrix::from_vec(n, n, random_complex(r, n * n));
    let q = (DMatrix::identity(n, n) + g * Complex64::new(scale, 0.0))
        .qr()
        .q();
    assert!(fft_procrustes::procrustes::unitarity_error(&q) <= 1e-10);
    q
}
