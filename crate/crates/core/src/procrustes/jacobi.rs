//! One-sided (Hestenes) Jacobi SVD for square complex matrices.
//!
//! Columns of a working copy of `A` are rotated pairwise until mutually
//! orthogonal; the accumulated rotations form `V`, the column norms are the
//! singular values and the normalized columns are `U`. Columns whose norm
//! falls below the rank tolerance are replaced by a Gram–Schmidt completion
//! over the canonical basis, so `U` is always a full unitary matrix.

use nalgebra::DMatrix;
use num_complex::Complex64;

const MAX_SWEEPS: usize = 80;

pub(crate) struct Svd {
    pub u: DMatrix<Complex64>,
    #[cfg_attr(not(test), allow(dead_code))]
    pub singular_values: Vec<f64>,
    pub v: DMatrix<Complex64>,
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm_sqr(a: &[Complex64]) -> f64 {
    a.iter().map(Complex64::norm_sqr).sum()
}

/// Mutable views of columns `p < q` of a column-major buffer with `n` rows.
fn column_pair(
    data: &mut [Complex64],
    n: usize,
    p: usize,
    q: usize,
) -> (&mut [Complex64], &mut [Complex64]) {
    let (left, right) = data.split_at_mut(q * n);
    (&mut left[p * n..(p + 1) * n], &mut right[..n])
}

/// Applies the unitary plane transform
/// `[a, b] ← [c·a − s·e^{−iφ}·b, s·a + c·e^{−iφ}·b]`.
fn rotate(a: &mut [Complex64], b: &mut [Complex64], c: f64, s: f64, phase: Complex64) {
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let (xa, yb) = (*x, *y * phase);
        *x = xa * c - yb * s;
        *y = xa * s + yb * c;
    }
}

pub(crate) fn svd(a: &DMatrix<Complex64>) -> Svd {
    assert!(a.is_square(), "jacobi svd expects a square matrix");
    let n = a.ncols();
    let mut g = a.clone();
    let mut v = DMatrix::<Complex64>::identity(n, n);
    let scale = norm_sqr(g.as_slice());
    let floor = scale * f64::EPSILON * f64::EPSILON;
    let mut norms: Vec<f64> = (0..n).map(|j| norm_sqr(g.column(j).as_slice())).collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta) = (norms[p], norms[q]);
                // columns at rounding level carry no information
                if alpha <= floor || beta <= floor {
                    continue;
                }
                let (gp, gq) = column_pair(g.as_mut_slice(), n, p, q);
                let gamma = dot(gp, gq);
                let mag = gamma.norm();
                if mag <= f64::EPSILON * (alpha * beta).sqrt() || mag <= floor {
                    continue;
                }
                rotated = true;
                // e^{−iφ} makes col_pᴴ·(e^{−iφ}·col_q) real, then a real
                // Jacobi rotation zeroes it.
                let phase = gamma.conj() / mag;
                let zeta = (beta - alpha) / (2.0 * mag);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(gp, gq, c, s, phase);
                norms[p] = norm_sqr(gp);
                norms[q] = norm_sqr(gq);
                let (vp, vq) = column_pair(v.as_mut_slice(), n, p, q);
                rotate(vp, vq, c, s, phase);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sigma: Vec<f64> = (0..n)
        .map(|j| norm_sqr(g.column(j).as_slice()).sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]).then(i.cmp(&j)));

    let largest = sigma.iter().copied().fold(0.0, f64::max);
    let tol = largest * n as f64 * f64::EPSILON * 8.0;
    let mut u = DMatrix::<Complex64>::zeros(n, n);
    let mut v_sorted = DMatrix::<Complex64>::zeros(n, n);
    let mut rank = 0;
    for (dst, &src) in order.iter().enumerate() {
        v_sorted.set_column(dst, &v.column(src));
        if sigma[src] > tol {
            u.set_column(dst, &(g.column(src) / Complex64::new(sigma[src], 0.0)));
            rank = dst + 1;
        }
    }
    sigma = order
        .iter()
        .map(|&i| if sigma[i] > tol { sigma[i] } else { 0.0 })
        .collect();
    complete_basis(&mut u, rank);

    Svd {
        u,
        singular_values: sigma,
        v: v_sorted,
    }
}

/// Fills columns `filled..n` of `u` with canonical basis vectors
/// orthogonalized (classical pass, then modified pass) against every
/// column already present.
fn complete_basis(u: &mut DMatrix<Complex64>, filled: usize) {
    let n = u.nrows();
    let data = u.as_mut_slice();
    let mut cand = vec![Complex64::new(0.0, 0.0); n];
    let mut next = filled;
    for e in 0..n {
        if next == n {
            break;
        }
        cand.fill(Complex64::new(0.0, 0.0));
        cand[e] = Complex64::new(1.0, 0.0);
        // classical pass: against e the projection is conj(col[e])
        for col in data[..next * n].chunks_exact(n) {
            let proj = col[e].conj();
            for (c, q) in cand.iter_mut().zip(col) {
                *c -= q * proj;
            }
        }
        for col in data[..next * n].chunks_exact(n) {
            let proj = dot(col, &cand);
            for (c, q) in cand.iter_mut().zip(col) {
                *c -= q * proj;
            }
        }
        let norm = norm_sqr(&cand).sqrt();
        if norm > 0.5 {
            for (dst, c) in data[next * n..(next + 1) * n].iter_mut().zip(&cand) {
                *dst = c / norm;
            }
            next += 1;
        }
    }
    debug_assert_eq!(next, n, "canonical basis must span the complement");
}
