//! Cyclic complex Jacobi iteration for small Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `h_pq` with a diagonal
//! unitary, then zeroes the resulting real pivot with a plane rotation. Sweeps
//! run over all `p < q` pairs until the off-diagonal Frobenius norm drops below
//! `1e-13` (relative to the matrix norm when that exceeds one).

use num_complex::Complex64 as C64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Hermiticity tolerance accepted by [`hermitian_eigenvalues`].
pub const HERMITIAN_TOL: f64 = 1e-10;

const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 64;

/// Eigenvalues of a 4×4 Hermitian matrix, sorted ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<[f64; 4]> {
    m.require_shape(4, 4, "4x4")?;
    let values = jacobi_eigenvalues(m)?;
    Ok([values[0], values[1], values[2], values[3]])
}

/// Eigenvalues of an arbitrary square Hermitian matrix, sorted ascending.
pub fn jacobi_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: "square", rows: m.rows(), cols: m.cols() });
    }
    let deviation = m.hermitian_deviation();
    if deviation.is_nan() || deviation > HERMITIAN_TOL {
        return Err(Error::NonHermitianInput { deviation });
    }

    let n = m.rows();
    // Working copy, symmetrised so the iteration starts exactly Hermitian.
    let mut h: Vec<C64> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            if i == j {
                C64::new(m.get(i, i).re, 0.0)
            } else {
                0.5 * (m.get(i, j) + m.get(j, i).conj())
            }
        })
        .collect();

    let threshold = OFF_DIAGONAL_TOL * m.frobenius_norm().max(1.0);
    let mut converged = off_diagonal_norm(&h, n) < threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut h, n, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&h, n) < threshold;
    }

    let mut values: Vec<f64> = (0..n).map(|i| h[i * n + i].re).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

fn off_diagonal_norm(h: &[C64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += h[i * n + j].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Applies `h ← G† h G` with `G` chosen so that `h_pq` becomes zero.
fn rotate(h: &mut [C64], n: usize, p: usize, q: usize) {
    let pivot = h[p * n + q];
    let r = pivot.norm();
    if r == 0.0 {
        return;
    }
    let phase = pivot / r;
    let (a, d) = (h[p * n + p].re, h[q * n + q].re);

    let theta = (d - a) / (2.0 * r);
    let t = if theta.is_infinite() { 0.0 } else { theta.signum() / (theta.abs() + theta.hypot(1.0)) };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    // G restricted to (p, q): [[c, s], [-s e^{-iφ}, c e^{-iφ}]].
    let back = phase.conj();
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = -s * back;
    let g_qq = c * back;

    // h ← h G (columns p and q).
    for i in 0..n {
        let hip = h[i * n + p];
        let hiq = h[i * n + q];
        h[i * n + p] = hip * g_pp + hiq * g_qp;
        h[i * n + q] = hip * g_pq + hiq * g_qq;
    }
    // h ← G† h (rows p and q).
    for j in 0..n {
        let hpj = h[p * n + j];
        let hqj = h[q * n + j];
        h[p * n + j] = g_pp.conj() * hpj + g_qp.conj() * hqj;
        h[q * n + j] = g_pq.conj() * hpj + g_qq.conj() * hqj;
    }
    h[p * n + q] = C64::new(0.0, 0.0);
    h[q * n + p] = C64::new(0.0, 0.0);
    h[p * n + p].im = 0.0;
    h[q * n + q].im = 0.0;
}
