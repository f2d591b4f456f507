//! Small dense Hermitian solves used by the per-voxel unfolding steps.
//!
//! Matrices here are tiny (L or R sided, a handful of rows), stored row-major
//! in flat slices. Nothing in this module allocates on the hot path beyond
//! the output vectors.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Cholesky factor (lower triangular, row-major) of a Hermitian PD matrix.
pub fn cholesky(a: &[Complex64], n: usize) -> Result<Vec<Complex64>> {
    debug_assert_eq!(a.len(), n * n);
    let mut l = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[i * n + j];
            for k in 0..j {
                sum -= l[i * n + k] * l[j * n + k].conj();
            }
            if i == j {
                let pivot = sum.re;
                if !(pivot > 0.0) || !pivot.is_finite() {
                    return Err(Error::NotPositiveDefinite);
                }
                l[i * n + i] = Complex64::new(pivot.sqrt(), 0.0);
            } else {
                l[i * n + j] = sum / l[j * n + j];
            }
        }
    }
    Ok(l)
}

/// Solve L L^H x = b given the Cholesky factor.
pub fn cholesky_solve(l: &[Complex64], n: usize, b: &[Complex64]) -> Vec<Complex64> {
    let mut y = b.to_vec();
    for i in 0..n {
        for k in 0..i {
            let t = l[i * n + k] * y[k];
            y[i] -= t;
        }
        y[i] /= l[i * n + i];
    }
    for i in (0..n).rev() {
        for k in i + 1..n {
            let t = l[k * n + i].conj() * y[k];
            y[i] -= t;
        }
        y[i] /= l[i * n + i];
    }
    y
}

/// Solve A x = b for Hermitian positive-definite A.
pub fn hermitian_solve(a: &[Complex64], n: usize, b: &[Complex64]) -> Result<Vec<Complex64>> {
    let l = cholesky(a, n)?;
    Ok(cholesky_solve(&l, n, b))
}

/// Dense inverse of a Hermitian positive-definite matrix.
pub fn hermitian_inverse(a: &[Complex64], n: usize) -> Result<Vec<Complex64>> {
    let l = cholesky(a, n)?;
    let mut inv = vec![Complex64::new(0.0, 0.0); n * n];
    let mut e = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        e.fill(Complex64::new(0.0, 0.0));
        e[j] = Complex64::new(1.0, 0.0);
        let col = cholesky_solve(&l, n, &e);
        for i in 0..n {
            inv[i * n + j] = col[i];
        }
    }
    Ok(inv)
}

/// y = M x for a row-major m x n matrix.
pub fn matvec(m: &[Complex64], rows: usize, cols: usize, x: &[Complex64]) -> Vec<Complex64> {
    let mut y = vec![Complex64::new(0.0, 0.0); rows];
    for i in 0..rows {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..cols {
            acc += m[i * cols + j] * x[j];
        }
        y[i] = acc;
    }
    y
}

/// Quadratic form v^H W v for Hermitian W (real-valued by symmetry).
pub fn quad_form(w: &[Complex64], n: usize, v: &[Complex64]) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let mut row = Complex64::new(0.0, 0.0);
        for j in 0..n {
            row += w[i * n + j] * v[j];
        }
        acc += v[i].conj() * row;
    }
    acc.re
}

/// Normal-equation blocks of the weighted unfolding problem at one voxel:
/// `a = S^H W S` (r x r) and `b = S^H W` (r x l), with `s` the L x R
/// sensitivity matrix and `w` the L x L inverse noise covariance.
pub fn normal_blocks(
    s: &[Complex64],
    l: usize,
    r: usize,
    w: &[Complex64],
    a: &mut [Complex64],
    b: &mut [Complex64],
) {
    // b = S^H W
    for i in 0..r {
        for j in 0..l {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..l {
                acc += s[k * r + i].conj() * w[k * l + j];
            }
            b[i * l + j] = acc;
        }
    }
    // a = b S
    for i in 0..r {
        for j in 0..r {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..l {
                acc += b[i * l + k] * s[k * r + j];
            }
            a[i * r + j] = acc;
        }
    }
}

/// Eigendecomposition of a real symmetric matrix by cyclic Jacobi sweeps.
/// Returns (eigenvalues, eigenvectors as columns of a row-major matrix).
fn jacobi_eigh(mut m: Vec<f64>, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut v = vec![0.0f64; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += m[p * n + q] * m[p * n + q];
            }
        }
        if off.sqrt() < 1e-14 * (1.0 + frob(&m, n)) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let cos = 1.0 / (t * t + 1.0).sqrt();
                let sin = t * cos;
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = cos * mkp - sin * mkq;
                    m[k * n + q] = sin * mkp + cos * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = cos * mpk - sin * mqk;
                    m[q * n + k] = sin * mpk + cos * mqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = cos * vkp - sin * vkq;
                    v[k * n + q] = sin * vkp + cos * vkq;
                }
            }
        }
    }
    let vals = (0..n).map(|i| m[i * n + i]).collect();
    (vals, v)
}

fn frob(m: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n * n {
        s += m[i] * m[i];
    }
    s.sqrt()
}

/// Moore-Penrose pseudo-inverse of a Hermitian PSD matrix, with spectral
/// cutoff `1e-12 * lambda_max`.
///
/// Works through the real embedding [[Re, -Im], [Im, Re]], which is symmetric
/// for Hermitian input and commutes with inversion.
pub fn hermitian_pinv(a: &[Complex64], n: usize) -> Vec<Complex64> {
    let m2 = 2 * n;
    let mut m = vec![0.0f64; m2 * m2];
    for i in 0..n {
        for j in 0..n {
            let z = a[i * n + j];
            m[i * m2 + j] = z.re;
            m[i * m2 + (j + n)] = -z.im;
            m[(i + n) * m2 + j] = z.im;
            m[(i + n) * m2 + (j + n)] = z.re;
        }
    }
    let (vals, vecs) = jacobi_eigh(m, m2);
    let lmax = vals.iter().cloned().fold(0.0f64, f64::max);
    let cutoff = 1e-12 * lmax;
    // P = V f(D) V^T with f(x) = 1/x above the cutoff, 0 below.
    let mut p = vec![0.0f64; m2 * m2];
    for k in 0..m2 {
        if vals[k] <= cutoff || vals[k] <= 0.0 {
            continue;
        }
        let inv = 1.0 / vals[k];
        for i in 0..m2 {
            let vik = vecs[i * m2 + k];
            if vik == 0.0 {
                continue;
            }
            let w = inv * vik;
            for j in 0..m2 {
                p[i * m2 + j] += w * vecs[j * m2 + k];
            }
        }
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = Complex64::new(p[i * m2 + j], p[(i + n) * m2 + j]);
        }
    }
    out
}

/// Eigenvalues of a Hermitian matrix via the real embedding (each eigenvalue
/// appears twice; min/max ratios are unaffected).
pub fn hermitian_eigvals(a: &[Complex64], n: usize) -> Vec<f64> {
    let m2 = 2 * n;
    let mut m = vec![0.0f64; m2 * m2];
    for i in 0..n {
        for j in 0..n {
            let z = a[i * n + j];
            m[i * m2 + j] = z.re;
            m[i * m2 + (j + n)] = -z.im;
            m[(i + n) * m2 + j] = z.im;
            m[(i + n) * m2 + (j + n)] = z.re;
        }
    }
    let (vals, _) = jacobi_eigh(m, m2);
    vals
}

/// Minimum-norm weighted-least-squares unfolding at one voxel:
/// `(S^H Psi^-1 S)^# S^H Psi^-1 d` with pseudo-inverse semantics, so rank
/// deficient sensitivities are allowed.
pub fn pseudo_inverse_solve(
    s: &[Complex64],
    l: usize,
    r: usize,
    psi_inv: &[Complex64],
    d: &[Complex64],
) -> Vec<Complex64> {
    let mut a = vec![Complex64::new(0.0, 0.0); r * r];
    let mut b = vec![Complex64::new(0.0, 0.0); r * l];
    normal_blocks(s, l, r, psi_inv, &mut a, &mut b);
    let rhs = matvec(&b, r, l, d);
    let pinv = hermitian_pinv(&a, r);
    matvec(&pinv, r, r, &rhs)
}
