//! Hermitian eigendecomposition via cyclic complex Jacobi rotations.
//!
//! The matrices this crate diagonalizes are small (dimension a few hundred at
//! most) and always Hermitian, so a dependency-free Jacobi sweep is accurate
//! and fast enough: each rotation is unitary, so the accumulated eigenvector
//! matrix is unitary to machine precision by construction.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::LinearOperator;

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian operator.
///
/// Returns the eigenvalues in ascending order and a unitary operator whose
/// `j`-th column is the eigenvector for the `j`-th eigenvalue. The input must
/// be Hermitian within `1e-8`; it is symmetrized before iterating so that the
/// result is an exact decomposition of `(A + A^dag) / 2`.
pub fn eigh(op: &LinearOperator) -> Result<(Vec<f64>, LinearOperator)> {
    if !op.is_hermitian(1e-8) {
        return Err(Error::InvalidState(
            "eigendecomposition requested for a non-Hermitian operator".into(),
        ));
    }
    let n = op.dim();
    let mut a: Array2<C64> = Array2::from_shape_fn((n, n), |(i, j)| {
        0.5 * (op.entry(i, j) + op.entry(j, i).conj())
    });
    let mut v: Array2<C64> = Array2::eye(n);
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let max_off = (0..n)
            .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm())
            .fold(0.0, f64::max);
        if max_off <= 1e-15 * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = a[(p, q)].norm();
                if g <= 1e-300 {
                    continue;
                }
                // Unit phase of the pivot entry and the real rotation angle
                // that annihilates it.
                let u = a[(p, q)] / g;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * g);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let su = s * u;
                let su_conj = s * u.conj();

                // Columns: A <- A J with J[p,p]=J[q,q]=c, J[p,q]=s u,
                // J[q,p]=-s conj(u).
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - su_conj * akq;
                    a[(k, q)] = su * akp + c * akq;
                }
                // Rows: A <- J^dag A.
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - su * aqk;
                    a[(q, k)] = su_conj * apk + c * aqk;
                }
                // Accumulate the eigenvector basis: V <- V J.
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - su_conj * vkq;
                    v[(k, q)] = su * vkp + c * vkq;
                }
                // The pivot is now zero up to rounding; pin it exactly.
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
            }
        }
    }
    if !converged {
        return Err(Error::InvalidState(
            "Jacobi eigensolver failed to converge".into(),
        ));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(i, i)].re.partial_cmp(&a[(j, j)].re).expect("eigenvalues are finite")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = Array2::from_shape_fn((n, n), |(row, col)| v[(row, order[col])]);
    Ok((eigenvalues, LinearOperator::new(vectors)?))
}

/// Principal square root of a positive semidefinite Hermitian operator.
///
/// Eigenvalues that dip slightly below zero from rounding are clamped to
/// zero; genuinely negative spectra are reported as errors.
pub fn sqrtm_psd(op: &LinearOperator) -> Result<LinearOperator> {
    let (eigenvalues, vectors) = eigh(op)?;
    if eigenvalues.iter().any(|&lambda| lambda < -1e-8) {
        return Err(Error::InvalidState(format!(
            "matrix square root of an indefinite operator (eigenvalue {:.3e})",
            eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
        )));
    }
    let n = op.dim();
    // Eigenvalues at rounding-noise level must be zeroed before the square
    // root: sqrt(1e-16) = 1e-8 would otherwise dominate the error budget.
    let lambda_max = eigenvalues.iter().cloned().fold(0.0, f64::max);
    let cutoff = 1e-13 * lambda_max;
    let roots: Vec<f64> =
        eigenvalues.iter().map(|&lambda| if lambda > cutoff { lambda.sqrt() } else { 0.0 }).collect();
    // V sqrt(D) V^dag without forming the diagonal matrix.
    let entries = Array2::from_shape_fn((n, n), |(i, j)| {
        (0..n)
            .map(|k| vectors.entry(i, k) * roots[k] * vectors.entry(j, k).conj())
            .sum()
    });
    LinearOperator::new(entries)
}
