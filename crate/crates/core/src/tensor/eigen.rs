//! Cyclic Jacobi eigen-solver for Hermitian matrices and the helpers built on it.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{argument, Error, Result};
use crate::tolerances::{HERMITIAN_TOL, JACOBI_MAX_SWEEPS, JACOBI_OFFDIAG_TOL, PSD_CLAMP_TOL};

/// Eigen-decomposition `H = V diag(values) V†` with values in decreasing order.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Eigenvectors as columns, matching `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[i * n + j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Full eigen-decomposition of a Hermitian matrix.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigen> {
    let defect = h.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(argument(format!("matrix is not Hermitian (defect {defect:.3e})")));
    }
    let n = h.dim();
    // Symmetrize so round-off in the input cannot stall the sweeps.
    let mut a: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_OFFDIAG_TOL * h.frobenius_norm().max(1.0);

    let mut converged = off_diagonal_norm(&a, n) < threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::Numeric(format!("Jacobi eigen-solver did not converge in {JACOBI_MAX_SWEEPS} sweeps")));
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&a, n) < threshold;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].re.total_cmp(&a[i * n + i].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
///
/// The phase of `a[p][q]` is first removed by `diag(1, e^{-iφ})` on the
/// `(p, q)` plane, then a real symmetric Jacobi rotation finishes the job.
fn rotate(a: &mut [Complex64], v: &mut ComplexMatrix, n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    // Skip rotations that cannot change anything at working precision.
    if mag < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[p * n + q] = Complex64::new(0.0, 0.0);
        a[q * n + p] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = apq / mag; // e^{iφ}
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let cos = 1.0 / (t * t + 1.0).sqrt();
    let sin = t * cos;
    let pc = phase.conj(); // e^{-iφ}

    // A ← A J with J = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] on the (p, q) plane.
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * cos - akq * pc * sin;
        a[k * n + q] = akp * sin + akq * pc * cos;
    }
    // A ← J† A.
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = apk * cos - aqk * phase * sin;
        a[q * n + k] = apk * sin + aqk * phase * cos;
    }
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
    a[p * n + p].im = 0.0;
    a[q * n + q].im = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * cos - vkq * pc * sin;
        v[(k, q)] = vkp * sin + vkq * pc * cos;
    }
}

/// Eigenvalues of a Hermitian matrix in decreasing order.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(h)?.values)
}

/// Clamps round-off negatives, rejecting anything below `-PSD_CLAMP_TOL`.
fn clamp_psd(values: &mut [f64]) -> Result<()> {
    for x in values.iter_mut() {
        if *x < -PSD_CLAMP_TOL {
            return Err(argument(format!("matrix is not positive semidefinite (eigenvalue {x:.3e})")));
        }
        if *x < 0.0 {
            *x = 0.0;
        }
    }
    Ok(())
}

/// Eigen-decomposition of a PSD matrix with negative round-off clamped to zero.
pub fn psd_eigen(rho: &ComplexMatrix) -> Result<HermitianEigen> {
    let mut eig = hermitian_eigen(rho)?;
    clamp_psd(&mut eig.values)?;
    Ok(eig)
}

/// Principal square root of a Hermitian positive semidefinite matrix.
pub fn psd_sqrt(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = psd_eigen(rho)?;
    let n = rho.dim();
    let mut out = ComplexMatrix::zeros(n);
    for (k, &lam) in eig.values.iter().enumerate() {
        let s = lam.sqrt();
        if s == 0.0 {
            continue;
        }
        for i in 0..n {
            let vik = eig.vectors[(i, k)] * s;
            for j in 0..n {
                out[(i, j)] += vik * eig.vectors[(j, k)].conj();
            }
        }
    }
    Ok(out)
}

/// Singular values of a square matrix in decreasing order.
///
/// One-sided Jacobi: columns are rotated pairwise until mutually orthogonal,
/// then their norms are the singular values. Small singular values come out
/// with absolute error near `ε‖A‖` rather than the `√ε` of eigenvalues of `A†A`.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = a.dim();
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| a.column(j)).collect();
    let dot = |x: &[Complex64], y: &[Complex64]| x.iter().zip(y).map(|(p, q)| p.conj() * q).sum::<Complex64>();
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let g = dot(&cols[i], &cols[j]);
                let (p, q) = (dot(&cols[i], &cols[i]).re, dot(&cols[j], &cols[j]).re);
                if g.norm() <= f64::EPSILON * (p * q).sqrt() || g.norm() == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = g / g.norm();
                let zeta = (q - p) / (2.0 * g.norm());
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (head, tail) = cols.split_at_mut(j);
                for (u, v) in head[i].iter_mut().zip(tail[0].iter_mut()) {
                    let (x, y) = (*u, *v * phase.conj());
                    *u = x * c - y * s;
                    *v = x * s + y * c;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numeric(format!("one-sided Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")));
    }
    let mut values: Vec<f64> = cols.iter().map(|c| dot(c, c).re.sqrt()).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

/// Number of eigenvalues strictly above `tol`.
pub fn rank_estimate(rho: &ComplexMatrix, tol: f64) -> Result<usize> {
    Ok(hermitian_eigenvalues(rho)?.into_iter().filter(|&x| x > tol).count())
}
