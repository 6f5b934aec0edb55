#![allow(dead_code)]

use monogamy_lab::tensor::ComplexMatrix;
use monogamy_lab::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_vector(len: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..len).map(|_| gaussian(rng)).collect();
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / n).collect()
}

/// Plain triple loop, independent of the library product.
pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let n = a.dim();
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = (0..n).map(|k| a[(i, k)] * b[(k, j)]).sum();
        }
    }
    out
}

pub fn adjoint(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.dim();
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = a[(j, i)].conj();
        }
    }
    out
}

/// Haar-like unitary from Gram-Schmidt on Gaussian columns.
pub fn random_unitary(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    while cols.len() < dim {
        let mut v: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
        for u in &cols {
            let p: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            v.iter_mut().zip(u).for_each(|(x, y)| *x -= p * y);
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / n).collect());
    }
    let mut u = ComplexMatrix::zeros(dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            u[(i, j)] = *z;
        }
    }
    u
}

/// Unit-trace mixture of `rank` random pure states with random weights.
pub fn random_density(dim: usize, rank: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let mut rho = ComplexMatrix::zeros(dim);
    let weights: Vec<f64> = (0..rank).map(|_| rng.random_range(0.1..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in weights {
        let v = random_vector(dim, rng);
        for i in 0..dim {
            for j in 0..dim {
                rho[(i, j)] += v[i] * v[j].conj() * (w / total);
            }
        }
    }
    rho
}

pub fn projector(v: &[Complex64]) -> ComplexMatrix {
    let n = v.len();
    let mut p = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            p[(i, j)] = v[i] * v[j].conj();
        }
    }
    p
}

pub fn max_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Pairwise closed forms written out independently of the library.
pub fn pairwise_oracle(alpha: f64, kappa_t: f64) -> [f64; 4] {
    let beta = (1.0 - alpha * alpha).sqrt();
    let xi2 = (-kappa_t).exp();
    let chi2 = 1.0 - xi2;
    let (xi, chi) = (xi2.sqrt(), chi2.sqrt());
    let both = beta * beta * xi2 * chi2;
    let f = |x: f64| 4.0 * x.max(0.0).powi(2);
    let ab = alpha * beta;
    [f(ab * xi2 - both), f(ab * chi2 - both), f(ab * xi * chi - both), f(ab * xi * chi - both)]
}
