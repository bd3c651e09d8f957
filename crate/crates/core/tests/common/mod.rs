#![allow(dead_code)]

use clonot_core::Matrix64;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

/// Entrywise Monte-Carlo mean of `|ψ⟩⟨ψ|^⊗copies` over Haar-random qubits,
/// with the standard error of the real and imaginary parts of each entry.
///
/// Draws its own Gaussians so it shares no code with the library sampler.
pub struct MonteCarloMoment {
    pub mean: Vec<Complex64>,
    pub stderr_re: Vec<f64>,
    pub stderr_im: Vec<f64>,
    pub dim: usize,
}

pub fn haar_moment_monte_carlo(copies: u32, samples: usize, seed: u64) -> MonteCarloMoment {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let dim = 1usize << copies;
    let mut sum = vec![Complex64::new(0.0, 0.0); dim * dim];
    let mut sum_sq_re = vec![0.0; dim * dim];
    let mut sum_sq_im = vec![0.0; dim * dim];
    for _ in 0..samples {
        let mut g = || -> f64 { StandardNormal.sample(&mut rng) };
        let a = Complex64::new(g(), g());
        let b = Complex64::new(g(), g());
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let qubit = [a / norm, b / norm];
        // Tensor power of the vector, qubit 0 most significant.
        let psi: Vec<Complex64> = (0..dim)
            .map(|s| {
                (0..copies).fold(Complex64::new(1.0, 0.0), |acc, i| {
                    acc * qubit[s >> (copies - 1 - i) & 1]
                })
            })
            .collect();
        for i in 0..dim {
            for j in 0..dim {
                let x = psi[i] * psi[j].conj();
                sum[i * dim + j] += x;
                sum_sq_re[i * dim + j] += x.re * x.re;
                sum_sq_im[i * dim + j] += x.im * x.im;
            }
        }
    }
    let n = samples as f64;
    let mean: Vec<Complex64> = sum.iter().map(|z| z / n).collect();
    let se = |sq: f64, m: f64| ((sq / n - m * m).max(0.0) / (n - 1.0)).sqrt();
    let stderr_re = sum_sq_re
        .iter()
        .zip(&mean)
        .map(|(&sq, m)| se(sq, m.re))
        .collect();
    let stderr_im = sum_sq_im
        .iter()
        .zip(&mean)
        .map(|(&sq, m)| se(sq, m.im))
        .collect();
    MonteCarloMoment {
        mean,
        stderr_re,
        stderr_im,
        dim,
    }
}

impl MonteCarloMoment {
    /// Entries of `exact` farther than `sigmas` standard errors from the
    /// estimate (an entry with zero spread must match to 1e-12).
    pub fn outliers(&self, exact: &Matrix64, sigmas: f64) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let idx = i * self.dim + j;
                let diff = self.mean[idx] - exact[(i, j)];
                for (d, se) in [
                    (diff.re, self.stderr_re[idx]),
                    (diff.im, self.stderr_im[idx]),
                ] {
                    let bound = (sigmas * se).max(1e-12);
                    if d.abs() > bound {
                        out.push((i, j, d / se.max(f64::MIN_POSITIVE)));
                    }
                }
            }
        }
        out
    }
}
