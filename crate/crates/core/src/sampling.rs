//! Seeded random inputs: Haar-random qubits and random cloner amplitudes.
//!
//! A normalized pair of standard complex Gaussians is Haar distributed on
//! the qubit sphere.

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::cloning::{outcome_distribution, CoefficientVector, OutcomeDistribution};
use crate::conservation::CloneSpec;
use crate::fock::QubitAmplitudes;
use crate::scalar::Real;

pub fn complex_gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::from_f64_lossy(re), T::from_f64_lossy(im))
}

pub fn haar_qubit<T: Real, R: Rng + ?Sized>(rng: &mut R) -> QubitAmplitudes<T> {
    loop {
        let (a, b) = (complex_gaussian(rng), complex_gaussian(rng));
        if let Ok(q) = QubitAmplitudes::normalized(a, b) {
            return q;
        }
    }
}

/// Haar-random unit vector of `A_a` over `a ∈ [N, M]`.
pub fn random_coefficients<T: Real, R: Rng + ?Sized>(
    spec: CloneSpec,
    rng: &mut R,
) -> CoefficientVector<T> {
    loop {
        let raw: Vec<Complex<T>> = (0..spec.outcomes())
            .map(|_| complex_gaussian(rng))
            .collect();
        let norm = raw
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt();
        if norm <= T::zero() {
            continue;
        }
        let entries = raw.into_iter().map(|z| z / norm).collect();
        if let Ok(c) = CoefficientVector::new(spec, entries) {
            return c;
        }
    }
}

/// `|A_a|²` of [`random_coefficients`]: uniform on the probability simplex.
pub fn random_distribution<T: Real, R: Rng + ?Sized>(
    spec: CloneSpec,
    rng: &mut R,
) -> OutcomeDistribution<T> {
    outcome_distribution(&random_coefficients(spec, rng))
}
