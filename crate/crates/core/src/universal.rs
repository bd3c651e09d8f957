//! Exact full-quantum layer on qubit registers.
//!
//! The symmetric-projection cloner maps `ρ^⊗N` to the normalized
//! `Π_M (ρ^⊗N ⊗ I^⊗(M-N)) Π_M`, with `Π_M` the projector onto the
//! permutation-symmetric subspace of `M` qubits. Its single-copy fidelity
//! and zeros-count statistics are read off the dense output operator, so
//! the optimal fidelities can be reproduced without the closed forms.

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cloning::OutcomeDistribution;
use crate::conservation::CloneSpec;
use crate::error::{Error, Result};
use crate::fock::{zeros_in, QubitAmplitudes};
use crate::linalg::Matrix;
use crate::sampling::haar_qubit;
use crate::scalar::{binomial, Real, Scalar};

/// Largest register for which a dense symmetric projector is built.
pub const MAX_PROJECTOR_COPIES: u32 = 12;

/// Largest clone count accepted by the projection cloner.
pub const MAX_CLONER_QUBITS: u32 = 10;

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator<T> {
    matrix: Matrix<T>,
}

impl<T: Real> DensityOperator<T> {
    pub fn new(matrix: Matrix<T>) -> Result<Self> {
        let tol = T::structure_tolerance();
        let herm = matrix.hermiticity_defect();
        if herm > tol {
            return Err(Error::NotHermitian(herm.to_f64_lossy()));
        }
        let trace = matrix.trace();
        if !trace.re.close_to(&T::one(), &T::tolerance()) || trace.im.abs() > T::tolerance() {
            return Err(Error::InvalidTrace(trace.re.to_f64_lossy()));
        }
        if !matrix.is_positive_semidefinite(tol) {
            return Err(Error::NotPositive);
        }
        Ok(Self { matrix })
    }

    /// Callers guarantee the invariants by construction.
    pub(crate) fn from_trusted(matrix: Matrix<T>) -> Self {
        Self { matrix }
    }

    pub fn pure(v: &[Complex<T>]) -> Result<Self> {
        Self::new(Matrix::outer(v))
    }

    /// `|ψ⟩⟨ψ|^⊗copies`.
    pub fn product(q: &QubitAmplitudes<T>, copies: u32) -> Self {
        let single = Matrix::outer(&q.vector());
        let mut out = Matrix::identity(1);
        for _ in 0..copies {
            out = out.kron(&single);
        }
        Self::from_trusted(out)
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn qubits(&self) -> Result<u32> {
        self.matrix.qubits().ok_or(Error::NotQubits(self.dim()))
    }

    pub fn permutation_defect(&self) -> Result<T> {
        Ok(self.matrix.permutation_defect(self.qubits()?))
    }

    fn require_symmetric(&self) -> Result<u32> {
        let qubits = self.qubits()?;
        let defect = self.matrix.permutation_defect(qubits);
        if defect > T::structure_tolerance() {
            return Err(Error::NotSymmetric(defect.to_f64_lossy()));
        }
        Ok(qubits)
    }
}

/// Orthogonal projector onto the symmetric subspace of `copies` qubits,
/// spanned by the Dicke states `|D_k⟩ = C(copies,k)^(-1/2) Σ_{zeros(s)=k} |s⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetricProjector {
    copies: u32,
}

impl SymmetricProjector {
    pub fn copies(&self) -> u32 {
        self.copies
    }

    pub fn dim(&self) -> usize {
        1 << self.copies
    }

    /// Dimension of the symmetric subspace.
    pub fn rank(&self) -> usize {
        self.copies as usize + 1
    }

    /// Dicke state with `zeros` qubits in `|0⟩`.
    pub fn dicke<T: Real>(&self, zeros: u32) -> Vec<Complex<T>> {
        let weight = T::one() / T::from_count(binomial(self.copies, zeros)).sqrt();
        (0..self.dim())
            .map(|s| {
                if zeros_in(s, self.copies) == zeros {
                    Complex::new(weight, T::zero())
                } else {
                    Complex::new(T::zero(), T::zero())
                }
            })
            .collect()
    }

    /// Dense matrix: `Π[s][t] = δ(zeros(s), zeros(t)) / C(copies, zeros(s))`.
    pub fn matrix<T: Real>(&self) -> Matrix<T> {
        let copies = self.copies;
        Matrix::from_fn(self.dim(), |s, t| {
            let k = zeros_in(s, copies);
            if k == zeros_in(t, copies) {
                Complex::new(T::one() / T::from_count(binomial(copies, k)), T::zero())
            } else {
                Complex::new(T::zero(), T::zero())
            }
        })
    }

    /// `Π op Π` in one pass: accumulate `⟨D_k|op|D_l⟩` by zero-count
    /// buckets, then spread back over the Dicke supports.
    pub fn conjugate<T: Real>(&self, op: &Matrix<T>) -> Result<Matrix<T>> {
        if op.dim() != self.dim() {
            return Err(Error::DimensionMismatch(self.dim(), op.dim()));
        }
        let copies = self.copies;
        let rank = self.rank();
        let zeros: Vec<usize> = (0..self.dim())
            .map(|s| zeros_in(s, copies) as usize)
            .collect();
        let inv_sqrt: Vec<T> = (0..=copies)
            .map(|k| T::one() / T::from_count(binomial(copies, k)).sqrt())
            .collect();
        let mut block = vec![Complex::new(T::zero(), T::zero()); rank * rank];
        for (s, &k) in zeros.iter().enumerate() {
            for (t, &l) in zeros.iter().enumerate() {
                block[k * rank + l] += op[(s, t)];
            }
        }
        for k in 0..rank {
            for l in 0..rank {
                block[k * rank + l] = block[k * rank + l] * inv_sqrt[k] * inv_sqrt[l];
            }
        }
        Ok(Matrix::from_fn(self.dim(), |s, t| {
            let (k, l) = (zeros[s], zeros[t]);
            block[k * rank + l] * inv_sqrt[k] * inv_sqrt[l]
        }))
    }
}

pub fn sym_projector(copies: u32) -> Result<SymmetricProjector> {
    if copies == 0 {
        return Err(Error::ZeroCopies);
    }
    if copies > MAX_PROJECTOR_COPIES {
        return Err(Error::CapExceeded {
            what: "copies",
            got: copies,
            cap: MAX_PROJECTOR_COPIES,
        });
    }
    Ok(SymmetricProjector { copies })
}

/// Haar average of `|ψ⟩⟨ψ|^⊗copies`: `Π_sym / (copies + 1)`.
pub fn haar_moment<T: Real>(copies: u32) -> Result<DensityOperator<T>> {
    let projector = sym_projector(copies)?;
    let norm = T::from_count(projector.rank() as u64);
    Ok(DensityOperator::from_trusted(
        projector.matrix::<T>().scale(T::one() / norm),
    ))
}

/// Output of the projection cloner together with its pre-normalization
/// trace `tr(Π_M (ρ^⊗N ⊗ I))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedClone<T> {
    pub state: DensityOperator<T>,
    pub raw_trace: T,
}

fn check_cloner_shape(n: u32, m: u32) -> Result<()> {
    if n < 1 || m <= n {
        return Err(Error::NotCloning { n, m });
    }
    if m > MAX_CLONER_QUBITS {
        return Err(Error::CapExceeded {
            what: "M",
            got: m,
            cap: MAX_CLONER_QUBITS,
        });
    }
    Ok(())
}

/// Symmetric-projection cloner, keeping the raw trace.
pub fn projection_cloner_with_trace<T: Real>(
    n: u32,
    m: u32,
    input: &QubitAmplitudes<T>,
) -> Result<ProjectedClone<T>> {
    check_cloner_shape(n, m)?;
    let input = QubitAmplitudes::new(input.a(), input.b())?;
    let padded = DensityOperator::product(&input, n)
        .matrix
        .kron(&Matrix::identity(1 << (m - n)));
    let projected = sym_projector(m)?.conjugate(&padded)?;
    let raw_trace = projected.trace().re;
    let state = DensityOperator::from_trusted(projected.scale(T::one() / raw_trace));
    Ok(ProjectedClone { state, raw_trace })
}

/// `Π_M (ρ^⊗N ⊗ I^⊗(M-N)) Π_M`, rescaled to unit trace.
pub fn projection_cloner<T: Real>(
    n: u32,
    m: u32,
    input: &QubitAmplitudes<T>,
) -> Result<DensityOperator<T>> {
    projection_cloner_with_trace(n, m, input).map(|p| p.state)
}

/// `⟨ψ|ρ₁|ψ⟩` with `ρ₁` the one-qubit marginal of a symmetric output.
pub fn single_copy_fidelity<T: Real>(
    output: &DensityOperator<T>,
    input: &QubitAmplitudes<T>,
) -> Result<T> {
    let qubits = output.require_symmetric()?;
    let reduced = output.matrix.reduce_to_qubit(qubits, 0);
    let psi = input.vector();
    Ok(reduced.sandwich_vectors(&psi, &psi).re)
}

/// Probabilities `q_a = tr(ρ P_a)` of measuring exactly `a` qubits in `|0⟩`,
/// restricted to `a ∈ [N, M]`.
///
/// Fails if the output is not symmetric, is not an `M`-qubit operator, or
/// puts more than [`Real::structure_tolerance`] of its mass below `a = N`.
/// Mass below that threshold is dropped and the rest renormalized.
pub fn zeros_distribution<T: Real>(
    output: &DensityOperator<T>,
    spec: &CloneSpec,
) -> Result<OutcomeDistribution<T>> {
    let qubits = output.require_symmetric()?;
    if qubits != spec.m() {
        return Err(Error::DimensionMismatch(1 << spec.m(), output.dim()));
    }
    let mut q = vec![T::zero(); qubits as usize + 1];
    for s in 0..output.dim() {
        q[zeros_in(s, qubits) as usize] += output.matrix[(s, s)].re;
    }
    let n = spec.n() as usize;
    let leaked = q[..n].iter().fold(T::zero(), |acc, &x| acc + x);
    if leaked > T::structure_tolerance() {
        return Err(Error::LeakedMass(leaked.to_f64_lossy()));
    }
    let kept = T::one() - leaked;
    let p = q[n..].iter().map(|&x| (x / kept).max(T::zero())).collect();
    OutcomeDistribution::new(*spec, p)
}

/// `(M(N+1) + N) / (M(N+2))`.
pub fn optimal_clone_fidelity<T: Scalar>(n: u32, m: u32) -> Result<T> {
    if n < 1 || m <= n {
        return Err(Error::NotCloning { n, m });
    }
    let (n, m) = (n as i64, m as i64);
    Ok(T::ratio(m * (n + 1) + n, m * (n + 2)))
}

/// `(N+1) / (N+2)`, for any `M`.
pub fn optimal_not_fidelity<T: Scalar>(n: u32) -> Result<T> {
    if n < 1 {
        return Err(Error::NotCloning { n, m: n });
    }
    let n = n as i64;
    Ok(T::ratio(n + 1, n + 2))
}

/// Max minus min single-copy fidelity of the projection cloner over
/// `samples` Haar-random inputs drawn from `seed`.
pub fn universality_check<T: Real>(n: u32, m: u32, samples: usize, seed: u64) -> Result<T> {
    check_cloner_shape(n, m)?;
    if samples < 2 {
        return Err(Error::TooFewSamples {
            min: 2,
            got: samples,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    for _ in 0..samples {
        let psi = haar_qubit(&mut rng);
        let f = single_copy_fidelity(&projection_cloner(n, m, &psi)?, &psi)?;
        lo = lo.min(f);
        hi = hi.max(f);
    }
    Ok(hi - lo)
}
