//! Conservation-law bookkeeping for `N → M` cloning and the universal NOT.
//!
//! When the two qubit basis states are eigenstates of a conserved quantity
//! and particle number is conserved, every cloner on `|N,0⟩` must deposit
//! `M - N` ancillas that end up carrying the flipped state. The fraction of
//! correct clones and the fraction of flipped ancillas are then tied by
//! `(M - N)·F_NOT = M·F_clone - N` for any outcome statistics.
//!
//! - [`fock`]: two-mode occupation states and the first/second-quantized
//!   views of a symmetric state.
//! - [`conservation`]: angular momentum, particle number, ancilla and
//!   reservoir counts.
//! - [`cloning`]: output states, outcome distributions and both fidelities.
//! - [`universal`]: dense symmetric-subspace layer reproducing the optimal
//!   cloning and NOT fidelities.
//!
//! Numeric code is generic over [`Scalar`] (and [`Real`] where square roots
//! are needed); the aliases below fix the common choices.

#![forbid(unsafe_code)]

pub mod cloning;
pub mod conservation;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod sampling;
pub mod scalar;
pub mod universal;

pub use cloning::{
    build_output_state, clone_from_not, clonot_residual, fidelity_clone, fidelity_not, input_state,
    not_from_clone, outcome_distribution, CoefficientVector, FidelityReport, OutcomeDistribution,
};
pub use conservation::{
    angular_momentum, audit, check_constraint, min_ancillas, particle_count, reservoir_after,
    validate_emission_ledger, Audit, CloneSpec, LedgerReport,
};
pub use error::{Error, Result};
pub use fock::{
    equivalence_overlap, mode_expand, sym_expand, tensor, to_occupation, OccupationConfig,
    ParticleKind, ProductExpansion, QubitAmplitudes, SectorState,
};
pub use linalg::Matrix;
pub use scalar::{Rational, Rational128, Real, Scalar};
pub use universal::{
    haar_moment, optimal_clone_fidelity, optimal_not_fidelity, projection_cloner,
    single_copy_fidelity, sym_projector, universality_check, zeros_distribution, DensityOperator,
    SymmetricProjector,
};

pub type Complex64 = num_complex::Complex<f64>;
pub type Complex32 = num_complex::Complex<f32>;

pub type SectorState64 = SectorState<f64>;
pub type SectorState32 = SectorState<f32>;
pub type QubitAmplitudes64 = QubitAmplitudes<f64>;
pub type QubitAmplitudes32 = QubitAmplitudes<f32>;
pub type CoefficientVector64 = CoefficientVector<f64>;
pub type OutcomeDistribution64 = OutcomeDistribution<f64>;
pub type OutcomeDistribution32 = OutcomeDistribution<f32>;
/// Outcome statistics in exact arithmetic: the relation holds with zero
/// residual.
pub type ExactDistribution = OutcomeDistribution<Rational>;
pub type FidelityReport64 = FidelityReport<f64>;
pub type ExactFidelityReport = FidelityReport<Rational>;
pub type DensityOperator64 = DensityOperator<f64>;
pub type DensityOperator32 = DensityOperator<f32>;
pub type Matrix64 = Matrix<f64>;
