use thiserror::Error;

/// Errors raised by the clonot core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state is not normalized: squared norm {0}")]
    NotNormalized(f64),

    #[error("fermion mode cannot hold {0} particles")]
    FermionOccupation(u32),

    #[error("composite configs have mixed arity ({0} vs {1})")]
    ArityMismatch(usize, usize),

    #[error("duplicate composite config in state")]
    DuplicateConfig,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("copies must be at least 1")]
    ZeroCopies,

    #[error("{what} = {got} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        got: u32,
        cap: u32,
    },

    #[error("state is not permutation symmetric (defect {0})")]
    NotSymmetric(f64),

    #[error("not a cloning scenario: need M > N >= 1 (N = {n}, M = {m})")]
    NotCloning { n: u32, m: u32 },

    #[error("ancilla count K = {k} is below the minimum M - N = {min}")]
    TooFewAncillas { k: u32, min: u32 },

    #[error("coefficient vectors need K = M - N ancillas, got K = {k} (M - N = {min})")]
    AncillasNotMinimal { k: u32, min: u32 },

    #[error("N - M - K = {0} is odd")]
    OddParity(i64),

    #[error("reservoir exhausted: L' = {0} would be negative")]
    ReservoirExhausted(i64),

    #[error("reservoir inconsistent: L' = {got}, particle number requires {expected}")]
    ReservoirMismatch { got: u32, expected: i64 },

    #[error("expected {expected} entries for a in [N, M], got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("probability {0} is negative")]
    NegativeProbability(f64),

    #[error("fidelity {value} outside the attainable range [{lo}, 1]")]
    FidelityOutOfRange { value: f64, lo: f64 },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("dimension {0} is not a power of two")]
    NotQubits(usize),

    #[error("operator is not Hermitian (defect {0})")]
    NotHermitian(f64),

    #[error("trace is {0}, expected 1")]
    InvalidTrace(f64),

    #[error("operator is not positive semidefinite")]
    NotPositive,

    #[error("probability mass {0} below a = N")]
    LeakedMass(f64),

    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
