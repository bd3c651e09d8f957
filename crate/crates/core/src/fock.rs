//! Two-mode occupation-number states.
//!
//! A subsystem holds `n0` particles in `|0⟩` and `n1` in `|1⟩`. Composite
//! states are superpositions over tuples of such configs, one entry per
//! subsystem (clones, ancillas, reservoir, ...). Amplitudes are always
//! complex; outcome probabilities are `|amplitude|²`.
//!
//! The same `copies`-particle symmetric state can be written two ways: as
//! a tensor power `(A|0⟩ + B|1⟩)^⊗copies` over `copies` distinguishable
//! systems ([`sym_expand`]), or as `copies` excitations shared between two
//! modes ([`mode_expand`]). [`to_occupation`] maps the first onto the
//! second and [`equivalence_overlap`] measures how well they agree.

use std::fmt;

use num_complex::Complex;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{binomial, Real, Scalar};

/// Cap on the number of systems in a tensor-power expansion.
pub const MAX_PRODUCT_COPIES: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum ParticleKind {
    #[default]
    Boson,
    /// A pair of fermionic modes: each holds at most one particle.
    FermionMode,
}

/// Occupation numbers `(n0, n1)` of the two basis modes of one subsystem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OccupationConfig {
    n0: u32,
    n1: u32,
    kind: ParticleKind,
}

impl OccupationConfig {
    /// Bosonic config; any occupation is allowed.
    pub const fn new(n0: u32, n1: u32) -> Self {
        Self {
            n0,
            n1,
            kind: ParticleKind::Boson,
        }
    }

    pub fn with_kind(n0: u32, n1: u32, kind: ParticleKind) -> Result<Self> {
        if kind == ParticleKind::FermionMode {
            if let Some(&bad) = [n0, n1].iter().find(|&&n| n > 1) {
                return Err(Error::FermionOccupation(bad));
            }
        }
        Ok(Self { n0, n1, kind })
    }

    pub fn fermion(n0: u32, n1: u32) -> Result<Self> {
        Self::with_kind(n0, n1, ParticleKind::FermionMode)
    }

    pub fn n0(&self) -> u32 {
        self.n0
    }

    pub fn n1(&self) -> u32 {
        self.n1
    }

    pub fn kind(&self) -> ParticleKind {
        self.kind
    }

    pub fn particles(&self) -> u64 {
        self.n0 as u64 + self.n1 as u64
    }

    /// Total of the conserved quantity: `+1` per particle in `|1⟩`,
    /// `-1` per particle in `|0⟩`.
    pub fn angular_momentum(&self) -> i64 {
        self.n1 as i64 - self.n0 as i64
    }
}

impl fmt::Display for OccupationConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{}⟩", self.n0, self.n1)
    }
}

/// One term of a [`SectorState`].
#[derive(Debug, Clone, PartialEq)]
pub struct Term<T> {
    pub config: Vec<OccupationConfig>,
    pub amplitude: Complex<T>,
}

impl<T: Real> Term<T> {
    pub fn probability(&self) -> T {
        self.amplitude.norm_sqr()
    }
}

/// Normalized superposition over composite occupation configs.
///
/// Terms are sorted by config and carry no duplicates.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorState<T> {
    terms: Vec<Term<T>>,
}

impl<T: Real> SectorState<T> {
    pub fn new(terms: Vec<Term<T>>) -> Result<Self> {
        let state = Self::from_unchecked(terms)?;
        let norm = state.norm_sqr();
        if !norm.close_to(&T::one(), &T::tolerance()) {
            return Err(Error::NotNormalized(norm.to_f64_lossy()));
        }
        Ok(state)
    }

    /// Sorts and checks shape, but not normalization.
    fn from_unchecked(mut terms: Vec<Term<T>>) -> Result<Self> {
        let arity = terms
            .first()
            .ok_or(Error::Empty("sector state terms"))?
            .config
            .len();
        if let Some(t) = terms.iter().find(|t| t.config.len() != arity) {
            return Err(Error::ArityMismatch(arity, t.config.len()));
        }
        terms.sort_by(|x, y| x.config.cmp(&y.config));
        if terms.windows(2).any(|w| w[0].config == w[1].config) {
            return Err(Error::DuplicateConfig);
        }
        Ok(Self { terms })
    }

    /// The single product basis state `config` with amplitude 1.
    pub fn basis(config: Vec<OccupationConfig>) -> Self {
        Self {
            terms: vec![Term {
                config,
                amplitude: Complex::new(T::one(), T::zero()),
            }],
        }
    }

    /// Superposition from `(config, amplitude)` pairs.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<OccupationConfig>, Complex<T>)>,
    {
        Self::new(
            pairs
                .into_iter()
                .map(|(config, amplitude)| Term { config, amplitude })
                .collect(),
        )
    }

    pub fn terms(&self) -> &[Term<T>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of subsystems per composite config.
    pub fn arity(&self) -> usize {
        self.terms[0].config.len()
    }

    pub fn norm_sqr(&self) -> T {
        self.terms
            .iter()
            .fold(T::zero(), |acc, t| acc + t.amplitude.norm_sqr())
    }

    pub fn amplitude(&self, config: &[OccupationConfig]) -> Complex<T> {
        self.terms
            .binary_search_by(|t| t.config.as_slice().cmp(config))
            .map(|i| self.terms[i].amplitude)
            .unwrap_or_else(|_| Complex::new(T::zero(), T::zero()))
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.terms
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, t| {
                acc + t.amplitude.conj() * other.amplitude(&t.config)
            })
    }
}

/// Distributive tensor product of normalized parts.
///
/// Amplitudes below [`Real::prune_threshold`] are dropped.
pub fn tensor<T: Real>(parts: &[SectorState<T>]) -> Result<SectorState<T>> {
    let (first, rest) = parts.split_first().ok_or(Error::Empty("tensor parts"))?;
    let prune = T::prune_threshold();
    let mut terms = first.terms.clone();
    for part in rest {
        let mut next = Vec::with_capacity(terms.len() * part.terms.len());
        for left in &terms {
            for right in &part.terms {
                let amplitude = left.amplitude * right.amplitude;
                if amplitude.norm() < prune {
                    continue;
                }
                let mut config = left.config.clone();
                config.extend_from_slice(&right.config);
                next.push(Term { config, amplitude });
            }
        }
        terms = next;
    }
    SectorState::from_unchecked(terms)
}

/// Amplitudes `(A, B)` of a single qubit `A|0⟩ + B|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitAmplitudes<T> {
    a: Complex<T>,
    b: Complex<T>,
}

impl<T: Real> QubitAmplitudes<T> {
    pub fn new(a: Complex<T>, b: Complex<T>) -> Result<Self> {
        let norm = a.norm_sqr() + b.norm_sqr();
        if !norm.close_to(&T::one(), &T::tolerance()) {
            return Err(Error::NotNormalized(norm.to_f64_lossy()));
        }
        Ok(Self { a, b })
    }

    /// Rescales any nonzero pair onto the unit sphere.
    pub fn normalized(a: Complex<T>, b: Complex<T>) -> Result<Self> {
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if norm <= T::zero() {
            return Err(Error::NotNormalized(0.0));
        }
        Ok(Self {
            a: a / norm,
            b: b / norm,
        })
    }

    pub fn zero() -> Self {
        Self {
            a: Complex::new(T::one(), T::zero()),
            b: Complex::new(T::zero(), T::zero()),
        }
    }

    pub fn one() -> Self {
        Self {
            a: Complex::new(T::zero(), T::zero()),
            b: Complex::new(T::one(), T::zero()),
        }
    }

    pub fn a(&self) -> Complex<T> {
        self.a
    }

    pub fn b(&self) -> Complex<T> {
        self.b
    }

    /// State vector `[A, B]` in the computational basis.
    pub fn vector(&self) -> [Complex<T>; 2] {
        [self.a, self.b]
    }
}

/// `copies` bosons sharing the two modes:
/// `Σ_k √C(copies,k) A^k B^(copies-k) |k, copies-k⟩`.
///
/// A fermion mode pair only admits `copies = 1`.
pub fn mode_expand<T: Real>(
    q: &QubitAmplitudes<T>,
    copies: u32,
    kind: ParticleKind,
) -> Result<SectorState<T>> {
    if copies == 0 {
        return Err(Error::ZeroCopies);
    }
    if kind == ParticleKind::FermionMode && copies > 1 {
        return Err(Error::FermionOccupation(copies));
    }
    let prune = T::prune_threshold();
    let mut terms = Vec::with_capacity(copies as usize + 1);
    for k in 0..=copies {
        let weight = T::from_count(binomial(copies, k)).sqrt();
        let amplitude = q.a.powu(k) * q.b.powu(copies - k) * weight;
        if amplitude.norm() < prune {
            continue;
        }
        terms.push(Term {
            config: vec![OccupationConfig::with_kind(k, copies - k, kind)?],
            amplitude,
        });
    }
    SectorState::new(terms)
}

/// Coefficients of a state on `copies` distinguishable qubits.
///
/// Index bit `copies-1-i` is the state of qubit `i`, so the string `"01"`
/// sits at index 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductExpansion<T> {
    copies: u32,
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> ProductExpansion<T> {
    pub fn from_coefficients(copies: u32, coeffs: Vec<Complex<T>>) -> Result<Self> {
        if copies == 0 {
            return Err(Error::ZeroCopies);
        }
        if copies > MAX_PRODUCT_COPIES {
            return Err(Error::CapExceeded {
                what: "copies",
                got: copies,
                cap: MAX_PRODUCT_COPIES,
            });
        }
        if coeffs.len() != 1usize << copies {
            return Err(Error::DimensionMismatch(1usize << copies, coeffs.len()));
        }
        Ok(Self { copies, coeffs })
    }

    pub fn copies(&self) -> u32 {
        self.copies
    }

    pub fn coefficients(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Coefficient of a bit string such as `"0110"`.
    pub fn get(&self, bits: &str) -> Option<Complex<T>> {
        if bits.len() != self.copies as usize {
            return None;
        }
        let index = usize::from_str_radix(bits, 2).ok()?;
        self.coeffs.get(index).copied()
    }

    pub fn norm_sqr(&self) -> T {
        self.coeffs
            .iter()
            .fold(T::zero(), |acc, c| acc + c.norm_sqr())
    }

    /// Probability of finding exactly `k` qubits in `|0⟩`, indexed by `k`.
    pub fn zero_count_probabilities(&self) -> Vec<T> {
        let mut out = vec![T::zero(); self.copies as usize + 1];
        for (index, c) in self.coeffs.iter().enumerate() {
            out[zeros_in(index, self.copies) as usize] += c.norm_sqr();
        }
        out
    }
}

pub(crate) fn zeros_in(index: usize, copies: u32) -> u32 {
    copies - index.count_ones()
}

/// The tensor power `(A|0⟩ + B|1⟩)^⊗copies`.
pub fn sym_expand<T: Real>(q: &QubitAmplitudes<T>, copies: u32) -> Result<ProductExpansion<T>> {
    if copies == 0 {
        return Err(Error::ZeroCopies);
    }
    if copies > MAX_PRODUCT_COPIES {
        return Err(Error::CapExceeded {
            what: "copies",
            got: copies,
            cap: MAX_PRODUCT_COPIES,
        });
    }
    let coeffs = (0..1usize << copies)
        .map(|index| {
            let zeros = zeros_in(index, copies);
            q.a.powu(zeros) * q.b.powu(copies - zeros)
        })
        .collect();
    Ok(ProductExpansion { copies, coeffs })
}

/// Projects a permutation-symmetric product expansion onto the occupation
/// basis: the amplitude of `|k, copies-k⟩` is the sum over strings with `k`
/// zeros divided by `√C(copies,k)`.
///
/// Non-symmetric inputs are rejected.
pub fn to_occupation<T: Real>(expansion: &ProductExpansion<T>) -> Result<SectorState<T>> {
    let copies = expansion.copies;
    let zero = Complex::new(T::zero(), T::zero());
    let mut sums = vec![zero; copies as usize + 1];
    let mut first: Vec<Option<Complex<T>>> = vec![None; copies as usize + 1];
    let mut defect = T::zero();
    for (index, &c) in expansion.coeffs.iter().enumerate() {
        let k = zeros_in(index, copies) as usize;
        sums[k] += c;
        match first[k] {
            None => first[k] = Some(c),
            Some(reference) => defect = defect.max((c - reference).norm()),
        }
    }
    if defect > T::structure_tolerance() {
        return Err(Error::NotSymmetric(defect.to_f64_lossy()));
    }
    let prune = T::prune_threshold();
    let terms = sums
        .into_iter()
        .enumerate()
        .filter_map(|(k, sum)| {
            let k = k as u32;
            let amplitude = sum / T::from_count(binomial(copies, k)).sqrt();
            (amplitude.norm() >= prune).then(|| Term {
                config: vec![OccupationConfig::new(k, copies - k)],
                amplitude,
            })
        })
        .collect();
    SectorState::new(terms)
}

/// `|⟨to_occupation(sym_expand(q)) | mode_expand(q)⟩|`; equal to 1 when
/// the two descriptions agree.
pub fn equivalence_overlap<T: Real>(q: &QubitAmplitudes<T>, copies: u32) -> Result<T> {
    let first_quantized = to_occupation(&sym_expand(q, copies)?)?;
    let second_quantized = mode_expand(q, copies, ParticleKind::Boson)?;
    Ok(first_quantized.inner(&second_quantized).norm())
}

/// Zero-count distribution of `copies` independent qubits, each in `|0⟩`
/// with probability `p_zero`, by summing over all `2^copies` strings.
pub fn zero_counts_by_strings<T: Scalar>(p_zero: T, copies: u32) -> Vec<T> {
    let p_one = T::one() - p_zero.clone();
    let mut out = vec![T::zero(); copies as usize + 1];
    for index in 0..1usize << copies {
        let zeros = zeros_in(index, copies);
        let mut weight = T::one();
        for bit in 0..copies {
            weight = weight
                * if index >> bit & 1 == 0 {
                    p_zero.clone()
                } else {
                    p_one.clone()
                };
        }
        out[zeros as usize] = out[zeros as usize].clone() + weight;
    }
    out
}

/// Zero-count distribution read off the occupation amplitudes:
/// `|√C(copies,k) A^k B^(copies-k)|² = C(copies,k) p^k (1-p)^(copies-k)`.
pub fn zero_counts_by_modes<T: Scalar>(p_zero: T, copies: u32) -> Vec<T> {
    let p_one = T::one() - p_zero.clone();
    (0..=copies)
        .map(|k| {
            T::from_count(binomial(copies, k))
                * num_traits::pow(p_zero.clone(), k as usize)
                * num_traits::pow(p_one.clone(), (copies - k) as usize)
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    config: Vec<[u32; 2]>,
    re: f64,
    im: f64,
}

impl<T: Real> Serialize for SectorState<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|t| TermRecord {
                config: t.config.iter().map(|c| [c.n0, c.n1]).collect(),
                re: t.amplitude.re.to_f64_lossy(),
                im: t.amplitude.im.to_f64_lossy(),
            })
            .collect();
        records.serialize(serializer)
    }
}

/// Deserialized configs are bosonic.
impl<'de, T: Real> Deserialize<'de> for SectorState<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        let terms = records
            .into_iter()
            .map(|r| Term {
                config: r
                    .config
                    .iter()
                    .map(|&[n0, n1]| OccupationConfig::new(n0, n1))
                    .collect(),
                amplitude: Complex::new(T::from_f64_lossy(r.re), T::from_f64_lossy(r.im)),
            })
            .collect();
        SectorState::new(terms).map_err(D::Error::custom)
    }
}
