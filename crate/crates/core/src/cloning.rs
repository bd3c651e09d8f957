//! Output states, outcome statistics and the clone/NOT fidelity relation.
//!
//! With `K = M - N` ancillas, a cloner acting on `|N,0⟩ ⊗ |L,L⟩` can only
//! reach `|a, M-a⟩ ⊗ |M-a, a-N⟩ ⊗ |L',L'⟩` for `a ∈ [N, M]`. Both fidelities
//! are averages of the same outcome distribution `p_a`, so
//! `(M - N)·F_NOT = M·F_clone - N` whatever the `p_a` are.

use num_complex::Complex;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::conservation::CloneSpec;
use crate::error::{Error, Result};
use crate::fock::{OccupationConfig, SectorState, Term};
use crate::scalar::{Real, Scalar};

/// Amplitudes `A_a` of the reachable outputs, indexed by `a - N`.
///
/// Zero entries are kept, so there is always one entry per `a ∈ [N, M]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector<T> {
    spec: CloneSpec,
    entries: Vec<Complex<T>>,
}

impl<T: Real> CoefficientVector<T> {
    pub fn new(spec: CloneSpec, entries: Vec<Complex<T>>) -> Result<Self> {
        let min = spec.m() - spec.n();
        if spec.k() != min {
            return Err(Error::AncillasNotMinimal { k: spec.k(), min });
        }
        if entries.len() != spec.outcomes() {
            return Err(Error::WrongLength {
                expected: spec.outcomes(),
                got: entries.len(),
            });
        }
        let norm = entries.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
        if !norm.close_to(&T::one(), &T::tolerance()) {
            return Err(Error::NotNormalized(norm.to_f64_lossy()));
        }
        Ok(Self { spec, entries })
    }

    /// Real non-negative amplitudes `√p_a`: the classical-mixture reading
    /// of a distribution.
    pub fn from_probabilities(dist: &OutcomeDistribution<T>) -> Result<Self> {
        Self::new(
            dist.spec,
            dist.p
                .iter()
                .map(|p| Complex::new(p.sqrt(), T::zero()))
                .collect(),
        )
    }

    pub fn spec(&self) -> &CloneSpec {
        &self.spec
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    /// `A_a`, zero outside `[N, M]`.
    pub fn amplitude(&self, a: u32) -> Complex<T> {
        a.checked_sub(self.spec.n())
            .and_then(|i| self.entries.get(i as usize).copied())
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }
}

/// `|N,0⟩ ⊗ |L,L⟩`: the originals plus a balanced reservoir.
pub fn input_state<T: Real>(spec: &CloneSpec) -> SectorState<T> {
    SectorState::basis(vec![
        OccupationConfig::new(spec.n(), 0),
        OccupationConfig::new(spec.l(), spec.l()),
    ])
}

/// `Σ_a A_a |a, M-a⟩ ⊗ |M-a, a-N⟩ ⊗ |L',L'⟩`, subsystems ordered
/// clones, ancillas, reservoir.
pub fn build_output_state<T: Real>(coeffs: &CoefficientVector<T>) -> Result<SectorState<T>> {
    let spec = coeffs.spec;
    let (n, m, lp) = (spec.n(), spec.m(), spec.l_prime());
    let prune = T::prune_threshold();
    let terms = (n..=m)
        .zip(&coeffs.entries)
        .filter(|(_, amp)| amp.norm() >= prune)
        .map(|(a, &amplitude)| Term {
            config: vec![
                OccupationConfig::new(a, m - a),
                OccupationConfig::new(m - a, a - n),
                OccupationConfig::new(lp, lp),
            ],
            amplitude,
        })
        .collect();
    SectorState::new(terms)
}

/// Probabilities `p_a` of finding `a` clones in the correct state,
/// indexed by `a - N`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution<T> {
    spec: CloneSpec,
    p: Vec<T>,
}

impl<T: Scalar> OutcomeDistribution<T> {
    pub fn new(spec: CloneSpec, p: Vec<T>) -> Result<Self> {
        if p.len() != spec.outcomes() {
            return Err(Error::WrongLength {
                expected: spec.outcomes(),
                got: p.len(),
            });
        }
        if let Some(neg) = p.iter().find(|x| x.is_negative()) {
            return Err(Error::NegativeProbability(neg.to_f64_lossy()));
        }
        let total = p.iter().fold(T::zero(), |acc, x| acc + x.clone());
        if !total.close_to(&T::one(), &T::tolerance()) {
            return Err(Error::NotNormalized(total.to_f64_lossy()));
        }
        Ok(Self { spec, p })
    }

    /// All mass on a single outcome `a`.
    pub fn point(spec: CloneSpec, a: u32) -> Result<Self> {
        let mut p = vec![T::zero(); spec.outcomes()];
        let slot = a
            .checked_sub(spec.n())
            .filter(|&i| (i as usize) < p.len())
            .ok_or(Error::WrongLength {
                expected: spec.outcomes(),
                got: a as usize,
            })?;
        p[slot as usize] = T::one();
        Self::new(spec, p)
    }

    pub fn spec(&self) -> &CloneSpec {
        &self.spec
    }

    pub fn probabilities(&self) -> &[T] {
        &self.p
    }

    /// `p_a`, zero outside `[N, M]`.
    pub fn get(&self, a: u32) -> T {
        a.checked_sub(self.spec.n())
            .and_then(|i| self.p.get(i as usize).cloned())
            .unwrap_or_else(T::zero)
    }

    /// `(a, p_a)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &T)> + '_ {
        (self.spec.n()..=self.spec.m()).zip(self.p.iter())
    }
}

/// `p_a = |A_a|²`.
pub fn outcome_distribution<T: Real>(coeffs: &CoefficientVector<T>) -> OutcomeDistribution<T> {
    OutcomeDistribution {
        spec: coeffs.spec,
        p: coeffs.entries.iter().map(|z| z.norm_sqr()).collect(),
    }
}

/// `F_clone = Σ_a p_a · a/M`.
pub fn fidelity_clone<T: Scalar>(dist: &OutcomeDistribution<T>) -> T {
    let m = T::from_count(dist.spec.m() as u64);
    dist.iter().fold(T::zero(), |acc, (a, p)| {
        acc + p.clone() * T::from_count(a as u64) / m.clone()
    })
}

/// `F_NOT = Σ_a p_a · (a-N)/(M-N)`: the fraction of ancillas found flipped.
pub fn fidelity_not<T: Scalar>(dist: &OutcomeDistribution<T>) -> T {
    let n = dist.spec.n();
    let k = T::from_count((dist.spec.m() - n) as u64);
    dist.iter().fold(T::zero(), |acc, (a, p)| {
        acc + p.clone() * T::from_count((a - n) as u64) / k.clone()
    })
}

/// `(M-N)·F_NOT - (M·F_clone - N)`.
pub fn clonot_residual<T: Scalar>(dist: &OutcomeDistribution<T>) -> T {
    let n = T::from_count(dist.spec.n() as u64);
    let m = T::from_count(dist.spec.m() as u64);
    (m.clone() - n.clone()) * fidelity_not(dist) - (m * fidelity_clone(dist) - n)
}

/// `F_NOT` implied by a cloning fidelity: `(M·F_clone - N)/(M - N)`.
///
/// `F_clone` must lie in `[N/M, 1]`, the range reachable with `a ≥ N`.
pub fn not_from_clone<T: Scalar>(f_clone: T, n: u32, m: u32) -> Result<T> {
    if n < 1 || m <= n {
        return Err(Error::NotCloning { n, m });
    }
    let (nn, mm) = (T::from_count(n as u64), T::from_count(m as u64));
    let lo = nn.clone() / mm.clone();
    let tol = T::tolerance();
    if f_clone < lo.clone() - tol.clone() || f_clone > T::one() + tol {
        return Err(Error::FidelityOutOfRange {
            value: f_clone.to_f64_lossy(),
            lo: lo.to_f64_lossy(),
        });
    }
    Ok((mm.clone() * f_clone - nn.clone()) / (mm - nn))
}

/// Inverse of [`not_from_clone`]: `(N + (M-N)·F_NOT)/M`.
pub fn clone_from_not<T: Scalar>(f_not: T, n: u32, m: u32) -> Result<T> {
    if n < 1 || m <= n {
        return Err(Error::NotCloning { n, m });
    }
    let tol = T::tolerance();
    if f_not < -tol.clone() || f_not > T::one() + tol {
        return Err(Error::FidelityOutOfRange {
            value: f_not.to_f64_lossy(),
            lo: 0.0,
        });
    }
    let (nn, mm) = (T::from_count(n as u64), T::from_count(m as u64));
    Ok((nn.clone() + (mm.clone() - nn) * f_not) / mm)
}

/// Both fidelities of one distribution and the relation defect.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityReport<T> {
    pub n: u32,
    pub m: u32,
    pub f_clone: T,
    pub f_not: T,
    pub residual: T,
}

impl<T: Scalar> FidelityReport<T> {
    pub fn from_distribution(dist: &OutcomeDistribution<T>) -> Self {
        Self {
            n: dist.spec.n(),
            m: dist.spec.m(),
            f_clone: fidelity_clone(dist),
            f_not: fidelity_not(dist),
            residual: clonot_residual(dist),
        }
    }

    pub const CSV_HEADER: &'static str = "N,M,f_clone,f_not,residual";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.n,
            self.m,
            self.f_clone.to_f64_lossy(),
            self.f_not.to_f64_lossy(),
            self.residual.to_f64_lossy()
        )
    }
}

impl<T: Scalar> Serialize for FidelityReport<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FidelityReport", 5)?;
        s.serialize_field("N", &self.n)?;
        s.serialize_field("M", &self.m)?;
        s.serialize_field("f_clone", &self.f_clone.to_f64_lossy())?;
        s.serialize_field("f_not", &self.f_not.to_f64_lossy())?;
        s.serialize_field("residual", &self.residual.to_f64_lossy())?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conservation::audit;
    use crate::scalar::Rational;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn cfg(n0: u32, n1: u32) -> OccupationConfig {
        OccupationConfig::new(n0, n1)
    }

    fn spec12() -> CloneSpec {
        CloneSpec::minimal(1, 2).unwrap()
    }

    fn exact(p: &[(i64, i64)]) -> OutcomeDistribution<Rational> {
        OutcomeDistribution::new(
            spec12(),
            p.iter().map(|&(a, b)| Rational::ratio(a, b)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn output_state_for_perfect_and_failed_clone() {
        let spec = CloneSpec::new(1, 2, 2).unwrap();
        let one = Complex::new(1.0, 0.0);
        let zero = Complex::new(0.0, 0.0);

        let perfect = CoefficientVector::new(spec, vec![zero, one]).unwrap();
        let s = build_output_state(&perfect).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.terms()[0].config, vec![cfg(2, 0), cfg(0, 1), cfg(1, 1)]);

        let failed = CoefficientVector::new(spec, vec![one, zero]).unwrap();
        let s = build_output_state(&failed).unwrap();
        assert_eq!(s.terms()[0].config, vec![cfg(1, 1), cfg(1, 0), cfg(1, 1)]);
        assert!(audit(&input_state(&spec), &s).ok());
    }

    #[test]
    fn coefficient_vector_validation() {
        let spec = spec12();
        let one = Complex::new(1.0, 0.0);
        assert!(matches!(
            CoefficientVector::new(spec, vec![one]),
            Err(Error::WrongLength {
                expected: 2,
                got: 1
            })
        ));
        assert!(matches!(
            CoefficientVector::new(spec, vec![one, one]),
            Err(Error::NotNormalized(_))
        ));
        let padded = CloneSpec::with_ancillas(1, 2, 3, 5).unwrap();
        assert!(matches!(
            CoefficientVector::new(padded, vec![one, Complex::new(0.0, 0.0)]),
            Err(Error::AncillasNotMinimal { k: 3, min: 1 })
        ));
        assert_eq!(CloneSpec::new(1, 4, 1), Err(Error::ReservoirExhausted(-2)));
    }

    #[test]
    fn distribution_examples() {
        let h = Complex::new(FRAC_1_SQRT_2, 0.0);
        let c = CoefficientVector::new(spec12(), vec![h, h]).unwrap();
        let d = outcome_distribution(&c);
        assert_abs_diff_eq!(d.get(1), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(d.get(2), 0.5, epsilon = 1e-15);
        assert_eq!(d.get(0), 0.0);

        assert!(matches!(
            OutcomeDistribution::new(spec12(), vec![-0.1, 1.1]),
            Err(Error::NegativeProbability(_))
        ));
        assert!(matches!(
            OutcomeDistribution::new(spec12(), vec![0.5, 0.6]),
            Err(Error::NotNormalized(_))
        ));
    }

    #[test]
    fn fidelity_examples_exact() {
        let perfect = exact(&[(0, 1), (1, 1)]);
        assert_eq!(fidelity_clone(&perfect), Rational::ratio(1, 1));
        assert_eq!(fidelity_not(&perfect), Rational::ratio(1, 1));

        let half = exact(&[(1, 2), (1, 2)]);
        assert_eq!(fidelity_clone(&half), Rational::ratio(3, 4));
        assert_eq!(fidelity_not(&half), Rational::ratio(1, 2));

        let optimal = exact(&[(1, 3), (2, 3)]);
        assert_eq!(fidelity_clone(&optimal), Rational::ratio(5, 6));
        assert_eq!(fidelity_not(&optimal), Rational::ratio(2, 3));

        for d in [perfect, half, optimal] {
            assert_eq!(clonot_residual(&d), Rational::ratio(0, 1));
        }
    }

    #[test]
    fn all_clones_wrong_boundary() {
        let spec = CloneSpec::minimal(3, 8).unwrap();
        let d = OutcomeDistribution::<Rational>::point(spec, 3).unwrap();
        assert_eq!(fidelity_clone(&d), Rational::ratio(3, 8));
        assert_eq!(fidelity_not(&d), Rational::ratio(0, 1));
        assert_eq!(clonot_residual(&d), Rational::ratio(0, 1));
        assert!(OutcomeDistribution::<Rational>::point(spec, 2).is_err());
    }

    #[test]
    fn not_from_clone_examples() {
        assert_eq!(
            not_from_clone(Rational::ratio(5, 6), 1, 2),
            Ok(Rational::ratio(2, 3))
        );
        assert_eq!(
            not_from_clone(Rational::ratio(1, 1), 3, 9),
            Ok(Rational::ratio(1, 1))
        );
        // Optimal cloning fidelity at N = 2, M = 5: (5·3 + 2)/(5·4) = 17/20.
        assert_eq!(
            not_from_clone(Rational::ratio(17, 20), 2, 5),
            Ok(Rational::ratio(3, 4))
        );
        assert!(matches!(
            not_from_clone(Rational::ratio(1, 3), 1, 2),
            Err(Error::FidelityOutOfRange { .. })
        ));
        assert!(not_from_clone(1.5f64, 1, 2).is_err());
        assert!(not_from_clone(0.9f64, 2, 2).is_err());
        assert_eq!(
            clone_from_not(Rational::ratio(2, 3), 1, 2),
            Ok(Rational::ratio(5, 6))
        );
    }

    #[test]
    fn report_serialization() {
        let r = FidelityReport::from_distribution(&exact(&[(1, 2), (1, 2)]));
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"N":1,"M":2,"f_clone":0.75,"f_not":0.5,"residual":0.0}"#
        );
        assert_eq!(r.csv_row(), "1,2,0.75,0.5,0");
    }

    #[test]
    fn classical_mixture_roundtrip() {
        let d =
            OutcomeDistribution::new(CloneSpec::minimal(2, 5).unwrap(), vec![0.1, 0.2, 0.3, 0.4])
                .unwrap();
        let c = CoefficientVector::from_probabilities(&d).unwrap();
        let back = outcome_distribution(&c);
        for (x, y) in back.probabilities().iter().zip(d.probabilities()) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-15);
        }
    }
}
