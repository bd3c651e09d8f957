//! Scalar abstractions.
//!
//! [`Scalar`] covers every field the counting and fidelity code runs over:
//! `f32`, `f64` and the exact rationals. [`Real`] adds the transcendental
//! operations the amplitude and density-operator code needs.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{Float, FloatConst, FromPrimitive, Num, NumAssign, Signed, ToPrimitive};

/// Exact rational with 64-bit numerator and denominator.
pub type Rational = Ratio<i64>;

/// Exact rational with 128-bit numerator and denominator, for longer sums.
pub type Rational128 = Ratio<i128>;

/// An ordered field with conversions from and to machine numbers.
pub trait Scalar:
    Num + Signed + PartialOrd + Clone + Debug + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Tolerance for normalization and identity checks in this field.
    ///
    /// Zero for exact types.
    fn tolerance() -> Self;

    /// Embeds a non-negative count.
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count representable in scalar type")
    }

    /// The exact quotient `num / den`, rounded once for floating types.
    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let num = Self::from_i64(num).expect("numerator representable");
        let den = Self::from_i64(den).expect("denominator representable");
        num / den
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `|self - other| <= tol`.
    fn close_to(&self, other: &Self, tol: &Self) -> bool {
        (self.clone() - other.clone()).abs() <= *tol
    }
}

impl Scalar for f64 {
    fn tolerance() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn tolerance() -> Self {
        1e-5
    }
}

impl Scalar for Rational {
    fn tolerance() -> Self {
        Ratio::from_integer(0)
    }
}

impl Scalar for Rational128 {
    fn tolerance() -> Self {
        Ratio::from_integer(0)
    }
}

/// A floating-point [`Scalar`].
pub trait Real: Scalar + Float + FloatConst + NumAssign + Default {
    /// Looser tolerance for structural checks on dense operators
    /// (permutation symmetry, Hermiticity, positivity, leaked mass).
    fn structure_tolerance() -> Self;

    /// Amplitudes with modulus below this are dropped after products.
    fn prune_threshold() -> Self {
        Self::from_f64(1e-15).unwrap()
    }

    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64")
    }
}

impl Real for f64 {
    fn structure_tolerance() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn structure_tolerance() -> Self {
        1e-4
    }
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
