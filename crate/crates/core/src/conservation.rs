//! Integer bookkeeping for the two conserved quantities.
//!
//! Every particle carries `-1` units of angular momentum in `|0⟩` and `+1`
//! in `|1⟩`, and the total particle (or excitation) number is conserved.
//! Starting from `N` clones-to-be and a balanced reservoir `|L,L⟩`, these
//! two laws fix the ancilla count, the reservoir depletion and which
//! output occupations are reachable at all.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{OccupationConfig, SectorState};
use crate::scalar::Real;

/// Integers of one `N → M` cloning scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CloneSpec {
    n: u32,
    m: u32,
    k: u32,
    l: u32,
    l_prime: u32,
}

impl CloneSpec {
    /// Scenario with the minimal ancilla count `K = M - N`.
    pub fn new(n: u32, m: u32, l: u32) -> Result<Self> {
        Self::with_ancillas(n, m, min_ancillas(n, m)?, l)
    }

    /// Minimal scenario whose reservoir is drained exactly: `L = M - N`,
    /// `L' = 0`.
    pub fn minimal(n: u32, m: u32) -> Result<Self> {
        let k = min_ancillas(n, m)?;
        Self::with_ancillas(n, m, k, k)
    }

    pub fn with_ancillas(n: u32, m: u32, k: u32, l: u32) -> Result<Self> {
        check_counts(n, m, k)?;
        let l_prime = reservoir_after(l, n, m, k)?;
        Ok(Self {
            n,
            m,
            k,
            l,
            l_prime,
        })
    }

    /// Checks every invariant on an explicit tuple.
    pub fn from_parts(n: u32, m: u32, k: u32, l: u32, l_prime: u32) -> Result<Self> {
        check_counts(n, m, k)?;
        let expected = reservoir_after(l, n, m, k)?;
        if expected != l_prime {
            return Err(Error::ReservoirMismatch {
                got: l_prime,
                expected: expected as i64,
            });
        }
        Ok(Self {
            n,
            m,
            k,
            l,
            l_prime,
        })
    }

    /// Input count `N`.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Output clone count `M`.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Ancilla count `K`.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Initial reservoir pairs `L`.
    pub fn l(&self) -> u32 {
        self.l
    }

    /// Final reservoir pairs `L'`.
    pub fn l_prime(&self) -> u32 {
        self.l_prime
    }

    /// Number of possible outcomes `a ∈ [N, M]`.
    pub fn outcomes(&self) -> usize {
        (self.m - self.n + 1) as usize
    }
}

fn check_counts(n: u32, m: u32, k: u32) -> Result<()> {
    if n < 1 || m <= n {
        return Err(Error::NotCloning { n, m });
    }
    if k < m - n {
        return Err(Error::TooFewAncillas { k, min: m - n });
    }
    Ok(())
}

/// Before/after totals of angular momentum and particle number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LedgerReport {
    pub j_in: i64,
    pub j_out: i64,
    pub n_in: i64,
    pub n_out: i64,
    pub ok: bool,
}

impl LedgerReport {
    pub fn new(j_in: i64, j_out: i64, n_in: i64, n_out: i64) -> Self {
        Self {
            j_in,
            j_out,
            n_in,
            n_out,
            ok: j_in == j_out && n_in == n_out,
        }
    }
}

/// `Σ (n1 - n0)` over the subsystems.
pub fn angular_momentum(configs: &[OccupationConfig]) -> i64 {
    configs.iter().map(OccupationConfig::angular_momentum).sum()
}

pub fn particle_count(configs: &[OccupationConfig]) -> i64 {
    configs.iter().map(|c| c.particles() as i64).sum()
}

/// Whether `a` correct clones and `b` ancillas in `|0⟩` conserve angular
/// momentum: `2(a + b) = N + K + M`. Out-of-range counts are never allowed.
pub fn check_constraint(a: u32, b: u32, spec: &CloneSpec) -> bool {
    a <= spec.m
        && b <= spec.k
        && 2 * (a as u64 + b as u64) == spec.n as u64 + spec.k as u64 + spec.m as u64
}

/// Smallest ancilla count compatible with a perfect-cloning term: `M - N`.
pub fn min_ancillas(n: u32, m: u32) -> Result<u32> {
    if m <= n {
        return Err(Error::NotCloning { n, m });
    }
    Ok(m - n)
}

/// Reservoir pairs left after borrowing `M + K - N` particles:
/// `L + (N - M - K)/2`.
pub fn reservoir_after(l: u32, n: u32, m: u32, k: u32) -> Result<u32> {
    let delta = n as i64 - m as i64 - k as i64;
    if delta % 2 != 0 {
        return Err(Error::OddParity(delta));
    }
    let l_prime = l as i64 + delta / 2;
    if l_prime < 0 {
        return Err(Error::ReservoirExhausted(l_prime));
    }
    Ok(l_prime as u32)
}

/// Excitation ledger of a stimulated-emission cloner.
///
/// Input: `N` photons plus `2L` excited atoms. Output: `M` clones, `M - N`
/// ancilla photons and `2L'` atoms still excited. Balanced on both sides
/// iff `2L - 2L' = 2M - 2N`. The angular momentum columns are the
/// photon totals (`-N` in, `-N` out for any outcome); balanced atomic
/// halves contribute nothing.
pub fn validate_emission_ledger(l: u32, l_prime: u32, n: u32, m: u32) -> LedgerReport {
    let (l, l_prime, n, m) = (l as i64, l_prime as i64, n as i64, m as i64);
    LedgerReport::new(-n, -n, n + 2 * l, m + (m - n) + 2 * l_prime)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Input,
    Output,
}

/// A term whose totals differ from the reference (first input) term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermViolation {
    pub side: Side,
    pub index: usize,
    pub config: Vec<[u32; 2]>,
    pub j: i64,
    pub n: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Audit {
    /// Totals of the first input term against the first offending output
    /// term (or the first output term when none offends).
    pub report: LedgerReport,
    pub violations: Vec<TermViolation>,
}

impl Audit {
    pub fn ok(&self) -> bool {
        self.report.ok
    }
}

/// Term-by-term conservation check of a transformation `state_in → state_out`.
///
/// Passes iff every term on both sides has the totals of the first input
/// term. Inputs that already disagree among themselves show up as input
/// violations rather than an error.
pub fn audit<T: Real>(state_in: &SectorState<T>, state_out: &SectorState<T>) -> Audit {
    let totals = |c: &[OccupationConfig]| (angular_momentum(c), particle_count(c));
    let (j_ref, n_ref) = totals(&state_in.terms()[0].config);
    let mut violations = Vec::new();
    for (side, state) in [(Side::Input, state_in), (Side::Output, state_out)] {
        for (index, term) in state.terms().iter().enumerate() {
            let (j, n) = totals(&term.config);
            if (j, n) != (j_ref, n_ref) {
                violations.push(TermViolation {
                    side,
                    index,
                    config: term.config.iter().map(|c| [c.n0(), c.n1()]).collect(),
                    j,
                    n,
                });
            }
        }
    }
    let (j_out, n_out) = violations
        .iter()
        .find(|v| v.side == Side::Output)
        .map(|v| (v.j, v.n))
        .unwrap_or_else(|| totals(&state_out.terms()[0].config));
    let mut report = LedgerReport::new(j_ref, j_out, n_ref, n_out);
    report.ok &= violations.is_empty();
    Audit { report, violations }
}
