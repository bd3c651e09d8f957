//! Property suites for the counting, fock and fidelity layers.

use clonot_core::fock::{zero_counts_by_modes, zero_counts_by_strings};
use clonot_core::sampling::{random_coefficients, random_distribution};
use clonot_core::*;
use num_complex::Complex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn qubit() -> impl Strategy<Value = QubitAmplitudes64> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
        .prop_filter("nonzero", |(a, b, c, d)| {
            a * a + b * b + c * c + d * d > 1e-6
        })
        .prop_map(|(a, b, c, d)| {
            QubitAmplitudes::normalized(Complex64::new(a, b), Complex64::new(c, d)).unwrap()
        })
}

fn scenario(max_m: u32) -> impl Strategy<Value = (u32, u32)> {
    (2..=max_m).prop_flat_map(|m| (1..m, Just(m)))
}

proptest! {
    #[test]
    fn mode_expand_is_normalized(q in qubit(), copies in 1u32..=12) {
        let s = mode_expand(&q, copies, ParticleKind::Boson).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn descriptions_overlap_fully(q in qubit(), copies in 1u32..=8) {
        let overlap = equivalence_overlap(&q, copies).unwrap();
        prop_assert!((overlap - 1.0).abs() <= 1e-12, "overlap {}", overlap);
    }

    #[test]
    fn zero_count_statistics_agree(q in qubit(), copies in 1u32..=10) {
        let by_strings = sym_expand(&q, copies).unwrap().zero_count_probabilities();
        let modes = mode_expand(&q, copies, ParticleKind::Boson).unwrap();
        for (k, p) in by_strings.iter().enumerate() {
            let k = k as u32;
            let amp = modes.amplitude(&[OccupationConfig::new(k, copies - k)]);
            prop_assert!((p - amp.norm_sqr()).abs() <= 1e-12);
        }
    }

    #[test]
    fn zero_count_statistics_agree_exactly(num in 0i64..=40, den in 1i64..=40, copies in 1u32..=7) {
        prop_assume!(num <= den);
        let p = Rational::new(num, den);
        prop_assert_eq!(zero_counts_by_strings(p, copies), zero_counts_by_modes(p, copies));
    }

    #[test]
    fn tensor_preserves_norm(x in qubit(), y in qubit(), copies in 1u32..=4) {
        let parts = [
            mode_expand(&x, copies, ParticleKind::Boson).unwrap(),
            mode_expand(&y, 2, ParticleKind::Boson).unwrap(),
            SectorState::basis(vec![OccupationConfig::new(3, 3)]),
        ];
        let s = tensor(&parts).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() <= 1e-12);
        prop_assert_eq!(s.arity(), 3);
    }

    #[test]
    fn json_roundtrip(q in qubit(), copies in 1u32..=5) {
        let s = mode_expand(&q, copies, ParticleKind::Boson).unwrap();
        let back: SectorState64 = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn reservoir_and_emission_ledgers_agree((n, m) in scenario(30), extra in 0u32..20) {
        let l = (m - n) + extra;
        let k = min_ancillas(n, m).unwrap();
        let l_prime = reservoir_after(l, n, m, k).unwrap();
        prop_assert_eq!(l_prime, l - (m - n));
        prop_assert!(validate_emission_ledger(l, l_prime, n, m).ok);
        prop_assert!(!validate_emission_ledger(l, l_prime + 1, n, m).ok);
    }

    #[test]
    fn output_states_pass_audit((n, m) in scenario(12), extra in 0u32..5, seed in any::<u64>()) {
        let spec = CloneSpec::new(n, m, (m - n) + extra).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeffs = random_coefficients::<f64, _>(spec, &mut rng);
        let out = build_output_state(&coeffs).unwrap();
        prop_assert!(audit(&input_state(&spec), &out).ok());
        for term in out.terms() {
            prop_assert_eq!(angular_momentum(&term.config[..2]), -(n as i64));
        }
    }

    #[test]
    fn relation_holds_for_random_distributions((n, m) in scenario(20), seed in any::<u64>()) {
        let spec = CloneSpec::minimal(n, m).unwrap();
        let d: OutcomeDistribution64 = random_distribution(spec, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(clonot_residual(&d).abs() <= 1e-12);
        prop_assert!(fidelity_not(&d) <= fidelity_clone(&d));
    }

    #[test]
    fn relation_is_exact_in_rationals((n, m) in scenario(9), weights in prop::collection::vec(0i64..50, 9)) {
        let spec = CloneSpec::minimal(n, m).unwrap();
        let w = &weights[..spec.outcomes()];
        let total: i64 = w.iter().sum();
        prop_assume!(total > 0);
        let p = w.iter().map(|&x| Rational::new(x, total)).collect();
        let d = ExactDistribution::new(spec, p).unwrap();
        prop_assert_eq!(clonot_residual(&d), Rational::from_integer(0));
        let report = FidelityReport::from_distribution(&d);
        prop_assert_eq!(not_from_clone(report.f_clone, n, m).unwrap(), report.f_not);
        prop_assert_eq!(clone_from_not(report.f_not, n, m).unwrap(), report.f_clone);
    }

    #[test]
    fn relation_holds_without_perfect_outcome((n, m) in scenario(15), seed in any::<u64>()) {
        // p_M = 0: the ancilla count stays M - N regardless.
        let spec = CloneSpec::minimal(n, m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut entries = random_coefficients::<f64, _>(spec, &mut rng).entries().to_vec();
        *entries.last_mut().unwrap() = Complex::new(0.0, 0.0);
        let norm = entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-6);
        let entries = entries.into_iter().map(|z| z / norm).collect();
        let d = outcome_distribution(&CoefficientVector::new(spec, entries).unwrap());
        prop_assert_eq!(d.get(m), 0.0);
        prop_assert!(clonot_residual(&d).abs() <= 1e-12);
    }

    #[test]
    fn relation_holds_in_single_precision((n, m) in scenario(10), seed in any::<u64>()) {
        let spec = CloneSpec::minimal(n, m).unwrap();
        let d: OutcomeDistribution32 = random_distribution(spec, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(clonot_residual(&d).abs() <= 1e-5);
    }
}

#[test]
fn constraint_forces_b_equal_m_minus_a() {
    for m in 2..=30u32 {
        for n in 1..m {
            let spec = CloneSpec::minimal(n, m).unwrap();
            for a in 0..=m {
                for b in 0..=spec.k() {
                    if check_constraint(a, b, &spec) {
                        assert_eq!(b, m - a, "N={n} M={m} a={a}");
                        assert!(a >= n);
                    }
                }
            }
        }
    }
}

#[test]
fn larger_ancilla_counts_shift_the_constraint() {
    // Promoting a balanced reservoir pair to ancillas keeps the constraint
    // satisfiable with b = M - a + 1.
    let spec = CloneSpec::with_ancillas(2, 5, 5, 10).unwrap();
    assert_eq!(spec.l_prime(), 6);
    for a in 2..=5 {
        assert!(check_constraint(a, 5 - a + 1, &spec));
        assert!(!check_constraint(a, 5 - a, &spec));
    }
}
