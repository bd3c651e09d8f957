//! Executes one [`RunConfig`] into a [`Report`].
//!
//! Each `(N, M)` cell draws from its own ChaCha stream, so cells can run in
//! parallel and the rows come out identical regardless of scheduling.

use clonot_core::sampling::{haar_qubit, random_coefficients, random_distribution};
use clonot_core::universal;
use clonot_core::{
    angular_momentum, audit, build_output_state, clonot_residual, equivalence_overlap,
    fidelity_clone, fidelity_not, input_state, min_ancillas, optimal_clone_fidelity,
    optimal_not_fidelity, projection_cloner, reservoir_after, single_copy_fidelity,
    universality_check, validate_emission_ledger, zeros_distribution, CloneSpec, Error,
    OccupationConfig, OutcomeDistribution64, QubitAmplitudes64,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{Command, RunConfig, UsageError, DEFAULT_TOLERANCE, RELATION_TOLERANCE};
use crate::report::{Report, Row};

fn cell_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn stream_of(n: u32, m: u32) -> u64 {
    (n as u64) << 32 | m as u64
}

fn core_error(e: Error) -> UsageError {
    UsageError::Invalid(e.to_string())
}

pub fn run(config: &RunConfig) -> Result<Report, UsageError> {
    config.validate()?;
    let rows = match config.command {
        Command::Relation => relation(config)?,
        Command::Optimal => optimal(config)?,
        Command::Equivalence => equivalence(config)?,
        Command::Sweep => sweep(config)?,
        Command::Ledger => ledger(config)?,
    };
    Ok(Report::new(config.command.name(), config.seed, rows))
}

fn relation(config: &RunConfig) -> Result<Vec<Row>, UsageError> {
    let tol = config.tolerance_or(RELATION_TOLERANCE);
    let cells: Vec<Vec<Row>> = config
        .scenarios()
        .into_par_iter()
        .map(|(n, m)| {
            let spec = CloneSpec::minimal(n, m).map_err(core_error)?;
            let mut rng = cell_rng(config.seed, stream_of(n, m));
            Ok((0..config.samples)
                .map(|i| {
                    let d: OutcomeDistribution64 = random_distribution(spec, &mut rng);
                    Row::check(
                        "relation",
                        config.seed,
                        "residual",
                        clonot_residual(&d),
                        0.0,
                        tol,
                    )
                    .scenario(n, m)
                    .sample(i)
                })
                .collect())
        })
        .collect::<Result<_, UsageError>>()?;
    Ok(cells.into_iter().flatten().collect())
}

fn check_cloner_range(config: &RunConfig) -> Result<(), UsageError> {
    if config.m.hi > universal::MAX_CLONER_QUBITS {
        return Err(UsageError::Invalid(format!(
            "M = {} exceeds the projection-cloner cap of {}",
            config.m.hi,
            universal::MAX_CLONER_QUBITS
        )));
    }
    Ok(())
}

/// Single-copy and NOT fidelity of the projection cloner on `|0⟩^N`.
fn optimal_rows(
    config: &RunConfig,
    command: &'static str,
    n: u32,
    m: u32,
) -> Result<Vec<Row>, Error> {
    let tol = config.tolerance_or(DEFAULT_TOLERANCE);
    let zero = QubitAmplitudes64::zero();
    let rho = projection_cloner(n, m, &zero)?;
    let f_clone = single_copy_fidelity(&rho, &zero)?;
    let q = zeros_distribution(&rho, &CloneSpec::minimal(n, m)?)?;
    Ok(vec![
        Row::check(
            command,
            config.seed,
            "f_clone",
            f_clone,
            optimal_clone_fidelity(n, m)?,
            tol,
        )
        .scenario(n, m),
        Row::check(
            command,
            config.seed,
            "f_not",
            fidelity_not(&q),
            optimal_not_fidelity(n)?,
            tol,
        )
        .scenario(n, m),
    ])
}

fn optimal(config: &RunConfig) -> Result<Vec<Row>, UsageError> {
    check_cloner_range(config)?;
    let cells: Vec<Vec<Row>> = config
        .scenarios()
        .into_par_iter()
        .map(|(n, m)| optimal_rows(config, "optimal", n, m).map_err(core_error))
        .collect::<Result<_, _>>()?;
    Ok(cells.into_iter().flatten().collect())
}

fn equivalence(config: &RunConfig) -> Result<Vec<Row>, UsageError> {
    let tol = config.tolerance_or(RELATION_TOLERANCE);
    let cells: Vec<Vec<Row>> = config
        .copies
        .iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|copies| {
            let mut rng = cell_rng(config.seed, copies as u64);
            (0..config.samples)
                .map(|i| {
                    let q: QubitAmplitudes64 = haar_qubit(&mut rng);
                    let overlap = equivalence_overlap(&q, copies).map_err(core_error)?;
                    Ok(
                        Row::check("equivalence", config.seed, "overlap", overlap, 1.0, tol)
                            .copies(copies)
                            .sample(i),
                    )
                })
                .collect::<Result<Vec<_>, UsageError>>()
        })
        .collect::<Result<_, _>>()?;
    Ok(cells.into_iter().flatten().collect())
}

fn sweep(config: &RunConfig) -> Result<Vec<Row>, UsageError> {
    let relation_tol = config.tolerance_or(RELATION_TOLERANCE);
    let quantum_tol = config.tolerance_or(DEFAULT_TOLERANCE);
    let seed = config.seed;
    let cells: Vec<Vec<Row>> = config
        .scenarios()
        .into_par_iter()
        .map(|(n, m)| -> Result<Vec<Row>, Error> {
            let spec = CloneSpec::minimal(n, m)?;
            let mut rng = cell_rng(seed, stream_of(n, m));
            let mut max_residual = 0.0f64;
            let mut violations = 0usize;
            for _ in 0..config.samples {
                let d: OutcomeDistribution64 = random_distribution(spec, &mut rng);
                max_residual = max_residual.max(clonot_residual(&d).abs());
                violations += usize::from(fidelity_not(&d) > fidelity_clone(&d));
            }
            let mut rows = vec![
                Row::check(
                    "sweep",
                    seed,
                    "max_residual",
                    max_residual,
                    0.0,
                    relation_tol,
                )
                .scenario(n, m),
                Row::check(
                    "sweep",
                    seed,
                    "ordering_violations",
                    violations as f64,
                    0.0,
                    0.0,
                )
                .scenario(n, m),
            ];
            if m <= universal::MAX_CLONER_QUBITS {
                rows.extend(optimal_rows(config, "sweep", n, m)?);
                let spread: f64 =
                    universality_check(n, m, config.haar_samples, seed ^ stream_of(n, m))?;
                rows.push(
                    Row::check(
                        "sweep",
                        seed,
                        "universality_spread",
                        spread,
                        0.0,
                        quantum_tol,
                    )
                    .scenario(n, m),
                );
            }
            Ok(rows)
        })
        .collect::<Result<_, _>>()
        .map_err(core_error)?;
    Ok(cells.into_iter().flatten().collect())
}

fn ledger(config: &RunConfig) -> Result<Vec<Row>, UsageError> {
    let seed = config.seed;
    let cells: Vec<Vec<Row>> = config
        .scenarios()
        .into_par_iter()
        .map(|(n, m)| -> Result<Vec<Row>, Error> {
            let l = config.reservoir.unwrap_or(m);
            let spec = CloneSpec::new(n, m, l)?;
            let k = min_ancillas(n, m)?;
            let l_prime = reservoir_after(l, n, m, k)?;
            let emission = validate_emission_ledger(l, l_prime, n, m);
            let exact = |q, v: i64, e: i64| {
                Row::check("ledger", seed, q, v as f64, e as f64, 0.0).scenario(n, m)
            };
            let mut rows = vec![
                exact("min_ancillas", k as i64, m as i64 - n as i64),
                exact(
                    "reservoir_after",
                    l_prime as i64,
                    l as i64 - (m as i64 - n as i64),
                ),
                exact("emission_balance", emission.n_out - emission.n_in, 0),
            ];
            for a in n..=m {
                let clones_and_ancillas = [
                    OccupationConfig::new(a, m - a),
                    OccupationConfig::new(m - a, a - n),
                ];
                rows.push(
                    exact(
                        "outcome_angular_momentum",
                        angular_momentum(&clones_and_ancillas),
                        -(n as i64),
                    )
                    .outcome(a),
                );
            }
            let input = input_state::<f64>(&spec);
            let mut rng = cell_rng(seed, stream_of(n, m));
            for i in 0..config.samples {
                let out = build_output_state(&random_coefficients::<f64, _>(spec, &mut rng))?;
                let a = audit(&input, &out);
                rows.push(exact("audit_violations", a.violations.len() as i64, 0).sample(i));
            }
            Ok(rows)
        })
        .collect::<Result<_, _>>()
        .map_err(core_error)?;
    Ok(cells.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::IndexRange;

    #[test]
    fn ledger_rejects_small_reservoir() {
        let mut c = RunConfig::new(Command::Ledger);
        c.m = IndexRange::single(4);
        c.reservoir = Some(1);
        assert!(matches!(run(&c), Err(UsageError::Invalid(_))));
    }

    #[test]
    fn optimal_rejects_large_m() {
        let mut c = RunConfig::new(Command::Optimal);
        c.m = IndexRange::single(11);
        assert!(run(&c).is_err());
    }

    #[test]
    fn tight_tolerance_fails_rows() {
        let mut c = RunConfig::new(Command::Relation);
        c.samples = 50;
        c.tolerance = Some(1e-300);
        let r = run(&c).unwrap();
        assert!(r.rows.iter().any(|row| !row.pass) || r.rows.iter().all(|row| row.value == 0.0));
    }
}
