//! Finite-sample tomography simulation.
//!
//! The workflow mirrors how one channel's output is recovered from
//! another's statistics: prepare `ρ`, send it through the first channel,
//! measure `m1`, and feed the empirical frequencies into the
//! linear-inversion estimator of the second channel's output using the
//! informationally complete `m2`. With matched measurement pairs
//! (statistics identity) the estimate converges to `b(ρ)` at the usual
//! `N^{-1/2}` Monte Carlo rate.
//!
//! Sampling uses the crate's counter-based generator
//! ([`crate::rng::CounterRng`], stream
//! [`STATISTICS_STREAM`]), so every frequency vector is bit-reproducible
//! from `(seed, shots)` alone. Estimates are never PSD-projected here; the
//! estimator stays linear, and any projection policy belongs to callers
//! (the command-line wrapper exposes one behind a flag).

use crate::channels::{ChannelError, OperatorMap};
use crate::numkit::{fro_norm, ComplexMatrix, NumError};
use crate::povm::{reconstruct_state, Povm, PovmError};
use crate::rng::CounterRng;
use thiserror::Error;

/// RNG stream dedicated to outcome sampling.
pub const STATISTICS_STREAM: u64 = 0x7060;

/// Negative-probability tolerance in [`sample_statistics`].
pub const DISTRIBUTION_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum TomoError {
    #[error("outcome {outcome} has probability {p:.3e} below -{DISTRIBUTION_TOL:.0e}")]
    InvalidDistribution { outcome: usize, p: f64 },
    #[error("shots must be at least 1")]
    NoShots,
    #[error("shot grid needs at least 3 ascending points spanning two decades")]
    BadShotGrid,
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Povm(#[from] PovmError),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Empirical outcome frequencies of measuring `m1` on `a(ρ)` with a
/// finite number of shots. Deterministic given the seed.
pub fn sample_statistics(
    a: &impl OperatorMap,
    m1: &Povm,
    rho: &ComplexMatrix,
    shots: u64,
    seed: u64,
) -> Result<Vec<f64>, TomoError> {
    if shots == 0 {
        return Err(TomoError::NoShots);
    }
    let out = a.apply(rho)?;
    let mut probs = m1.probabilities(&out)?;
    for (outcome, p) in probs.iter_mut().enumerate() {
        if *p < -DISTRIBUTION_TOL {
            return Err(TomoError::InvalidDistribution { outcome, p: *p });
        }
        if *p < 0.0 {
            *p = 0.0;
        }
    }
    let mut rng = CounterRng::new(seed, STATISTICS_STREAM);
    let mut counts = vec![0u64; probs.len()];
    // cumulative table so each draw is one uniform plus a short scan
    let mut cumulative = probs.clone();
    for i in 1..cumulative.len() {
        cumulative[i] += cumulative[i - 1];
    }
    let total = *cumulative.last().expect("at least one outcome");
    let last = cumulative.len() - 1;
    for _ in 0..shots {
        let target = rng.uniform() * total;
        let mut idx = 0;
        while idx < last && target >= cumulative[idx] {
            idx += 1;
        }
        counts[idx] += 1;
    }
    Ok(counts
        .into_iter()
        .map(|c| c as f64 / shots as f64)
        .collect())
}

/// Linear-inversion estimate of the second channel's output from observed
/// frequencies, using the informationally complete `m2`. No PSD
/// projection.
pub fn estimate_output(m2: &Povm, freqs: &[f64]) -> Result<ComplexMatrix, TomoError> {
    Ok(reconstruct_state(m2, freqs)?.estimate)
}

/// One simulated tomography run.
#[derive(Debug, Clone)]
pub struct TomographyRun {
    pub shots: u64,
    pub seed: u64,
    /// Linear estimate of `b(ρ)`; Hermitian with unit trace.
    pub estimate: ComplexMatrix,
    /// Frobenius distance to the exact `b(ρ)`.
    pub error: f64,
}

/// Samples `m1` after `a` and reconstructs `b(ρ)` through `m2`.
pub fn run_once(
    a: &impl OperatorMap,
    b: &impl OperatorMap,
    m1: &Povm,
    m2: &Povm,
    rho: &ComplexMatrix,
    shots: u64,
    seed: u64,
) -> Result<TomographyRun, TomoError> {
    let freqs = sample_statistics(a, m1, rho, shots, seed)?;
    let estimate = estimate_output(m2, &freqs)?;
    let exact = b.apply(rho)?;
    let error = fro_norm(&(&estimate - exact));
    Ok(TomographyRun {
        shots,
        seed,
        estimate,
        error,
    })
}

/// Summary row of a convergence study at one shot count.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub shots: u64,
    pub median_error: f64,
    pub q25: f64,
    pub q75: f64,
}

/// Result of a convergence study over a shot grid.
#[derive(Debug, Clone)]
pub struct ConvergenceStudy {
    pub rows: Vec<ConvergenceRow>,
    /// Per-run errors as `(shots, seed, error)`, seed-ordered.
    pub runs: Vec<(u64, u64, f64)>,
    /// Log-log regression slope of median error against shots; `None`
    /// when exact probabilities were injected (zero error, no slope).
    pub slope: Option<f64>,
}

/// Options for [`convergence_study`].
#[derive(Debug, Clone, Default)]
pub struct StudyOptions {
    /// Skip sampling and inject exact probabilities (zero-noise path).
    pub exact_probabilities: bool,
    /// Offset added to the per-run seeds.
    pub seed_base: u64,
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    if sorted.len() == 1 {
        return sorted[0];
    }
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] * (1.0 - frac) + sorted[hi] * frac
}

/// Runs `seeds` independent tomography simulations at every grid point and
/// summarizes the error distribution. The grid must be ascending with at
/// least three points spanning two decades.
#[allow(clippy::too_many_arguments)]
pub fn convergence_study(
    a: &impl OperatorMap,
    b: &impl OperatorMap,
    m1: &Povm,
    m2: &Povm,
    rho: &ComplexMatrix,
    shot_grid: &[u64],
    seeds: u64,
    options: &StudyOptions,
) -> Result<ConvergenceStudy, TomoError> {
    if shot_grid.len() < 3
        || shot_grid.windows(2).any(|w| w[1] <= w[0])
        || (shot_grid[shot_grid.len() - 1] as f64) < 100.0 * shot_grid[0] as f64
    {
        return Err(TomoError::BadShotGrid);
    }
    let mut rows = Vec::with_capacity(shot_grid.len());
    let mut runs = Vec::new();
    let exact_probs: Option<Vec<f64>> = if options.exact_probabilities {
        let out = a.apply(rho)?;
        Some(m1.probabilities(&out)?)
    } else {
        None
    };
    let exact_output = b.apply(rho)?;
    for &shots in shot_grid {
        let mut errors = Vec::with_capacity(seeds as usize);
        for s in 0..seeds {
            let seed = options.seed_base + s;
            let error = match &exact_probs {
                Some(p) => {
                    let estimate = estimate_output(m2, p)?;
                    fro_norm(&(&estimate - &exact_output))
                }
                None => run_once(a, b, m1, m2, rho, shots, seed)?.error,
            };
            runs.push((shots, seed, error));
            errors.push(error);
        }
        errors.sort_by(f64::total_cmp);
        rows.push(ConvergenceRow {
            shots,
            median_error: quantile(&errors, 0.5),
            q25: quantile(&errors, 0.25),
            q75: quantile(&errors, 0.75),
        });
    }

    let slope = if options.exact_probabilities {
        None
    } else {
        // least-squares slope of ln(median error) against ln(shots)
        let points: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.median_error > 0.0)
            .map(|r| ((r.shots as f64).ln(), r.median_error.ln()))
            .collect();
        if points.len() < 2 {
            None
        } else {
            let n = points.len() as f64;
            let sx: f64 = points.iter().map(|p| p.0).sum();
            let sy: f64 = points.iter().map(|p| p.1).sum();
            let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
            let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
            Some((n * sxy - sx * sy) / (n * sxx - sx * sx))
        }
    };

    Ok(ConvergenceStudy { rows, runs, slope })
}
