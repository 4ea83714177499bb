//! How long a finite-width evaluation follows the true orbit.

use super::{closed_form_trajectory, iterate, iterate_as, ClosedFormVariant, MapParams};
use crate::error::{Error, Result};
use crate::precision::{compare_trajectories, precision_budget, DivergenceReport, Method, PrecisionPolicy, Trajectory};

/// Width of the reference orbit used against a `working_bits` computation
/// over `n_max` steps: one bit per step on top of `working_bits + 64`.
pub fn oracle_bits(n_max: usize, working_bits: usize) -> usize {
    let margin = PrecisionPolicy::new(
        working_bits.max(crate::precision::DOUBLE_BITS),
        working_bits + crate::precision::DEFAULT_BASELINE_BITS,
    )
    .expect("widths are at least double");
    precision_budget(n_max as u64, 1.0, &margin)
}

/// Reference orbit at `bits` bits, tagged as an oracle.
pub fn oracle(p: &MapParams, n_max: usize, bits: usize) -> Result<Trajectory> {
    iterate_as(p, n_max, &PrecisionPolicy::bits(bits)?, Method::Oracle)
}

fn working_policy(working_bits: usize) -> Result<PrecisionPolicy> {
    PrecisionPolicy::bits(working_bits).map_err(|_| {
        Error::Config(format!(
            "working precision must be at least 53 bits, got {working_bits}"
        ))
    })
}

/// Closed form `variant` evaluated with `working_bits` bits (including the
/// angle arithmetic), compared step by step with the oracle orbit.
pub fn divergence_analysis(
    p: &MapParams,
    variant: ClosedFormVariant,
    n_max: usize,
    working_bits: usize,
    threshold: f64,
) -> Result<DivergenceReport> {
    let policy = working_policy(working_bits)?;
    let candidate = closed_form_trajectory(p, n_max, variant, &policy)?;
    let truth = oracle(p, n_max, oracle_bits(n_max, working_bits))?;
    compare_trajectories(&candidate, &truth, threshold)
}

/// Plain iteration with `working_bits` bits, compared with the oracle orbit.
pub fn iteration_divergence(
    p: &MapParams,
    n_max: usize,
    working_bits: usize,
    threshold: f64,
) -> Result<DivergenceReport> {
    let policy = working_policy(working_bits)?;
    let candidate = iterate(p, n_max, &policy)?;
    let truth = oracle(p, n_max, oracle_bits(n_max, working_bits))?;
    compare_trajectories(&candidate, &truth, threshold)
}
