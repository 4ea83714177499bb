//! The standard logistic map `x_{n+1} = r x_n (1 − x_n)`.
//!
//! Shifting by one half, `y_n = x_n − 1/2`, gives `y_{n+1} = −r y_n² + (r/4 − 1/2)`.
//! At r = 2 the constant vanishes and the recursion is a pure square; at
//! r = 4 and r = −2 the substitution `y_n = −(2/r) cos z_n` turns it into
//! angle doubling `z_{n+1} = 2 z_n`. Those three cases are the closed forms
//! in [`closed_form`].

mod closed_form;
mod conjugacy;
mod divergence;
mod prng;

pub use closed_form::{closed_form, closed_form_trajectory, ClosedFormVariant};
pub use conjugacy::{conjugacy_solution, ConjugacyPair, Interval, RealMap};
pub use divergence::{divergence_analysis, iteration_divergence, oracle, oracle_bits};
pub use prng::{prng_bits, LogisticBits};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::precision::{Abscissa, Method, PrecisionPolicy, Sample, Trajectory};

/// Iterates beyond this magnitude are reported as an escape.
pub const ESCAPE_BOUND: f64 = 1e100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MapParams {
    pub r: f64,
    /// Seed `x_0`.
    pub x0: f64,
}

impl MapParams {
    pub fn new(r: f64, x0: f64) -> Result<Self> {
        if !r.is_finite() || !x0.is_finite() {
            return Err(Error::Usage(format!("r and x0 must be finite, got r={r}, x0={x0}")));
        }
        Ok(MapParams { r, x0 })
    }
}

/// Runs the recurrence for `n` steps at the policy's width. Sample 0 is `x0`.
pub fn iterate(p: &MapParams, n: usize, policy: &PrecisionPolicy) -> Result<Trajectory> {
    iterate_as(p, n, policy, Method::Iterated)
}

pub(crate) fn iterate_as(p: &MapParams, n: usize, policy: &PrecisionPolicy, method: Method) -> Result<Trajectory> {
    let ctx = policy.context();
    let r = ctx.from_f64(p.r);
    let one = ctx.from_f64(1.0);
    let mut x = ctx.from_f64(p.x0);
    let mut samples = Vec::with_capacity(n + 1);
    samples.push(Sample {
        at: Abscissa::Index(0),
        value: x.clone(),
    });
    for k in 1..=n {
        x = ctx.mul(&ctx.mul(&r, &x), &ctx.sub(&one, &x));
        let size = x.abs().to_f64();
        if size.is_nan() || size > ESCAPE_BOUND {
            return Err(Error::Escape { index: k });
        }
        samples.push(Sample {
            at: Abscissa::Index(k as u64),
            value: x.clone(),
        });
    }
    Trajectory::new(method, *policy, samples)
}

/// One step of the half-shifted recursion: `−r y² + (r/4 − 1/2)`.
pub fn centered_step(y: f64, r: f64) -> f64 {
    -r * y * y + (r / 4.0 - 0.5)
}
