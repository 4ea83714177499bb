//! Configurable-precision arithmetic and the tools used to treat a
//! high-precision recomputation as ground truth.

mod real;
mod reduce;
mod trajectory;

pub use real::{Context, Real};
pub use reduce::{reduce_mod_2pi, reduce_mod_pi_multiple};
pub use trajectory::{compare_trajectories, Abscissa, DivergenceReport, Method, Sample, Trajectory};

use serde::Serialize;

use crate::error::{Error, Result};

/// Significand width of an IEEE double.
pub const DOUBLE_BITS: usize = 53;

/// Default safety margin added on top of the bits a computation is expected to lose.
pub const DEFAULT_BASELINE_BITS: usize = 64;

/// How many significand bits to carry, plus the safety margin used when
/// sizing oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrecisionPolicy {
    significand_bits: usize,
    baseline_bits: usize,
}

impl PrecisionPolicy {
    pub fn new(significand_bits: usize, baseline_bits: usize) -> Result<Self> {
        if significand_bits < DOUBLE_BITS {
            return Err(Error::Config(format!(
                "significand width {significand_bits} is below double precision ({DOUBLE_BITS})"
            )));
        }
        if baseline_bits == 0 {
            return Err(Error::Config("baseline bits must be at least 1".into()));
        }
        Ok(PrecisionPolicy {
            significand_bits,
            baseline_bits,
        })
    }

    /// `significand_bits` wide with the default baseline.
    pub fn bits(significand_bits: usize) -> Result<Self> {
        Self::new(significand_bits, DEFAULT_BASELINE_BITS)
    }

    pub fn double() -> Self {
        PrecisionPolicy {
            significand_bits: DOUBLE_BITS,
            baseline_bits: DEFAULT_BASELINE_BITS,
        }
    }

    /// Policy wide enough to follow `n_steps` of a map that loses
    /// `bits_lost_per_step` bits per step.
    pub fn budgeted(n_steps: u64, bits_lost_per_step: f64) -> Self {
        let base = Self::double();
        PrecisionPolicy {
            significand_bits: precision_budget(n_steps, bits_lost_per_step, &base),
            ..base
        }
    }

    pub fn significand_bits(&self) -> usize {
        self.significand_bits
    }

    pub fn baseline_bits(&self) -> usize {
        self.baseline_bits
    }

    pub fn context(&self) -> Context {
        Context::new(self.significand_bits)
    }
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self::double()
    }
}

/// Bits needed to iterate `n_steps` when each step costs `bits_lost_per_step`:
/// `ceil(n_steps × bits_lost_per_step) + baseline`, never below 53.
///
/// Negative or NaN loss rates count as zero.
pub fn precision_budget(n_steps: u64, bits_lost_per_step: f64, policy: &PrecisionPolicy) -> usize {
    let rate = if bits_lost_per_step.is_nan() {
        0.0
    } else {
        bits_lost_per_step.max(0.0)
    };
    let lost = (n_steps as f64 * rate).ceil();
    let lost = if lost >= usize::MAX as f64 {
        usize::MAX
    } else {
        lost as usize
    };
    lost.saturating_add(policy.baseline_bits).max(DOUBLE_BITS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn budget_examples() {
        let p = PrecisionPolicy::double();
        assert_eq!(precision_budget(0, 1.0, &p), 64);
        assert_eq!(precision_budget(100, 1.0, &p), 164);
        assert_eq!(precision_budget(3, 0.5, &p), 66);
        let thin = PrecisionPolicy::new(53, 1).unwrap();
        assert_eq!(precision_budget(0, 1.0, &thin), 53);
        assert_eq!(precision_budget(10, f64::NAN, &p), 64);
    }

    #[test]
    fn policy_invariants() {
        assert!(PrecisionPolicy::new(52, 64).is_err());
        assert!(PrecisionPolicy::new(53, 0).is_err());
        assert_eq!(PrecisionPolicy::budgeted(40, 1.0).significand_bits(), 104);
    }

    proptest! {
        #[test]
        fn budget_is_monotone(n in 0u64..10_000, dn in 0u64..1000, b in 0.0f64..8.0, db in 0.0f64..4.0) {
            let p = PrecisionPolicy::double();
            let base = precision_budget(n, b, &p);
            prop_assert!(precision_budget(n + dn, b, &p) >= base);
            prop_assert!(precision_budget(n, b + db, &p) >= base);
            prop_assert!(base >= DOUBLE_BITS);
        }
    }
}
