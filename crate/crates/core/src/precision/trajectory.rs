use std::fmt;

use serde::Serialize;

use super::{Context, PrecisionPolicy, Real};
use crate::error::{Error, Result};

/// Position of a sample: a map index or an ODE time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Abscissa {
    Index(u64),
    Time(f64),
}

impl Abscissa {
    pub fn as_f64(&self) -> f64 {
        match *self {
            Abscissa::Index(i) => i as f64,
            Abscissa::Time(t) => t,
        }
    }

    fn precedes(&self, next: &Abscissa) -> bool {
        match (self, next) {
            (Abscissa::Index(a), Abscissa::Index(b)) => a < b,
            (Abscissa::Time(a), Abscissa::Time(b)) => a < b,
            _ => false,
        }
    }
}

impl fmt::Display for Abscissa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Abscissa::Index(i) => write!(f, "{i}"),
            Abscissa::Time(t) => write!(f, "{t}"),
        }
    }
}

/// What produced a trajectory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Method {
    Iterated,
    /// A closed-form expression, named by its short tag.
    ClosedForm(&'static str),
    Oracle,
    OdeClosedForm,
    OdeRk4,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Iterated => f.write_str("iterated"),
            Method::ClosedForm(tag) => write!(f, "closed-form:{tag}"),
            Method::Oracle => f.write_str("oracle"),
            Method::OdeClosedForm => f.write_str("ode-closed-form"),
            Method::OdeRk4 => f.write_str("ode-rk4"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub at: Abscissa,
    pub value: Real,
}

/// Ordered samples at a declared precision.
///
/// Abscissas are strictly increasing and every value is finite.
#[derive(Debug, Clone)]
pub struct Trajectory {
    method: Method,
    precision: PrecisionPolicy,
    samples: Vec<Sample>,
}

impl Trajectory {
    pub fn new(method: Method, precision: PrecisionPolicy, samples: Vec<Sample>) -> Result<Self> {
        for (i, s) in samples.iter().enumerate() {
            if !s.value.is_finite() {
                return Err(Error::NonFinite { index: i });
            }
        }
        if let Some(w) = samples.windows(2).position(|w| !w[0].at.precedes(&w[1].at)) {
            return Err(Error::Config(format!(
                "sample positions must be strictly increasing (at sample {})",
                w + 1
            )));
        }
        Ok(Trajectory {
            method,
            precision,
            samples,
        })
    }

    /// Builds a double-precision trajectory.
    pub fn from_f64<I>(method: Method, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Abscissa, f64)>,
    {
        let ctx = Context::new(super::DOUBLE_BITS);
        let samples = points
            .into_iter()
            .enumerate()
            .map(|(i, (at, v))| {
                if v.is_finite() {
                    Ok(Sample {
                        at,
                        value: ctx.from_f64(v),
                    })
                } else {
                    Err(Error::NonFinite { index: i })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(method, PrecisionPolicy::double(), samples)
    }

    pub fn method(&self) -> &Method {
        &self.method
    }

    pub fn precision(&self) -> &PrecisionPolicy {
        &self.precision
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn values_f64(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.value.to_f64()).collect()
    }

    pub fn last(&self) -> Option<&Sample> {
        self.samples.last()
    }
}

/// Per-step absolute error between two trajectories.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivergenceReport {
    pub per_step_abs_error: Vec<f64>,
    /// Smallest index whose error exceeds `threshold`.
    pub first_divergent_index: Option<usize>,
    pub threshold: f64,
    pub max_error: f64,
}

impl DivergenceReport {
    pub fn from_errors(per_step_abs_error: Vec<f64>, threshold: f64) -> Self {
        let first_divergent_index = per_step_abs_error.iter().position(|e| *e > threshold);
        let max_error = per_step_abs_error.iter().copied().fold(0.0, f64::max);
        DivergenceReport {
            per_step_abs_error,
            first_divergent_index,
            threshold,
            max_error,
        }
    }
}

/// Compares `a` and `b` sample by sample at the wider of their two widths.
pub fn compare_trajectories(a: &Trajectory, b: &Trajectory, threshold: f64) -> Result<DivergenceReport> {
    if !(threshold > 0.0 && threshold.is_finite()) {
        return Err(Error::Config(format!("threshold must be positive, got {threshold}")));
    }
    if a.len() != b.len() {
        return Err(Error::Mismatch(format!("{} samples vs {}", a.len(), b.len())));
    }
    if let Some(i) = a.samples.iter().zip(&b.samples).position(|(x, y)| x.at != y.at) {
        return Err(Error::Mismatch(format!(
            "sample {i} is at {} in one and {} in the other",
            a.samples[i].at, b.samples[i].at
        )));
    }
    let bits = a.precision.significand_bits().max(b.precision.significand_bits());
    let ctx = Context::new(bits);
    let errors = a
        .samples
        .iter()
        .zip(&b.samples)
        .map(|(x, y)| ctx.sub(&x.value, &y.value).abs().to_f64())
        .collect();
    Ok(DivergenceReport::from_errors(errors, threshold))
}
