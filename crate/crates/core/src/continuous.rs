//! The logistic equation `ẋ = r x (1 − x)`.
//!
//! Because the equation is Riccati with a known particular solution
//! `x₁(t) = 1 / (1 + (1/x₀ − 1) e^{−rt})`, every other solution is
//! `x₁ + 1/y` with `y` solving a linear equation. Integrating from
//! `y(0) = γ` gives a family that turns out to be `x₁` again, restarted from
//! `x_γ = γ x₀ / (γ − x₀)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::precision::{Abscissa, Method, PrecisionPolicy, Real, Sample, Trajectory};

/// Denominators smaller than this are treated as poles.
pub const POLE_EPSILON: f64 = 1e-300;

/// True for denominators that vanish or are NaN.
pub(crate) fn is_pole(den: f64) -> bool {
    den.is_nan() || den.abs() < POLE_EPSILON
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContinuousParams {
    /// Growth rate.
    pub r: f64,
    /// Initial value `x(0)`.
    pub x0: f64,
}

impl ContinuousParams {
    pub fn new(r: f64, x0: f64) -> Result<Self> {
        if !r.is_finite() || r == 0.0 {
            return Err(Error::Usage(format!("growth rate must be finite and nonzero, got {r}")));
        }
        if !x0.is_finite() {
            return Err(Error::Usage(format!("initial value must be finite, got {x0}")));
        }
        Ok(ContinuousParams { r, x0 })
    }

    fn require_nonzero_seed(&self) -> Result<()> {
        if self.x0 == 0.0 {
            Err(Error::Domain(
                "closed-form solution divides by x0; x0 must be nonzero".into(),
            ))
        } else {
            Ok(())
        }
    }
}

/// The integration constant `y(0) = γ` selecting one member of the general solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RiccatiShift {
    pub gamma: f64,
}

impl RiccatiShift {
    pub fn new(gamma: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma == 0.0 {
            return Err(Error::Usage(format!("γ must be finite and nonzero, got {gamma}")));
        }
        Ok(RiccatiShift { gamma })
    }
}

/// Whether γ lies in the range `x₀/(1 − x₀) < γ < ∞` that keeps the solution bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShiftStatus {
    Admissible,
    /// The formula is still evaluated, but the trajectory has a pole somewhere.
    OutsideRange,
}

pub fn shift_status(p: &ContinuousParams, s: &RiccatiShift) -> ShiftStatus {
    match gamma_lower_bound(p.x0) {
        Ok(bound) if s.gamma > bound => ShiftStatus::Admissible,
        _ => ShiftStatus::OutsideRange,
    }
}

/// `x₁(t) = 1 / (1 + (1/x₀ − 1) e^{−rt})`.
pub fn particular_solution(t: f64, p: &ContinuousParams) -> Result<f64> {
    p.require_nonzero_seed()?;
    let coefficient = 1.0 / p.x0 - 1.0;
    let den = 1.0 + coefficient * (-p.r * t).exp();
    if is_pole(den) {
        return Err(Error::Pole {
            what: "particular-solution denominator",
            at: t,
        });
    }
    Ok(1.0 / den)
}

/// [`particular_solution`] evaluated with `policy.significand_bits()` bits throughout.
pub fn particular_solution_precise(t: f64, p: &ContinuousParams, policy: &PrecisionPolicy) -> Result<Real> {
    p.require_nonzero_seed()?;
    let mut ctx = policy.context();
    let one = ctx.from_f64(1.0);
    let x0 = ctx.from_f64(p.x0);
    let coefficient = ctx.sub(&ctx.div(&one, &x0), &one);
    let rt = ctx.mul(&ctx.from_f64(p.r), &ctx.from_f64(t));
    let decay = ctx.exp(&rt.neg());
    let den = ctx.add(&one, &ctx.mul(&coefficient, &decay));
    if is_pole(den.to_f64()) {
        return Err(Error::Pole {
            what: "particular-solution denominator",
            at: t,
        });
    }
    Ok(ctx.div(&one, &den))
}

/// The restarted initial value `x_γ = γ x₀ / (γ − x₀)`.
pub fn effective_initial_condition(p: &ContinuousParams, s: &RiccatiShift) -> Result<f64> {
    let gap = s.gamma - p.x0;
    if is_pole(gap) {
        return Err(Error::Pole {
            what: "γ − x0",
            at: s.gamma,
        });
    }
    Ok(s.gamma * p.x0 / gap)
}

/// Lower end of the admissible γ range, `x₀ / (1 − x₀)`, for `0 < x₀ < 1`.
pub fn gamma_lower_bound(x0: f64) -> Result<f64> {
    if !(x0 > 0.0 && x0 < 1.0) {
        return Err(Error::Domain(format!("γ range is defined for 0 < x0 < 1, got {x0}")));
    }
    Ok(x0 / (1.0 - x0))
}

fn check_general(t: f64, p: &ContinuousParams, s: &RiccatiShift) -> Result<()> {
    p.require_nonzero_seed()?;
    particular_solution(t, p)?;
    // At γ = x₀/(1 − x₀) the restarted value is the fixed point 1; the open
    // range excludes it.
    if p.x0 != 1.0 && (s.gamma * (1.0 - p.x0) - p.x0).abs() < POLE_EPSILON {
        return Err(Error::Pole {
            what: "γ(1 − x0) − x0 (γ on the range boundary)",
            at: s.gamma,
        });
    }
    let growth = (p.r * t).exp();
    if growth.is_finite() {
        let inner = s.gamma * (growth + (1.0 / p.x0 - 1.0)) - 1.0;
        if inner.abs() < POLE_EPSILON {
            return Err(Error::Pole {
                what: "γ(e^{rt} + 1/x0 − 1) − 1",
                at: t,
            });
        }
    }
    Ok(())
}

/// General solution `x_g(t) = 1 / (1 + ((γ − x₀)/(γ x₀) − 1) e^{−rt})`.
///
/// Values of γ outside the admissible range are evaluated; see [`shift_status`].
pub fn general_solution(t: f64, p: &ContinuousParams, s: &RiccatiShift) -> Result<f64> {
    check_general(t, p, s)?;
    let g = s.gamma;
    let coefficient = (g - p.x0) / (g * p.x0) - 1.0;
    let den = 1.0 + coefficient * (-p.r * t).exp();
    if is_pole(den) {
        return Err(Error::Pole {
            what: "general-solution denominator",
            at: t,
        });
    }
    Ok(1.0 / den)
}

/// The same solution written as the particular solution times a correction:
/// `x₁(t) (1 + 1 / (γ (e^{rt} + 1/x₀ − 1) − 1))`.
pub fn general_solution_product_form(t: f64, p: &ContinuousParams, s: &RiccatiShift) -> Result<f64> {
    check_general(t, p, s)?;
    let x1 = particular_solution(t, p)?;
    let inner = s.gamma * ((p.r * t).exp() + (1.0 / p.x0 - 1.0)) - 1.0;
    Ok(x1 * (1.0 + 1.0 / inner))
}

fn sample_times(t_end: f64, dt: f64) -> Result<Vec<f64>> {
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::Config(format!("t_end must be positive, got {t_end}")));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Config(format!("dt must be positive, got {dt}")));
    }
    if dt > t_end {
        return Err(Error::Config(format!("dt = {dt} exceeds t_end = {t_end}")));
    }
    let steps = (t_end / dt + 1e-9).floor() as u64;
    Ok((0..=steps).map(|k| k as f64 * dt).collect())
}

/// Samples [`particular_solution`] at multiples of `dt` up to `t_end`.
pub fn particular_trajectory(p: &ContinuousParams, t_end: f64, dt: f64) -> Result<Trajectory> {
    let points = sample_times(t_end, dt)?
        .into_iter()
        .map(|t| Ok((Abscissa::Time(t), particular_solution(t, p)?)))
        .collect::<Result<Vec<_>>>()?;
    Trajectory::from_f64(Method::OdeClosedForm, points)
}

/// Samples [`general_solution`] at multiples of `dt` up to `t_end`.
pub fn general_trajectory(p: &ContinuousParams, s: &RiccatiShift, t_end: f64, dt: f64) -> Result<Trajectory> {
    let points = sample_times(t_end, dt)?
        .into_iter()
        .map(|t| Ok((Abscissa::Time(t), general_solution(t, p, s)?)))
        .collect::<Result<Vec<_>>>()?;
    Trajectory::from_f64(Method::OdeClosedForm, points)
}

/// Classical fourth-order Runge–Kutta integration of the logistic equation,
/// sampled at every step.
pub fn rk4_oracle(p: &ContinuousParams, t_end: f64, dt: f64) -> Result<Trajectory> {
    let times = sample_times(t_end, dt)?;
    if p.r.abs() * dt >= 0.1 {
        return Err(Error::Config(format!(
            "step too large: |r|·dt = {} must stay below 0.1",
            p.r.abs() * dt
        )));
    }
    let r = p.r;
    let rhs = |x: f64| r * x * (1.0 - x);
    let mut x = p.x0;
    let mut samples = Vec::with_capacity(times.len());
    let ctx = PrecisionPolicy::double().context();
    for (k, t) in times.iter().enumerate() {
        if !x.is_finite() {
            return Err(Error::NonFinite { index: k });
        }
        samples.push(Sample {
            at: Abscissa::Time(*t),
            value: ctx.from_f64(x),
        });
        let k1 = rhs(x);
        let k2 = rhs(x + 0.5 * dt * k1);
        let k3 = rhs(x + 0.5 * dt * k2);
        let k4 = rhs(x + dt * k3);
        x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    Trajectory::new(Method::OdeRk4, PrecisionPolicy::double(), samples)
}
