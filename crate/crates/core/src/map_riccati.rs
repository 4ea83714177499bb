//! The backward-coupled logistic map `x_{n+1} − x_n = r x_n (1 − x_{n+1})`.
//!
//! Solving for `x_{n+1}` gives `x_{n+1} = x_n (1 + r) / (1 + r x_n)`, whose
//! orbit from `x₀` is `x_{n,1} = 1 / (1 + (1/x₀ − 1)(1 + r)^{−n})`, the ODE
//! solution with `e^{r}` replaced by `1 + r`. The remaining solutions are
//!
//! ```text
//! x_{n,g} = x_{n,1} + Πₖ₌₀ⁿ⁻¹ gₖ⁻¹ / (γ + Σₖ₌₀ⁿ⁻¹ (Πⱼ₌₀ᵏ gⱼ⁻¹) hₖ)
//! gₙ = (r x_{n,1} + 1) / (r (1 − x_{n+1,1}) + 1),  hₙ = r / (r (1 − x_{n+1,1}) + 1)
//! ```

use serde::Serialize;

use crate::continuous::is_pole;
use crate::error::{Error, Result};
use crate::precision::{Abscissa, Method, Trajectory};

/// Running products outside `[1e-300, 1e300]` are treated as underflow/overflow.
const PRODUCT_LIMIT: f64 = 1e300;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RiccatiMapParams {
    pub r: f64,
    pub x0: f64,
}

impl RiccatiMapParams {
    pub fn new(r: f64, x0: f64) -> Result<Self> {
        if !r.is_finite() || !x0.is_finite() {
            return Err(Error::Usage(format!("r and x0 must be finite, got r={r}, x0={x0}")));
        }
        Ok(RiccatiMapParams { r, x0 })
    }

    /// The closed forms need `r ≠ −1` and `x₀ ≠ 0`.
    fn require_closed_form(&self) -> Result<()> {
        if self.r == -1.0 {
            return Err(Error::Domain(
                "r = −1 has no closed form: (1 + r)^(−n) is undefined; every iterate after the first is 0".into(),
            ));
        }
        if self.x0 == 0.0 {
            return Err(Error::Domain("closed form divides by x0; x0 must be nonzero".into()));
        }
        Ok(())
    }
}

/// Explicit iteration `x_{k+1} = x_k (1 + r) / (1 + r x_k)`; sample 0 is `x0`.
pub fn iterate(p: &RiccatiMapParams, n: usize) -> Result<Trajectory> {
    let mut x = p.x0;
    let mut points = Vec::with_capacity(n + 1);
    points.push((Abscissa::Index(0), x));
    for k in 0..n {
        let den = 1.0 + p.r * x;
        if is_pole(den) {
            return Err(Error::Pole {
                what: "1 + r·x_k",
                at: k as f64,
            });
        }
        x = x * (1.0 + p.r) / den;
        if !x.is_finite() {
            return Err(Error::NonFinite { index: k + 1 });
        }
        points.push((Abscissa::Index(k as u64 + 1), x));
    }
    Trajectory::from_f64(Method::Iterated, points)
}

/// `x_{n,1} = 1 / (1 + (1/x₀ − 1)(1 + r)^{−n})`.
pub fn particular_solution(p: &RiccatiMapParams, n: usize) -> Result<f64> {
    p.require_closed_form()?;
    let decay = (1.0 + p.r).powf(-(n as f64));
    let den = 1.0 + (1.0 / p.x0 - 1.0) * decay;
    if is_pole(den) {
        return Err(Error::Pole {
            what: "particular-solution denominator",
            at: n as f64,
        });
    }
    Ok(1.0 / den)
}

pub fn particular_trajectory(p: &RiccatiMapParams, n_max: usize) -> Result<Trajectory> {
    let points = (0..=n_max)
        .map(|n| Ok((Abscissa::Index(n as u64), particular_solution(p, n)?)))
        .collect::<Result<Vec<_>>>()?;
    Trajectory::from_f64(Method::ClosedForm("riccati-particular"), points)
}

/// `g_n` and `h_n` for `n = 0..n_max-1`. Computed once per `(r, x0)` and
/// shared across γ values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RiccatiCoefficients {
    pub g: Vec<f64>,
    pub h: Vec<f64>,
}

impl RiccatiCoefficients {
    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty()
    }
}

pub fn coefficients(p: &RiccatiMapParams, n_max: usize) -> Result<RiccatiCoefficients> {
    p.require_closed_form()?;
    let mut g = Vec::with_capacity(n_max);
    let mut h = Vec::with_capacity(n_max);
    let mut current = particular_solution(p, 0)?;
    for n in 0..n_max {
        let next = particular_solution(p, n + 1)?;
        let den = p.r * (1.0 - next) + 1.0;
        if is_pole(den) {
            return Err(Error::Pole {
                what: "r(1 − x_{n+1,1}) + 1",
                at: n as f64,
            });
        }
        g.push((p.r * current + 1.0) / den);
        h.push(p.r / den);
        current = next;
    }
    Ok(RiccatiCoefficients { g, h })
}

/// Evaluates the general solution at every step `0..=n_max`.
fn general_values(p: &RiccatiMapParams, coeffs: &RiccatiCoefficients, gamma: f64, n_max: usize) -> Result<Vec<f64>> {
    if !gamma.is_finite() || gamma == 0.0 {
        return Err(Error::Usage(format!("γ must be finite and nonzero, got {gamma}")));
    }
    if coeffs.len() < n_max {
        return Err(Error::Config(format!(
            "{} coefficients cannot reach step {n_max}",
            coeffs.len()
        )));
    }
    let mut product = 1.0;
    let mut sum = 0.0;
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let den = gamma + sum;
        if is_pole(den) {
            return Err(Error::Pole {
                what: "γ + Σ (Π g⁻¹) h at this step",
                at: gamma,
            });
        }
        out.push(particular_solution(p, n)? + product / den);
        if n == n_max {
            break;
        }
        let g = coeffs.g[n];
        if g == 0.0 {
            return Err(Error::Pole {
                what: "g_n",
                at: n as f64,
            });
        }
        product /= g;
        if product.abs() > PRODUCT_LIMIT || !product.is_finite() {
            return Err(Error::NonFinite { index: n + 1 });
        }
        if product.abs() < 1.0 / PRODUCT_LIMIT {
            product = 0.0;
        }
        sum += product * coeffs.h[n];
    }
    Ok(out)
}

/// `x_{n,g}` for the shift `γ`; `n = 0` gives `x₀ + 1/γ`.
pub fn general_solution(p: &RiccatiMapParams, gamma: f64, n: usize) -> Result<f64> {
    let coeffs = coefficients(p, n)?;
    let values = general_values(p, &coeffs, gamma, n)?;
    Ok(values[n])
}

/// The general solution for `γ` at every step `0..=n_max`, reusing `coeffs`.
pub fn general_trajectory(
    p: &RiccatiMapParams,
    coeffs: &RiccatiCoefficients,
    gamma: f64,
    n_max: usize,
) -> Result<Trajectory> {
    let values = general_values(p, coeffs, gamma, n_max)?;
    Trajectory::from_f64(
        Method::ClosedForm("riccati-general"),
        values
            .into_iter()
            .enumerate()
            .map(|(n, v)| (Abscissa::Index(n as u64), v)),
    )
}

/// Starting value selected by `γ`: `x₀ + 1/γ`.
pub fn effective_initial_value(p: &RiccatiMapParams, gamma: f64) -> f64 {
    p.x0 + 1.0 / gamma
}
