use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{MapParams, ESCAPE_BOUND};
use crate::error::{Error, Result};
use crate::precision::{
    reduce_mod_2pi, reduce_mod_pi_multiple, Abscissa, Context, Method, PrecisionPolicy, Real, Sample, Trajectory,
};

/// The four closed-form expressions for the standard map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosedFormVariant {
    /// r = 2: `½ (1 − (1 − 2x₀)^(2ⁿ))`.
    R2,
    /// r = 4: `½ (1 − cos(2ⁿ arccos(1 − 2x₀)))`.
    R4,
    /// r = −2, conjugacy form: `½ − cos(⅓ [π − (−2)ⁿ (π − 3 arccos(½ − x₀))])`.
    Rm2Table1,
    /// r = −2, half-shifted form: `½ + cos(2ⁿ arccos(x₀ − ½))`.
    Rm2Simple,
}

impl ClosedFormVariant {
    pub const ALL: [ClosedFormVariant; 4] = [
        ClosedFormVariant::R2,
        ClosedFormVariant::R4,
        ClosedFormVariant::Rm2Table1,
        ClosedFormVariant::Rm2Simple,
    ];

    /// The only map parameter the expression solves.
    pub fn required_r(self) -> f64 {
        match self {
            ClosedFormVariant::R2 => 2.0,
            ClosedFormVariant::R4 => 4.0,
            ClosedFormVariant::Rm2Table1 | ClosedFormVariant::Rm2Simple => -2.0,
        }
    }

    /// Closed interval of admissible seeds, or `None` when every real is allowed.
    pub fn seed_domain(self) -> Option<(f64, f64)> {
        match self {
            ClosedFormVariant::R2 => None,
            ClosedFormVariant::R4 => Some((0.0, 1.0)),
            ClosedFormVariant::Rm2Table1 | ClosedFormVariant::Rm2Simple => Some((-0.5, 1.5)),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            ClosedFormVariant::R2 => "r2",
            ClosedFormVariant::R4 => "r4",
            ClosedFormVariant::Rm2Table1 => "rm2-table1",
            ClosedFormVariant::Rm2Simple => "rm2-simple",
        }
    }

    fn check(self, p: &MapParams) -> Result<()> {
        if p.r != self.required_r() {
            return Err(Error::Usage(format!(
                "closed form {} solves r = {}, not r = {}",
                self.tag(),
                self.required_r(),
                p.r
            )));
        }
        if let Some((lo, hi)) = self.seed_domain() {
            if !(lo..=hi).contains(&p.x0) {
                return Err(Error::Domain(format!(
                    "closed form {} needs x0 in [{lo}, {hi}] for arccos, got {}",
                    self.tag(),
                    p.x0
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for ClosedFormVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ClosedFormVariant {
    type Err = Error;

    /// Accepts the tags and the short names `r2`, `r4`, `table1`, `simple`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "r2" => Ok(ClosedFormVariant::R2),
            "r4" => Ok(ClosedFormVariant::R4),
            "table1" | "rm2-table1" => Ok(ClosedFormVariant::Rm2Table1),
            "simple" | "rm2-simple" => Ok(ClosedFormVariant::Rm2Simple),
            other => Err(Error::Usage(format!("unknown closed form '{other}'"))),
        }
    }
}

/// A closed form with its seed-dependent part already evaluated, so a whole
/// trajectory costs one arccos.
struct Prepared {
    variant: ClosedFormVariant,
    ctx: Context,
    /// Base `1 − 2x₀` for r = 2, the seed angle otherwise.
    seed: Real,
}

impl Prepared {
    fn new(p: &MapParams, variant: ClosedFormVariant, policy: &PrecisionPolicy) -> Result<Self> {
        variant.check(p)?;
        let mut ctx = policy.context();
        let x0 = ctx.from_f64(p.x0);
        let one = ctx.from_f64(1.0);
        let half = ctx.from_f64(0.5);
        let seed = match variant {
            ClosedFormVariant::R2 => ctx.sub(&one, &x0.scale_pow2(1)),
            ClosedFormVariant::R4 => {
                let arg = ctx.sub(&one, &x0.scale_pow2(1));
                ctx.acos(&arg)
            }
            ClosedFormVariant::Rm2Simple => {
                let arg = ctx.sub(&x0, &half);
                ctx.acos(&arg)
            }
            ClosedFormVariant::Rm2Table1 => {
                // φ = π − 3 arccos(½ − x₀)
                let arg = ctx.sub(&half, &x0);
                let a = ctx.acos(&arg);
                let three_a = ctx.mul(&ctx.from_f64(3.0), &a);
                let pi = ctx.pi();
                ctx.sub(&pi, &three_a)
            }
        };
        Ok(Prepared { variant, ctx, seed })
    }

    fn at(&mut self, n: usize) -> Result<Real> {
        let ctx = &mut self.ctx;
        let one = ctx.from_f64(1.0);
        let half = ctx.from_f64(0.5);
        let doubled = self.seed.scale_pow2(n as i64);
        match self.variant {
            ClosedFormVariant::R2 => {
                let mut base = self.seed.clone();
                // Below 2^-(bits+2) the power no longer moves ½(1 − base).
                let negligible = -(ctx.bits() as i32) - 2;
                for k in 1..=n {
                    base = ctx.mul(&base, &base);
                    if base.is_zero() || base.exponent() < negligible {
                        base = ctx.from_f64(0.0);
                        break;
                    }
                    if base.abs().to_f64() > 2.0 * ESCAPE_BOUND {
                        return Err(Error::Escape { index: k });
                    }
                }
                Ok(ctx.sub(&one, &base).scale_pow2(-1))
            }
            ClosedFormVariant::R4 => {
                let angle = reduce_mod_2pi(ctx, &doubled);
                let c = ctx.cos(&angle);
                Ok(ctx.sub(&one, &c).scale_pow2(-1))
            }
            ClosedFormVariant::Rm2Simple => {
                let angle = reduce_mod_2pi(ctx, &doubled);
                let c = ctx.cos(&angle);
                Ok(ctx.add(&half, &c))
            }
            ClosedFormVariant::Rm2Table1 => {
                // (π − (−2)ⁿ φ)/3 only matters modulo 2π, so (−2)ⁿ φ only
                // matters modulo 6π.
                let wrapped = reduce_mod_pi_multiple(ctx, &doubled, 6);
                let pi = ctx.pi();
                let inner = if n.is_multiple_of(2) {
                    ctx.sub(&pi, &wrapped)
                } else {
                    ctx.add(&pi, &wrapped)
                };
                let arg = ctx.div(&inner, &ctx.from_f64(3.0));
                let c = ctx.cos(&arg);
                Ok(ctx.sub(&half, &c))
            }
        }
    }
}

/// Evaluates closed form `variant` at step `n` with `policy.significand_bits()` bits.
///
/// The angle forms compute the seed angle at that width, scale it by `2ⁿ`
/// exactly, reduce it against a wide π and only then take the cosine.
pub fn closed_form(p: &MapParams, n: usize, variant: ClosedFormVariant, policy: &PrecisionPolicy) -> Result<Real> {
    Prepared::new(p, variant, policy)?.at(n)
}

/// Closed form `variant` at every step `0..=n_max`.
pub fn closed_form_trajectory(
    p: &MapParams,
    n_max: usize,
    variant: ClosedFormVariant,
    policy: &PrecisionPolicy,
) -> Result<Trajectory> {
    let mut prepared = Prepared::new(p, variant, policy)?;
    let samples = (0..=n_max)
        .map(|n| {
            Ok(Sample {
                at: Abscissa::Index(n as u64),
                value: prepared.at(n)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Trajectory::new(Method::ClosedForm(variant.tag()), *policy, samples)
}
