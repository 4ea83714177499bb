//! The conjugacy construction `x_n = ½ [1 − f(λⁿ f⁻¹(1 − 2x₀))]`.
//!
//! If `f⁻¹` carries the map onto multiplication by a constant λ, iterating
//! the map is just scaling in the conjugated coordinate. Each pair below
//! carries both the map parameter it solves and its λ; for r = 2 and r = −2
//! λ equals r, while the cosine pair solving r = 4 doubles its angle.

use std::fmt;

use super::MapParams;
use crate::error::{Error, Result};
use crate::precision::{reduce_mod_2pi, reduce_mod_pi_multiple, Context, PrecisionPolicy, Real};

/// A real function evaluated at a context's width.
pub type RealMap = fn(&mut Context, &Real) -> Real;

/// Real interval with independently open or closed ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub const REALS: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
        lo_closed: false,
        hi_closed: false,
    };

    pub const fn closed(lo: f64, hi: f64) -> Self {
        Interval {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub const fn open(lo: f64, hi: f64) -> Self {
        Interval {
            lo,
            hi,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn contains(&self, ctx: &Context, x: &Real) -> bool {
        if !x.is_finite() {
            return false;
        }
        let above = if self.lo.is_infinite() {
            true
        } else {
            let lo = ctx.from_f64(self.lo);
            if self.lo_closed {
                *x >= lo
            } else {
                *x > lo
            }
        };
        let below = if self.hi.is_infinite() {
            true
        } else {
            let hi = ctx.from_f64(self.hi);
            if self.hi_closed {
                *x <= hi
            } else {
                *x < hi
            }
        };
        above && below
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// A function `f` with inverse `f⁻¹` that linearizes one of the solvable maps.
#[derive(Clone, Copy)]
pub struct ConjugacyPair {
    pub name: &'static str,
    pub f: RealMap,
    pub f_inverse: RealMap,
    /// Where `f(f⁻¹(y)) = y`; `1 − 2x₀` must lie here.
    pub domain: Interval,
    /// Arguments `f` accepts.
    pub f_domain: Interval,
    /// The map parameter this pair solves.
    pub map_r: f64,
    /// Scale applied per step in the conjugated coordinate.
    pub multiplier: i64,
}

impl fmt::Debug for ConjugacyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConjugacyPair")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("map_r", &self.map_r)
            .field("multiplier", &self.multiplier)
            .finish()
    }
}

fn cos_reduced(ctx: &mut Context, x: &Real) -> Real {
    let a = reduce_mod_2pi(ctx, x);
    ctx.cos(&a)
}

fn acos(ctx: &mut Context, y: &Real) -> Real {
    ctx.acos(y)
}

fn exp(ctx: &mut Context, x: &Real) -> Real {
    ctx.exp(x)
}

fn ln(ctx: &mut Context, y: &Real) -> Real {
    ctx.ln(y)
}

/// `2 cos((π − √3 x)/3)`.
fn trig_forward(ctx: &mut Context, x: &Real) -> Real {
    let sqrt3 = ctx.sqrt(&ctx.from_f64(3.0));
    let scaled = ctx.mul(&sqrt3, x);
    // Only (π − √3 x) mod 6π matters.
    let wrapped = reduce_mod_pi_multiple(ctx, &scaled, 6);
    let pi = ctx.pi();
    let inner = ctx.sub(&pi, &wrapped);
    let arg = ctx.div(&inner, &ctx.from_f64(3.0));
    ctx.cos(&arg).scale_pow2(1)
}

/// `(π − 3 arccos(y/2)) / √3`.
fn trig_inverse(ctx: &mut Context, y: &Real) -> Real {
    let a = ctx.acos(&y.scale_pow2(-1));
    let pi = ctx.pi();
    let num = ctx.sub(&pi, &ctx.mul(&ctx.from_f64(3.0), &a));
    let sqrt3 = ctx.sqrt(&ctx.from_f64(3.0));
    ctx.div(&num, &sqrt3)
}

impl ConjugacyPair {
    /// `f = cos`, `f⁻¹ = arccos` on `[−1, 1]`; solves r = 4 with angle doubling.
    pub fn cosine() -> Self {
        ConjugacyPair {
            name: "cos",
            f: cos_reduced,
            f_inverse: acos,
            domain: Interval::closed(-1.0, 1.0),
            f_domain: Interval::REALS,
            map_r: 4.0,
            multiplier: 2,
        }
    }

    /// `f = exp`, `f⁻¹ = ln` on `(0, ∞)`; solves r = 2 for seeds below ½.
    pub fn exponential() -> Self {
        ConjugacyPair {
            name: "exp",
            f: exp,
            f_inverse: ln,
            domain: Interval::open(0.0, f64::INFINITY),
            f_domain: Interval::REALS,
            map_r: 2.0,
            multiplier: 2,
        }
    }

    /// `f(x) = 2 cos((π − √3 x)/3)` with `f⁻¹(y) = (π − 3 arccos(y/2))/√3`
    /// on `[−2, 2]`; solves r = −2.
    pub fn trigonometric_minus_two() -> Self {
        ConjugacyPair {
            name: "2cos((pi-sqrt3 x)/3)",
            f: trig_forward,
            f_inverse: trig_inverse,
            domain: Interval::closed(-2.0, 2.0),
            f_domain: Interval::REALS,
            map_r: -2.0,
            multiplier: -2,
        }
    }

    pub fn all() -> [ConjugacyPair; 3] {
        [Self::cosine(), Self::exponential(), Self::trigonometric_minus_two()]
    }
}

/// `multiplier^n · u`, exact.
fn scale(ctx: &Context, u: &Real, multiplier: i64, n: usize) -> Real {
    let m = multiplier.unsigned_abs();
    let negative = multiplier < 0 && n % 2 == 1;
    let scaled = if m.is_power_of_two() {
        u.scale_pow2(m.trailing_zeros() as i64 * n as i64)
    } else {
        let width = 64 - m.leading_zeros() as usize;
        let wide = Context::new(ctx.bits() + width * n + 64);
        let factor = wide.from_i64(m as i64);
        (0..n).fold(wide.convert(u), |acc, _| wide.mul(&acc, &factor))
    };
    if negative {
        scaled.neg()
    } else {
        scaled
    }
}

/// Evaluates `½ [1 − f(λⁿ f⁻¹(1 − 2x₀))]` at `policy.significand_bits()` bits.
pub fn conjugacy_solution(pair: &ConjugacyPair, r: f64, x0: f64, n: usize, policy: &PrecisionPolicy) -> Result<Real> {
    let p = MapParams::new(r, x0)?;
    if p.r != pair.map_r {
        return Err(Error::Usage(format!(
            "conjugacy pair {} solves r = {}, not r = {}",
            pair.name, pair.map_r, p.r
        )));
    }
    let mut ctx = policy.context();
    let one = ctx.from_f64(1.0);
    let y = ctx.sub(&one, &ctx.from_f64(p.x0).scale_pow2(1));
    if !pair.domain.contains(&ctx, &y) {
        return Err(Error::Domain(format!(
            "f_inverse of pair {}: 1 − 2x0 = {} lies outside {}",
            pair.name,
            y.to_f64(),
            pair.domain
        )));
    }
    let u = (pair.f_inverse)(&mut ctx, &y);
    let arg = scale(&ctx, &u, pair.multiplier, n);
    if !pair.f_domain.contains(&ctx, &arg) {
        return Err(Error::Domain(format!(
            "f of pair {}: argument {} lies outside {}",
            pair.name,
            arg.to_f64(),
            pair.f_domain
        )));
    }
    let v = (pair.f)(&mut ctx, &arg);
    if !v.is_finite() {
        return Err(Error::Domain(format!(
            "f of pair {}: value is not finite at argument {}",
            pair.name,
            arg.to_f64()
        )));
    }
    Ok(ctx.sub(&one, &v).scale_pow2(-1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map_standard::{closed_form, iterate, ClosedFormVariant};

    fn wide() -> PrecisionPolicy {
        PrecisionPolicy::bits(192).unwrap()
    }

    #[test]
    fn pairs_round_trip_on_their_domains() {
        for pair in ConjugacyPair::all() {
            let mut ctx = Context::new(128);
            let (lo, hi) = match pair.name {
                "exp" => (1e-3, 50.0),
                _ => (pair.domain.lo, pair.domain.hi),
            };
            for i in 0..=40 {
                let y = lo + (hi - lo) * i as f64 / 40.0;
                let yr = ctx.from_f64(y);
                let u = (pair.f_inverse)(&mut ctx, &yr);
                let back = (pair.f)(&mut ctx, &u).to_f64();
                assert!((back - y).abs() < 1e-10, "{}: {y} -> {back}", pair.name);
            }
        }
    }

    #[test]
    fn cosine_pair_matches_r4_closed_form() {
        let pair = ConjugacyPair::cosine();
        for x0 in [0.05, 0.3, 0.61, 0.97] {
            let p = MapParams::new(4.0, x0).unwrap();
            for n in 0..=10 {
                let a = conjugacy_solution(&pair, 4.0, x0, n, &wide()).unwrap().to_f64();
                let b = closed_form(&p, n, ClosedFormVariant::R4, &wide()).unwrap().to_f64();
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn exponential_pair_matches_r2_closed_form() {
        let pair = ConjugacyPair::exponential();
        for x0 in [-0.7, 0.01, 0.2, 0.49] {
            let p = MapParams::new(2.0, x0).unwrap();
            for n in 0..=6 {
                let a = conjugacy_solution(&pair, 2.0, x0, n, &wide()).unwrap().to_f64();
                let b = closed_form(&p, n, ClosedFormVariant::R2, &wide()).unwrap().to_f64();
                assert!((a - b).abs() < 1e-9, "x0={x0} n={n}");
            }
        }
    }

    #[test]
    fn exponential_pair_rejects_seeds_above_half() {
        let pair = ConjugacyPair::exponential();
        let err = conjugacy_solution(&pair, 2.0, 0.7, 3, &wide()).unwrap_err();
        assert!(matches!(&err, Error::Domain(m) if m.contains("f_inverse")));
    }

    #[test]
    fn minus_two_pair_tracks_iteration() {
        let pair = ConjugacyPair::trigonometric_minus_two();
        let p = MapParams::new(-2.0, 0.9).unwrap();
        let it = iterate(&p, 10, &wide()).unwrap().values_f64();
        for (n, v) in it.iter().enumerate() {
            let a = conjugacy_solution(&pair, -2.0, 0.9, n, &wide()).unwrap().to_f64();
            assert!((a - v).abs() < 1e-8, "n={n}");
            let t1 = closed_form(&p, n, ClosedFormVariant::Rm2Table1, &wide())
                .unwrap()
                .to_f64();
            assert!((a - t1).abs() < 1e-30);
        }
    }

    #[test]
    fn wrong_parameter_for_pair() {
        let err = conjugacy_solution(&ConjugacyPair::cosine(), 2.0, 0.3, 2, &wide()).unwrap_err();
        assert!(matches!(err, Error::Usage(_)));
    }

    #[test]
    fn non_power_of_two_multiplier_scales_exactly() {
        let ctx = Context::new(64);
        let u = ctx.from_f64(0.1);
        let s = scale(&ctx, &u, -3, 3);
        assert!((s.to_f64() + 2.7).abs() < 1e-15);
    }
}
