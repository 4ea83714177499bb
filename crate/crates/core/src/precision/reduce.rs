//! Argument reduction for large angles.
//!
//! The closed forms of the chaotic maps evaluate cosines at `2^n θ`. The
//! reduction below uses π carried to `width + exponent + 64` bits, so every
//! bit of the input angle survives the subtraction of the period multiple.

use astro_float::{BigFloat, RoundingMode};

use super::real::{exact_add, exact_mul, exact_sub};
use super::{Context, Real};

const RM: RoundingMode = RoundingMode::ToEven;

/// Reduces `angle` into `[0, 2π)` and rounds to the context width.
///
/// Non-finite input is returned unchanged.
pub fn reduce_mod_2pi(ctx: &mut Context, angle: &Real) -> Real {
    reduce_mod_pi_multiple(ctx, angle, 2)
}

/// Reduces `angle` into `[0, multiple·π)`.
pub fn reduce_mod_pi_multiple(ctx: &mut Context, angle: &Real, multiple: u32) -> Real {
    assert!(multiple > 0, "period must be a positive multiple of π");
    if !angle.is_finite() {
        return angle.clone();
    }
    if angle.is_zero() {
        return ctx.from_f64(0.0);
    }
    let magnitude = angle.exponent().max(0) as usize;
    let input_bits = angle.raw().mantissa_max_bit_len().unwrap_or(0);
    let ext = input_bits.max(ctx.bits()) + magnitude + 64;

    let pi = ctx.pi_at(ext);
    let period = pi.mul(&BigFloat::from_u32(multiple, 64), ext, RM);

    let x = angle.raw();
    let quotient = x.div(&period, magnitude + 64, RM).floor();
    let mut rem = exact_sub(x, &exact_mul(&quotient, &period));
    // The quotient may be off by one near a period boundary.
    while rem.is_negative() && !rem.is_zero() {
        rem = exact_add(&rem, &period);
    }
    while rem.cmp(&period).is_some_and(|c| c >= 0) {
        rem = exact_sub(&rem, &period);
    }

    let out = ctx.finish(rem);
    let period_here = ctx.finish(period);
    if out >= period_here {
        ctx.from_f64(0.0)
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circular_gap(ctx: &mut Context, a: &Real, b: &Real) -> f64 {
        let two_pi = ctx.pi().scale_pow2(1);
        let d = ctx.sub(a, b).abs();
        let other = ctx.sub(&two_pi, &d).abs();
        d.to_f64().min(other.to_f64())
    }

    #[test]
    fn zero_stays_zero() {
        let mut ctx = Context::new(128);
        let z = ctx.from_f64(0.0);
        assert!(reduce_mod_2pi(&mut ctx, &z).is_zero());
    }

    #[test]
    fn two_pi_reduces_to_zero() {
        for bits in [53, 128, 300] {
            let mut ctx = Context::new(bits);
            let two_pi = ctx.pi().scale_pow2(1);
            let r = reduce_mod_2pi(&mut ctx, &two_pi);
            let zero = ctx.from_f64(0.0);
            let gap = circular_gap(&mut ctx, &r, &zero);
            assert!(gap <= 2f64.powi(3 - bits as i32), "bits={bits} gap={gap}");
        }
    }

    #[test]
    fn result_lies_in_half_open_period() {
        let mut ctx = Context::new(80);
        let two_pi = ctx.pi().scale_pow2(1);
        for v in [-1e6, -7.0, -1e-3, 1e-3, 3.0, 6.5, 1e12] {
            let a = ctx.from_f64(v);
            let r = reduce_mod_2pi(&mut ctx, &a);
            assert!(!r.is_negative() && r < two_pi, "{v} -> {r}");
        }
        let small = ctx.from_f64(1.25);
        assert_eq!(reduce_mod_2pi(&mut ctx, &small), small);
    }

    #[test]
    fn negative_angle_wraps_forward() {
        let mut ctx = Context::new(53);
        let a = ctx.from_f64(-1.0);
        let r = reduce_mod_2pi(&mut ctx, &a);
        assert!((r.to_f64() - (2.0 * std::f64::consts::PI - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn six_pi_period() {
        let mut ctx = Context::new(64);
        let a = ctx.from_f64(20.0);
        let r = reduce_mod_pi_multiple(&mut ctx, &a, 6);
        assert!((r.to_f64() - (20.0 - 6.0 * std::f64::consts::PI)).abs() < 1e-14);
    }

    #[test]
    fn huge_angle_matches_wide_reference() {
        let work = 200;
        let mut ctx = Context::new(work);
        let c = ctx.from_f64(0.4);
        let angle = ctx.acos(&c).scale_pow2(60);
        let got = reduce_mod_2pi(&mut ctx, &angle);
        let mut wide = Context::new(4096);
        let exact = wide.convert(&angle);
        let reference = reduce_mod_2pi(&mut wide, &exact);
        let got_wide = wide.convert(&got);
        let gap = circular_gap(&mut wide, &got_wide, &reference);
        assert!(gap <= 2f64.powi(70 - work as i32), "gap={gap:e}");
    }

    #[test]
    fn adding_whole_turns_is_invisible() {
        let mut ctx = Context::new(256);
        let two_pi = ctx.pi().scale_pow2(1);
        for (x, k) in [(0.3, 1i64), (2.0, 12345), (5.9, 1 << 40), (1.0, 1 << 60)] {
            let x = ctx.from_f64(x);
            let turns = ctx.from_i64(k);
            let shift = ctx.mul(&two_pi, &turns);
            let angle = ctx.add(&x, &shift);
            let r = reduce_mod_2pi(&mut ctx, &angle);
            let gap = circular_gap(&mut ctx, &r, &x);
            assert!(gap < 2f64.powi(-180), "k={k} gap={gap:e}");
        }
    }
}
