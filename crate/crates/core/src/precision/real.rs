//! Fixed-width binary floating point on top of `astro-float`.
//!
//! `astro-float` allocates mantissas in whole 64-bit words, so a request for
//! 53 bits silently becomes 64. Every result produced here is re-rounded to
//! exactly `bits` significant bits, which makes a 53-bit context reproduce
//! IEEE double arithmetic for `+`, `-` and `*`.

use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};

const RM: RoundingMode = RoundingMode::ToEven;

/// Extra bits carried by operations whose result cannot be formed exactly.
const GUARD_BITS: usize = 64;

// The `*_full_prec` operations mishandle a zero operand, so zeros are
// settled before reaching them.

pub(crate) fn exact_add(a: &BigFloat, b: &BigFloat) -> BigFloat {
    if b.is_zero() {
        a.clone()
    } else if a.is_zero() {
        b.clone()
    } else {
        a.add_full_prec(b)
    }
}

pub(crate) fn exact_sub(a: &BigFloat, b: &BigFloat) -> BigFloat {
    if b.is_zero() {
        a.clone()
    } else if a.is_zero() {
        b.neg()
    } else {
        a.sub_full_prec(b)
    }
}

pub(crate) fn exact_mul(a: &BigFloat, b: &BigFloat) -> BigFloat {
    if a.is_zero() || b.is_zero() {
        BigFloat::from_word(0, 64)
    } else {
        a.mul_full_prec(b)
    }
}

/// A real number carrying the significand width it was rounded to.
#[derive(Clone, Debug)]
pub struct Real {
    value: BigFloat,
    bits: usize,
}

impl Real {
    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn is_finite(&self) -> bool {
        !(self.value.is_nan() || self.value.is_inf())
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.value.is_negative()
    }

    /// Binary exponent `e` such that `|x| ∈ [2^(e-1), 2^e)`; zero maps to `i32::MIN`.
    pub fn exponent(&self) -> i32 {
        if self.is_zero() {
            return i32::MIN;
        }
        self.value.exponent().unwrap_or(i32::MAX)
    }

    pub fn abs(&self) -> Real {
        Real {
            value: self.value.abs(),
            bits: self.bits,
        }
    }

    pub fn neg(&self) -> Real {
        Real {
            value: self.value.neg(),
            bits: self.bits,
        }
    }

    /// Multiplies by `2^k`; exact.
    pub fn scale_pow2(&self, k: i64) -> Real {
        if self.is_zero() || !self.is_finite() {
            return self.clone();
        }
        let e = self.value.exponent().unwrap_or(0) as i64 + k;
        let e = e.clamp(i32::MIN as i64 + 1, i32::MAX as i64) as i32;
        let mut value = self.value.clone();
        value.set_exponent(e);
        Real { value, bits: self.bits }
    }

    /// Correctly rounded conversion to the nearest double.
    pub fn to_f64(&self) -> f64 {
        if self.value.is_nan() {
            return f64::NAN;
        }
        if self.value.is_inf() {
            return if self.value.is_inf_pos() {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            };
        }
        if self.is_zero() {
            return 0.0;
        }
        let Some((words, _, sign, exponent, _)) = self.value.as_raw_parts() else {
            return f64::NAN;
        };
        // Words are least significant first; the top word is normalized.
        let (top, rest) = words.split_last().expect("non-zero mantissa");
        let sticky = rest.iter().any(|w| *w != 0) as u64;
        let magnitude = ldexp((top | sticky) as f64, exponent as i64 - 64);
        match sign {
            Sign::Neg => -magnitude,
            Sign::Pos => magnitude,
        }
    }

    /// Decimal text that re-parses to the same value at the same width:
    /// 17 significant digits at double width, every stored digit above it.
    pub fn to_decimal_string(&self) -> String {
        if self.bits <= 53 {
            format!("{:.16e}", self.to_f64())
        } else {
            format!("{}", self.value)
        }
    }

    pub fn total_cmp(&self, other: &Real) -> Ordering {
        match self.value.cmp(&other.value) {
            Some(c) if c < 0 => Ordering::Less,
            Some(0) => Ordering::Equal,
            Some(_) => Ordering::Greater,
            None => Ordering::Equal,
        }
    }

    pub(crate) fn raw(&self) -> &BigFloat {
        &self.value
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.value.cmp(&other.value) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.cmp(&other.value).map(|c| c.cmp(&0))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

fn ldexp(mut x: f64, mut k: i64) -> f64 {
    while k > 1000 {
        x *= 2f64.powi(1000);
        k -= 1000;
    }
    while k < -1000 {
        x *= 2f64.powi(-1000);
        k += 1000;
    }
    x * 2f64.powi(k as i32)
}

/// Arithmetic at a fixed significand width.
///
/// Holds the constant cache (π and friends) for that width, so a context is
/// meant to live for one computation on one thread.
pub struct Context {
    bits: usize,
    consts: Consts,
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Context").field("bits", &self.bits).finish()
    }
}

impl Context {
    /// # Panics
    /// If `bits` is zero or the constant cache cannot be allocated.
    pub fn new(bits: usize) -> Self {
        assert!(bits > 0, "significand width must be positive");
        Context {
            bits,
            consts: Consts::new().expect("allocate constant cache"),
        }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    /// Rounds `x` to exactly `bits` significant bits.
    fn round_to(x: BigFloat, bits: usize) -> Real {
        if x.is_zero() || x.is_nan() || x.is_inf() {
            return Real { value: x, bits };
        }
        let e = x.exponent().expect("finite value has an exponent");
        let mut y = x;
        y.set_exponent(0);
        let mut y = y.round(bits, RM);
        let shifted = y.exponent().expect("finite") + e;
        y.set_exponent(shifted);
        // Already representable, so this only trims the storage.
        let _ = y.set_precision(bits, RM);
        Real { value: y, bits }
    }

    fn fit(&self, x: BigFloat) -> Real {
        Self::round_to(x, self.bits)
    }

    fn work(&self) -> usize {
        self.bits + GUARD_BITS
    }

    pub fn from_f64(&self, v: f64) -> Real {
        self.fit(BigFloat::from_f64(v, 64))
    }

    pub fn from_i64(&self, v: i64) -> Real {
        self.fit(BigFloat::from_i64(v, 64))
    }

    /// Re-rounds a value produced elsewhere to this context's width.
    pub fn convert(&self, x: &Real) -> Real {
        self.fit(x.value.clone())
    }

    pub fn add(&self, a: &Real, b: &Real) -> Real {
        self.fit(exact_add(&a.value, &b.value))
    }

    pub fn sub(&self, a: &Real, b: &Real) -> Real {
        self.fit(exact_sub(&a.value, &b.value))
    }

    pub fn mul(&self, a: &Real, b: &Real) -> Real {
        self.fit(exact_mul(&a.value, &b.value))
    }

    pub fn div(&self, a: &Real, b: &Real) -> Real {
        self.fit(a.value.div(&b.value, self.work(), RM))
    }

    pub fn sqrt(&self, a: &Real) -> Real {
        self.fit(a.value.sqrt(self.work(), RM))
    }

    pub fn pi(&mut self) -> Real {
        let p = self.work();
        let pi = self.consts.pi(p, RM);
        self.fit(pi)
    }

    pub fn acos(&mut self, a: &Real) -> Real {
        let p = self.work();
        let v = a.value.acos(p, RM, &mut self.consts);
        self.fit(v)
    }

    pub fn cos(&mut self, a: &Real) -> Real {
        let p = self.work().max(a.value.mantissa_max_bit_len().unwrap_or(0));
        let v = a.value.cos(p, RM, &mut self.consts);
        self.fit(v)
    }

    pub fn exp(&mut self, a: &Real) -> Real {
        let p = self.work();
        let v = a.value.exp(p, RM, &mut self.consts);
        self.fit(v)
    }

    pub fn ln(&mut self, a: &Real) -> Real {
        let p = self.work();
        let v = a.value.ln(p, RM, &mut self.consts);
        self.fit(v)
    }

    /// Parses decimal text, rounding to this context's width.
    pub fn parse(&mut self, s: &str) -> Option<Real> {
        let v = BigFloat::parse(s.trim(), Radix::Dec, self.work() + 64, RM, &mut self.consts);
        if v.is_nan() {
            None
        } else {
            Some(self.fit(v))
        }
    }

    /// π rounded to `bits`, independent of this context's width.
    pub(crate) fn pi_at(&mut self, bits: usize) -> BigFloat {
        self.consts.pi(bits, RM)
    }

    pub(crate) fn finish(&self, x: BigFloat) -> Real {
        self.fit(x)
    }
}
