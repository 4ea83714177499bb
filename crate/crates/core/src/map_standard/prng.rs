//! Bits from the chaotic r = 4 orbit, one per step: 1 when the iterate is
//! above one half. Not suitable for cryptography.

use crate::error::{Error, Result};

/// Double-precision r = 4 orbit emitting one bit per step.
///
/// An iterate landing exactly on 0, 1 or 3/4 (the fixed points and the
/// preimage of 0) ends the stream with [`Error::Degenerate`].
#[derive(Debug, Clone)]
pub struct LogisticBits {
    x: f64,
    step: usize,
}

impl LogisticBits {
    pub fn new(x0: f64) -> Result<Self> {
        if !(x0 > 0.0 && x0 < 1.0) {
            return Err(Error::Domain(format!("seed must lie in (0, 1), got {x0}")));
        }
        if x0 == 0.75 {
            return Err(Error::Degenerate { index: 0, value: x0 });
        }
        Ok(LogisticBits { x: x0, step: 0 })
    }

    pub fn state(&self) -> f64 {
        self.x
    }

    pub fn next_bit(&mut self) -> Result<bool> {
        self.step += 1;
        self.x = 4.0 * self.x * (1.0 - self.x);
        if self.x == 0.0 || self.x == 1.0 || self.x == 0.75 {
            return Err(Error::Degenerate {
                index: self.step,
                value: self.x,
            });
        }
        Ok(self.x > 0.5)
    }
}

/// Discards `burn_in` steps and returns the next `count` bits.
pub fn prng_bits(x0: f64, count: usize, burn_in: usize) -> Result<Vec<bool>> {
    if count == 0 {
        return Err(Error::Config("bit count must be positive".into()));
    }
    let mut source = LogisticBits::new(x0)?;
    for _ in 0..burn_in {
        source.next_bit()?;
    }
    (0..count).map(|_| source.next_bit()).collect()
}
