//! Exact solutions of the logistic equation `ẋ = r x (1 − x)` and of two
//! logistic maps, with arbitrary-precision iteration used as ground truth.
//!
//! - [`continuous`]: particular and general Riccati solutions of the ODE,
//!   plus an RK4 reference integrator.
//! - [`map_standard`]: `x_{n+1} = r x_n (1 − x_n)` with its closed forms at
//!   r = 2, 4 and −2, the conjugacy construction, round-off divergence
//!   analysis and a bit generator at r = 4.
//! - [`map_riccati`]: `x_{n+1} − x_n = r x_n (1 − x_{n+1})` with its
//!   particular and general Riccati solutions.
//! - [`precision`]: fixed-width big floats, argument reduction and
//!   trajectory comparison.

pub mod continuous;
pub mod error;
pub mod map_riccati;
pub mod map_standard;
pub mod precision;

pub use error::{Error, ErrorKind, Result};
pub use precision::{PrecisionPolicy, Real, Trajectory};
