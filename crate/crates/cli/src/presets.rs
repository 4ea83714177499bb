//! Parameter sets of the three reference figures.

/// Logistic ODE curves for several Riccati shifts.
pub mod figure1 {
    pub const R: f64 = 1.7;
    pub const X0: f64 = 0.11;
    pub const GAMMAS: [f64; 4] = [0.14, 0.15, 0.17, 0.25];
    pub const T_END: f64 = 10.0;
    pub const DT: f64 = 0.1;
}

/// The r = −2 standard map: iteration against both closed forms.
pub mod figure2 {
    pub const R: f64 = -2.0;
    pub const X0: f64 = 0.9;
    pub const STEPS: usize = 60;
    pub const WORKING_BITS: usize = 53;
    pub const ORACLE_BITS: usize = 512;
    pub const THRESHOLD: f64 = 0.01;
}

/// General solutions of the backward-coupled map.
pub mod figure3 {
    pub const R: f64 = 1.73;
    pub const X0: f64 = 0.333;
    pub const GAMMAS: [f64; 5] = [0.5, 1.0, 2.0, 5.0, 10.0];
    pub const STEPS: usize = 50;
}
