//! Floating-point tolerances. Exact mode uses none of these.

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Identities that hold up to rounding only.
    pub identity: f64,
    /// Finite-difference derivative checks.
    pub derivative: f64,
    /// Sampled union-cover checks in numeric mode.
    pub cover: f64,
    /// Zero test and monotonicity slack of intercept profiles.
    pub profile: f64,
    /// Profile angles stay within `π/2 − pole_clamp` of zero.
    pub pole_clamp: f64,
    /// Default lower bound on `h + h''` for smooth bodies.
    pub curvature_margin: f64,
}

pub const TOLERANCES: Tolerances = Tolerances {
    identity: 1e-12,
    derivative: 1e-6,
    cover: 1e-6,
    profile: 1e-9,
    pole_clamp: 1e-3,
    curvature_margin: 1e-9,
};
