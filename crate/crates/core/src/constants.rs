/// Euler-Mascheroni constant gamma (OEIS A001620) to f64 precision.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_86;

/// Limit of the dependency ratio: e^gamma / 2 = 0.8905362...
pub fn half_e_gamma() -> f64 {
    0.5 * EULER_GAMMA.exp()
}
