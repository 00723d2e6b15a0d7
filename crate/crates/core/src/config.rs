/// Numerical tolerances shared by the analyses.
///
/// `Default` gives the values used throughout the test suite and the CLI.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    /// Absolute singular-value cutoff for numerical rank. `None` selects
    /// `max(rows, cols) * eps * sigma_max`.
    pub rank: Option<f64>,
    /// Relative threshold for the Hermitian dissipativity tests; scaled by
    /// `max(1, |E| |A|)` before comparison.
    pub dissipativity: f64,
    /// Multiplicative slack for the `1/lambda` resolvent bounds.
    pub bound_slack: f64,
    /// Largest exponent `k` probed when searching `lambda = 2^k` for a
    /// resolvent witness.
    pub witness_max_exponent: i32,
    /// Cap on the empirical radiality constant.
    pub radiality_cap: f64,
    /// Relative agreement required between successive limit estimates.
    pub limit: f64,
    /// Relative size of the Z0 component tolerated in an initial datum.
    pub consistency: f64,
    /// Absolute slack when checking that `|Ex(t)|` does not increase.
    pub contraction_slack: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank: None,
            dissipativity: 1e-10,
            bound_slack: 1e-8,
            witness_max_exponent: 40,
            radiality_cap: 10.0,
            limit: 1e-2,
            consistency: 1e-8,
            contraction_slack: 1e-10,
        }
    }
}
