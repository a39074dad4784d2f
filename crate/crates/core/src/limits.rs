//! Enumeration budgets for the exhaustive checks.
//!
//! Setting `HSS_ENUM_BUDGET` to a positive integer replaces every default below.

/// Messages enumerated by a brute-force labelweight computation.
pub const LABELWEIGHT_BUDGET: u128 = 1 << 24;
/// Monomials enumerated during Eval synthesis.
pub const MONOMIAL_BUDGET: u128 = 1 << 22;
/// Randomness strings enumerated per secret by the privacy audit.
pub const PRIVACY_BUDGET: u128 = 1 << 20;
/// Default for anything else.
pub const DEFAULT_BUDGET: u128 = 1 << 22;

pub const BUDGET_ENV: &str = "HSS_ENUM_BUDGET";

/// `default`, unless the environment overrides it.
pub fn budget(default: u128) -> u128 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u128>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(default)
}
