//! Game parameters and their validity domain.

use num_traits::{One, Zero};

use crate::error::Error;
use crate::rational::{format_rational, Rational};

/// Parameters of one game instance.
///
/// `tau` weighs connectivity of the built network, `tau_r` connectivity of
/// the attacked network, and `1 - tau - tau_r` connectivity after healing.
/// `c_d` and `c_a` are per-link costs for the designer and the adversary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameParams {
    pub n: u32,
    pub c_d: Rational,
    pub c_a: Rational,
    pub tau: Rational,
    pub tau_r: Rational,
}

impl GameParams {
    /// Validates the domain: `n >= 2`, positive costs, nonnegative weights
    /// with `tau + tau_r <= 1`.
    pub fn new(
        n: u32,
        c_d: Rational,
        c_a: Rational,
        tau: Rational,
        tau_r: Rational,
    ) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::InvalidInput(format!(
                "n must be at least 2, got {n}"
            )));
        }
        if c_d <= Rational::zero() {
            return Err(Error::InvalidInput(format!(
                "c_d must be positive, got {}",
                format_rational(&c_d)
            )));
        }
        if c_a <= Rational::zero() {
            return Err(Error::InvalidInput(format!(
                "c_a must be positive, got {}",
                format_rational(&c_a)
            )));
        }
        if tau < Rational::zero() {
            return Err(Error::InvalidInput(format!(
                "tau must be nonnegative, got {}",
                format_rational(&tau)
            )));
        }
        if tau_r < Rational::zero() {
            return Err(Error::InvalidInput(format!(
                "tau_r must be nonnegative, got {}",
                format_rational(&tau_r)
            )));
        }
        if &tau + &tau_r > Rational::one() {
            return Err(Error::InvalidInput(format!(
                "tau + tau_r must not exceed 1, got {}",
                format_rational(&(&tau + &tau_r))
            )));
        }
        Ok(GameParams {
            n,
            c_d,
            c_a,
            tau,
            tau_r,
        })
    }

    /// Weight of the post-healing window, `1 - tau - tau_r`.
    pub fn residual_weight(&self) -> Rational {
        Rational::one() - &self.tau - &self.tau_r
    }
}
