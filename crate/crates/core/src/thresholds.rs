//! Budget thresholds that drive the closed-form case analysis.
//!
//! Each threshold is an exact floor or ceiling of a weight-to-cost ratio
//! and bounds how many links a player can profitably create or remove.

use num_traits::ToPrimitive;

use crate::error::Error;
use crate::params::GameParams;
use crate::rational::Rational;

/// Exact budget thresholds for one parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Thresholds {
    /// `floor(tau_r / c_a)`: largest attack the recovery window alone repays.
    pub k_a_r: u64,
    /// `floor((1 - tau) / c_a)`: largest attack repaid when the network
    /// stays down through recovery and beyond.
    pub k_a_h: u64,
    /// `floor((1 - tau) / c_d)`: most links the designer can fund from the
    /// two post-build windows.
    pub k_d_h: u64,
    /// `floor((1 - tau - tau_r) / c_d)`: most healing links the residual
    /// window can fund.
    pub k: u64,
    /// `ceil((1 - tau - tau_r) / c_a)`: smallest removal count whose cost
    /// reaches the residual weight.
    pub k_a: u64,
    /// Prescribed link budget for a never-disconnected play, when the case
    /// analysis prescribes one (filled by the solver, `None` otherwise).
    pub delta: Option<u64>,
}

fn floor_u64(value: &Rational, what: &str) -> Result<u64, Error> {
    value
        .floor()
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::InvalidInput(format!("threshold {what} exceeds the supported range")))
}

fn ceil_u64(value: &Rational, what: &str) -> Result<u64, Error> {
    value
        .ceil()
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::InvalidInput(format!("threshold {what} exceeds the supported range")))
}

/// Computes the five budget thresholds; `delta` starts unset.
pub fn thresholds(params: &GameParams) -> Result<Thresholds, Error> {
    let one_minus_tau = Rational::from_integer(1.into()) - &params.tau;
    let residual = params.residual_weight();
    Ok(Thresholds {
        k_a_r: floor_u64(&(&params.tau_r / &params.c_a), "tau_r / c_a")?,
        k_a_h: floor_u64(&(&one_minus_tau / &params.c_a), "(1 - tau) / c_a")?,
        k_d_h: floor_u64(&(&one_minus_tau / &params.c_d), "(1 - tau) / c_d")?,
        k: floor_u64(&(&residual / &params.c_d), "(1 - tau - tau_r) / c_d")?,
        k_a: ceil_u64(&(&residual / &params.c_a), "(1 - tau - tau_r) / c_a")?,
        delta: None,
    })
}

fn ceil_half(x: u128) -> u128 {
    x.div_ceil(2)
}

fn to_u64(x: u128) -> Result<u64, Error> {
    u64::try_from(x)
        .map_err(|_| Error::InvalidInput("link budget exceeds the supported range".into()))
}

/// Literal link-budget formula for a never-disconnected play, split on the
/// attacker's recovery-window budget `k_a_r` and the healing budget `k`.
///
/// Undefined when `k = 0` meets the `k_a_r = 1`, `k_a_h != k + 1` branch;
/// that branch divides by `k`.
pub fn delta(n: u32, t: &Thresholds) -> Result<u64, Error> {
    let n = u128::from(n);
    let value = if t.k_a_r > 1 {
        if t.k >= 1 {
            ceil_half(n * (u128::from(t.k_a_r) + 1))
        } else {
            ceil_half(n * (u128::from(t.k_a_h) + 1))
        }
    } else if t.k_a_r == 1 {
        if t.k_a_h == t.k + 1 {
            n
        } else {
            if t.k == 0 {
                return Err(Error::InvalidInput(
                    "link budget is undefined for k = 0 when k_a_r = 1 and k_a_h != k + 1".into(),
                ));
            }
            let m = n / u128::from(t.k);
            n + m + ceil_half(m)
        }
    } else if t.k_a_h == t.k {
        n - 1
    } else {
        n
    };
    to_u64(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    fn rat(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn case_study(tau_r: &str) -> GameParams {
        GameParams::new(10, rat("1/20"), rat("1/8"), rat("3/10"), rat(tau_r)).unwrap()
    }

    #[test]
    fn thresholds_match_hand_computation() {
        let t = thresholds(&case_study("19/50")).unwrap();
        assert_eq!(t.k_a_r, 3);
        assert_eq!(t.k_a_h, 5);
        assert_eq!(t.k_d_h, 14);
        assert_eq!(t.k, 6);
        assert_eq!(t.k_a, 3);
        assert_eq!(t.delta, None);
    }

    #[test]
    fn thresholds_floor_exact_quotients_without_drift() {
        // tau_r / c_a = 2 exactly; a naive float floor could land on 1
        let t = thresholds(&case_study("1/4")).unwrap();
        assert_eq!(t.k_a_r, 2);
        assert_eq!(t.k, 9);
    }

    #[test]
    fn delta_large_recovery_budget_uses_k_a_r() {
        let t = thresholds(&case_study("3/10")).unwrap();
        assert_eq!((t.k_a_r, t.k), (2, 8));
        assert_eq!(delta(10, &t).unwrap(), 15);

        let t = thresholds(&case_study("9/20")).unwrap();
        assert_eq!((t.k_a_r, t.k), (3, 5));
        assert_eq!(delta(10, &t).unwrap(), 20);
    }

    #[test]
    fn delta_zero_healing_budget_uses_k_a_h() {
        let p = GameParams::new(6, rat("1/10"), rat("1/5"), rat("1/2"), rat("1/2")).unwrap();
        let t = thresholds(&p).unwrap();
        assert_eq!((t.k_a_r, t.k, t.k_a_h), (2, 0, 2));
        assert_eq!(delta(6, &t).unwrap(), 9);
    }

    #[test]
    fn delta_unit_recovery_budget_splits_on_k_a_h() {
        let p = GameParams::new(5, rat("3/20"), rat("1/4"), rat("1/2"), rat("3/10")).unwrap();
        let t = thresholds(&p).unwrap();
        assert_eq!((t.k_a_r, t.k_a_h, t.k), (1, 2, 1));
        assert_eq!(delta(5, &t).unwrap(), 5);

        let t = thresholds(&case_study("1/5")).unwrap();
        assert_eq!((t.k_a_r, t.k_a_h, t.k), (1, 5, 10));
        assert_eq!(delta(10, &t).unwrap(), 12);
    }

    #[test]
    fn delta_zero_recovery_budget_splits_on_k_a_h_equals_k() {
        let p = GameParams::new(7, rat("1/5"), rat("1/4"), rat("1/2"), rat("1/100")).unwrap();
        let t = thresholds(&p).unwrap();
        assert_eq!((t.k_a_r, t.k_a_h, t.k), (0, 2, 2));
        assert_eq!(delta(7, &t).unwrap(), 6);

        let p = GameParams::new(7, rat("1/10"), rat("1/4"), rat("1/2"), rat("1/100")).unwrap();
        let t = thresholds(&p).unwrap();
        assert_eq!((t.k_a_r, t.k_a_h, t.k), (0, 2, 4));
        assert_eq!(delta(7, &t).unwrap(), 7);
    }

    #[test]
    fn delta_is_undefined_on_the_zero_k_branch() {
        let p = GameParams::new(5, rat("3/10"), rat("1/5"), rat("1/2"), rat("3/10")).unwrap();
        let t = thresholds(&p).unwrap();
        assert_eq!((t.k_a_r, t.k_a_h, t.k), (1, 2, 0));
        assert!(delta(5, &t).is_err());
    }
}
