//! Equality-boundary detection for parameter scans.
//!
//! The case analysis behind [`crate::solver::solve`] splits on strict
//! inequalities; points where one of those comparisons is exactly tight are
//! knife edges where tie-breaking conventions, not economics, decide the
//! outcome. Sweeps and validation grids skip such points. Plain solves do
//! not consult this module: the solver itself raises
//! [`crate::error::Error::Unspecified`] on the equalities it cannot decide
//! and follows the documented weak side everywhere else.
//!
//! Deliberately not flagged: integrality of `(1 - tau) / c_d` (it enters
//! only integer-to-integer budget comparisons, never a tight inequality)
//! and the safe-network affordability tests `1 = delta c_d` and
//! `1 - tau = (delta - n + 1) c_d` (their weak sides are part of the
//! feasibility definition, so equality is not ambiguous).

use num_traits::{One, Zero};

use crate::params::GameParams;
use crate::rational::Rational;
use crate::solver::SpeSolution;

fn integral_quotient(num: &Rational, den: &Rational) -> bool {
    let ratio = num / den;
    ratio.is_integer() && ratio >= Rational::one()
}

/// Lists every tight equality at this parameter point. Empty means the
/// point is in the interior of a case-analysis cell.
pub fn equality_flags(params: &GameParams) -> Vec<String> {
    let mut flags = Vec::new();
    let one = Rational::one();
    let post_build = &one - &params.tau;
    let residual = params.residual_weight();
    let tree_cost = Rational::from_integer((u64::from(params.n) - 1).into()) * &params.c_d;

    if params.c_a == post_build {
        flags.push("c_a = 1 - tau: a single removal exactly breaks even".into());
    }
    if tree_cost == one {
        flags.push("(n - 1) c_d = 1: a spanning tree exactly breaks even".into());
    }
    if residual == tree_cost {
        flags.push("1 - tau - tau_r = (n - 1) c_d: the regime test is exactly tight".into());
    }
    if params.tau.is_zero() && params.tau_r.is_zero() {
        flags.push("tau + tau_r = 0: both pre-heal windows are worthless".into());
    }
    if integral_quotient(&params.tau_r, &params.c_a) {
        flags.push("tau_r / c_a is an integer: the repaid-removal budget is exactly tight".into());
    }
    if integral_quotient(&post_build, &params.c_a) {
        flags.push("(1 - tau) / c_a is an integer: the outlast budget is exactly tight".into());
    }
    if integral_quotient(&residual, &params.c_d) {
        flags.push(
            "(1 - tau - tau_r) / c_d is an integer: the healing budget is exactly tight".into(),
        );
    }
    if integral_quotient(&residual, &params.c_a) {
        flags.push(
            "(1 - tau - tau_r) / c_a is an integer: the removal-wave budget is exactly tight"
                .into(),
        );
    }
    flags
}

/// Flags a solved point whose winning utility ties another feasible
/// candidate: the reported equilibrium then hangs on the tie-break order.
pub fn chosen_tie_flag(solution: &SpeSolution) -> Option<String> {
    let chosen_ud = solution.chosen.u_d.as_ref()?;
    let tied = solution
        .candidates
        .iter()
        .filter(|c| c.feasible && c.u_d.is_some())
        .filter(|c| {
            c.situation != solution.chosen.situation
                || c.e1_size != solution.chosen.e1_size
                || c.e2_size != solution.chosen.e2_size
        })
        .find(|c| c.u_d.as_ref() == Some(chosen_ud))?;
    Some(format!(
        "chosen utility {} ties the {} candidate; the winner is a tie-break artifact",
        crate::rational::format_rational(chosen_ud),
        tied.situation
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;
    use crate::solver::solve;

    fn params(n: u32, c_d: &str, c_a: &str, tau: &str, tau_r: &str) -> GameParams {
        GameParams::new(
            n,
            parse_rational(c_d).unwrap(),
            parse_rational(c_a).unwrap(),
            parse_rational(tau).unwrap(),
            parse_rational(tau_r).unwrap(),
        )
        .unwrap()
    }

    fn case_study(tau_r: &str) -> GameParams {
        params(10, "1/20", "1/8", "3/10", tau_r)
    }

    #[test]
    fn interior_points_have_no_flags() {
        for tau_r in ["7/100", "19/50", "27/50"] {
            assert!(
                equality_flags(&case_study(tau_r)).is_empty(),
                "tau_r = {tau_r}"
            );
        }
    }

    #[test]
    fn repaid_removal_integrality_is_flagged() {
        for tau_r in ["1/8", "1/4", "3/8", "1/2"] {
            let flags = equality_flags(&case_study(tau_r));
            assert!(
                flags.iter().any(|f| f.contains("tau_r / c_a")),
                "tau_r = {tau_r}: {flags:?}"
            );
        }
    }

    #[test]
    fn zero_premium_is_not_an_integrality_flag() {
        // tau_r / c_a = 0 is integral but not a budget boundary; the
        // healing-budget flag at this point is real and stays
        let flags = equality_flags(&case_study("0"));
        assert!(
            flags.iter().all(|f| !f.contains("tau_r / c_a")),
            "{flags:?}"
        );
        assert!(flags.iter().any(|f| f.contains("/ c_d")));
    }

    #[test]
    fn healing_budget_integrality_is_flagged() {
        // (1 - 3/10 - 1/20) / (1/20) = 13
        let flags = equality_flags(&case_study("1/20"));
        assert!(flags.iter().any(|f| f.contains("/ c_d")));
    }

    #[test]
    fn removal_wave_integrality_is_flagged() {
        // (1 - 3/10 - 3/40) / (1/8) = 5
        let flags = equality_flags(&case_study("3/40"));
        assert!(flags.iter().any(|f| f.contains("(1 - tau - tau_r) / c_a")));
    }

    #[test]
    fn regime_equality_is_flagged() {
        let flags = equality_flags(&case_study("1/4"));
        assert!(flags.iter().any(|f| f.contains("regime")));
    }

    #[test]
    fn break_even_removal_cost_is_flagged() {
        let flags = equality_flags(&params(5, "1/10", "7/10", "3/10", "1/10"));
        assert!(flags.iter().any(|f| f.contains("c_a = 1 - tau")));
    }

    #[test]
    fn break_even_tree_cost_is_flagged() {
        let flags = equality_flags(&params(5, "1/4", "1/2", "1/5", "1/10"));
        assert!(flags.iter().any(|f| f.contains("(n - 1) c_d = 1")));
    }

    #[test]
    fn tie_between_null_play_and_concession_is_flagged() {
        // u_d of the concede-one-removal candidate is exactly zero, tying
        // the null strategy; fewer created links pick the null play
        let p = params(10, "2/35", "1/9", "3/10", "3/7");
        assert!(equality_flags(&p).is_empty());
        let s = solve(&p).unwrap();
        assert_eq!(s.chosen.situation, crate::profile::Situation::S5);
        let flag = chosen_tie_flag(&s).unwrap();
        assert!(flag.contains("S2"));
    }

    #[test]
    fn clear_winners_are_not_tie_flagged() {
        let s = solve(&case_study("2/5")).unwrap();
        assert!(chosen_tie_flag(&s).is_none());
    }
}
