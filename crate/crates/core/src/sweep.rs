//! Single-parameter sweeps with boundary-aware skipping.
//!
//! A sweep re-solves the game along an arithmetic grid of one parameter.
//! Grid values where an equality flag fires, where the case analysis
//! declines to answer, or where the selected row ties another candidate
//! are skipped rather than reported, so every emitted row is stable under
//! small perturbations of the swept parameter. The report also locates
//! the values where the equilibrium situation switches.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;

use crate::boundary::{chosen_tie_flag, equality_flags};
use crate::error::Error;
use crate::params::GameParams;
use crate::profile::Situation;
use crate::rational::{format_rational, Rational};
use crate::solver::{solve, Regime, UnspecifiedInfo};
use crate::thresholds::thresholds;

/// Upper bound on grid size, to catch a typo'd step before it melts the CPU.
const VALUE_CAP: usize = 100_000;

/// Which parameter the sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Tau,
    TauR,
    Ca,
    Cd,
}

impl SweepParam {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepParam::Tau => "tau",
            SweepParam::TauR => "tau_r",
            SweepParam::Ca => "c_a",
            SweepParam::Cd => "c_d",
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "tau" => Ok(SweepParam::Tau),
            "tau_r" | "taur" => Ok(SweepParam::TauR),
            "c_a" | "ca" => Ok(SweepParam::Ca),
            "c_d" | "cd" => Ok(SweepParam::Cd),
            other => Err(Error::InvalidInput(format!(
                "unknown sweep parameter {other:?}; expected tau, tau_r, c_a, or c_d"
            ))),
        }
    }
}

/// What to do when a grid value lands on a boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryPolicy {
    /// Record the value as skipped and keep sweeping.
    Skip,
    /// Abort the whole sweep.
    Error,
}

/// A sweep request: vary `param` from `from` to `to` in steps of `step`.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub from: Rational,
    pub to: Rational,
    pub step: Rational,
    pub boundary: BoundaryPolicy,
}

/// One evaluated grid value.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: Rational,
    pub regime: Regime,
    pub situation: Situation,
    pub u_d: Rational,
    pub u_a: Rational,
    pub e1_size: u64,
    pub ea_size: u64,
    pub e2_size: u64,
}

/// One grid value that was not evaluated, with the reasons.
#[derive(Debug, Clone, PartialEq)]
pub struct SkippedValue {
    pub value: Rational,
    pub reasons: Vec<String>,
}

/// Result of a sweep: evaluated rows, skipped values, and the grid values
/// where the equilibrium situation changes.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub param: SweepParam,
    pub rows: Vec<SweepRow>,
    pub skipped: Vec<SkippedValue>,
    pub switch_points: Vec<Rational>,
}

fn with_value(base: &GameParams, param: SweepParam, value: &Rational) -> Result<GameParams, Error> {
    let (mut c_d, mut c_a, mut tau, mut tau_r) = (
        base.c_d.clone(),
        base.c_a.clone(),
        base.tau.clone(),
        base.tau_r.clone(),
    );
    match param {
        SweepParam::Tau => tau = value.clone(),
        SweepParam::TauR => tau_r = value.clone(),
        SweepParam::Ca => c_a = value.clone(),
        SweepParam::Cd => c_d = value.clone(),
    }
    GameParams::new(base.n, c_d, c_a, tau, tau_r)
}

enum Eval {
    Row(Box<SweepRow>),
    Skip(Vec<String>),
}

fn solve_one(params: &GameParams, value: &Rational) -> Result<Eval, Error> {
    match solve(params) {
        Ok(solution) => {
            if let Some(tie) = chosen_tie_flag(&solution) {
                return Ok(Eval::Skip(vec![tie]));
            }
            let chosen = &solution.chosen;
            let missing =
                || Error::Inconsistency("a chosen equilibrium row is missing its payload".into());
            Ok(Eval::Row(Box::new(SweepRow {
                value: value.clone(),
                regime: solution.regime,
                situation: chosen.situation,
                u_d: chosen.u_d.clone().ok_or_else(missing)?,
                u_a: chosen.u_a.clone().ok_or_else(missing)?,
                e1_size: chosen.e1_size.ok_or_else(missing)?,
                ea_size: chosen.ea_size.ok_or_else(missing)?,
                e2_size: chosen.e2_size.ok_or_else(missing)?,
            })))
        }
        Err(Error::Unspecified(info)) => Ok(Eval::Skip(vec![format!(
            "the case analysis leaves this value unspecified: {}",
            info.reason
        )])),
        Err(e) => Err(e),
    }
}

fn abort(
    base: &GameParams,
    spec: &SweepSpec,
    value: &Rational,
    reasons: &[String],
) -> Result<SweepReport, Error> {
    let params = with_value(base, spec.param, value)?;
    Err(Error::Unspecified(Box::new(UnspecifiedInfo {
        reason: format!(
            "sweep aborted at {} = {}: {}",
            spec.param,
            format_rational(value),
            reasons.join("; ")
        ),
        regime: crate::solver::regime_tag(&params),
        thresholds: thresholds(&params)?,
        candidates: Vec::new(),
        notes: reasons.to_vec(),
    })))
}

/// Runs the sweep described by `spec` on top of `base`.
///
/// The grid is `from, from + step, ...` up to and including `to` when it
/// lands exactly. Both endpoints must be valid parameter values; every
/// single-parameter validity region is an interval, so the interior is
/// then valid too. Under [`BoundaryPolicy::Error`] the first skip-worthy
/// value aborts the sweep instead of being recorded.
///
/// A situation switch between consecutive evaluated rows is located at the
/// single skipped value between them when there is exactly one, and at the
/// later row's value otherwise.
pub fn run_sweep(base: &GameParams, spec: &SweepSpec) -> Result<SweepReport, Error> {
    if spec.step <= Rational::zero() {
        return Err(Error::InvalidInput(
            "the sweep step must be positive".into(),
        ));
    }
    if spec.from > spec.to {
        return Err(Error::InvalidInput(
            "the sweep range is empty: from exceeds to".into(),
        ));
    }
    with_value(base, spec.param, &spec.from)?;
    with_value(base, spec.param, &spec.to)?;

    let mut values: Vec<Rational> = Vec::new();
    let mut v = spec.from.clone();
    while v <= spec.to {
        if values.len() >= VALUE_CAP {
            return Err(Error::InvalidInput(format!(
                "the sweep would evaluate more than {VALUE_CAP} values"
            )));
        }
        values.push(v.clone());
        v += &spec.step;
    }

    let mut flagged: Vec<Option<Vec<String>>> = Vec::with_capacity(values.len());
    for value in &values {
        let params = with_value(base, spec.param, value)?;
        let flags = equality_flags(&params);
        if flags.is_empty() {
            flagged.push(None);
        } else {
            if spec.boundary == BoundaryPolicy::Error {
                return abort(base, spec, value, &flags);
            }
            flagged.push(Some(flags));
        }
    }

    let evals: Vec<Eval> = values
        .par_iter()
        .zip(flagged.into_par_iter())
        .map(|(value, flags)| match flags {
            Some(flags) => Ok(Eval::Skip(flags)),
            None => solve_one(&with_value(base, spec.param, value)?, value),
        })
        .collect::<Result<_, Error>>()?;

    let mut rows: Vec<SweepRow> = Vec::new();
    let mut skipped: Vec<SkippedValue> = Vec::new();
    for (value, eval) in values.iter().zip(evals) {
        match eval {
            Eval::Row(row) => rows.push(*row),
            Eval::Skip(reasons) => {
                if spec.boundary == BoundaryPolicy::Error {
                    return abort(base, spec, value, &reasons);
                }
                skipped.push(SkippedValue {
                    value: value.clone(),
                    reasons,
                });
            }
        }
    }

    let mut switch_points: Vec<Rational> = Vec::new();
    for pair in rows.windows(2) {
        if pair[0].situation != pair[1].situation {
            let between: Vec<&Rational> = skipped
                .iter()
                .map(|s| &s.value)
                .filter(|v| **v > pair[0].value && **v < pair[1].value)
                .collect();
            let point = if between.len() == 1 {
                between[0].clone()
            } else {
                pair[1].value.clone()
            };
            switch_points.push(point);
        }
    }

    Ok(SweepReport {
        param: spec.param,
        rows,
        skipped,
        switch_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    fn rational(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn params(n: u32, c_d: &str, c_a: &str, tau: &str, tau_r: &str) -> GameParams {
        GameParams::new(
            n,
            rational(c_d),
            rational(c_a),
            rational(tau),
            rational(tau_r),
        )
        .unwrap()
    }

    fn spec(param: SweepParam, from: &str, to: &str, step: &str) -> SweepSpec {
        SweepSpec {
            param,
            from: rational(from),
            to: rational(to),
            step: rational(step),
            boundary: BoundaryPolicy::Skip,
        }
    }

    #[test]
    fn skips_boundary_values_and_locates_the_switch_on_a_gap() {
        // tree play below tau_r = 1/8, a ring up to 1/4, then heal-only;
        // the S1 -> S4 crossing at 1/4 is itself a flagged grid value
        let base = params(4, "1/5", "1/8", "1/10", "0");
        let report = run_sweep(&base, &spec(SweepParam::TauR, "0", "3/10", "1/80")).unwrap();

        let skipped: Vec<&Rational> = report.skipped.iter().map(|s| &s.value).collect();
        let expected_skips: Vec<Rational> = [2u64, 8, 10, 12, 20, 22, 24]
            .iter()
            .map(|k| Rational::new((*k).into(), 80u64.into()))
            .collect();
        assert_eq!(skipped, expected_skips.iter().collect::<Vec<_>>());
        assert_eq!(report.rows.len(), 25 - 7);

        let tree_rows = report.rows.iter().filter(|r| r.e1_size == 3).count();
        let ring_rows = report.rows.iter().filter(|r| r.e1_size == 4).count();
        let heal_rows = report
            .rows
            .iter()
            .filter(|r| r.situation == Situation::S4)
            .count();
        assert_eq!(tree_rows, 8);
        assert_eq!(ring_rows, 8);
        assert_eq!(heal_rows, 2);

        assert_eq!(report.switch_points, vec![rational("1/4")]);
    }

    #[test]
    fn adjacent_rows_place_the_switch_on_the_later_value() {
        // offset grid with odd numerators: no flag ever fires, so the
        // S1 -> S4 switch sits on the first row past the crossing
        let base = params(4, "1/5", "1/8", "1/10", "0");
        let report = run_sweep(&base, &spec(SweepParam::TauR, "1/160", "47/160", "1/80")).unwrap();
        assert!(report.skipped.is_empty());
        assert_eq!(report.rows.len(), 24);
        assert_eq!(report.switch_points, vec![rational("41/160")]);
    }

    #[test]
    fn error_policy_aborts_on_the_first_flagged_value() {
        let base = params(4, "1/5", "1/8", "1/10", "0");
        let mut s = spec(SweepParam::TauR, "0", "3/10", "1/80");
        s.boundary = BoundaryPolicy::Error;
        match run_sweep(&base, &s) {
            Err(Error::Unspecified(info)) => {
                assert!(info.reason.contains("1/40"), "reason: {}", info.reason);
            }
            other => panic!("expected an abort, got {other:?}"),
        }
    }

    #[test]
    fn unspecified_corners_are_skipped_with_a_reason() {
        // tau_r past 3/8 pushes the repaid budget to n - 1, where no
        // fortification level is defined
        let base = params(4, "1/20", "1/8", "1/5", "0");
        let report = run_sweep(&base, &spec(SweepParam::TauR, "31/80", "33/80", "1/80")).unwrap();
        assert!(report.rows.is_empty());
        assert_eq!(report.skipped.len(), 3);
        assert!(report.skipped[0].reasons[0].contains("unspecified"));
        assert!(report.skipped[1].reasons[0].contains("healing budget"));
        assert!(report.skipped[2].reasons[0].contains("unspecified"));
        assert!(report.switch_points.is_empty());
    }

    #[test]
    fn sweeping_tau_changes_the_heal_only_payoff() {
        let base = params(4, "1/5", "1/8", "0", "21/80");
        let report = run_sweep(&base, &spec(SweepParam::Tau, "3/40", "1/10", "1/40")).unwrap();
        assert_eq!(report.rows.len(), 2);
        assert_eq!(report.rows[0].situation, Situation::S4);
        assert_eq!(report.rows[0].u_d, rational("1/16"));
        assert_eq!(report.rows[1].u_d, rational("3/80"));
        assert_eq!(report.rows[0].u_a, rational("27/80"));
    }

    #[test]
    fn rejects_degenerate_ranges() {
        let base = params(4, "1/5", "1/8", "1/10", "0");
        let zero_step = SweepSpec {
            step: rational("0"),
            ..spec(SweepParam::TauR, "0", "1/4", "1/80")
        };
        assert!(matches!(
            run_sweep(&base, &zero_step),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            run_sweep(&base, &spec(SweepParam::TauR, "1/4", "1/8", "1/80")),
            Err(Error::InvalidInput(_))
        ));
        // an endpoint that breaks tau + tau_r <= 1 is rejected up front
        assert!(matches!(
            run_sweep(&base, &spec(SweepParam::TauR, "0", "19/20", "1/80")),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn parses_parameter_names() {
        assert_eq!("tau".parse::<SweepParam>().unwrap(), SweepParam::Tau);
        assert_eq!("tau_r".parse::<SweepParam>().unwrap(), SweepParam::TauR);
        assert_eq!("taur".parse::<SweepParam>().unwrap(), SweepParam::TauR);
        assert_eq!("c_a".parse::<SweepParam>().unwrap(), SweepParam::Ca);
        assert_eq!("cd".parse::<SweepParam>().unwrap(), SweepParam::Cd);
        assert!("n".parse::<SweepParam>().is_err());
    }
}
