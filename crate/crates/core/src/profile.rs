//! Strategy profiles, outcome classification, and exact payoffs.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::graph::{is_connected, EdgeSet};
use crate::params::GameParams;
use crate::rational::Rational;

/// One full play of the game: the designer builds `e1`, the adversary
/// removes `ea`, and the designer heals with `e2`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StrategyProfile {
    pub e1: EdgeSet,
    pub ea: EdgeSet,
    pub e2: EdgeSet,
}

impl StrategyProfile {
    /// Checks the stage rules on nodes `0..n`: all edges in range, the
    /// attack removes only built links, and healing never duplicates a
    /// surviving link (re-adding a removed link is allowed).
    pub fn validate(&self, n: u32) -> Result<(), Error> {
        for (set, name) in [(&self.e1, "e1"), (&self.ea, "ea"), (&self.e2, "e2")] {
            if let Some(max) = set.max_node() {
                if max >= n {
                    return Err(Error::InvalidProfile(format!(
                        "{name} mentions node {max}, out of range for n={n}"
                    )));
                }
            }
        }
        if !self.ea.is_subset(&self.e1) {
            return Err(Error::InvalidProfile(
                "ea must remove only links present in e1".into(),
            ));
        }
        let surviving = self.e1.difference(&self.ea);
        if !self.e2.is_disjoint(&surviving) {
            return Err(Error::InvalidProfile(
                "e2 must not duplicate a link that survived the attack".into(),
            ));
        }
        Ok(())
    }

    /// Network standing after the attack, `e1 \ ea`.
    pub fn attacked(&self) -> EdgeSet {
        self.e1.difference(&self.ea)
    }

    /// Network standing after healing, `(e1 \ ea) ∪ e2`.
    pub fn healed(&self) -> EdgeSet {
        self.attacked().union(&self.e2)
    }

    /// Links the designer paid for across both build stages.
    pub fn designer_links(&self) -> usize {
        self.e1.len() + self.e2.len()
    }
}

/// Connectivity history of one play, coarsened to the five outcomes the
/// solver reasons about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Situation {
    /// Connected in all three windows.
    S1,
    /// Attack disconnects, healing restores connectivity.
    S2,
    /// Attack disconnects and the network stays disconnected.
    S3,
    /// Never connected until healing connects it.
    S4,
    /// Disconnected in all three windows.
    S5,
}

impl Situation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Situation::S1 => "S1",
            Situation::S2 => "S2",
            Situation::S3 => "S3",
            Situation::S4 => "S4",
            Situation::S5 => "S5",
        }
    }

    pub const ALL: [Situation; 5] = [
        Situation::S1,
        Situation::S2,
        Situation::S3,
        Situation::S4,
        Situation::S5,
    ];
}

impl fmt::Display for Situation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Maps the connectivity indicator triple (built, attacked, healed) to its
/// situation. Two triples cannot arise: removal cannot connect, so (0,1,*)
/// is impossible, and healing cannot disconnect, so (1,1,0) is impossible.
/// Seeing either means the indicators were computed wrong.
fn situation_from_indicators(
    built: bool,
    attacked: bool,
    healed: bool,
) -> Result<Situation, Error> {
    match (built, attacked, healed) {
        (true, true, true) => Ok(Situation::S1),
        (true, false, true) => Ok(Situation::S2),
        (true, false, false) => Ok(Situation::S3),
        (false, false, true) => Ok(Situation::S4),
        (false, false, false) => Ok(Situation::S5),
        (false, true, _) => Err(Error::Inconsistency(
            "attacked network connected while built network is not".into(),
        )),
        (true, true, false) => Err(Error::Inconsistency(
            "healed network disconnected while attacked network is connected".into(),
        )),
    }
}

/// Classifies a validated profile on `n` nodes into its situation.
pub fn classify(n: u32, profile: &StrategyProfile) -> Result<Situation, Error> {
    let built = is_connected(n, &profile.e1);
    let attacked = is_connected(n, &profile.attacked());
    let healed = is_connected(n, &profile.healed());
    situation_from_indicators(built, attacked, healed)
}

/// Exact utilities of one play.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Payoffs {
    pub u_d: Rational,
    pub u_a: Rational,
}

/// Classifies the profile and computes both utilities in one pass.
///
/// The designer earns each window's weight when the network is connected in
/// that window and pays `c_d` per built or healed link; the adversary earns
/// the complementary weights and pays `c_a` per removed link. The utilities
/// always sum to `1 - c_d(|e1| + |e2|) - c_a|ea|`.
pub fn evaluate(
    params: &GameParams,
    profile: &StrategyProfile,
) -> Result<(Situation, Payoffs), Error> {
    profile.validate(params.n)?;
    let built = is_connected(params.n, &profile.e1);
    let attacked = is_connected(params.n, &profile.attacked());
    let healed = is_connected(params.n, &profile.healed());
    let situation = situation_from_indicators(built, attacked, healed)?;

    let ind = |c: bool| if c { Rational::one() } else { Rational::zero() };
    let residual = params.residual_weight();
    let link_cost = &params.c_d * Rational::from_integer(profile.designer_links().into());
    let attack_cost = &params.c_a * Rational::from_integer(profile.ea.len().into());

    let u_d = &residual * ind(healed) + &params.tau * ind(built) + &params.tau_r * ind(attacked)
        - link_cost;
    let u_a = &residual * ind(!healed) + &params.tau * ind(!built) + &params.tau_r * ind(!attacked)
        - attack_cost;
    Ok((situation, Payoffs { u_d, u_a }))
}

/// Exact payoffs of one play.
pub fn payoffs(params: &GameParams, profile: &StrategyProfile) -> Result<Payoffs, Error> {
    evaluate(params, profile).map(|(_, p)| p)
}
