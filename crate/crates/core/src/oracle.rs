//! Exhaustive ground-truth solver for small instances.
//!
//! Everything here is independent of the closed-form case analysis in
//! [`crate::solver`]: equilibria are found by enumerating every designer
//! network, every attack against it, and the optimal heal response, with
//! backward induction and explicit tie-breaking. The two routes exist to
//! check each other; neither consults the other's formulas.
//!
//! Tie-breaking, applied at every utility tie (including ties at zero):
//! the adversary prefers more removals, then the lexicographically
//! smallest removal set; the designer prefers fewer created links, then
//! the lexicographically smallest first-stage network.

use std::cmp::Ordering;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::Error;
use crate::graph::{complete_edges, component_count, Edge, EdgeSet, UnionFind};
use crate::params::GameParams;
use crate::profile::{evaluate, StrategyProfile};
use crate::rational::Rational;
use crate::solver::{Regime, Representative, SpeCandidate, SpeSolution};
use crate::thresholds::thresholds;
use crate::topology::{degrees, harary, reinforced_ring, NamedTopology, TopologyKind};

/// Hard ceiling on `max_n`: beyond 6 nodes the designer-network space
/// (`2^(n(n-1)/2)` first stages) stops being enumerable in reasonable time.
const HARD_CAP: u32 = 6;

/// Largest first-stage network `best_attack` will enumerate against.
const ATTACK_CAP: usize = 25;

/// Bounds for the exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest `n` accepted; at most [6]. Defaults to 5.
    pub max_n: u32,
    /// Worker threads for the first-stage scan; 0 uses the global pool.
    pub threads: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_n: 5,
            threads: 0,
        }
    }
}

/// Designer's optimal healing answer to `ea` played against `e1`: either
/// nothing, or exactly `components - 1` links joining the fragments.
///
/// Healing happens iff reconnecting strictly pays:
/// `1 - tau - tau_r > (components - 1) c_d`. The links join the
/// lowest-numbered node of each fragment in ascending order, never a
/// partial subset of fragments.
pub fn best_heal(params: &GameParams, e1: &EdgeSet, ea: &EdgeSet) -> Result<EdgeSet, Error> {
    let n = params.n;
    if !ea.is_subset(e1) {
        return Err(Error::InvalidInput(
            "removals must be a subset of the built links".into(),
        ));
    }
    if let Some(max) = e1.max_node() {
        if max >= n {
            return Err(Error::InvalidInput(format!(
                "link endpoint {max} is out of range for n = {n}"
            )));
        }
    }
    let attacked = e1.difference(ea);
    let mut uf = UnionFind::new(n);
    for e in &attacked {
        uf.union(e.a, e.b);
    }
    let components = uf.components();
    if components == 1 {
        return Ok(EdgeSet::new());
    }
    let gain = params.residual_weight();
    let cost = Rational::from_integer(u64::from(components - 1).into()) * &params.c_d;
    if gain <= cost {
        return Ok(EdgeSet::new());
    }
    // lowest-numbered node of each fragment, in ascending order
    let roots: Vec<u32> = (0..n).map(|v| uf.find(v)).collect();
    let mut seen: Vec<u32> = Vec::new();
    let mut reps: Vec<u32> = Vec::with_capacity(components as usize);
    for node in 0..n {
        if !seen.contains(&roots[node as usize]) {
            seen.push(roots[node as usize]);
            reps.push(node);
        }
    }
    debug_assert_eq!(reps.len() as u32, components);
    let chain: Vec<(u32, u32)> = reps.windows(2).map(|w| (w[0], w[1])).collect();
    EdgeSet::from_pairs(&chain)
}

/// Per-instance payoff tables indexed by outcome class, so the inner
/// enumeration loops compare precomputed rationals instead of allocating.
///
/// Outcome classes: 0 = attack leaves the network connected, 1 = the
/// designer heals the fragments, 2 = the fragments stay down.
struct ValueTables {
    /// `attack[x1][class][s]` = adversary utility after `s` removals.
    attack: [[Vec<Rational>; 3]; 2],
    /// `designer[x1][class][t]` = designer utility after creating `t` links.
    designer: [[Vec<Rational>; 3]; 2],
    /// `heal_worth[c]` = healing `c` fragments strictly pays.
    heal_worth: Vec<bool>,
}

impl ValueTables {
    fn new(params: &GameParams, max_removals: usize, max_links: usize) -> Self {
        let residual = params.residual_weight();
        let attack_base = |x1: bool, class: usize| -> Rational {
            let mut v = Rational::zero();
            if !x1 {
                v += &params.tau;
            }
            if class != 0 {
                v += &params.tau_r;
            }
            if class == 2 {
                v += &residual;
            }
            v
        };
        let designer_base = |x1: bool, class: usize| -> Rational {
            let mut v = Rational::zero();
            if x1 {
                v += &params.tau;
            }
            if class == 0 {
                v += &params.tau_r;
            }
            if class != 2 {
                v += &residual;
            }
            v
        };
        let ramp = |base: Rational, unit: &Rational, len: usize| -> Vec<Rational> {
            (0..=len)
                .scan(base + unit, |acc, _| {
                    *acc -= unit;
                    Some(acc.clone())
                })
                .collect()
        };
        let attack = [false, true].map(|x1| {
            [0, 1, 2].map(|class| ramp(attack_base(x1, class), &params.c_a, max_removals))
        });
        let designer = [false, true].map(|x1| {
            [0, 1, 2].map(|class| ramp(designer_base(x1, class), &params.c_d, max_links))
        });
        let heal_worth = (0..=params.n)
            .map(|c| {
                c >= 2 && {
                    let cost = Rational::from_integer(u64::from(c - 1).into()) * &params.c_d;
                    residual > cost
                }
            })
            .collect();
        ValueTables {
            attack,
            designer,
            heal_worth,
        }
    }
}

/// Component counts for every subset of `edges` on `n` nodes.
fn component_table(n: u32, edges: &[Edge]) -> Vec<u8> {
    let m = edges.len();
    debug_assert!(m <= 20, "component table over {m} edges is too large");
    let mut table = vec![0u8; 1 << m];
    for mask in 0..(1u32 << m) {
        let mut uf = UnionFind::new(n);
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            uf.union(edges[i].a, edges[i].b);
        }
        table[mask as usize] = uf.components() as u8;
    }
    table
}

/// Lexicographic order on the sorted edge lists two bitmasks denote.
fn mask_lex_cmp(a: u32, b: u32) -> Ordering {
    let (mut a, mut b) = (a, b);
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            (false, false) => {}
        }
        let (la, lb) = (a.trailing_zeros(), b.trailing_zeros());
        match la.cmp(&lb) {
            Ordering::Equal => {
                a &= a - 1;
                b &= b - 1;
            }
            other => return other,
        }
    }
}

/// Best attack against a fixed first stage, over precomputed tables.
/// Returns `(attack mask, removals, outcome class, fragment count)`.
fn best_attack_masked(
    e1_mask: u32,
    x1: bool,
    comp: &[u8],
    tables: &ValueTables,
) -> (u32, usize, usize, u8) {
    let attack_values = &tables.attack[usize::from(x1)];
    let mut best: Option<(u32, usize, usize, u8)> = None;
    let mut sub = e1_mask;
    loop {
        let removed = (e1_mask & !sub).count_ones() as usize;
        // `sub` is the surviving set here; enumerate survivors directly so
        // the lookup is one index
        let c = comp[sub as usize];
        let keep = !(c == 1 && removed > 0);
        if keep {
            let class = if c == 1 {
                0
            } else if tables.heal_worth[c as usize] {
                1
            } else {
                2
            };
            let candidate = (e1_mask & !sub, removed, class, c);
            best = Some(match best {
                None => candidate,
                Some(incumbent) => {
                    let value = &attack_values[class][removed];
                    let incumbent_value = &attack_values[incumbent.2][incumbent.1];
                    let wins = match value.cmp(incumbent_value) {
                        Ordering::Greater => true,
                        Ordering::Less => false,
                        Ordering::Equal => match candidate.1.cmp(&incumbent.1) {
                            Ordering::Greater => true,
                            Ordering::Less => false,
                            Ordering::Equal => {
                                mask_lex_cmp(candidate.0, incumbent.0) == Ordering::Less
                            }
                        },
                    };
                    if wins {
                        candidate
                    } else {
                        incumbent
                    }
                }
            });
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & e1_mask;
    }
    best.expect("the empty attack is always evaluated")
}

/// Adversary-optimal removal set against `e1`, anticipating the heal
/// response. Ties prefer more removals, then the lexicographically
/// smallest set, so a zero-utility tie still removes links.
pub fn best_attack(params: &GameParams, e1: &EdgeSet) -> Result<EdgeSet, Error> {
    let n = params.n;
    if let Some(max) = e1.max_node() {
        if max >= n {
            return Err(Error::InvalidInput(format!(
                "link endpoint {max} is out of range for n = {n}"
            )));
        }
    }
    let m = e1.len();
    if m > ATTACK_CAP {
        return Err(Error::EnumerationCap(format!(
            "{m} links exceed the attack-enumeration cap of {ATTACK_CAP}"
        )));
    }
    // compress to the touched nodes; untouched ones only shift the
    // component count by a constant
    let mut nodes: Vec<u32> = e1.iter().flat_map(|e| [e.a, e.b]).collect();
    nodes.sort_unstable();
    nodes.dedup();
    let index_of = |node: u32| nodes.binary_search(&node).expect("endpoint is touched") as u32;
    let edges: Vec<(u32, u32)> = e1.iter().map(|e| (index_of(e.a), index_of(e.b))).collect();
    let isolated = n - nodes.len() as u32;

    let x1 = component_count(n, e1) == 1;
    let tables = ValueTables::new(params, m, 0);
    let attack_values = &tables.attack[usize::from(x1)];

    let mut best: Option<(u32, usize, usize)> = None;
    let full = if m == 0 { 0u32 } else { (1u32 << m) - 1 };
    let mut sub = full;
    loop {
        let mut uf = UnionFind::new(nodes.len() as u32);
        let mut bits = sub;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            uf.union(edges[i].0, edges[i].1);
        }
        let c = uf.components() + isolated;
        let removed = (full & !sub).count_ones() as usize;
        if !(c == 1 && removed > 0) {
            let class = if c == 1 {
                0
            } else if tables.heal_worth[c as usize] {
                1
            } else {
                2
            };
            let candidate = (full & !sub, removed, class);
            best = Some(match best {
                None => candidate,
                Some(incumbent) => {
                    let wins = match attack_values[class][removed]
                        .cmp(&attack_values[incumbent.2][incumbent.1])
                    {
                        Ordering::Greater => true,
                        Ordering::Less => false,
                        Ordering::Equal => match candidate.1.cmp(&incumbent.1) {
                            Ordering::Greater => true,
                            Ordering::Less => false,
                            Ordering::Equal => {
                                mask_lex_cmp(candidate.0, incumbent.0) == Ordering::Less
                            }
                        },
                    };
                    if wins {
                        candidate
                    } else {
                        incumbent
                    }
                }
            });
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & full;
    }
    let (mask, _, _) = best.expect("the empty attack is always evaluated");
    let chosen: Vec<Edge> = e1
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, e)| *e)
        .collect();
    Ok(EdgeSet::from_edges(chosen))
}

/// Matches a searched edge set against the named constructions.
fn recognize(n: u32, edges: &EdgeSet) -> TopologyKind {
    if edges.is_empty() {
        return TopologyKind::Empty;
    }
    let connected = component_count(n, edges) == 1;
    let m = edges.len() as u64;
    if connected && m == u64::from(n) - 1 {
        return TopologyKind::Tree;
    }
    if connected && m == u64::from(n) && degrees(n, edges).iter().all(|&d| d == 2) {
        return TopologyKind::Ring;
    }
    for k in 2..n {
        if let Ok(h) = harary(n, k) {
            if h.edges == *edges {
                return TopologyKind::Harary(k);
            }
        }
    }
    for k in 1..n.div_ceil(2) {
        if let Ok(r) = reinforced_ring(n, k) {
            if r.edges == *edges {
                return TopologyKind::ReinforcedRing(k);
            }
        }
    }
    TopologyKind::Custom
}

struct StageOutcome {
    e1_mask: u32,
    attack_mask: u32,
    class: usize,
    fragments: u8,
    links: usize,
    removals: usize,
}

/// Exhaustive subgame-perfect equilibrium by backward induction over every
/// first-stage network on the complete graph.
///
/// This is the ground truth the closed-form solver is validated against;
/// it never consults the case analysis.
pub fn brute_force_spe(params: &GameParams, config: &OracleConfig) -> Result<SpeSolution, Error> {
    if config.max_n > HARD_CAP {
        return Err(Error::InvalidInput(format!(
            "max_n {} exceeds the hard cap of {HARD_CAP}",
            config.max_n
        )));
    }
    let n = params.n;
    if n > config.max_n {
        return Err(Error::InvalidInput(format!(
            "n = {n} exceeds the exhaustive-search bound max_n = {}",
            config.max_n
        )));
    }

    let all_edges = complete_edges(n);
    let m = all_edges.len();
    let comp = component_table(n, &all_edges);
    let max_links = m + (n as usize - 1);
    let tables = ValueTables::new(params, m, max_links);

    let evaluate_stage = |e1_mask: u32| -> StageOutcome {
        let x1 = comp[e1_mask as usize] == 1;
        let (attack_mask, removals, class, fragments) =
            best_attack_masked(e1_mask, x1, &comp, &tables);
        let healed_links = if class == 1 {
            fragments as usize - 1
        } else {
            0
        };
        StageOutcome {
            e1_mask,
            attack_mask,
            class,
            fragments,
            links: e1_mask.count_ones() as usize + healed_links,
            removals,
        }
    };
    let better = |a: StageOutcome, b: StageOutcome| -> StageOutcome {
        let ud = |o: &StageOutcome| {
            let x1 = comp[o.e1_mask as usize] == 1;
            &tables.designer[usize::from(x1)][o.class][o.links]
        };
        match ud(&a).cmp(ud(&b)) {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => match a.links.cmp(&b.links) {
                Ordering::Less => a,
                Ordering::Greater => b,
                Ordering::Equal => match mask_lex_cmp(a.e1_mask, b.e1_mask) {
                    Ordering::Less | Ordering::Equal => a,
                    Ordering::Greater => b,
                },
            },
        }
    };
    let scan = || {
        (0..(1u64 << m) as u32)
            .into_par_iter()
            .map(evaluate_stage)
            .reduce_with(better)
            .expect("the empty first stage is always evaluated")
    };
    let winner = if config.threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| Error::InvalidInput(format!("cannot build a thread pool: {e}")))?;
        pool.install(scan)
    } else {
        scan()
    };

    let pick = |mask: u32| -> EdgeSet {
        EdgeSet::from_edges(
            all_edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, e)| *e)
                .collect(),
        )
    };
    let e1 = pick(winner.e1_mask);
    let ea = pick(winner.attack_mask);
    let e2 = best_heal(params, &e1, &ea)?;
    debug_assert_eq!(
        e2.len(),
        if winner.class == 1 {
            winner.fragments as usize - 1
        } else {
            0
        }
    );

    let profile = StrategyProfile {
        e1: e1.clone(),
        ea: ea.clone(),
        e2: e2.clone(),
    };
    let (situation, payoffs) = evaluate(params, &profile)?;
    let expected_ud = &tables.designer[usize::from(comp[winner.e1_mask as usize] == 1)]
        [winner.class][winner.links];
    if &payoffs.u_d != expected_ud {
        return Err(Error::Inconsistency(
            "table-driven utility disagrees with the replayed profile".into(),
        ));
    }

    let chosen = SpeCandidate {
        situation,
        feasible: true,
        reason: format!(
            "maximizes the designer's utility over all {} first-stage networks by backward \
             induction",
            1u64 << m
        ),
        e1_size: Some(e1.len() as u64),
        ea_size: Some(winner.removals as u64),
        e2_size: Some(e2.len() as u64),
        u_d: Some(payoffs.u_d),
        u_a: Some(payoffs.u_a),
        representative: Some(Representative {
            e1: NamedTopology {
                kind: recognize(n, &e1),
                n,
                edges: e1,
            },
            ea,
            ea_note: "utility-maximal removal set; ties prefer more removals".into(),
            e2,
            e2_note: "optimal heal response".into(),
        }),
    };
    let mut row = chosen.clone();
    row.representative = None;
    Ok(SpeSolution {
        params: params.clone(),
        regime: regime_of(params),
        thresholds: thresholds(params)?,
        candidates: vec![row],
        chosen,
        notes: vec![format!(
            "exhaustive search over {} first-stage networks",
            1u64 << m
        )],
    })
}

fn regime_of(params: &GameParams) -> Regime {
    crate::solver::regime_tag(params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_connected;
    use crate::profile::Situation;
    use crate::rational::parse_rational;
    use crate::topology::tree;
    use num_traits::One;

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

    #[test]
    fn finds_unattacked_tree_when_one_removal_never_pays() {
        let p = params(3, "1/10", "1/5", "1/5", "1/10");
        let s = brute_force_spe(&p, &OracleConfig::default()).unwrap();
        assert_eq!(s.chosen.situation, Situation::S1);
        assert_eq!(s.chosen.u_d, Some(rational("4/5")));
        assert_eq!(s.chosen.u_a, Some(rational("0")));
        let rep = s.chosen.representative.unwrap();
        assert_eq!(rep.e1.kind, TopologyKind::Tree);
        assert!(rep.ea.is_empty());
    }

    #[test]
    fn finds_complete_graph_when_fortification_pays() {
        let p = params(4, "1/20", "1/10", "3/10", "1/4");
        let s = brute_force_spe(&p, &OracleConfig::default()).unwrap();
        assert_eq!(s.chosen.situation, Situation::S1);
        assert_eq!(s.chosen.u_d, Some(rational("7/10")));
        let rep = s.chosen.representative.unwrap();
        assert_eq!(rep.e1.edges.len(), 6);
        assert_eq!(rep.e1.kind, TopologyKind::Harary(3));
    }

    #[test]
    fn finds_null_play_when_building_never_pays() {
        let p = params(4, "2/5", "1/10", "1/5", "1/10");
        let s = brute_force_spe(&p, &OracleConfig::default()).unwrap();
        assert_eq!(s.chosen.situation, Situation::S5);
        assert_eq!(s.chosen.u_d, Some(rational("0")));
        assert_eq!(s.chosen.u_a, Some(rational("1")));
        assert_eq!(s.chosen.e1_size, Some(0));
    }

    #[test]
    fn agrees_with_solver_on_a_concession_instance() {
        let p = params(5, "1/10", "3/25", "3/20", "1/4");
        let s = brute_force_spe(&p, &OracleConfig::default()).unwrap();
        assert_eq!(s.chosen.situation, Situation::S2);
        assert_eq!(s.chosen.u_d, Some(rational("1/4")));
        assert_eq!(s.chosen.u_a, Some(rational("13/100")));
    }

    #[test]
    fn best_attack_removes_one_leaf_link_from_a_path() {
        let p = params(4, "1/10", "1/10", "1/5", "3/10");
        let path = tree(4).unwrap().edges;
        let attack = best_attack(&p, &path).unwrap();
        assert_eq!(attack, EdgeSet::from_pairs(&[(0, 1)]).unwrap());
        let heal = best_heal(&p, &path, &attack).unwrap();
        assert_eq!(heal, EdgeSet::from_pairs(&[(0, 1)]).unwrap());
    }

    #[test]
    fn best_attack_prefers_removing_at_a_zero_utility_tie() {
        // tau_r = c_a: one healed removal repays exactly, tying the empty
        // attack; the tie-break still removes the link
        let p = params(4, "1/20", "1/4", "1/5", "1/4");
        let path = tree(4).unwrap().edges;
        let attack = best_attack(&p, &path).unwrap();
        assert_eq!(attack.len(), 1);
    }

    #[test]
    fn best_attack_enforces_the_enumeration_cap() {
        let p = params(30, "1/100", "1/10", "1/5", "1/10");
        let long_path = tree(30).unwrap().edges;
        assert!(matches!(
            best_attack(&p, &long_path),
            Err(Error::EnumerationCap(_))
        ));
    }

    #[test]
    fn best_heal_declines_an_unprofitable_repair() {
        // residual 2/25 is below c_d, so even a single cut stays open
        let p = params(5, "1/10", "1/10", "18/25", "1/5");
        let path = tree(5).unwrap().edges;
        let cut = EdgeSet::from_pairs(&[(2, 3)]).unwrap();
        assert!(best_heal(&p, &path, &cut).unwrap().is_empty());
    }

    #[test]
    fn best_heal_joins_every_fragment_or_none() {
        let p = params(6, "1/100", "1/10", "1/10", "1/10");
        let path = tree(6).unwrap().edges;
        for cut in [
            vec![(0, 1)],
            vec![(1, 2), (3, 4)],
            vec![(0, 1), (2, 3), (4, 5)],
        ] {
            let ea = EdgeSet::from_pairs(&cut).unwrap();
            let heal = best_heal(&p, &path, &ea).unwrap();
            assert_eq!(heal.len(), cut.len());
            let healed = path.difference(&ea).union(&heal);
            assert!(is_connected(6, &healed));
        }
    }

    #[test]
    fn best_heal_rejects_removals_outside_the_network() {
        let p = params(4, "1/10", "1/10", "1/5", "1/10");
        let path = tree(4).unwrap().edges;
        let foreign = EdgeSet::from_pairs(&[(0, 2)]).unwrap();
        assert!(matches!(
            best_heal(&p, &path, &foreign),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn oracle_rejects_instances_beyond_its_bound() {
        let p = params(6, "1/10", "1/10", "1/5", "1/10");
        assert!(matches!(
            brute_force_spe(&p, &OracleConfig::default()),
            Err(Error::InvalidInput(_))
        ));
        let config = OracleConfig {
            max_n: 7,
            threads: 0,
        };
        assert!(matches!(
            brute_force_spe(&p, &config),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn thread_count_does_not_change_the_answer() {
        let p = params(4, "1/20", "1/10", "3/10", "1/4");
        let default = brute_force_spe(&p, &OracleConfig::default()).unwrap();
        let single = brute_force_spe(
            &p,
            &OracleConfig {
                max_n: 5,
                threads: 1,
            },
        )
        .unwrap();
        assert_eq!(default.chosen, single.chosen);
    }

    #[test]
    fn searched_profile_satisfies_the_payoff_identity() {
        let p = params(5, "1/20", "1/8", "3/10", "2/5");
        let s = brute_force_spe(&p, &OracleConfig::default()).unwrap();
        let rep = s.chosen.representative.as_ref().unwrap();
        let links = rep.e1.edges.len() as u64 + rep.e2.len() as u64;
        let spent = Rational::from_integer(links.into()) * &p.c_d
            + Rational::from_integer((rep.ea.len() as u64).into()) * &p.c_a;
        let total = s.chosen.u_d.clone().unwrap() + s.chosen.u_a.clone().unwrap();
        assert_eq!(total, Rational::one() - spent);
    }
}
