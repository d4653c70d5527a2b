//! Exact subgame-perfect-equilibrium solver for a two-player, three-stage
//! network protection and recovery game, together with an exhaustive
//! enumeration oracle used to validate the closed-form solver.
//!
//! The designer builds a network over `n` nodes, an adversary removes links,
//! and the designer may then heal. Utilities weigh connectivity over three
//! time windows (`tau`, `tau_r`, and the remainder) against per-link costs.
//! All arithmetic is exact rational arithmetic; nothing is ever rounded.

pub mod boundary;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod params;
pub mod profile;
pub mod rational;
pub mod solver;
pub mod sweep;
pub mod thresholds;
pub mod topology;

pub use boundary::{chosen_tie_flag, equality_flags};
pub use error::Error;
pub use graph::{component_count, is_connected, Edge, EdgeSet};
pub use oracle::{best_attack, best_heal, brute_force_spe, OracleConfig};
pub use params::GameParams;
pub use profile::{classify, evaluate, payoffs, Payoffs, Situation, StrategyProfile};
pub use rational::{format_rational, parse_rational, to_decimal_string, Rational};
pub use solver::{
    solve, solve_regime1, solve_regime2, trivial_guards, Regime, Representative, SpeCandidate,
    SpeSolution, UnspecifiedInfo,
};
pub use sweep::{
    run_sweep, BoundaryPolicy, SkippedValue, SweepParam, SweepReport, SweepRow, SweepSpec,
};
pub use thresholds::{delta, thresholds, Thresholds};
pub use topology::{
    edge_connectivity, harary, min_cut_to_components, min_degree, reinforced_ring, ring, tree,
    NamedTopology, TopologyKind,
};
