//! Baseline timings for the hot paths: one closed-form solve, one
//! exhaustive search, one topology construction with its cut check, and
//! one parameter sweep. Run with `cargo bench -p netgame-bench`.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use netgame_core::{
    brute_force_spe, edge_connectivity, harary, parse_rational, run_sweep, solve, BoundaryPolicy,
    GameParams, OracleConfig, SweepParam, SweepSpec,
};

fn rat(s: &str) -> netgame_core::Rational {
    parse_rational(s).unwrap()
}

fn case_study(n: u32, tau_r: &str) -> GameParams {
    GameParams::new(n, rat("1/20"), rat("1/8"), rat("3/10"), rat(tau_r)).unwrap()
}

fn closed_form(c: &mut Criterion) {
    let point = case_study(10, "2/5");
    c.bench_function("solve one point", |b| {
        b.iter(|| solve(black_box(&point)).unwrap())
    });
}

fn exhaustive_search(c: &mut Criterion) {
    let point = case_study(4, "2/5");
    let config = OracleConfig::default();
    c.bench_function("exhaustive search, 4 nodes", |b| {
        b.iter(|| brute_force_spe(black_box(&point), &config).unwrap())
    });
}

fn topology_with_cut_check(c: &mut Criterion) {
    c.bench_function("harary(10, 3) plus cut level", |b| {
        b.iter(|| {
            let built = harary(black_box(10), black_box(3)).unwrap();
            edge_connectivity(10, &built.edges)
        })
    });
}

fn parameter_sweep(c: &mut Criterion) {
    let base = case_study(10, "0");
    let spec = SweepSpec {
        param: SweepParam::TauR,
        from: rat("0"),
        to: rat("3/5"),
        step: rat("1/200"),
        boundary: BoundaryPolicy::Skip,
    };
    c.bench_function("sweep 121 grid values", |b| {
        b.iter(|| run_sweep(black_box(&base), &spec).unwrap())
    });
}

criterion_group!(
    benches,
    closed_form,
    exhaustive_search,
    topology_with_cut_check,
    parameter_sweep
);
criterion_main!(benches);
