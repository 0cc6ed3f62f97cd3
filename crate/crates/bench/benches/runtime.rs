//! Benchmarks for the hot paths: the truncated-geometric mean, graph
//! construction, search-order precomputation, the exact expectation oracle,
//! and Monte Carlo simulation.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use searchtime::{
    build_binary_grammar, build_complete_tree, build_full_grammar, dfs_mgl, exact_expected_runtime,
    first_goal_level_probs, gaussian_goal_vector, monte_carlo, search_order, tc,
    GaussianGoalParams, GoalProbabilities, LevelSizes, Method, TreeModel,
};

fn bench_tc(c: &mut Criterion) {
    let mut group = c.benchmark_group("tc");
    for &(p, m) in &[(0.5, 100u64), (1e-3, 1 << 20), (1e-9, 1 << 40)] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("p{p}_m{m}")), &(p, m), |b, &(p, m)| {
            b.iter(|| tc(black_box(p), black_box(m)).unwrap())
        });
    }
    group.finish();
}

fn bench_estimators(c: &mut Criterion) {
    let model = TreeModel::new(2, 14).unwrap();
    let p = gaussian_goal_vector(14, GaussianGoalParams::new(8.0, 10.0).unwrap()).unwrap();
    c.bench_function("dfs_mgl_depth14", |b| b.iter(|| dfs_mgl(model, black_box(&p)).unwrap()));
    let sizes = LevelSizes::new((0..=14).map(|k| 1u64 << k).collect()).unwrap();
    c.bench_function("first_goal_level_probs_depth14", |b| {
        b.iter(|| first_goal_level_probs(black_box(&p), &sizes).unwrap())
    });
}

fn bench_graph_build(c: &mut Criterion) {
    c.bench_function("build_complete_tree_d16", |b| {
        b.iter(|| build_complete_tree(2, black_box(16)).unwrap())
    });
    c.bench_function("build_binary_grammar_d14", |b| {
        b.iter(|| build_binary_grammar(black_box(14)).unwrap())
    });
    c.bench_function("build_full_grammar_d10", |b| {
        b.iter(|| build_full_grammar(black_box(10)).unwrap())
    });
}

fn bench_search(c: &mut Criterion) {
    let graph = build_binary_grammar(14).unwrap();
    c.bench_function("bfs_order_bg_d14", |b| b.iter(|| search_order(&graph, Method::Bfs)));
    c.bench_function("dfs_order_bg_d14", |b| b.iter(|| search_order(&graph, Method::Dfs)));

    let tree = build_complete_tree(2, 12).unwrap();
    let p = GoalProbabilities::single_level(12, 8, 0.01).unwrap();
    let order = search_order(&tree, Method::Bfs);
    c.bench_function("exact_expected_runtime_tree_d12", |b| {
        b.iter(|| exact_expected_runtime(&order, &tree, &p).unwrap())
    });
    c.bench_function("monte_carlo_tree_d12_100trials", |b| {
        b.iter(|| monte_carlo(&tree, &p, Method::Bfs, 100, black_box(7), true).unwrap())
    });
}

criterion_group!(benches, bench_tc, bench_estimators, bench_graph_build, bench_search);
criterion_main!(benches);
