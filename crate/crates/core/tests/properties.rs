mod common;

use common::*;
use ddbnb::io::{gen_erdos_renyi, gen_tsptw, parse_graph, parse_tsptw, parse_wcnf, write_tsptw};
use ddbnb::problems::{Max2Sat, MaxCut, Misp, ProblemKind, Tsptw};
use ddbnb::pruning::compute_local_bounds;
use ddbnb::{compile, CompileParams, Problem, Relaxation, SolverConfig, SubProblem, MINUS_INFINITY};
use proptest::prelude::*;

fn sandwich<P>(problem: &P, optimum: i64, width: usize) -> Result<(), TestCaseError>
where
    P: Problem + Relaxation<State = <P as Problem>::State>,
{
    let root = SubProblem::root(problem);
    let restricted = compile(problem, problem, &root, &CompileParams::restricted(width));
    let relaxed = compile(problem, problem, &root, &CompileParams::relaxed(width));
    prop_assert!(restricted.best_value().unwrap_or(MINUS_INFINITY) <= optimum);
    prop_assert!(relaxed.best_value().unwrap_or(MINUS_INFINITY) >= optimum);
    for i in 0..restricted.nb_layers() {
        prop_assert!(restricted.layer(i).len() <= width);
    }
    for i in 0..relaxed.nb_layers() {
        prop_assert!(relaxed.layer(i).len() <= width.max(2) || i == 1);
    }
    Ok(())
}

fn local_bounds_cover_the_relaxed_optimum<P>(problem: &P, width: usize) -> Result<(), TestCaseError>
where
    P: Problem + Relaxation<State = <P as Problem>::State>,
{
    let mut dd = compile(problem, problem, &SubProblem::root(problem), &CompileParams::relaxed(width));
    compute_local_bounds(&mut dd);
    let best = dd.layer(dd.last_exact_layer()).iter().map(|u| u.local_bound).max();
    prop_assert_eq!(best, Some(dd.best_value().unwrap_or(MINUS_INFINITY)));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graphs_round_trip(n in 1usize..25, p in 0.0f64..=1.0, seed: u64, weighted: bool) {
        let kind = if weighted { ProblemKind::Misp } else { ProblemKind::Mcp };
        let text = gen_erdos_renyi(kind, n, p, seed).unwrap();
        prop_assert_eq!(parse_graph(&text).unwrap().to_text(), text);
    }

    #[test]
    fn formulas_round_trip(n in 1usize..25, p in 0.0f64..=1.0, seed: u64) {
        let text = gen_erdos_renyi(ProblemKind::Max2Sat, n, p, seed).unwrap();
        prop_assert_eq!(parse_wcnf(&text).unwrap().to_text(), text);
    }

    #[test]
    fn tsptw_round_trips(n in 1usize..15, slack in 0.0f64..1.0, seed: u64) {
        let text = write_tsptw(&gen_tsptw(n, slack, seed).unwrap());
        prop_assert_eq!(write_tsptw(&parse_tsptw(&text).unwrap()), text);
    }

    #[test]
    fn misp_sandwich(n in 3usize..11, p in 0.1f64..0.9, seed: u64, width in 1usize..7) {
        let graph = parse_graph(&gen_erdos_renyi(ProblemKind::Misp, n, p, seed).unwrap()).unwrap();
        sandwich(&Misp::new(&graph), misp_oracle(&graph), width)?;
        local_bounds_cover_the_relaxed_optimum(&Misp::new(&graph), width)?;
    }

    #[test]
    fn mcp_sandwich(n in 3usize..11, p in 0.1f64..0.9, seed: u64, width in 1usize..7) {
        let graph = parse_graph(&gen_erdos_renyi(ProblemKind::Mcp, n, p, seed).unwrap()).unwrap();
        sandwich(&MaxCut::new(&graph), mcp_oracle(&graph), width)?;
        local_bounds_cover_the_relaxed_optimum(&MaxCut::new(&graph), width)?;
    }

    #[test]
    fn max2sat_sandwich(n in 4usize..17, p in 0.1f64..0.6, seed: u64, width in 1usize..7) {
        let formula = parse_wcnf(&gen_erdos_renyi(ProblemKind::Max2Sat, n, p, seed).unwrap()).unwrap();
        sandwich(&Max2Sat::new(&formula), max2sat_oracle(&formula), width)?;
        local_bounds_cover_the_relaxed_optimum(&Max2Sat::new(&formula), width)?;
    }

    #[test]
    fn tsptw_sandwich(n in 2usize..7, slack in 0.0f64..0.5, seed: u64, width in 1usize..7) {
        let instance = gen_tsptw(n, slack, seed).unwrap();
        let optimum = -tsptw_oracle(&instance).unwrap();
        sandwich(&Tsptw::new(instance.clone()), optimum, width)?;
        local_bounds_cover_the_relaxed_optimum(&Tsptw::new(instance), width)?;
    }

    #[test]
    fn any_width_finds_the_optimum(n in 3usize..10, p in 0.1f64..0.9, seed: u64, width in 1usize..5, rub: bool, locb: bool) {
        let graph = parse_graph(&gen_erdos_renyi(ProblemKind::Mcp, n, p, seed).unwrap()).unwrap();
        let problem = MaxCut::new(&graph);
        let config = SolverConfig { width: Some(width), rub, locb, ..Default::default() };
        prop_assert_eq!(ddbnb::solve(&problem, &problem, &config).best_value, mcp_oracle(&graph));
    }
}

#[test]
fn edge_count_follows_the_binomial_law() {
    let (n, p, seeds) = (20usize, 0.3, 400);
    let pairs = (n * (n - 1) / 2) as f64;
    let counts: Vec<f64> = (0..seeds)
        .map(|s| parse_graph(&gen_erdos_renyi(ProblemKind::Mcp, n, p, s).unwrap()).unwrap().edges().len() as f64)
        .collect();
    let mean = counts.iter().sum::<f64>() / seeds as f64;
    let sigma_of_mean = (pairs * p * (1.0 - p)).sqrt() / (seeds as f64).sqrt();
    assert!((mean - p * pairs).abs() <= 3.0 * sigma_of_mean, "mean {mean}, expected {}", p * pairs);
    let again = parse_graph(&gen_erdos_renyi(ProblemKind::Mcp, n, p, 7).unwrap()).unwrap().edges().len() as f64;
    assert_eq!(again, counts[7]);
}
