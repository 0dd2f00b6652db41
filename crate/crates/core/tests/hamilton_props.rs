mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use sizeramsey::constructions::nst_system;
use sizeramsey::graph::search::find_target;
use sizeramsey::graph::{Color, Coloring, TargetPattern};
use sizeramsey::hamiltonicity::{
    che_ht_check, extract_blue_cycle, hamilton_cycle_through_paths, Extraction, PathSystem,
};

fn forced_pairs(paths: &[Vec<usize>]) -> Vec<(usize, usize)> {
    paths.iter().flat_map(|p| p.windows(2).map(|w| (w[0], w[1]))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn hamilton_search_matches_enumeration(seed in any::<u64>(), n in 3usize..=8, p in 0.2f64..1.0) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n, p);
        let m = r.gen_range(0..=2);
        let systems = path_systems(&g, m);
        prop_assume!(!systems.is_empty());
        let paths = systems[r.gen_range(0..systems.len())].clone();
        let forced = forced_pairs(&paths);
        let brute = brute_hamilton(&g, &forced);
        let got = hamilton_cycle_through_paths(&g, &PathSystem::new(paths)).unwrap();
        prop_assert_eq!(got.is_some(), !brute.is_empty());
        if let Some(cycle) = got {
            prop_assert!(cycle_is_hamiltonian_through(&g, &cycle, &forced));
        }
    }

    #[test]
    fn criterion_forces_a_cycle(seed in any::<u64>(), n in 3usize..=8, p in 0.5f64..1.0) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n, p);
        let m = r.gen_range(0..=2);
        let check = che_ht_check(&g, m).unwrap();
        prop_assert_eq!(check.kappa, brute_connectivity(&g));
        prop_assert_eq!(check.alpha, brute_independence(&g));
        if check.holds {
            for paths in path_systems(&g, m) {
                let forced = forced_pairs(&paths);
                let cycle = hamilton_cycle_through_paths(&g, &PathSystem::new(paths)).unwrap();
                prop_assert!(cycle.is_some_and(|c| cycle_is_hamiltonian_through(&g, &c, &forced)));
            }
        }
    }
}

/// Random total colouring of a system: clique edges red with probability
/// `p`, every other free edge blue.
fn seeded_colouring(sys: &sizeramsey::constructions::NstSystem, p: f64, seed: u64) -> Coloring {
    let mut r = rng(seed);
    let mut c = sys.frozen.clone();
    for (e, (u, v)) in sys.graph.edges().enumerate() {
        if c.get(e).is_none() {
            let in_clique = u < sys.t && v < sys.t;
            c.set(e, Some(if in_clique && r.gen::<f64>() < p { Color::Red } else { Color::Blue }));
        }
    }
    c
}

#[test]
fn extractor_output_is_always_sound() {
    let configs: [(usize, usize, usize, &[usize], usize); 5] = [
        (20, 0, 20, &[], 2),
        (33, 1, 28, &[5], 2),
        (34, 2, 28, &[3, 3], 2),
        (40, 1, 34, &[6], 3),
        (16, 1, 12, &[4], 2),
    ];
    for (n, s, t, orders, d) in configs {
        let sys = nst_system(n, s, t, orders).unwrap();
        let mut blue_found = 0;
        for seed in 0..100u64 {
            let p = [0.02, 0.05, 0.1, 0.3][seed as usize % 4];
            let total = seeded_colouring(&sys, p, seed);
            match extract_blue_cycle(&sys, &total, d).unwrap() {
                Extraction::RedCycle { copy } => {
                    assert_eq!(copy.pattern, TargetPattern::cycle(2 * d).unwrap());
                    assert!(copy.is_valid_in(&sys.graph, Some((&total, Color::Red))));
                }
                Extraction::BlueCycle { cycle, report } => {
                    blue_found += 1;
                    assert_eq!(cycle.len(), n - d + 1);
                    let mut sorted = cycle.clone();
                    sorted.sort_unstable();
                    sorted.dedup();
                    assert_eq!(sorted.len(), cycle.len());
                    for i in 0..cycle.len() {
                        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
                        let e = sys.graph.edge_index(a, b).expect("cycle uses a non-edge");
                        assert_eq!(total.get(e), Some(Color::Blue));
                    }
                    let (sub, map) = sys.graph.induced_by(&cycle).unwrap();
                    let states =
                        sub.edges().map(|(a, b)| total.get(sys.graph.edge_index(map[a], map[b]).unwrap())).collect();
                    let sub_col = Coloring::from_states(states);
                    let hit =
                        find_target(&sub, TargetPattern::cycle(n - d + 1).unwrap(), Some((&sub_col, Color::Blue)));
                    assert!(hit.unwrap().is_some());
                    if t >= 10 * d + 4 * s {
                        assert!(report.min_blue_outside_x >= 4 * d + 2 * s);
                    }
                }
                Extraction::Absent { failure, .. } => {
                    assert!(t < 10 * d + 4 * s, "absent ({failure:?}) at or above the threshold");
                }
            }
        }
        assert!(blue_found > 0, "no blue cycle at all for nst({n},{s},{t})");
    }
}
