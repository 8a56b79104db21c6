//! Preferential sampling frequencies against the exact weight table.

use asgraph::rng::seeded;
use asgraph::{AsGraph, NodeId, WeightKind};
use rand::Rng;

const DRAWS: usize = 100_000;

fn random_graph(seed: u64, n: u32, regions: u32) -> AsGraph {
    let mut rng = seeded(seed);
    let mut g = AsGraph::new(regions).unwrap();
    for _ in 0..n {
        g.add_node(rng.gen_range(0..regions)).unwrap();
    }
    for _ in 0..rng.gen_range(n..4 * n) {
        let c = rng.gen_range(0..n);
        let p = rng.gen_range(0..n);
        if c != p {
            g.add_edge(c, p).unwrap();
        }
    }
    g
}

fn weight(g: &AsGraph, u: NodeId, kind: WeightKind) -> u64 {
    let node = g.node(u).unwrap();
    match kind {
        WeightKind::InDegree => node.in_degree as u64,
        WeightKind::OutDegree => node.out_degree as u64,
    }
}

/// Upper 1% quantile of chi-square with `df` degrees of freedom
/// (Wilson-Hilferty).
fn chi_square_99(df: usize) -> f64 {
    let df = df as f64;
    let z = 2.326_347_874;
    let a = 2.0 / (9.0 * df);
    df * (1.0 - a + z * a.sqrt()).powi(3)
}

fn check(g: &AsGraph, kind: WeightKind, region: Option<u32>, seed: u64) -> (f64, f64, f64) {
    let members: Vec<NodeId> = (0..g.node_count() as NodeId)
        .filter(|&u| region.is_none_or(|r| g.node(u).unwrap().region == r))
        .collect();
    let total: u64 = members.iter().map(|&u| weight(g, u, kind)).sum();
    let mut counts = vec![0usize; g.node_count()];
    let mut rng = seeded(seed);
    for _ in 0..DRAWS {
        let u = g
            .sample_preferential(kind, region, &mut rng)
            .expect("positive weight");
        counts[u as usize] += 1;
    }
    let mut tv = 0.0;
    let mut chi = 0.0;
    let mut cells = 0;
    for (u, &count) in counts.iter().enumerate() {
        let w = weight(g, u as NodeId, kind);
        let in_scope = members.contains(&(u as NodeId));
        if !in_scope || w == 0 {
            assert_eq!(count, 0, "node {u} outside support was drawn");
            continue;
        }
        let expected = DRAWS as f64 * w as f64 / total as f64;
        tv += (count as f64 - expected).abs() / DRAWS as f64;
        chi += (count as f64 - expected).powi(2) / expected;
        cells += 1;
    }
    (tv / 2.0, chi, chi_square_99(cells.max(2) - 1))
}

#[test]
fn global_draws_follow_weights() {
    let mut failures = 0;
    for seed in 0..20 {
        let g = random_graph(seed, 2 + (seed as u32 % 19), 1);
        for kind in [WeightKind::InDegree, WeightKind::OutDegree] {
            if g.weight_sum(kind, None) == 0 {
                continue;
            }
            let (tv, chi, crit) = check(&g, kind, None, 1000 + seed);
            assert!(tv < 0.02, "seed {seed} {kind:?}: tv {tv}");
            if chi > crit {
                failures += 1;
            }
        }
    }
    // 40 tests at the 1% level: more than 3 rejections is implausible.
    assert!(failures <= 3, "{failures} chi-square rejections");
}

#[test]
fn regional_draws_follow_weights() {
    let mut failures = 0;
    let mut runs = 0;
    for seed in 0..20 {
        let g = random_graph(seed, 20, 3);
        for region in 0..3 {
            for kind in [WeightKind::InDegree, WeightKind::OutDegree] {
                if g.weight_sum(kind, Some(region)) == 0 {
                    assert!(g
                        .sample_preferential(kind, Some(region), &mut seeded(0))
                        .is_none());
                    continue;
                }
                let (tv, chi, crit) = check(&g, kind, Some(region), 7 * seed + region as u64);
                assert!(tv < 0.02, "seed {seed} region {region} {kind:?}: tv {tv}");
                runs += 1;
                if chi > crit {
                    failures += 1;
                }
            }
        }
    }
    assert!(runs > 50);
    assert!(failures <= 4, "{failures} of {runs} chi-square rejections");
}

#[test]
fn weights_track_insertions() {
    // Draw frequencies stay exact while edges keep arriving.
    let mut g = random_graph(99, 12, 1);
    let mut rng = seeded(5);
    for _ in 0..30 {
        let c = rng.gen_range(0..12);
        let p = rng.gen_range(0..12);
        if c != p {
            g.add_edge(c, p).unwrap();
        }
    }
    let (tv, _, _) = check(&g, WeightKind::OutDegree, None, 6);
    assert!(tv < 0.02);
}
