//! Dense-core extraction by repeated greedy peeling.
//!
//! Each round peels the remaining undirected graph by minimum degree (lowest
//! id first on ties). Every intermediate vertex set of `l >= min_size`
//! vertices is a candidate. A candidate qualifies when its edge density is at
//! least `threshold` and no member is weakly attached: every member has
//! internal degree at least `threshold * (l - 1) / 2`, half of what the
//! density bound asks of an average member. The largest qualifying candidate
//! becomes a core and its vertices are removed before the next round. Rounds
//! stop when no candidate qualifies.
//!
//! Because the peeling removes a minimum-degree vertex, the smallest internal
//! degree of a candidate is the degree of the vertex peeled next, so the
//! attachment test costs nothing extra.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::{AsGraph, NodeId, UndirectedView};

pub const DEFAULT_THRESHOLD: f64 = 0.70;
pub const DEFAULT_MIN_CORE_SIZE: usize = 7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Core {
    /// Sorted ascending.
    pub members: Vec<NodeId>,
    pub size: usize,
    pub edges: usize,
    pub density: f64,
    /// Shared region of all members, `None` when they span several.
    pub region: Option<u32>,
}

impl Core {
    pub fn is_regional(&self) -> bool {
        self.region.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoreReport {
    /// Vertex-disjoint, sizes nonincreasing.
    pub cores: Vec<Core>,
    pub threshold: f64,
    pub min_size: usize,
}

impl CoreReport {
    pub fn largest(&self) -> Option<&Core> {
        self.cores.first()
    }

    pub fn secondary(&self) -> &[Core] {
        self.cores.get(1..).unwrap_or(&[])
    }
}

/// Edge density of a vertex set: present edges over `l(l-1)/2`.
pub fn density(edges: usize, size: usize) -> f64 {
    if size < 2 {
        return 0.0;
    }
    edges as f64 / (size * (size - 1) / 2) as f64
}

/// Number of view edges with both endpoints in `members` (sorted).
pub fn induced_edges(view: &UndirectedView, members: &[NodeId]) -> usize {
    members
        .iter()
        .map(|&u| {
            view.neighbors(u)
                .iter()
                .filter(|&&v| u < v && members.binary_search(&v).is_ok())
                .count()
        })
        .sum()
}

pub fn find_dense_cores(graph: &AsGraph, threshold: f64, min_size: usize) -> CoreReport {
    let view = graph.undirected_view();
    let regions: Vec<u32> = graph.nodes().iter().map(|n| n.region).collect();
    find_dense_cores_in(&view, &regions, threshold, min_size)
}

/// Core extraction on an explicit view; `regions[u]` labels node `u`.
pub fn find_dense_cores_in(
    view: &UndirectedView,
    regions: &[u32],
    threshold: f64,
    min_size: usize,
) -> CoreReport {
    let min_size = min_size.max(2);
    let mut alive = vec![true; view.node_count()];
    let mut cores = Vec::new();
    while let Some(mut members) = peel_once(view, &alive, threshold, min_size) {
        members.sort_unstable();
        for &u in &members {
            alive[u as usize] = false;
        }
        let edges = induced_edges(view, &members);
        let first = regions.get(members[0] as usize).copied();
        let region =
            first.filter(|&r| members.iter().all(|&u| regions.get(u as usize) == Some(&r)));
        cores.push(Core {
            size: members.len(),
            density: density(edges, members.len()),
            edges,
            members,
            region,
        });
    }
    cores.sort_by_key(|c| std::cmp::Reverse(c.size));
    CoreReport {
        cores,
        threshold,
        min_size,
    }
}

/// Density and attachment test for a candidate of `size` vertices.
pub fn qualifies(edges: usize, size: usize, min_degree: usize, threshold: f64) -> bool {
    density(edges, size) >= threshold && min_degree as f64 >= threshold * (size - 1) as f64 / 2.0
}

/// One peeling pass over the alive vertices. Returns the largest qualifying
/// remaining set, if any.
fn peel_once(
    view: &UndirectedView,
    alive: &[bool],
    threshold: f64,
    min_size: usize,
) -> Option<Vec<NodeId>> {
    let n = view.node_count();
    let mut degree = vec![0usize; n];
    let mut queue = BTreeSet::new();
    let mut remaining = 0usize;
    let mut edges2 = 0usize;
    for u in 0..n {
        if !alive[u] {
            continue;
        }
        let d = view
            .neighbors(u as NodeId)
            .iter()
            .filter(|&&v| alive[v as usize])
            .count();
        degree[u] = d;
        edges2 += d;
        remaining += 1;
        queue.insert((d, u as NodeId));
    }
    let mut edges = edges2 / 2;
    let mut removed = vec![false; n];
    let mut found = false;
    while remaining >= min_size {
        let &(min_degree, _) = queue.first().expect("remaining > 0");
        if qualifies(edges, remaining, min_degree, threshold) {
            found = true;
            break;
        }
        let (d, u) = queue.pop_first().expect("remaining > 0");
        removed[u as usize] = true;
        remaining -= 1;
        edges -= d;
        for &v in view.neighbors(u) {
            let v = v as usize;
            if alive[v] && !removed[v] {
                queue.remove(&(degree[v], v as NodeId));
                degree[v] -= 1;
                queue.insert((degree[v], v as NodeId));
            }
        }
    }
    found.then(|| queue.into_iter().map(|(_, u)| u).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clique(offset: NodeId, size: NodeId) -> Vec<(NodeId, NodeId)> {
        let mut e = Vec::new();
        for i in 0..size {
            for j in i + 1..size {
                e.push((offset + i, offset + j));
            }
        }
        e
    }

    #[test]
    fn k8_with_pendant_path() {
        let mut pairs = clique(0, 8);
        pairs.extend([(7, 8), (8, 9), (9, 10)]);
        let view = UndirectedView::from_pairs(11, pairs);
        let report = find_dense_cores_in(&view, &[0; 11], 0.7, 7);
        assert_eq!(report.cores.len(), 1);
        let core = &report.cores[0];
        assert_eq!(core.members, (0..8).collect::<Vec<_>>());
        assert_eq!(core.density, 1.0);
        assert_eq!(core.region, Some(0));
    }

    #[test]
    fn two_cliques_joined_by_one_edge() {
        let mut pairs = clique(0, 7);
        pairs.extend(clique(7, 7));
        pairs.push((6, 7));
        let view = UndirectedView::from_pairs(14, pairs);
        let report = find_dense_cores_in(&view, &[0; 14], 0.7, 7);
        let sizes: Vec<_> = report.cores.iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![7, 7]);
        assert!(report.cores.iter().all(|c| c.density == 1.0));
    }

    #[test]
    fn weakly_attached_member_rejected() {
        // K8 plus one vertex tied to a single clique member: 29/36 edges
        // clears 0.7 but the extra vertex has internal degree 1 < 2.8.
        assert!(density(29, 9) >= 0.7);
        assert!(!qualifies(29, 9, 1, 0.7));
        assert!(qualifies(28, 8, 7, 0.7));
    }

    #[test]
    fn nothing_qualifies() {
        let view = UndirectedView::from_pairs(10, (0..9).map(|i| (i, i + 1)));
        let report = find_dense_cores_in(&view, &[0; 10], 0.7, 7);
        assert!(report.cores.is_empty());
    }

    #[test]
    fn mixed_regions_are_global() {
        let view = UndirectedView::from_pairs(7, clique(0, 7));
        let report = find_dense_cores_in(&view, &[0, 0, 0, 1, 0, 0, 0], 0.7, 7);
        assert_eq!(report.cores[0].region, None);
        assert!(!report.cores[0].is_regional());
    }

    #[test]
    fn density_helper() {
        assert_eq!(density(21, 7), 1.0);
        assert_eq!(density(0, 1), 0.0);
        assert!((density(22, 8) - 22.0 / 28.0).abs() < 1e-12);
    }
}
