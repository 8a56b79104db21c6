//! No-valley routing and path inflation.
//!
//! A path is valley-free when no customer-to-provider hop follows a
//! provider-to-customer hop. Symmetric arrangements are peer links; how they
//! combine with the other hops is set by [`PeerPolicy`]. The default follows
//! Gao and Wang: a path climbs customer-to-provider links, crosses at most one
//! peer link at the top, then only descends.

use std::collections::VecDeque;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{AsGraph, NodeId};

pub const TIER1_MIN_DEGREE: usize = 100;
pub const TIER2_MIN_DEGREE: usize = 20;
pub const TIER3_MIN_DEGREE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Tier1,
    Tier2,
    Tier3,
    Untiered,
}

impl Tier {
    pub fn from_degree(degree: usize) -> Self {
        if degree >= TIER1_MIN_DEGREE {
            Tier::Tier1
        } else if degree >= TIER2_MIN_DEGREE {
            Tier::Tier2
        } else if degree >= TIER3_MIN_DEGREE {
            Tier::Tier3
        } else {
            Tier::Untiered
        }
    }

    pub const RANKED: [Tier; 3] = [Tier::Tier1, Tier::Tier2, Tier::Tier3];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TierAssignment {
    pub tiers: Vec<Tier>,
}

impl TierAssignment {
    pub fn members(&self, tier: Tier) -> Vec<NodeId> {
        self.tiers
            .iter()
            .enumerate()
            .filter(|&(_, &t)| t == tier)
            .map(|(u, _)| u as NodeId)
            .collect()
    }
}

/// Tiers by undirected degree: >= 100, [20, 100), [3, 20), below 3.
pub fn classify_tiers(graph: &AsGraph) -> TierAssignment {
    let view = graph.undirected_view();
    TierAssignment {
        tiers: (0..view.node_count() as NodeId)
            .map(|u| Tier::from_degree(view.degree(u)))
            .collect(),
    }
}

/// Business relationship seen when moving from a node to a neighbor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hop {
    /// Customer to provider.
    Up,
    /// Provider to customer.
    Down,
    /// Across a symmetric arrangement.
    Peer,
}

/// Where peer links may appear on a valley-free path.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeerPolicy {
    /// `up* peer? down*`: one peer link, only between the climb and the
    /// descent.
    #[default]
    SinglePeak,
    /// Peer links may be crossed anywhere and leave the phase unchanged.
    Transparent,
}

impl PeerPolicy {
    /// Phase after taking `hop` in `phase`, or `None` if the hop is a valley.
    /// Phases: 0 climbing, 1 crossed the peak peer link, 2 descending.
    pub fn step(self, phase: usize, hop: Hop) -> Option<usize> {
        match (self, hop, phase) {
            (_, Hop::Up, 0) => Some(0),
            (_, Hop::Up, _) => None,
            (_, Hop::Down, _) => Some(2),
            (PeerPolicy::SinglePeak, Hop::Peer, 0) => Some(1),
            (PeerPolicy::SinglePeak, Hop::Peer, _) => None,
            (PeerPolicy::Transparent, Hop::Peer, phase) => Some(phase),
        }
    }

    /// Whether a hop sequence is valley-free.
    pub fn admits(self, hops: &[Hop]) -> bool {
        hops.iter()
            .try_fold(0, |phase, &hop| self.step(phase, hop))
            .is_some()
    }
}

/// Adjacency annotated with relationships, built once per graph.
#[derive(Debug, Clone)]
pub struct RelationGraph {
    adjacency: Vec<Vec<(NodeId, Hop)>>,
    policy: PeerPolicy,
}

impl RelationGraph {
    pub fn new(graph: &AsGraph) -> Self {
        Self::with_policy(graph, PeerPolicy::default())
    }

    pub fn with_policy(graph: &AsGraph, policy: PeerPolicy) -> Self {
        let mut adjacency = vec![Vec::new(); graph.node_count()];
        for &(c, p) in graph.edges() {
            if graph.has_edge(p, c) {
                // Record a peer link once, from the lower-id edge.
                if c < p {
                    adjacency[c as usize].push((p, Hop::Peer));
                    adjacency[p as usize].push((c, Hop::Peer));
                }
            } else {
                adjacency[c as usize].push((p, Hop::Up));
                adjacency[p as usize].push((c, Hop::Down));
            }
        }
        for list in &mut adjacency {
            list.sort_unstable_by_key(|&(v, _)| v);
        }
        Self { adjacency, policy }
    }

    pub fn policy(&self) -> PeerPolicy {
        self.policy
    }

    /// Relationship of the hop `u -> v`, if adjacent.
    pub fn hop(&self, u: NodeId, v: NodeId) -> Option<Hop> {
        let list = self.hops(u);
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn hops(&self, u: NodeId) -> &[(NodeId, Hop)] {
        &self.adjacency[u as usize]
    }

    /// Hop count of a shortest path ignoring relationships.
    pub fn shortest_unrestricted(&self, s: NodeId, t: NodeId) -> Option<u32> {
        if s == t {
            return Some(0);
        }
        let mut dist = vec![u32::MAX; self.node_count()];
        let mut queue = VecDeque::new();
        dist[s as usize] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let next = dist[u as usize] + 1;
            for &(v, _) in self.hops(u) {
                if dist[v as usize] == u32::MAX {
                    if v == t {
                        return Some(next);
                    }
                    dist[v as usize] = next;
                    queue.push_back(v);
                }
            }
        }
        None
    }

    /// Hop count of a shortest valley-free path, by BFS over
    /// `(node, phase)` states.
    pub fn shortest_no_valley(&self, s: NodeId, t: NodeId) -> Option<u32> {
        if s == t {
            return Some(0);
        }
        let n = self.node_count();
        let mut dist = vec![u32::MAX; 3 * n];
        let mut queue = VecDeque::new();
        dist[s as usize] = 0;
        queue.push_back((s, 0usize));
        while let Some((u, phase)) = queue.pop_front() {
            let next = dist[phase * n + u as usize] + 1;
            for &(v, hop) in self.hops(u) {
                let Some(to) = self.policy.step(phase, hop) else {
                    continue;
                };
                if v == t {
                    return Some(next);
                }
                let slot = to * n + v as usize;
                if dist[slot] == u32::MAX {
                    dist[slot] = next;
                    queue.push_back((v, to));
                }
            }
        }
        None
    }
}

pub fn shortest_path_unrestricted(graph: &AsGraph, s: NodeId, t: NodeId) -> Option<u32> {
    RelationGraph::new(graph).shortest_unrestricted(s, t)
}

pub fn shortest_no_valley_path(graph: &AsGraph, s: NodeId, t: NodeId) -> Option<u32> {
    RelationGraph::new(graph).shortest_no_valley(s, t)
}

pub fn shortest_no_valley_path_with(
    graph: &AsGraph,
    s: NodeId,
    t: NodeId,
    policy: PeerPolicy,
) -> Option<u32> {
    RelationGraph::with_policy(graph, policy).shortest_no_valley(s, t)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TierInflation {
    pub tier: Tier,
    pub tier_size: usize,
    pub sampled: usize,
    /// Valley-free path exists but is longer than the shortest path.
    pub inflated: usize,
    /// Connected, but no valley-free path exists.
    pub unreachable: usize,
    /// Equal lengths, or not connected at all.
    pub not_inflated: usize,
    /// `(inflated + unreachable) / sampled * 100`.
    pub inflation_percent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InflationReport {
    pub tiers: Vec<TierInflation>,
    pub sample_size: usize,
    /// How a pair is assigned to a tier.
    pub pair_tier: String,
    pub peer_policy: PeerPolicy,
    pub seed: Option<u64>,
}

impl InflationReport {
    pub fn tier(&self, tier: Tier) -> Option<&TierInflation> {
        self.tiers.iter().find(|t| t.tier == tier)
    }
}

/// Outcome of one sampled pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairOutcome {
    NotInflated,
    Inflated,
    Unreachable,
}

pub fn classify_pair(relations: &RelationGraph, s: NodeId, t: NodeId) -> PairOutcome {
    match relations.shortest_unrestricted(s, t) {
        None => PairOutcome::NotInflated,
        Some(plain) => match relations.shortest_no_valley(s, t) {
            None => PairOutcome::Unreachable,
            Some(nv) if nv > plain => PairOutcome::Inflated,
            Some(_) => PairOutcome::NotInflated,
        },
    }
}

/// For each ranked tier, samples `sample_size` sources uniformly from the
/// tier (with replacement) and one uniform target per source from the whole
/// graph (redrawn when equal to the source). The pair belongs to the source's
/// tier. An empty tier reports zero samples.
pub fn path_inflation<R: Rng + ?Sized>(
    graph: &AsGraph,
    tiers: &TierAssignment,
    sample_size: usize,
    rng: &mut R,
) -> InflationReport {
    path_inflation_with(graph, tiers, sample_size, PeerPolicy::default(), rng)
}

pub fn path_inflation_with<R: Rng + ?Sized>(
    graph: &AsGraph,
    tiers: &TierAssignment,
    sample_size: usize,
    policy: PeerPolicy,
    rng: &mut R,
) -> InflationReport {
    let relations = RelationGraph::with_policy(graph, policy);
    let n = graph.node_count() as NodeId;
    let mut out = Vec::new();
    for tier in Tier::RANKED {
        let members = tiers.members(tier);
        let mut stats = TierInflation {
            tier,
            tier_size: members.len(),
            sampled: 0,
            inflated: 0,
            unreachable: 0,
            not_inflated: 0,
            inflation_percent: 0.0,
        };
        if !members.is_empty() && n > 1 {
            for _ in 0..sample_size {
                let s = members[rng.gen_range(0..members.len())];
                let t = loop {
                    let t = rng.gen_range(0..n);
                    if t != s {
                        break t;
                    }
                };
                stats.sampled += 1;
                match classify_pair(&relations, s, t) {
                    PairOutcome::NotInflated => stats.not_inflated += 1,
                    PairOutcome::Inflated => stats.inflated += 1,
                    PairOutcome::Unreachable => stats.unreachable += 1,
                }
            }
            stats.inflation_percent =
                100.0 * (stats.inflated + stats.unreachable) as f64 / stats.sampled as f64;
        }
        out.push(stats);
    }
    InflationReport {
        tiers: out,
        sample_size,
        pair_tier: "source".into(),
        peer_policy: policy,
        seed: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn directed(n: u32, edges: &[(NodeId, NodeId)]) -> AsGraph {
        let mut g = AsGraph::new(1).unwrap();
        for _ in 0..n {
            g.add_node(0).unwrap();
        }
        for &(u, v) in edges {
            g.add_edge(u, v).unwrap();
        }
        g
    }

    #[test]
    fn tier_boundaries() {
        assert_eq!(Tier::from_degree(150), Tier::Tier1);
        assert_eq!(Tier::from_degree(100), Tier::Tier1);
        assert_eq!(Tier::from_degree(99), Tier::Tier2);
        assert_eq!(Tier::from_degree(20), Tier::Tier2);
        assert_eq!(Tier::from_degree(19), Tier::Tier3);
        assert_eq!(Tier::from_degree(3), Tier::Tier3);
        assert_eq!(Tier::from_degree(2), Tier::Untiered);
    }

    #[test]
    fn unrestricted_basics() {
        let g = directed(4, &[(0, 1), (2, 1)]);
        assert_eq!(shortest_path_unrestricted(&g, 0, 0), Some(0));
        assert_eq!(shortest_path_unrestricted(&g, 0, 2), Some(2));
        assert_eq!(shortest_path_unrestricted(&g, 0, 3), None);
    }

    #[test]
    fn v_shape_is_a_valley() {
        // C=0 buys from P1=1 and P2=2.
        let g = directed(3, &[(0, 1), (0, 2)]);
        assert_eq!(shortest_no_valley_path(&g, 1, 2), None);
        assert_eq!(shortest_path_unrestricted(&g, 1, 2), Some(2));
        let peered = directed(3, &[(0, 1), (0, 2), (1, 2), (2, 1)]);
        assert_eq!(shortest_no_valley_path(&peered, 1, 2), Some(1));
    }

    #[test]
    fn peer_placement_by_policy() {
        // 0 up to 1, peer 1-2, up from 2 to 3.
        let g = directed(4, &[(0, 1), (1, 2), (2, 1), (2, 3)]);
        assert_eq!(shortest_no_valley_path(&g, 0, 3), None);
        assert_eq!(
            shortest_no_valley_path_with(&g, 0, 3, PeerPolicy::Transparent),
            Some(3)
        );
        // Up, peer, down is fine under both.
        let g = directed(4, &[(0, 1), (1, 2), (2, 1), (3, 2)]);
        for policy in [PeerPolicy::SinglePeak, PeerPolicy::Transparent] {
            assert_eq!(shortest_no_valley_path_with(&g, 0, 3, policy), Some(3));
        }
        // Down then up never is.
        let g = directed(3, &[(1, 0), (1, 2)]);
        assert_eq!(shortest_no_valley_path(&g, 0, 2), None);
    }

    #[test]
    fn admits_hop_sequences() {
        use Hop::*;
        let sp = PeerPolicy::SinglePeak;
        let tr = PeerPolicy::Transparent;
        assert!(sp.admits(&[Up, Up, Peer, Down, Down]));
        assert!(!sp.admits(&[Peer, Peer]));
        assert!(!sp.admits(&[Down, Peer]));
        assert!(tr.admits(&[Down, Peer, Down]));
        assert!(!tr.admits(&[Down, Peer, Up]));
        assert!(sp.admits(&[]));
    }

    #[test]
    fn in_tree_never_inflates() {
        // Binary in-tree rooted at 0.
        let edges: Vec<_> = (1..15u32).map(|i| (i, (i - 1) / 2)).collect();
        let g = directed(15, &edges);
        for s in 0..15 {
            for t in 0..15 {
                assert_eq!(
                    shortest_no_valley_path(&g, s, t),
                    shortest_path_unrestricted(&g, s, t)
                );
            }
        }
        let tiers = TierAssignment {
            tiers: vec![Tier::Tier3; 15],
        };
        let report = path_inflation(&g, &tiers, 200, &mut seeded(4));
        let t3 = report.tier(Tier::Tier3).unwrap();
        assert_eq!(t3.sampled, 200);
        assert_eq!(t3.inflation_percent, 0.0);
        assert_eq!(report.tier(Tier::Tier1).unwrap().sampled, 0);
    }

    #[test]
    fn v_shape_pair_fully_inflated() {
        let g = directed(3, &[(0, 1), (0, 2)]);
        let mut tiers = vec![Tier::Untiered; 3];
        tiers[1] = Tier::Tier1;
        let assignment = TierAssignment { tiers };
        // Targets are drawn from {0, 2}; restrict to the pair (1, 2).
        let relations = RelationGraph::new(&g);
        assert_eq!(classify_pair(&relations, 1, 2), PairOutcome::Unreachable);
        let report = path_inflation(&g, &assignment, 300, &mut seeded(8));
        let t1 = report.tier(Tier::Tier1).unwrap();
        assert_eq!(t1.inflated, 0);
        assert_eq!(t1.sampled, t1.unreachable + t1.not_inflated);
        assert!(t1.unreachable > 100 && t1.not_inflated > 100);
    }
}
