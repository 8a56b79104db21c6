//! Directed AS graph with region labels and degree-proportional sampling.

use std::collections::HashSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampler::Fenwick;

pub type NodeId = u32;

/// How the edge set should be read by analyses.
///
/// Undirected models (BA, InEd) are stored with every edge as an
/// anti-parallel pair; `Undirected` tells leaf counting to use undirected
/// degree instead of the customer/provider definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Directed,
    Undirected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: NodeId,
    pub region: u32,
    /// Number of customers (edges pointing at this node).
    pub in_degree: u32,
    /// Number of providers (edges leaving this node).
    pub out_degree: u32,
}

/// Degree quantity used as a sampling weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    InDegree,
    OutDegree,
}

/// Simple directed graph: no self-loops, at most one edge per ordered pair.
///
/// Edges are kept in insertion order so that serialization and traces are
/// deterministic. Preferential sampling is backed by Fenwick trees over the
/// in- and out-degrees, one pair globally and one pair per region.
#[derive(Debug, Clone)]
pub struct AsGraph {
    kind: GraphKind,
    regions: u32,
    nodes: Vec<NodeRecord>,
    edges: Vec<(NodeId, NodeId)>,
    edge_set: HashSet<(NodeId, NodeId)>,
    providers: Vec<Vec<NodeId>>,
    customers: Vec<Vec<NodeId>>,
    in_degree_sum: u64,
    out_degree_sum: u64,
    symmetric_pairs: usize,
    global_in: Fenwick,
    global_out: Fenwick,
    region_members: Vec<Vec<NodeId>>,
    region_slot: Vec<u32>,
    region_in: Vec<Fenwick>,
    region_out: Vec<Fenwick>,
}

impl PartialEq for AsGraph {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.regions == other.regions
            && self.nodes == other.nodes
            && self.edges == other.edges
    }
}

impl AsGraph {
    pub fn new(regions: u32) -> Result<Self> {
        Self::with_kind(regions, GraphKind::Directed)
    }

    pub fn with_kind(regions: u32, kind: GraphKind) -> Result<Self> {
        if regions == 0 {
            return Err(Error::InvalidParams(
                "a graph needs at least one region".into(),
            ));
        }
        let r = regions as usize;
        Ok(Self {
            kind,
            regions,
            nodes: Vec::new(),
            edges: Vec::new(),
            edge_set: HashSet::new(),
            providers: Vec::new(),
            customers: Vec::new(),
            in_degree_sum: 0,
            out_degree_sum: 0,
            symmetric_pairs: 0,
            global_in: Fenwick::default(),
            global_out: Fenwick::default(),
            region_members: vec![Vec::new(); r],
            region_slot: Vec::new(),
            region_in: vec![Fenwick::default(); r],
            region_out: vec![Fenwick::default(); r],
        })
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn region_count(&self) -> u32 {
        self.regions
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn in_degree_sum(&self) -> u64 {
        self.in_degree_sum
    }

    pub fn out_degree_sum(&self) -> u64 {
        self.out_degree_sum
    }

    /// Number of unordered pairs joined in both directions.
    pub fn symmetric_count(&self) -> usize {
        self.symmetric_pairs
    }

    pub fn nodes(&self) -> &[NodeRecord] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> Option<&NodeRecord> {
        self.nodes.get(id as usize)
    }

    /// Directed edges `(customer, provider)` in insertion order.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn has_edge(&self, customer: NodeId, provider: NodeId) -> bool {
        self.edge_set.contains(&(customer, provider))
    }

    pub fn is_symmetric(&self, u: NodeId, v: NodeId) -> bool {
        self.has_edge(u, v) && self.has_edge(v, u)
    }

    /// Nodes `u` buys transit from (targets of `u`'s outgoing edges).
    pub fn providers(&self, u: NodeId) -> &[NodeId] {
        &self.providers[u as usize]
    }

    /// Nodes that buy transit from `u`.
    pub fn customers(&self, u: NodeId) -> &[NodeId] {
        &self.customers[u as usize]
    }

    /// Members of a region in birth order.
    pub fn region_members(&self, region: u32) -> &[NodeId] {
        self.region_members
            .get(region as usize)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn add_node(&mut self, region: u32) -> Result<NodeId> {
        if region >= self.regions {
            return Err(Error::RegionOutOfRange {
                region,
                regions: self.regions,
            });
        }
        let id = self.nodes.len() as NodeId;
        self.nodes.push(NodeRecord {
            id,
            region,
            in_degree: 0,
            out_degree: 0,
        });
        self.providers.push(Vec::new());
        self.customers.push(Vec::new());
        self.global_in.push(0);
        self.global_out.push(0);
        let r = region as usize;
        self.region_slot.push(self.region_members[r].len() as u32);
        self.region_members[r].push(id);
        self.region_in[r].push(0);
        self.region_out[r].push(0);
        Ok(id)
    }

    /// Inserts `customer -> provider`. Returns `false` if the edge already
    /// exists, leaving the graph untouched.
    pub fn add_edge(&mut self, customer: NodeId, provider: NodeId) -> Result<bool> {
        for id in [customer, provider] {
            if id as usize >= self.nodes.len() {
                return Err(Error::UnknownNode(id));
            }
        }
        if customer == provider {
            return Err(Error::SelfLoop(customer));
        }
        if !self.edge_set.insert((customer, provider)) {
            return Ok(false);
        }
        if self.edge_set.contains(&(provider, customer)) {
            self.symmetric_pairs += 1;
        }
        self.edges.push((customer, provider));
        self.providers[customer as usize].push(provider);
        self.customers[provider as usize].push(customer);
        self.in_degree_sum += 1;
        self.out_degree_sum += 1;

        let c = customer as usize;
        self.nodes[c].out_degree += 1;
        self.global_out.add(c, 1);
        let region = self.nodes[c].region as usize;
        self.region_out[region].add(self.region_slot[c] as usize, 1);

        let p = provider as usize;
        self.nodes[p].in_degree += 1;
        self.global_in.add(p, 1);
        let region = self.nodes[p].region as usize;
        self.region_in[region].add(self.region_slot[p] as usize, 1);
        Ok(true)
    }

    /// Total sampling weight of `kind` over the whole graph or one region.
    pub fn weight_sum(&self, kind: WeightKind, region: Option<u32>) -> u64 {
        self.index(kind, region).map_or(0, Fenwick::total)
    }

    fn index(&self, kind: WeightKind, region: Option<u32>) -> Option<&Fenwick> {
        match (kind, region) {
            (WeightKind::InDegree, None) => Some(&self.global_in),
            (WeightKind::OutDegree, None) => Some(&self.global_out),
            (WeightKind::InDegree, Some(r)) => self.region_in.get(r as usize),
            (WeightKind::OutDegree, Some(r)) => self.region_out.get(r as usize),
        }
    }

    /// Draws node `i` with probability `weight(i) / sum(weight)` over the
    /// nodes admitted by `region`. Returns `None` when that sum is zero.
    pub fn sample_preferential<R: Rng + ?Sized>(
        &self,
        kind: WeightKind,
        region: Option<u32>,
        rng: &mut R,
    ) -> Option<NodeId> {
        let slot = self.index(kind, region)?.sample(rng)?;
        Some(match region {
            None => slot as NodeId,
            Some(r) => self.region_members[r as usize][slot],
        })
    }

    pub fn undirected_view(&self) -> UndirectedView {
        UndirectedView::from_graph(self)
    }
}

/// Unordered-pair projection: `{u, v}` is an edge when at least one of
/// `u -> v`, `v -> u` exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedView {
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl UndirectedView {
    pub fn from_graph(graph: &AsGraph) -> Self {
        let n = graph.node_count();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in graph.edges() {
            // An anti-parallel pair contributes once, from its first edge.
            if u < v || !graph.has_edge(v, u) {
                adjacency[u as usize].push(v);
                adjacency[v as usize].push(u);
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Self {
            adjacency,
            edge_count,
        }
    }

    /// Builds a view from explicit unordered pairs; duplicates and loops are
    /// dropped.
    pub fn from_pairs(
        node_count: usize,
        pairs: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Self {
        let mut adjacency = vec![Vec::new(); node_count];
        for (u, v) in pairs {
            if u != v {
                adjacency[u as usize].push(v);
                adjacency[v as usize].push(u);
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Self {
            adjacency,
            edge_count,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.adjacency[u as usize]
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.adjacency[u as usize].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    /// Each unordered edge once, as `(low, high)`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&v| (u as NodeId) < v)
                .map(move |&v| (u as NodeId, v))
        })
    }
}
