//! Measurements on generated graphs: degree CCDFs and power-law fits, leaf
//! counts, symmetric-arrangement fraction and dense cores.

pub mod cores;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{AsGraph, GraphKind};

pub use cores::{find_dense_cores, Core, CoreReport, DEFAULT_MIN_CORE_SIZE, DEFAULT_THRESHOLD};

/// Minimum number of CCDF points a fit accepts.
pub const MIN_FIT_POINTS: usize = 5;
/// Tail cutoff of the default fit range, in expected node counts.
pub const TAIL_NODES: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeKind {
    Undirected,
    In,
    Out,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Global,
    Region(u32),
}

/// Empirical complementary CDF: `(k, Pr[deg >= k])` at every distinct
/// positive degree, ascending in `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CcdfCurve {
    pub scope: Scope,
    pub kind: DegreeKind,
    /// Nodes in scope, isolated ones included.
    pub nodes: usize,
    pub points: Vec<(u32, f64)>,
}

impl CcdfCurve {
    /// Wraps precomputed points, e.g. an analytic curve.
    pub fn from_points(nodes: usize, points: Vec<(u32, f64)>) -> Self {
        Self {
            scope: Scope::Global,
            kind: DegreeKind::Undirected,
            nodes,
            points,
        }
    }

    pub fn at(&self, k: u32) -> f64 {
        match self.points.binary_search_by_key(&k, |&(d, _)| d) {
            Ok(i) => self.points[i].1,
            Err(i) => self.points.get(i).map_or(0.0, |&(_, f)| f),
        }
    }
}

pub fn degrees(graph: &AsGraph, kind: DegreeKind) -> Vec<u32> {
    match kind {
        DegreeKind::Undirected => graph
            .undirected_view()
            .degrees()
            .into_iter()
            .map(|d| d as u32)
            .collect(),
        DegreeKind::In => graph.nodes().iter().map(|n| n.in_degree).collect(),
        DegreeKind::Out => graph.nodes().iter().map(|n| n.out_degree).collect(),
    }
}

pub fn ccdf(graph: &AsGraph, kind: DegreeKind, scope: Scope) -> Result<CcdfCurve> {
    let all = degrees(graph, kind);
    let mut selected: Vec<u32> = match scope {
        Scope::Global => all,
        Scope::Region(r) => graph
            .region_members(r)
            .iter()
            .map(|&u| all[u as usize])
            .collect(),
    };
    ccdf_from_degrees(&mut selected, scope, kind)
}

pub fn ccdf_from_degrees(degrees: &mut [u32], scope: Scope, kind: DegreeKind) -> Result<CcdfCurve> {
    let nodes = degrees.len();
    if nodes == 0 {
        return Err(Error::EmptyScope(format!("{scope:?} holds no nodes")));
    }
    degrees.sort_unstable();
    let mut points = Vec::new();
    let mut i = 0;
    while i < nodes {
        let k = degrees[i];
        if k > 0 {
            points.push((k, (nodes - i) as f64 / nodes as f64));
        }
        while i < nodes && degrees[i] == k {
            i += 1;
        }
    }
    if points.is_empty() {
        return Err(Error::EmptyScope(format!(
            "{scope:?} has no node with positive degree"
        )));
    }
    Ok(CcdfCurve {
        scope,
        kind,
        nodes,
        points,
    })
}

/// Least-squares line through `(ln k, ln CCDF(k))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    /// Magnitude of the CCDF slope.
    pub eta: f64,
    /// Density exponent, always `eta + 1`.
    pub gamma: f64,
    pub k_min: u32,
    pub k_max: u32,
    pub points: usize,
    /// Coefficient of determination of the log-log regression.
    pub r_squared: f64,
}

/// Fits over `[1, k*]` where `k*` is the largest degree whose CCDF is at
/// least `10 / nodes`.
pub fn fit_power_law(curve: &CcdfCurve) -> Result<PowerLawFit> {
    let floor = TAIL_NODES / curve.nodes as f64;
    let k_max = curve
        .points
        .iter()
        .filter(|&&(_, f)| f >= floor)
        .map(|&(k, _)| k)
        .max()
        .unwrap_or(0);
    fit_power_law_in(curve, 1, k_max)
}

pub fn fit_power_law_in(curve: &CcdfCurve, k_min: u32, k_max: u32) -> Result<PowerLawFit> {
    let pts: Vec<(f64, f64)> = curve
        .points
        .iter()
        .filter(|&&(k, f)| k >= k_min.max(1) && k <= k_max && f > 0.0)
        .map(|&(k, f)| ((k as f64).ln(), f.ln()))
        .collect();
    if pts.len() < MIN_FIT_POINTS {
        return Err(Error::TooFewPoints {
            found: pts.len(),
            needed: MIN_FIT_POINTS,
        });
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = pts
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).powi(2))
        .sum();
    let r_squared = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    let eta = -slope;
    Ok(PowerLawFit {
        eta,
        gamma: eta + 1.0,
        k_min: k_min.max(1),
        k_max,
        points: pts.len(),
        r_squared,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeafCount {
    pub count: usize,
    pub fraction: f64,
}

/// Leaves are nodes with in-degree 0 and out-degree 1; graphs stored with the
/// undirected encoding use undirected degree 1 instead.
pub fn count_leaves(graph: &AsGraph) -> LeafCount {
    let count = match graph.kind() {
        GraphKind::Directed => graph
            .nodes()
            .iter()
            .filter(|n| n.in_degree == 0 && n.out_degree == 1)
            .count(),
        GraphKind::Undirected => {
            let view = graph.undirected_view();
            (0..view.node_count() as u32)
                .filter(|&u| view.degree(u) == 1)
                .count()
        }
    };
    let n = graph.node_count();
    LeafCount {
        count,
        fraction: if n == 0 { 0.0 } else { count as f64 / n as f64 },
    }
}

/// Share of arrangements (unordered connected pairs) that are symmetric.
pub fn symmetric_fraction(graph: &AsGraph) -> Result<f64> {
    let sym = graph.symmetric_count();
    let pairs = graph.edge_count() - sym;
    if pairs == 0 {
        return Err(Error::EmptyScope("graph has no edges".into()));
    }
    Ok(sym as f64 / pairs as f64)
}
