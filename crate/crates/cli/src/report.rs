//! Analysis reports for one or more edge-list files.

use std::collections::BTreeMap;

use asgraph::analysis::{self, CcdfCurve, CoreReport, DegreeKind, LeafCount, PowerLawFit, Scope};
use asgraph::rng::seeded;
use asgraph::routing::{self, InflationReport, PeerPolicy, Tier};
use asgraph::theory::{self, Prediction, TheoryConstants};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::edgelist::{EdgeList, Header};
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sections {
    pub leaves: bool,
    pub symmetric: bool,
    pub ccdf: bool,
    pub cores: bool,
    pub inflation: bool,
}

impl Sections {
    pub fn all() -> Self {
        Self {
            leaves: true,
            symmetric: true,
            ccdf: true,
            cores: true,
            inflation: true,
        }
    }

    pub fn any(&self) -> bool {
        self.leaves || self.symmetric || self.ccdf || self.cores || self.inflation
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub sections: Sections,
    pub threshold: f64,
    pub min_core_size: usize,
    pub inflation_samples: usize,
    /// Graph `i` (in input order) samples with `inflation_seed + i`.
    pub inflation_seed: u64,
    pub peer_policy: PeerPolicy,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            sections: Sections::all(),
            threshold: analysis::DEFAULT_THRESHOLD,
            min_core_size: analysis::DEFAULT_MIN_CORE_SIZE,
            inflation_samples: 1000,
            inflation_seed: 0,
            peer_policy: PeerPolicy::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FittedCurve {
    pub curve: CcdfCurve,
    pub fit: Option<PowerLawFit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit_error: Option<String>,
}

impl FittedCurve {
    fn new(curve: CcdfCurve) -> Self {
        match analysis::fit_power_law(&curve) {
            Ok(fit) => Self {
                curve,
                fit: Some(fit),
                fit_error: None,
            },
            Err(e) => Self {
                curve,
                fit: None,
                fit_error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionCurve {
    pub region: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub fitted: FittedCurve,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CcdfSection {
    pub global: FittedCurve,
    /// Regions without nodes are left out.
    pub regions: Vec<RegionCurve>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoreSection {
    #[serde(flatten)]
    pub report: CoreReport,
    pub largest_size: usize,
    pub secondary_count: usize,
    pub regional_secondary_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphReport {
    pub file: String,
    pub seed: Option<u64>,
    pub params: Header,
    pub nodes: usize,
    pub edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leaves: Option<LeafCount>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetric_fraction: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ccdf: Option<CcdfSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cores: Option<CoreSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inflation: Option<InflationReport>,
}

impl GraphReport {
    /// Scalar metrics by name, as aggregated across graphs.
    pub fn metrics(&self) -> BTreeMap<&'static str, f64> {
        let mut out = BTreeMap::new();
        if let Some(l) = &self.leaves {
            out.insert("leaf_fraction", l.fraction);
        }
        if let Some(s) = self.symmetric_fraction {
            out.insert("symmetric_fraction", s);
        }
        if let Some(fit) = self.ccdf.as_ref().and_then(|c| c.global.fit) {
            out.insert("eta", fit.eta);
            out.insert("gamma", fit.gamma);
        }
        if let Some(c) = &self.cores {
            out.insert("largest_core", c.largest_size as f64);
            out.insert("secondary_cores", c.secondary_count as f64);
            out.insert(
                "regional_secondary_cores",
                c.regional_secondary_count as f64,
            );
        }
        if let Some(inf) = &self.inflation {
            for t in &inf.tiers {
                let key = match t.tier {
                    Tier::Tier1 => "inflation_tier1",
                    Tier::Tier2 => "inflation_tier2",
                    Tier::Tier3 => "inflation_tier3",
                    Tier::Untiered => continue,
                };
                if t.sampled > 0 {
                    out.insert(key, t.inflation_percent);
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub mean: f64,
    /// Sample standard deviation; 0 for a single value.
    pub stddev: f64,
    pub count: usize,
}

impl Stat {
    pub fn of(values: &[f64]) -> Self {
        let count = values.len();
        let mean = values.iter().sum::<f64>() / count as f64;
        let stddev = if count > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1) as f64).sqrt()
        } else {
            0.0
        };
        Self {
            mean,
            stddev,
            count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphRef {
    pub file: String,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub graphs: Vec<GraphRef>,
    pub metrics: BTreeMap<String, Stat>,
    /// Secondary cores pooled over all graphs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub secondary_cores_total: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regional_secondary_share: Option<f64>,
}

impl Aggregate {
    pub fn mean(&self, metric: &str) -> Option<f64> {
        self.metrics.get(metric).map(|s| s.mean)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoryReport {
    pub constants: TheoryConstants,
    pub prediction: Prediction,
}

impl TheoryReport {
    pub fn new(m: f64, p: f64, nodes: Option<f64>) -> CliResult<Self> {
        let constants = theory::constants(m, p)?;
        let prediction = constants.predict(nodes)?;
        Ok(Self {
            constants,
            prediction,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub settings: Settings,
    pub graphs: Vec<GraphReport>,
    /// Present when more than one graph was analyzed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aggregate: Option<Aggregate>,
    /// Closed-form predictions for the shared `(m, p)` of the inputs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theory: Option<TheoryReport>,
}

pub fn analyze_graph(
    file: &str,
    input: &EdgeList,
    settings: &Settings,
    inflation_seed: u64,
) -> CliResult<GraphReport> {
    let graph = &input.graph;
    let s = settings.sections;
    let leaves = s.leaves.then(|| analysis::count_leaves(graph));
    let symmetric_fraction = if s.symmetric {
        Some(
            analysis::symmetric_fraction(graph)
                .map_err(|e| CliError::Data(format!("{file}: {e}")))?,
        )
    } else {
        None
    };
    let ccdf = if s.ccdf {
        let global = analysis::ccdf(graph, DegreeKind::Undirected, Scope::Global)
            .map_err(|e| CliError::Data(format!("{file}: {e}")))?;
        let names = input.header.region_names();
        let regions = (0..graph.region_count())
            .filter(|&r| !graph.region_members(r).is_empty())
            .filter_map(|r| {
                let curve = analysis::ccdf(graph, DegreeKind::Undirected, Scope::Region(r)).ok()?;
                Some(RegionCurve {
                    region: r,
                    name: names.as_ref().and_then(|n| n.get(r as usize).cloned()),
                    fitted: FittedCurve::new(curve),
                })
            })
            .collect();
        Some(CcdfSection {
            global: FittedCurve::new(global),
            regions,
        })
    } else {
        None
    };
    let cores = s.cores.then(|| {
        let report = analysis::find_dense_cores(graph, settings.threshold, settings.min_core_size);
        CoreSection {
            largest_size: report.largest().map_or(0, |c| c.size),
            secondary_count: report.secondary().len(),
            regional_secondary_count: report
                .secondary()
                .iter()
                .filter(|c| c.is_regional())
                .count(),
            report,
        }
    });
    let inflation = s.inflation.then(|| {
        let tiers = routing::classify_tiers(graph);
        let mut rng = seeded(inflation_seed);
        let mut report = routing::path_inflation_with(
            graph,
            &tiers,
            settings.inflation_samples,
            settings.peer_policy,
            &mut rng,
        );
        report.seed = Some(inflation_seed);
        report
    });
    Ok(GraphReport {
        file: file.to_string(),
        seed: input.header.seed(),
        params: input.header.clone(),
        nodes: graph.node_count(),
        edges: graph.edge_count(),
        leaves,
        symmetric_fraction,
        ccdf,
        cores,
        inflation,
    })
}

/// Analyzes every input in parallel; output order follows input order.
pub fn analyze(inputs: &[(String, EdgeList)], settings: &Settings) -> CliResult<AnalysisReport> {
    if !settings.sections.any() {
        return Err(CliError::Usage("no analysis sections requested".into()));
    }
    let graphs = inputs
        .par_iter()
        .enumerate()
        .map(|(i, (file, input))| {
            analyze_graph(
                file,
                input,
                settings,
                settings.inflation_seed.wrapping_add(i as u64),
            )
        })
        .collect::<CliResult<Vec<_>>>()?;
    let aggregate = (graphs.len() > 1).then(|| aggregate(&graphs));
    Ok(AnalysisReport {
        settings: settings.clone(),
        theory: shared_theory(inputs),
        aggregate,
        graphs,
    })
}

pub fn aggregate(graphs: &[GraphReport]) -> Aggregate {
    let mut values: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for g in graphs {
        for (k, v) in g.metrics() {
            values.entry(k.to_string()).or_default().push(v);
        }
    }
    let cores: Vec<&CoreSection> = graphs.iter().filter_map(|g| g.cores.as_ref()).collect();
    let secondary: usize = cores.iter().map(|c| c.secondary_count).sum();
    let regional: usize = cores.iter().map(|c| c.regional_secondary_count).sum();
    Aggregate {
        graphs: graphs
            .iter()
            .map(|g| GraphRef {
                file: g.file.clone(),
                seed: g.seed,
            })
            .collect(),
        metrics: values.into_iter().map(|(k, v)| (k, Stat::of(&v))).collect(),
        secondary_cores_total: (!cores.is_empty()).then_some(secondary),
        regional_secondary_share: (secondary > 0).then(|| regional as f64 / secondary as f64),
    }
}

/// Theory block for inputs whose headers agree on `m`, `p` and `n`.
fn shared_theory(inputs: &[(String, EdgeList)]) -> Option<TheoryReport> {
    let key = |h: &Header| (h.number("m"), h.number("p"), h.number("n"));
    let first = key(&inputs.first()?.1.header);
    if inputs.iter().any(|(_, e)| key(&e.header) != first) {
        return None;
    }
    let (Some(m), Some(p), n) = first else {
        return None;
    };
    TheoryReport::new(m, p, n).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::Path;

    #[test]
    fn three_node_symmetric_file() {
        let text = "N 0 0\nN 1 0\nN 2 0\nE 0 1\nE 1 0\nE 2 1\n";
        let input = EdgeList::parse(text, Path::new("tiny.el")).unwrap();
        let settings = Settings {
            sections: Sections {
                symmetric: true,
                leaves: true,
                ..Sections::default()
            },
            ..Settings::default()
        };
        let report = analyze(&[("tiny.el".into(), input)], &settings).unwrap();
        let g = &report.graphs[0];
        assert_eq!(g.symmetric_fraction, Some(0.5));
        assert_eq!(g.leaves.unwrap().count, 1);
        assert!(g.cores.is_none() && report.aggregate.is_none() && report.theory.is_none());
    }

    #[test]
    fn no_sections_is_usage_error() {
        let settings = Settings {
            sections: Sections::default(),
            ..Settings::default()
        };
        let err = analyze(&[], &settings).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn stat_values() {
        let s = Stat::of(&[1.0, 2.0, 3.0]);
        assert_eq!((s.mean, s.stddev, s.count), (2.0, 1.0, 3));
        assert_eq!(Stat::of(&[4.0]).stddev, 0.0);
    }
}
