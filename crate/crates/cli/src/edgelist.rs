//! Plain-text edge lists.
//!
//! ```text
//! # model=geodined
//! # n=3
//! N 0 0
//! N 1 0
//! N 2 1
//! E 1 0
//! E 2 0
//! E 0 2
//! ```
//!
//! `# key=value` lines form the header, other `#` lines are comments. `N id
//! region` declares nodes in id order, `E customer provider` one directed
//! edge. A symmetric arrangement is two `E` lines.

use std::fmt::Write as _;
use std::io::{BufWriter, Write};
use std::path::Path;

use asgraph::generators::ModelParams;
use asgraph::{AsGraph, GraphKind, NodeId};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const GENERATOR_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Ordered `key=value` metadata.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header(pub Vec<(String, String)>);

impl Header {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.0
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        let value = value.to_string();
        match self.0.iter_mut().find(|(k, _)| k == key) {
            Some(entry) => entry.1 = value,
            None => self.0.push((key.to_string(), value)),
        }
    }

    pub fn seed(&self) -> Option<u64> {
        self.get("seed")?.parse().ok()
    }

    pub fn number(&self, key: &str) -> Option<f64> {
        self.get(key)?.parse().ok()
    }

    pub fn region_names(&self) -> Option<Vec<String>> {
        self.get("region-names")
            .map(|v| v.split(';').map(str::to_string).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeList {
    pub header: Header,
    pub graph: AsGraph,
}

impl EdgeList {
    /// Header echoing the generator configuration.
    pub fn generated(
        params: &ModelParams,
        region_names: Option<&[String]>,
        graph: AsGraph,
    ) -> Self {
        let mut header = Header::default();
        header.set("model", params.model);
        header.set("n", params.n);
        header.set("m", params.m);
        header.set("p", params.p);
        header.set("alpha", params.alpha);
        header.set("seed", params.seed);
        header.set("m0", params.m0);
        header.set("kind", kind_str(graph.kind()));
        header.set("regions", graph.region_count());
        if let Some(names) = region_names.filter(|n| n.len() == graph.region_count() as usize) {
            let clean: Vec<String> = names
                .iter()
                .map(|n| n.replace([';', '\n', '\r'], " "))
                .collect();
            header.set("region-names", clean.join(";"));
        }
        header.set("generator-version", GENERATOR_VERSION);
        Self { header, graph }
    }

    pub fn write_to<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut out = BufWriter::new(out);
        for (k, v) in &self.header.0 {
            writeln!(out, "# {k}={v}")?;
        }
        for node in self.graph.nodes() {
            writeln!(out, "N {} {}", node.id, node.region)?;
        }
        for &(c, p) in self.graph.edges() {
            writeln!(out, "E {c} {p}")?;
        }
        out.flush()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.header.0 {
            let _ = writeln!(s, "# {k}={v}");
        }
        for node in self.graph.nodes() {
            let _ = writeln!(s, "N {} {}", node.id, node.region);
        }
        for &(c, p) in self.graph.edges() {
            let _ = writeln!(s, "E {c} {p}");
        }
        s
    }

    pub fn save(&self, path: &Path) -> CliResult<()> {
        let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
        self.write_to(file).map_err(|e| CliError::io(path, e))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, path: &Path) -> CliResult<Self> {
        let mut header = Header::default();
        let mut regions: Vec<u32> = Vec::new();
        let mut edges: Vec<(usize, NodeId, NodeId)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| CliError::Parse {
                path: path.to_path_buf(),
                line: line_no,
                message,
            };
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some((k, v)) = rest.split_once('=') {
                    header.set(k.trim(), v.trim());
                }
                continue;
            }
            let mut fields = line.split_whitespace();
            let tag = fields.next().unwrap_or_default();
            let mut number = |what: &str| -> CliResult<u32> {
                let field = fields
                    .next()
                    .ok_or_else(|| err(format!("missing {what}")))?;
                field
                    .parse()
                    .map_err(|_| err(format!("{what} `{field}` is not a nonnegative integer")))
            };
            match tag {
                "N" => {
                    let id = number("node id")?;
                    let region = number("region")?;
                    if id as usize != regions.len() {
                        return Err(err(format!(
                            "node id {id} out of order, expected {}",
                            regions.len()
                        )));
                    }
                    regions.push(region);
                }
                "E" => {
                    let c = number("customer id")?;
                    let p = number("provider id")?;
                    for id in [c, p] {
                        if id as usize >= regions.len() {
                            return Err(err(format!("edge references undeclared node {id}")));
                        }
                    }
                    if c == p {
                        return Err(err(format!("self-loop on node {c}")));
                    }
                    edges.push((line_no, c, p));
                }
                other => return Err(err(format!("unknown record `{other}`"))),
            }
            if fields.next().is_some() {
                return Err(err("trailing fields".to_string()));
            }
        }

        let data_err = |message: String| CliError::Data(format!("{}: {message}", path.display()));
        let kind = match header.get("kind") {
            None | Some("directed") => GraphKind::Directed,
            Some("undirected") => GraphKind::Undirected,
            Some(other) => return Err(data_err(format!("unknown graph kind `{other}`"))),
        };
        let used = regions.iter().max().map_or(1, |&r| r + 1);
        let declared = match header.get("regions") {
            Some(v) => v
                .parse::<u32>()
                .map_err(|_| data_err(format!("regions=`{v}` is not an integer")))?,
            None => used,
        };
        if declared < used {
            return Err(data_err(format!(
                "node region {} but regions={declared}",
                used - 1
            )));
        }
        let mut graph = AsGraph::with_kind(declared.max(1), kind)?;
        for r in regions {
            graph.add_node(r)?;
        }
        for (line, c, p) in edges {
            if !graph.add_edge(c, p)? {
                return Err(CliError::Parse {
                    path: path.to_path_buf(),
                    line,
                    message: format!("duplicate edge {c} -> {p}"),
                });
            }
        }
        Ok(Self { header, graph })
    }
}

fn kind_str(kind: GraphKind) -> &'static str {
    match kind {
        GraphKind::Directed => "directed",
        GraphKind::Undirected => "undirected",
    }
}
