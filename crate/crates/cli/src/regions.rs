//! Region tables: one `name,weight_percent` line per region.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Four named regions plus 22 small ones sharing the residual weight.
pub const DEFAULT_REGIONS_CSV: &str = include_str!("../data/default_regions.csv");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionTable {
    pub names: Vec<String>,
    /// As written in the file, not normalized.
    pub weights: Vec<f64>,
}

impl RegionTable {
    pub fn builtin() -> Self {
        Self::parse(DEFAULT_REGIONS_CSV, Path::new("<built-in regions>")).expect("shipped table parses")
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text, path)
    }

    /// Blank lines and `#` comments are skipped. A first line whose weight is
    /// not a number is taken as a column header.
    pub fn parse(text: &str, path: &Path) -> CliResult<Self> {
        let mut names = Vec::new();
        let mut weights = Vec::new();
        let mut seen_data = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| CliError::Parse {
                path: path.to_path_buf(),
                line: idx + 1,
                message,
            };
            let (name, weight) = line
                .rsplit_once(',')
                .ok_or_else(|| err(format!("expected `name,weight`, got `{line}`")))?;
            let weight = weight.trim().trim_end_matches('%');
            let weight: f64 = match weight.parse() {
                Ok(w) => w,
                Err(_) if !seen_data => {
                    seen_data = true;
                    continue;
                }
                Err(_) => return Err(err(format!("weight `{weight}` is not a number"))),
            };
            seen_data = true;
            if !(weight.is_finite() && weight >= 0.0) {
                return Err(err(format!("weight {weight} must be finite and >= 0")));
            }
            names.push(name.trim().to_string());
            weights.push(weight);
        }
        if !weights.iter().any(|&w| w > 0.0) {
            return Err(CliError::Data(format!(
                "{}: at least one region needs a positive weight",
                path.display()
            )));
        }
        Ok(Self { names, weights })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn normalized(&self) -> Vec<f64> {
        let total: f64 = self.weights.iter().sum();
        self.weights.iter().map(|w| w / total).collect()
    }
}
