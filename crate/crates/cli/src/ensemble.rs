//! Independent generator runs; run `r` uses seed `seed + r`.

use std::path::{Path, PathBuf};

use asgraph::generators::{generate, ModelParams};
use asgraph::rng::run_seed;
use asgraph::AsGraph;
use rayon::prelude::*;

use crate::error::CliResult;

/// `g.el` stays `g.el` for a single run and becomes `g.<r>.el` otherwise.
pub fn run_path(out: &Path, run: usize, runs: usize) -> PathBuf {
    if runs <= 1 {
        return out.to_path_buf();
    }
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match out.extension() {
        Some(ext) => format!("{stem}.{run}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{run}"),
    };
    out.with_file_name(name)
}

pub fn run_params(base: &ModelParams, runs: usize) -> Vec<ModelParams> {
    (0..runs)
        .map(|r| base.clone().with_seed(run_seed(base.seed, r as u64)))
        .collect()
}

/// Generates all runs in parallel, in run order.
pub fn generate_runs(base: &ModelParams, runs: usize) -> CliResult<Vec<(ModelParams, AsGraph)>> {
    base.validate()?;
    run_params(base, runs)
        .into_par_iter()
        .map(|params| {
            let (graph, _) = generate(&params)?;
            Ok((params, graph))
        })
        .collect()
}
