//! File formats, ensemble runs, JSON reports and the `asgen` command line
//! around the `asgraph` library.

pub mod commands;
pub mod edgelist;
pub mod ensemble;
pub mod error;
pub mod regions;
pub mod report;

pub use commands::run;
pub use edgelist::{EdgeList, Header};
pub use error::{CliError, CliResult};
pub use regions::RegionTable;
