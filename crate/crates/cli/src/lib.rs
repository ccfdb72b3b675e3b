//! Command-line front end: configuration, input loading, report envelopes
//! and the scripted scenarios.

pub mod commands;
pub mod config;
pub mod input;
pub mod report;
pub mod scenarios;

use thiserror::Error;

pub use config::{Format, OnUnstable, RunConfig};
pub use report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Parse(#[from] silting_quiver_dsl::ParseError),
    #[error(transparent)]
    Build(#[from] silting_potential_calculus::BuildError),
    #[error(transparent)]
    Module(#[from] silting_perf_modules::ModuleError),
    #[error(transparent)]
    Mutation(#[from] silting_mutation_lab::MutationError),
    #[error(transparent)]
    Cluster(#[from] silting_cluster_cat::ClusterError),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
}
