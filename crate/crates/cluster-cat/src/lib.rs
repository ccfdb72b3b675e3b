//! The generalized m-cluster category `per A / D_fd(A)`, accessed through
//! the fundamental domain `F = D^{<=0} ∩ ⊥D^{<=-m-1} ∩ per A`.

pub mod checks;
pub mod domain;
pub mod hom;

pub use checks::{cluster_tilting_check, complements, euler_les_check, periodicity_check, ComplementsReport, CtReport, EulerReport, PeriodicityReport};
pub use domain::{fundamental_rep, tag, FundamentalDomainTag, FundamentalRep, Probe};
pub use hom::{hom_cluster, hom_cluster_truncated, ClusterHom, HomPath};

use silting_mutation_lab::MutationError;
use silting_perf_modules::ModuleError;

#[derive(Debug, thiserror::Error)]
pub enum ClusterError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Mutation(#[from] MutationError),
    #[error("{which} is not in the fundamental domain: {reason}")]
    NotInDomain { which: &'static str, reason: String },
    #[error("t = {t} outside 0..={m}")]
    Range { t: i64, m: i64 },
    #[error("{0} is not stable under raising the truncation")]
    Unstable(String),
}
