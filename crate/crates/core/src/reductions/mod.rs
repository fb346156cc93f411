//! Generators that turn multicolored clique and multi-demand routing into
//! EDP instances with bounded structural parameters.

pub mod medp;
pub mod pipeline;
pub mod routing;
pub mod subset_sum;

pub use medp::{max_pairs_per_component, medp_to_edp, MedpExpansion};
pub use pipeline::{full_pipeline, Audit, Pipeline};
pub use routing::{
    eulerize_mdedp, is_demand_eulerian, mdedp_to_muedp, mrss_to_mdedp, muedp_to_edp, topological_order, Eulerized,
    LeafExpansion, MdedpGadget,
};
pub use subset_sum::{is_sidon, mcc_to_mss, mss_to_mrss, sidon_sequence, ItemOrigin, MccInstance, MssInstance, MssReduction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("invalid partition: {0}")]
    BadPartition(String),
    #[error("subset-sum instance has no cardinality")]
    MissingCardinality,
    #[error("expected a directed graph")]
    NotDirected,
    #[error("expected an undirected graph")]
    Directed,
    #[error("directed graph has a cycle")]
    Cyclic,
    #[error("demand-augmented graph is not Eulerian")]
    NotEulerian,
    #[error("audit failed: {0}")]
    AuditFailed(String),
}
