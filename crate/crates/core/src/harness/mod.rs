//! Random instances, theorem checks, known-family cross-checks and
//! campaigns.

mod campaign;
mod families;
mod generate;
mod theorem;

pub use campaign::{
    campaign_graph, completed_keys, expand_grid, gap_table, records_to_jsonl, render_gap_table, run_campaign,
    CampaignConfig, CampaignRecord, FloatList, GapRow, Grid, InstanceSpec, IntList, SigmaSummary, Task,
};
pub use families::{families_crosscheck, FamilyRecord, KnownFamily};
pub use generate::{
    connected_catalog, degree_floor, random_connected_graph, random_decomposition, random_dense_graph,
    side_condition, small_decompositions,
};
pub use theorem::{
    sandwich_check, verify_theorem, verify_theorem_with, CutValue, Equality, SandwichRecord, TheoremOptions,
    TheoremRecord,
};

use thiserror::Error;

use crate::alternating::AltError;
use crate::cuts::CutError;
use crate::graph::DecompositionError;
use crate::kneser::KneserError;
use crate::sigma::SigmaError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("degree fraction must lie strictly between 0 and 1, got {0}")]
    InvalidDelta(f64),
    #[error("minimum degree {need} is impossible on {n} vertices")]
    InfeasibleFloor { n: usize, need: usize },
    #[error("cannot split {m} edges into {k} nonempty parts")]
    PartCount { k: usize, m: usize },
    #[error("trees on n - r vertices need n - r >= 2 (n = {n}, r = {r})")]
    TreeTooSmall { n: usize, r: usize },
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Kneser(#[from] KneserError),
    #[error(transparent)]
    Cut(#[from] CutError),
    #[error(transparent)]
    Alt(#[from] AltError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Sigma(#[from] SigmaError),
}
