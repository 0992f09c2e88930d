//! Alternating 2-colorings relative to an edge ordering and the alternating
//! Turán number `ex_alt`.

mod coloring;
mod ex_alt;
mod ordering;

pub(crate) use coloring::split_mask;
pub use coloring::{
    count_consecutive_paths, is_valid_alt, is_valid_alt_with, realize_coloring, sample_colorings,
    verify_euler_degree_bound, verify_part_degree_bound, AlternatingColoring, ConsecutivePaths, Parity,
};
pub use ex_alt::{
    block_structured_orderings, ex_alt_fixed, ex_alt_fixed_with, ex_alt_min, ex_alt_min_with_threshold,
    AltMinResult, AltMode, AltResult, BLOCK_ORDERING_CAP, EXHAUSTIVE_THRESHOLD, WITHIN_PART_THRESHOLD,
};
pub use ordering::{
    count_block_orderings, for_each_block_ordering, BlockSpan, ClosedWalk, EdgeOrdering, TourCertificate,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderingError {
    #[error("ordering is not a permutation of 0..{m}")]
    NotPermutation { m: usize },
    #[error("edge {0} appears twice in the ordering")]
    DuplicateEdge(usize),
    #[error("span at {start} of length {len} exceeds {m} edges")]
    SpanOutOfRange { start: usize, len: usize, m: usize },
    #[error("span starting at {0} overlaps the previous span")]
    SpanOverlap(usize),
    #[error("span {span}: invalid tour certificate: {reason}")]
    Tour { span: usize, reason: String },
    #[error("no span with a tour certificate orders exactly the given edge set")]
    MissingCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AltError {
    #[error("exhaustive mode supports at most {threshold} edges, got {m}; use block-structured or sampled mode")]
    ThresholdExceeded { m: usize, threshold: usize },
}
