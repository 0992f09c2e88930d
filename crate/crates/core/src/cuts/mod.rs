//! Cut numbers, global minimum cuts and generalized Turán numbers.

mod min_cut;
mod turan;

pub use min_cut::{cut_r, cut_r_brute, min_cut_global, CutResult};
pub use turan::{cut_decomp, turan_ex, turan_ex_with, DecompCut, TuranResult};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CutError {
    #[error("a cut needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("infeasible side sizes: r = {r} with n = {n} (need 1 <= r <= n/2)")]
    InfeasibleSides { r: usize, n: usize },
    #[error("subset search supports at most 64 vertices, got {0}")]
    TooLarge(usize),
    #[error("cut index i = {i} out of range 1..={} for n = {n}", n.saturating_sub(1))]
    IndexOutOfRange { i: usize, n: usize },
    #[error("minimum cut cross-check failed: contraction gave {fast}, subset search {brute}")]
    CrossCheck { fast: usize, brute: usize },
}
