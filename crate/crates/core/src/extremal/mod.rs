//! Exact extremal numbers `ex(n, G)` for small `n`, and the exponent
//! arithmetic that turns a bound `ex(n, G) <~ n^{2 - alpha}` into the
//! size threshold `q^{max((d+1)/2, 1/alpha)}`.

mod exponents;
mod search;

use thiserror::Error;

use crate::graphs::{contains_subgraph, Containment, Graph, GraphError};

pub use exponents::{aks_exponent, best_known_exponent, threshold_exponent, Binding, ExponentInfo, ExponentSource, ThresholdResult};
pub use search::{ex_branch_bound, ex_branch_bound_with, ex_exhaustive, ex_exhaustive_with, BranchBound};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtremalError {
    #[error("n = {n} exceeds the configured cap {cap} for this oracle")]
    TooLarge { n: usize, cap: usize },
    #[error("pattern has no edges, so ex(n, G) is undefined")]
    EmptyPattern,
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("dimension must be at least 2, got {0}")]
    BadDimension(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `ex(n, G)` with a `G`-free witness on `n` vertices carrying `value` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalResult {
    pub n: usize,
    pub pattern: Graph,
    pub value: usize,
    pub witness: Graph,
}

impl ExtremalResult {
    /// Re-checks the witness: right size, right edge count, no copy of `G`.
    pub fn verify(&self) -> bool {
        self.witness.vertex_count() == self.n
            && self.witness.edge_count() == self.value
            && contains_subgraph(&self.witness, &self.pattern) == Containment::Absent
    }
}

/// `C(n, 2)`.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
