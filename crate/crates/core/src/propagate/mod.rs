//! Constraint systems over floating-point variables: fixpoint propagation,
//! NaN-domain transfer, labeling search and anomaly detection.

pub mod anomaly;
pub mod fixpoint;
pub mod nan;
pub mod search;
pub mod system;

pub use anomaly::{detect_anomaly, AnomalyFinding, AnomalyKind, AnomalyStatus, Witness};
pub use fixpoint::{propagate_fixpoint, Inconsistent, Refined};
pub use search::{labeling_search, SearchOutcome};
pub use system::{Constraint, ConstraintSystem, VarId};

use crate::errfun::EvalMode;

/// Knobs shared by propagation, search and anomaly detection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub eval_mode: EvalMode,
    /// Stop propagating after this many constraint revisions. Stopping
    /// early is sound, only less precise.
    pub max_iterations: Option<u64>,
    /// Node budget of each labeling search.
    pub search_budget: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { eval_mode: EvalMode::Exact, max_iterations: None, search_budget: 1_000_000 }
    }
}
