//! Certification of outcomes: exact escape detection once budgets run out,
//! minimum barriers by vertex cut, bounded minimax, and loss accounting for
//! the restart strategy.

pub mod barrier;
pub mod certify;
pub mod flood;
pub(crate) mod flow;
pub mod loss;
pub mod minimax;

use crate::lattice::Cell;

pub use barrier::{barrier_deficit, min_barrier, min_barrier_with_cut};
pub use certify::{certify, Certification, Verdict};
pub use flood::{flood_escape_check, checked_escape, FloodVerdict};
pub use loss::{loss_accounting, LossLedger, RingRecord};
pub use minimax::{bounded_minimax, bounded_minimax_from, MinimaxReport, MinimaxVerdict, SearchLimits};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateKind {
    /// A cell the fire reaches outside the bounding box of everything touched.
    FloodToInfinity { witness: Cell },
    /// More cells are needed to cut the fire off than will ever arrive.
    BarrierDeficit { min_barrier: u64, remaining_budget: u64, clip_radius: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscapeCertificate {
    pub kind: CertificateKind,
    pub turn: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("clip radius {clip} is too small: burning cell {cell} reaches it")]
    ClipTooSmall { clip: u32, cell: Cell },
    #[error("trace mismatch at turn {turn}: {reason}")]
    TraceMismatch { turn: u32, reason: String },
}
