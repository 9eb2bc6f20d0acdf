use std::collections::{BTreeMap, VecDeque};

use crate::engine::GameState;
use crate::lattice::{neighbors, Cell};

use super::{AnalysisError, CertificateKind, EscapeCertificate};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FloodVerdict {
    Escaped(EscapeCertificate),
    /// The fire is sealed in; with no more placements it stops spreading
    /// at `contained_turn` with `burned` cells alight.
    Enclosed { contained_turn: u32, burned: usize },
}

/// Floods from the burning set through free cells inside the bounding box of
/// burning and protected cells grown by one. Reaching the box edge means the
/// fire is unbounded, since nothing outside the box is protected.
///
/// Only meaningful once no more firefighters will arrive; see
/// [`checked_escape`] for the guarded form.
pub fn flood_escape_check(state: &GameState) -> FloodVerdict {
    let touched = state.burning().iter().chain(state.protected());
    let (mut x0, mut x1, mut y0, mut y1) = (i32::MAX, i32::MIN, i32::MAX, i32::MIN);
    for c in touched {
        x0 = x0.min(c.x);
        x1 = x1.max(c.x);
        y0 = y0.min(c.y);
        y1 = y1.max(c.y);
    }
    let (x0, x1, y0, y1) = (x0 - 1, x1 + 1, y0 - 1, y1 + 1);
    let on_edge = |c: Cell| c.x == x0 || c.x == x1 || c.y == y0 || c.y == y1;

    let mut depth: BTreeMap<Cell, u32> = state.burning().iter().map(|&c| (c, 0)).collect();
    let mut queue: VecDeque<Cell> = state.burning().iter().copied().collect();
    let mut deepest = 0;
    while let Some(c) = queue.pop_front() {
        let d = depth[&c];
        deepest = deepest.max(d);
        for n in neighbors(c) {
            if state.is_free(n) && !depth.contains_key(&n) {
                if on_edge(n) {
                    let kind = CertificateKind::FloodToInfinity { witness: n };
                    return FloodVerdict::Escaped(EscapeCertificate { kind, turn: state.turn() });
                }
                depth.insert(n, d + 1);
                queue.push_back(n);
            }
        }
    }
    FloodVerdict::Enclosed { contained_turn: state.turn() + deepest + 1, burned: depth.len() }
}

/// [`flood_escape_check`] when the caller knows how much budget is still to
/// come; anything but zero is a precondition failure.
pub fn checked_escape(state: &GameState, remaining_budget: Option<u64>) -> Result<FloodVerdict, AnalysisError> {
    match remaining_budget {
        Some(0) => Ok(flood_escape_check(state)),
        Some(r) => Err(AnalysisError::PreconditionViolated(format!("{r} firefighters are still to come"))),
        None => Err(AnalysisError::PreconditionViolated("future budgets are not declared zero".into())),
    }
}
