use crate::engine::{GameState, TurnRecord};

use super::{ring_by_arrival, Strategy, StrategyDecision};

/// Online restart-doubling: builds a diamond ring at distance `d`; when the
/// fire reaches distance `d` at turn `t` the ring is abandoned and a new one
/// is started at `2t`. The first ring is at twice the first turn with a
/// nonzero budget.
#[derive(Debug, Clone, Default)]
pub struct Restart16 {
    target: Option<u32>,
}

impl Restart16 {
    pub fn new() -> Self {
        Self::default()
    }

    /// Current ring distance, once a firefighter has arrived.
    pub fn target(&self) -> Option<u32> {
        self.target
    }
}

impl Strategy for Restart16 {
    fn id(&self) -> String {
        "restart16".into()
    }

    fn decide(&mut self, state: &GameState, budget: u32, _: &[TurnRecord]) -> StrategyDecision {
        let o = state.ignition();
        let completed = state.turn();
        if let Some(d) = self.target {
            if state.burning().iter().any(|&c| (c - o).norm() >= d) {
                self.target = Some(2 * completed);
            }
        }
        if budget == 0 {
            return StrategyDecision::none();
        }
        let d = *self.target.get_or_insert(2 * (completed + 1));
        let mut cells = ring_by_arrival(state, d);
        cells.truncate(budget as usize);
        cells.into()
    }
}
