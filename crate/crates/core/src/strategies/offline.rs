use crate::adversaries::smallest_n;
use crate::engine::{GameState, TurnRecord};

use super::{ring_by_arrival, Strategy, StrategyDecision, StrategyError};

/// Knows the whole budget sequence, finds the least `N` with
/// `f_1 + ... + f_N >= 4N`, and puts every firefighter on the ring at
/// distance `N`. The ring is complete when the fire first reaches it.
#[derive(Debug, Clone)]
pub struct OfflineDiamond {
    radius: u32,
}

impl OfflineDiamond {
    pub fn new(sequence: &[u32]) -> Result<Self, StrategyError> {
        let radius = smallest_n(sequence, 4).ok_or(StrategyError::ConditionUnsatisfied { len: sequence.len() })?;
        Ok(OfflineDiamond { radius })
    }

    /// The ring distance `N`.
    pub fn radius(&self) -> u32 {
        self.radius
    }
}

impl Strategy for OfflineDiamond {
    fn id(&self) -> String {
        "offline-diamond".into()
    }

    fn decide(&mut self, state: &GameState, budget: u32, _: &[TurnRecord]) -> StrategyDecision {
        if budget == 0 {
            return StrategyDecision::none();
        }
        let mut cells = ring_by_arrival(state, self.radius);
        cells.truncate(budget as usize);
        cells.into()
    }
}
