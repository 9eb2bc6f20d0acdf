//! Turn semantics of the online firefighter game.
//!
//! Every turn runs three phases: the adversary reveals a budget, the
//! strategy protects at most that many fresh cells, then the fire spreads
//! synchronously to every unprotected neighbour. A spread that burns nothing
//! ends the game as `Contained`.

use std::collections::BTreeSet;

use crate::adversaries::AdversaryPolicy;
use crate::analysis::flood::{flood_escape_check, FloodVerdict};
use crate::analysis::EscapeCertificate;
use crate::lattice::{neighbors, Cell};
use crate::strategies::Strategy;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameState {
    ignition: Cell,
    burning: BTreeSet<Cell>,
    protected: BTreeSet<Cell>,
    turn: u32,
    // cells ignited by the latest spread; only these can ignite others
    front: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlacementError {
    #[error("cell {0} is already burning")]
    PlacementOnBurning(Cell),
    #[error("cell {0} is already protected")]
    PlacementOnProtected(Cell),
    #[error("cell {0} placed twice in one turn")]
    DuplicatePlacement(Cell),
    #[error("{placed} placements exceed the budget of {budget}")]
    BudgetExceeded { placed: usize, budget: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StateError {
    #[error("ignition {0} must be burning")]
    IgnitionNotBurning(Cell),
    #[error("cell {0} is both burning and protected")]
    Overlap(Cell),
}

impl GameState {
    pub fn new(ignition: Cell) -> Self {
        GameState {
            ignition,
            burning: BTreeSet::from([ignition]),
            protected: BTreeSet::new(),
            turn: 0,
            front: vec![ignition],
        }
    }

    /// Builds an arbitrary position, e.g. for analysis. Every burning cell is
    /// treated as able to spread.
    pub fn from_parts(
        ignition: Cell,
        burning: impl IntoIterator<Item = Cell>,
        protected: impl IntoIterator<Item = Cell>,
        turn: u32,
    ) -> Result<Self, StateError> {
        let burning: BTreeSet<Cell> = burning.into_iter().collect();
        let protected: BTreeSet<Cell> = protected.into_iter().collect();
        if !burning.contains(&ignition) {
            return Err(StateError::IgnitionNotBurning(ignition));
        }
        if let Some(&c) = burning.intersection(&protected).next() {
            return Err(StateError::Overlap(c));
        }
        let front = burning.iter().copied().collect();
        Ok(GameState { ignition, burning, protected, turn, front })
    }

    pub fn ignition(&self) -> Cell {
        self.ignition
    }

    pub fn burning(&self) -> &BTreeSet<Cell> {
        &self.burning
    }

    pub fn protected(&self) -> &BTreeSet<Cell> {
        &self.protected
    }

    /// Number of completed turns.
    pub fn turn(&self) -> u32 {
        self.turn
    }

    pub fn is_burning(&self, c: Cell) -> bool {
        self.burning.contains(&c)
    }

    pub fn is_protected(&self, c: Cell) -> bool {
        self.protected.contains(&c)
    }

    pub fn is_free(&self, c: Cell) -> bool {
        !self.is_burning(c) && !self.is_protected(c)
    }

    /// Cells the next spread would ignite if nothing else were protected.
    pub fn frontier(&self) -> Vec<Cell> {
        let mut out: BTreeSet<Cell> = BTreeSet::new();
        for &c in &self.front {
            for n in neighbors(c) {
                if self.is_free(n) {
                    out.insert(n);
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn check_placements(&self, cells: &[Cell], budget: u32) -> Result<(), PlacementError> {
        if cells.len() > budget as usize {
            return Err(PlacementError::BudgetExceeded { placed: cells.len(), budget });
        }
        let mut seen = BTreeSet::new();
        for &c in cells {
            if self.is_burning(c) {
                return Err(PlacementError::PlacementOnBurning(c));
            }
            if self.is_protected(c) {
                return Err(PlacementError::PlacementOnProtected(c));
            }
            if !seen.insert(c) {
                return Err(PlacementError::DuplicatePlacement(c));
            }
        }
        Ok(())
    }

    /// Protects `cells` in place; nothing changes on error.
    pub fn place(&mut self, cells: &[Cell], budget: u32) -> Result<(), PlacementError> {
        self.check_placements(cells, budget)?;
        self.protected.extend(cells.iter().copied());
        Ok(())
    }

    pub fn apply_placements(&self, cells: &[Cell], budget: u32) -> Result<GameState, PlacementError> {
        let mut next = self.clone();
        next.place(cells, budget)?;
        Ok(next)
    }

    /// Synchronous spread in place; returns the newly burned cells, sorted.
    pub fn spread(&mut self) -> Vec<Cell> {
        let newly = self.frontier();
        self.burning.extend(newly.iter().copied());
        self.front = newly.clone();
        self.turn += 1;
        newly
    }

    pub fn spread_step(&self) -> (GameState, Vec<Cell>) {
        let mut next = self.clone();
        let newly = next.spread();
        (next, newly)
    }
}

/// One played turn. Cell lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurnRecord {
    pub turn: u32,
    pub budget: u32,
    pub placements: Vec<Cell>,
    pub newly_burned: Vec<Cell>,
    pub cumulative_protected: usize,
    pub cumulative_burned: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Contained { turn: u32, burned: usize },
    Escaped { turn: u32, certificate: EscapeCertificate },
    Undecided { horizon: u32 },
}

impl Outcome {
    pub fn is_contained(&self) -> bool {
        matches!(self, Outcome::Contained { .. })
    }

    pub fn is_escaped(&self) -> bool {
        matches!(self, Outcome::Escaped { .. })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error("horizon must be at least 1")]
    ZeroHorizon,
    #[error("turn {turn}: strategy `{strategy}` made an illegal placement: {source}")]
    Placement {
        turn: u32,
        strategy: String,
        #[source]
        source: PlacementError,
    },
}

#[derive(Debug, Clone)]
pub struct GameRun {
    pub outcome: Outcome,
    pub records: Vec<TurnRecord>,
    pub final_state: GameState,
}

/// Plays one game to containment, certified escape, or the horizon.
///
/// Once the adversary has declared that every later budget is zero and that
/// tail has begun, the position is decided by a flood fill: an escape ends
/// the game with its certificate, while an enclosed fire is played out past
/// the horizon until it burns out.
pub fn run_game(
    ignition: Cell,
    strategy: &mut dyn Strategy,
    adversary: &mut dyn AdversaryPolicy,
    horizon: u32,
) -> Result<GameRun, EngineError> {
    if horizon == 0 {
        return Err(EngineError::ZeroHorizon);
    }
    let mut state = GameState::new(ignition);
    let mut records: Vec<TurnRecord> = Vec::new();
    let mut limit = horizon;
    let mut tail_checked = false;

    while state.turn() < limit {
        let turn = state.turn() + 1;
        let budget = adversary.next_budget(ignition, &records);
        let decision = strategy.decide(&state, budget, &records);
        let mut placements = decision.cells;
        state
            .place(&placements, budget)
            .map_err(|source| EngineError::Placement { turn, strategy: strategy.id(), source })?;
        placements.sort();
        let newly_burned = state.spread();
        let record = TurnRecord {
            turn,
            budget,
            placements,
            cumulative_protected: state.protected().len(),
            cumulative_burned: state.burning().len(),
            newly_burned,
        };
        adversary.observe(ignition, &record);
        let contained = record.newly_burned.is_empty();
        records.push(record);

        if contained {
            let outcome = Outcome::Contained { turn, burned: state.burning().len() };
            return Ok(GameRun { outcome, records, final_state: state });
        }
        if !tail_checked && adversary.declared_tail().is_some_and(|tail| turn >= tail) {
            tail_checked = true;
            match flood_escape_check(&state) {
                FloodVerdict::Escaped(certificate) => {
                    let outcome = Outcome::Escaped { turn, certificate };
                    return Ok(GameRun { outcome, records, final_state: state });
                }
                FloodVerdict::Enclosed { contained_turn, .. } => limit = limit.max(contained_turn),
            }
        }
    }
    Ok(GameRun { outcome: Outcome::Undecided { horizon: limit }, records, final_state: state })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversaries::{Fixed, Periodic};
    use crate::lattice::diamond_size;
    use crate::strategies::{Idle, OfflineDiamond};

    #[test]
    fn new_game_has_single_burning_cell() {
        let s = GameState::new(Cell::new(5, -7));
        assert_eq!(s.burning().iter().copied().collect::<Vec<_>>(), vec![Cell::new(5, -7)]);
        assert!(s.protected().is_empty());
        assert_eq!(s.turn(), 0);
    }

    #[test]
    fn placement_examples() {
        let s = GameState::new(Cell::ORIGIN);
        let p = s.apply_placements(&[Cell::new(1, 0)], 1).unwrap();
        assert!(p.is_protected(Cell::new(1, 0)));
        assert_eq!(s.apply_placements(&[], 2).unwrap(), s);
        assert_eq!(
            s.apply_placements(&[Cell::ORIGIN], 1),
            Err(PlacementError::PlacementOnBurning(Cell::ORIGIN))
        );
        assert_eq!(
            p.apply_placements(&[Cell::new(1, 0)], 1),
            Err(PlacementError::PlacementOnProtected(Cell::new(1, 0)))
        );
        assert_eq!(
            s.apply_placements(&[Cell::new(1, 0), Cell::new(2, 0)], 1),
            Err(PlacementError::BudgetExceeded { placed: 2, budget: 1 })
        );
        assert_eq!(
            s.apply_placements(&[Cell::new(1, 0), Cell::new(1, 0)], 2),
            Err(PlacementError::DuplicatePlacement(Cell::new(1, 0)))
        );
    }

    #[test]
    fn failed_placement_leaves_state_untouched() {
        let mut s = GameState::new(Cell::ORIGIN);
        let before = s.clone();
        assert!(s.place(&[Cell::new(3, 3), Cell::ORIGIN], 5).is_err());
        assert_eq!(s, before);
    }

    #[test]
    fn spread_examples() {
        let s = GameState::new(Cell::ORIGIN);
        let (n, newly) = s.spread_step();
        assert_eq!(newly.len(), 4);
        assert_eq!(n.burning().len(), 5);
        assert_eq!(n.turn(), 1);

        let p = s.apply_placements(&[Cell::new(1, 0)], 1).unwrap();
        assert_eq!(p.spread_step().1.len(), 3);
    }

    #[test]
    fn uncontrolled_spread_fills_diamonds() {
        let mut s = GameState::new(Cell::ORIGIN);
        for t in 1..=10u32 {
            s.spread();
            assert_eq!(s.burning().len() as u64, diamond_size(t));
        }
    }

    #[test]
    fn from_parts_validates() {
        assert_eq!(
            GameState::from_parts(Cell::ORIGIN, [Cell::new(1, 0)], [], 0),
            Err(StateError::IgnitionNotBurning(Cell::ORIGIN))
        );
        assert_eq!(
            GameState::from_parts(Cell::ORIGIN, [Cell::ORIGIN], [Cell::ORIGIN], 0),
            Err(StateError::Overlap(Cell::ORIGIN))
        );
    }

    #[test]
    fn idle_against_zero_budgets_is_undecided() {
        let run = run_game(Cell::ORIGIN, &mut Idle, &mut Periodic::new(vec![0]).unwrap(), 3).unwrap();
        assert_eq!(run.outcome, Outcome::Undecided { horizon: 3 });
        assert_eq!(run.final_state.burning().len() as u64, diamond_size(3));
    }

    #[test]
    fn zero_horizon_is_rejected() {
        let err = run_game(Cell::ORIGIN, &mut Idle, &mut Periodic::new(vec![0]).unwrap(), 0);
        assert!(matches!(err, Err(EngineError::ZeroHorizon)));
    }

    #[test]
    fn offline_diamond_contains_constant_four_at_once() {
        let mut strategy = OfflineDiamond::new(&[4, 4, 4]).unwrap();
        let run = run_game(Cell::ORIGIN, &mut strategy, &mut Periodic::new(vec![4]).unwrap(), 5).unwrap();
        assert_eq!(run.outcome, Outcome::Contained { turn: 1, burned: 1 });
    }

    #[test]
    fn records_track_cumulative_counts() {
        let mut adv = Fixed::new(vec![1, 1]);
        let run = run_game(Cell::new(2, 2), &mut Idle, &mut adv, 4).unwrap();
        for r in &run.records {
            assert!(r.placements.is_empty());
            assert_eq!(r.cumulative_burned as u64, diamond_size(r.turn));
        }
        // the fixed adversary declares its zero tail after turn 2
        assert!(run.outcome.is_escaped());
    }
}
