//! Incremental diagonal walls for budgets that stay at one or more per turn.
//!
//! From the first turn `M` with a nonzero budget, single firefighters extend
//! two diagonal walls from `(M, 0)` along `y = x - M` and `y = -x + M`, so the
//! fire stays inside a polygon with `4i` boundary cells at the end of turn
//! `i`. A budget above one keeps the lower wall going and lays the surplus
//! counterclockwise along the fire front, starting just past the upper wall
//! tip; the last cell of that arc becomes the new upper head, growing
//! outward along the diagonal of its diamond facet. As soon as the budget
//! covers every cell the fire is about to ignite, the encirclement is closed.
//!
//! All geometry is relative to the ignition.

use crate::engine::{GameState, TurnRecord};
use crate::lattice::{facet_direction, Cell, DiamondAngle, Polygon};

use super::{Strategy, StrategyDecision};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WallVariant {
    /// Wall cells `(M, 0), (M+1, 1), (M+1, -1), (M+2, 2), ...` along the two diagonals.
    Diagonal,
    /// Single-firefighter turns place `(M + ceil(j/2), (-1)^j floor(j/2))`
    /// for `j = t - M`, taken literally.
    Formula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WallPhase {
    Waiting,
    Building,
    Closed,
}

/// Endpoint of a diagonal wall and the direction it grows in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WallHead {
    pub tip: Cell,
    pub dir: Cell,
}

impl WallHead {
    pub fn next(&self) -> Cell {
        self.tip + self.dir
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WallState {
    /// First turn with a nonzero budget.
    pub start_turn: Option<u32>,
    /// Counterclockwise end of the barrier; relocated by every surplus arc.
    pub upper: Option<WallHead>,
    /// Clockwise end; always the wall along `y = -x + M`.
    pub lower: Option<WallHead>,
    pub phase: WallPhase,
    /// Whether any turn so far brought more than one firefighter.
    pub surplus_seen: bool,
}

#[derive(Debug, Clone)]
pub struct WallStrategy {
    variant: WallVariant,
    state: WallState,
}

/// The literal single-firefighter wall cell for offset `j = t - M`.
pub fn formula_wall_cell(start: u32, j: u32) -> Cell {
    let m = start as i32;
    let j = j as i32;
    let sign = if j % 2 == 0 { 1 } else { -1 };
    Cell::new(m + (j + 1) / 2, sign * (j / 2))
}

impl WallStrategy {
    pub fn new(variant: WallVariant) -> Self {
        WallStrategy {
            variant,
            state: WallState {
                start_turn: None,
                upper: None,
                lower: None,
                phase: WallPhase::Waiting,
                surplus_seen: false,
            },
        }
    }

    pub fn state(&self) -> &WallState {
        &self.state
    }

    /// The single-firefighter polygon for the end of `turn`, once walls exist.
    pub fn polygon(&self, turn: u32) -> Option<Polygon> {
        let m = self.state.start_turn?;
        Polygon::new(turn, m).ok()
    }

    /// Lays up to `count` frontier cells counterclockwise after the upper
    /// head and moves the head to the last of them.
    fn arc(&mut self, frontier: &[Cell], chosen: &mut Vec<Cell>, count: usize) {
        if count == 0 {
            return;
        }
        let from = self.state.upper.map_or(Cell::new(1, 0), |h| h.tip);
        let base = DiamondAngle::of(from);
        let mut open: Vec<(DiamondAngle, u32, Cell)> = frontier
            .iter()
            .copied()
            .filter(|c| !chosen.contains(c))
            .map(|c| {
                let a = DiamondAngle::of(c);
                let a = if a > base { a } else { a.plus_turn() };
                (a, c.norm(), c)
            })
            .collect();
        open.sort();
        let arc: Vec<Cell> = open.into_iter().take(count).map(|(_, _, c)| c).collect();
        if let Some(&last) = arc.last() {
            self.state.upper = Some(WallHead { tip: last, dir: facet_direction(last) });
        }
        chosen.extend(arc);
    }
}

impl Strategy for WallStrategy {
    fn id(&self) -> String {
        match self.variant {
            WallVariant::Diagonal => "wall".into(),
            WallVariant::Formula => "wall:formula".into(),
        }
    }

    fn decide(&mut self, state: &GameState, budget: u32, _: &[TurnRecord]) -> StrategyDecision {
        if budget == 0 || self.state.phase == WallPhase::Closed {
            return StrategyDecision::none();
        }
        let o = state.ignition();
        let turn = state.turn() + 1;
        let free = |rel: Cell| state.is_free(rel + o);
        let frontier: Vec<Cell> = state.frontier().into_iter().map(|c| c - o).collect();

        if budget as usize >= frontier.len() {
            self.state.phase = WallPhase::Closed;
            return frontier.into_iter().map(|c| c + o).collect::<Vec<_>>().into();
        }

        let mut chosen = Vec::new();
        match self.state.phase {
            WallPhase::Waiting => {
                let start = Cell::new(turn as i32, 0);
                self.state.start_turn = Some(turn);
                self.state.phase = WallPhase::Building;
                self.state.upper = Some(WallHead { tip: start, dir: Cell::new(1, 1) });
                self.state.lower = Some(WallHead { tip: start, dir: Cell::new(1, -1) });
                chosen.push(start);
                if budget > 1 {
                    self.state.surplus_seen = true;
                }
                self.arc(&frontier, &mut chosen, budget as usize - 1);
            }
            WallPhase::Building if budget == 1 => {
                let m = self.state.start_turn.expect("building implies a start turn");
                if self.variant == WallVariant::Formula && !self.state.surplus_seen {
                    let c = formula_wall_cell(m, turn - m);
                    if free(c) {
                        chosen.push(c);
                    }
                } else {
                    let due = |h: Option<WallHead>| {
                        h.map(|h| h.next()).filter(|&n| free(n)).map(|n| n.norm()).filter(|&d| d <= turn + 1)
                    };
                    let head = match (due(self.state.upper), due(self.state.lower)) {
                        (Some(du), Some(dl)) if dl < du => self.state.lower.as_mut(),
                        (Some(_), _) => self.state.upper.as_mut(),
                        (None, Some(_)) => self.state.lower.as_mut(),
                        (None, None) => None,
                    };
                    match head {
                        Some(h) => {
                            h.tip = h.next();
                            chosen.push(h.tip);
                        }
                        None => self.arc(&frontier, &mut chosen, 1),
                    }
                }
            }
            WallPhase::Building => {
                self.state.surplus_seen = true;
                let mut rest = budget as usize;
                if let Some(h) = self.state.lower.as_mut() {
                    let n = h.next();
                    if free(n) && n.norm() <= turn + 1 {
                        h.tip = n;
                        chosen.push(n);
                        rest -= 1;
                    }
                }
                self.arc(&frontier, &mut chosen, rest);
            }
            WallPhase::Closed => unreachable!(),
        }
        chosen.into_iter().map(|c| c + o).collect::<Vec<_>>().into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversaries::Fixed;
    use crate::engine::{run_game, Outcome};

    fn placements(budgets: &[u32]) -> (Outcome, Vec<Vec<Cell>>) {
        let mut s = WallStrategy::new(WallVariant::Diagonal);
        let run = run_game(Cell::ORIGIN, &mut s, &mut Fixed::new(budgets.to_vec()), 40).unwrap();
        (run.outcome, run.records.into_iter().map(|r| r.placements).collect())
    }

    #[test]
    fn single_firefighter_walls() {
        let (outcome, placed) = placements(&[1, 1, 1, 13]);
        assert_eq!(placed[0], vec![Cell::new(1, 0)]);
        assert_eq!(placed[1], vec![Cell::new(2, 1)]);
        assert_eq!(placed[2], vec![Cell::new(2, -1)]);
        assert_eq!(placed[3].len(), 13);
        assert!(matches!(outcome, Outcome::Contained { turn: 4, .. }));
    }

    #[test]
    fn formula_cells() {
        let cells: Vec<Cell> = (0..6).map(|j| formula_wall_cell(1, j)).collect();
        assert_eq!(
            cells,
            vec![
                Cell::new(1, 0),
                Cell::new(2, 0),
                Cell::new(2, 1),
                Cell::new(3, -1),
                Cell::new(3, 2),
                Cell::new(4, -2)
            ]
        );
    }

    #[test]
    fn late_start_with_small_surplus_keeps_building() {
        let (outcome, placed) = placements(&[0, 0, 4]);
        assert_eq!(placed[2].len(), 4);
        assert!(placed[2].contains(&Cell::new(3, 0)));
        assert!(outcome.is_escaped());
    }

    #[test]
    fn start_turn_equal_to_closure_turn_rings_the_fire() {
        let (outcome, placed) = placements(&[0, 0, 12]);
        assert_eq!(placed[2].len(), 12);
        assert!(placed[2].iter().all(|c| c.norm() == 3));
        assert!(matches!(outcome, Outcome::Contained { turn: 3, .. }));
    }
}
