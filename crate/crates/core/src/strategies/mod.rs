//! Player-1 policies. Each maps the observable position and the budget just
//! revealed to a set of cells to protect.

mod offline;
mod restart;
mod wall;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::engine::{GameState, TurnRecord};
use crate::lattice::{diamond_cells, neighbors, Cell, DiamondAngle};

pub use offline::OfflineDiamond;
pub use restart::Restart16;
pub use wall::{formula_wall_cell, WallHead, WallPhase, WallState, WallStrategy, WallVariant};

/// Cells to protect this turn, without repeats.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StrategyDecision {
    pub cells: Vec<Cell>,
}

impl StrategyDecision {
    pub fn none() -> Self {
        Self::default()
    }
}

impl From<Vec<Cell>> for StrategyDecision {
    fn from(cells: Vec<Cell>) -> Self {
        StrategyDecision { cells }
    }
}

pub trait Strategy: Send {
    fn id(&self) -> String;

    /// Decision for turn `state.turn() + 1` given the budget just revealed.
    fn decide(&mut self, state: &GameState, budget: u32, history: &[TurnRecord]) -> StrategyDecision;
}

/// Never protects anything.
#[derive(Debug, Clone, Copy, Default)]
pub struct Idle;

impl Strategy for Idle {
    fn id(&self) -> String {
        "idle".into()
    }

    fn decide(&mut self, _: &GameState, _: u32, _: &[TurnRecord]) -> StrategyDecision {
        StrategyDecision::none()
    }
}

/// Spends the whole budget on uniformly random free cells within
/// `turn + reach` of the ignition.
#[derive(Debug, Clone)]
pub struct RandomLegal {
    seed: u64,
    reach: u32,
    rng: ChaCha8Rng,
}

impl RandomLegal {
    pub fn new(seed: u64) -> Self {
        Self::with_reach(seed, 3)
    }

    pub fn with_reach(seed: u64, reach: u32) -> Self {
        RandomLegal { seed, reach, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl Strategy for RandomLegal {
    fn id(&self) -> String {
        format!("random:seed={}", self.seed)
    }

    fn decide(&mut self, state: &GameState, budget: u32, _: &[TurnRecord]) -> StrategyDecision {
        let radius = state.turn() + 1 + self.reach;
        let mut free: Vec<Cell> = diamond_cells(state.ignition(), radius)
            .into_iter()
            .filter(|&c| state.is_free(c))
            .collect();
        free.shuffle(&mut self.rng);
        free.truncate(budget as usize);
        free.into()
    }
}

/// For every free cell within `radius` of the ignition that the fire can
/// reach without leaving that ball, the spread (1-based from now) at which
/// it would ignite if nothing more were protected.
pub(crate) fn arrival_times(state: &GameState, radius: u32) -> BTreeMap<Cell, u32> {
    let o = state.ignition();
    let inside = |c: Cell| (c - o).norm() <= radius;
    let mut times = BTreeMap::new();
    let mut queue = VecDeque::new();
    for c in state.frontier() {
        if inside(c) {
            times.insert(c, 1);
            queue.push_back(c);
        }
    }
    while let Some(c) = queue.pop_front() {
        let t = times[&c];
        for n in neighbors(c) {
            if inside(n) && state.is_free(n) && !times.contains_key(&n) {
                times.insert(n, t + 1);
                queue.push_back(n);
            }
        }
    }
    times
}

/// Free, reachable cells of the ring at `distance`, soonest-burning first,
/// ties in counterclockwise order from the positive x axis.
pub(crate) fn ring_by_arrival(state: &GameState, distance: u32) -> Vec<Cell> {
    let o = state.ignition();
    let times = arrival_times(state, distance);
    let mut cells: Vec<(u32, DiamondAngle, Cell)> = crate::lattice::ring_cells(o, distance)
        .into_iter()
        .filter_map(|c| times.get(&c).map(|&t| (t, DiamondAngle::of(c - o), c)))
        .collect();
    cells.sort();
    cells.into_iter().map(|(_, _, c)| c).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StrategyError {
    #[error("no prefix of the {len}-turn sequence satisfies sum f_i >= 4N")]
    ConditionUnsatisfied { len: usize },
    #[error("strategy `{0}` needs the full budget sequence in advance")]
    MissingSequence(String),
}

/// Parsed strategy identifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategySpec {
    OfflineDiamond,
    Wall(WallVariant),
    Restart16,
    Idle,
    Random { seed: Option<u64> },
}

pub const KNOWN_STRATEGIES: &[&str] = &["offline-diamond", "wall", "wall:formula", "restart16", "idle", "random[:seed=<int>]"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown strategy `{id}`; known: {}", KNOWN_STRATEGIES.join(", "))]
pub struct UnknownStrategy {
    pub id: String,
}

impl FromStr for StrategySpec {
    type Err = UnknownStrategy;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Ok(match s {
            "offline-diamond" => StrategySpec::OfflineDiamond,
            "wall" => StrategySpec::Wall(WallVariant::Diagonal),
            "wall:formula" => StrategySpec::Wall(WallVariant::Formula),
            "restart16" => StrategySpec::Restart16,
            "idle" => StrategySpec::Idle,
            "random" => StrategySpec::Random { seed: None },
            _ => {
                let seed = s
                    .strip_prefix("random:seed=")
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| UnknownStrategy { id: s.to_string() })?;
                StrategySpec::Random { seed: Some(seed) }
            }
        })
    }
}

impl fmt::Display for StrategySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategySpec::OfflineDiamond => f.write_str("offline-diamond"),
            StrategySpec::Wall(WallVariant::Diagonal) => f.write_str("wall"),
            StrategySpec::Wall(WallVariant::Formula) => f.write_str("wall:formula"),
            StrategySpec::Restart16 => f.write_str("restart16"),
            StrategySpec::Idle => f.write_str("idle"),
            StrategySpec::Random { seed: None } => f.write_str("random"),
            StrategySpec::Random { seed: Some(s) } => write!(f, "random:seed={s}"),
        }
    }
}

impl StrategySpec {
    /// `sequence` is required by offline strategies; `seed` feeds random
    /// strategies that do not carry their own.
    pub fn build(&self, sequence: Option<&[u32]>, seed: u64) -> Result<Box<dyn Strategy>, StrategyError> {
        Ok(match self {
            StrategySpec::OfflineDiamond => {
                let seq = sequence.ok_or_else(|| StrategyError::MissingSequence(self.to_string()))?;
                Box::new(OfflineDiamond::new(seq)?)
            }
            StrategySpec::Wall(v) => Box::new(WallStrategy::new(*v)),
            StrategySpec::Restart16 => Box::new(Restart16::new()),
            StrategySpec::Idle => Box::new(Idle),
            StrategySpec::Random { seed: s } => Box::new(RandomLegal::new(s.unwrap_or(seed))),
        })
    }

    pub fn is_offline(&self) -> bool {
        matches!(self, StrategySpec::OfflineDiamond)
    }
}
