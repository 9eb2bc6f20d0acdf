//! Exhaustive search of the game against a deterministic adversary, with
//! Player 1 restricted to a finite universe of cells around the ignition.
//!
//! Positions are identified up to the 8 lattice symmetries fixing the
//! ignition, which assumes the adversary reacts to placements through their
//! distances only (true of every policy in this crate). Once the adversary
//! has nothing more to hand out, or the horizon is reached, the last budget
//! is decided exactly by a vertex cut between the fire and the cells it
//! would otherwise still reach in time; no subsets are enumerated there.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::adversaries::AdversaryPolicy;
use crate::engine::{GameState, TurnRecord};
use crate::lattice::{diamond_cells, neighbors, ring_cells, symmetries, Cell};

use super::flow::{min_vertex_cut, Node};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Positions expanded before giving up.
    pub max_nodes: u64,
    /// Placement subsets a single position may have.
    pub max_moves: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_nodes: 1_000_000, max_moves: 250_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimaxVerdict {
    CanContain,
    CannotContain,
    Inconclusive { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimaxReport {
    pub verdict: MinimaxVerdict,
    pub candidate_radius: u32,
    pub horizon: u32,
    /// Cells Player 1 may protect.
    pub universe: Vec<Cell>,
    /// Distinct first moves after symmetry reduction.
    pub root_moves: usize,
    pub nodes: u64,
    pub memo_hits: u64,
}

impl fmt::Display for MinimaxReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match &self.verdict {
            MinimaxVerdict::CanContain => "CanContain".to_string(),
            MinimaxVerdict::CannotContain => "CannotContain".to_string(),
            MinimaxVerdict::Inconclusive { reason } => format!("Inconclusive ({reason})"),
        };
        write!(
            f,
            "{verdict} horizon={} universe=diamond radius {} ({} cells) root_moves={} nodes={} memo_hits={}",
            self.horizon,
            self.candidate_radius,
            self.universe.len(),
            self.root_moves,
            self.nodes,
            self.memo_hits
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Answer {
    Yes,
    No,
    Unknown(String),
}

type Key = (u32, Vec<Cell>, Vec<Cell>, u64);

struct Search {
    o: Cell,
    radius: u32,
    horizon: u32,
    limits: SearchLimits,
    nodes: u64,
    memo_hits: u64,
    root_moves: usize,
    root_turn: u32,
    memo: HashMap<Key, Answer>,
}

/// Whether Player 1, protecting only cells within `candidate_radius` of the
/// ignition, can force a spread that burns nothing by turn `horizon`.
pub fn bounded_minimax(
    ignition: Cell,
    adversary: &dyn AdversaryPolicy,
    candidate_radius: u32,
    horizon: u32,
    limits: SearchLimits,
) -> MinimaxReport {
    bounded_minimax_from(&GameState::new(ignition), &[], adversary, candidate_radius, horizon, limits)
}

/// [`bounded_minimax`] from a position reached by `history`; `adversary`
/// must already have observed those turns.
pub fn bounded_minimax_from(
    state: &GameState,
    history: &[TurnRecord],
    adversary: &dyn AdversaryPolicy,
    candidate_radius: u32,
    horizon: u32,
    limits: SearchLimits,
) -> MinimaxReport {
    let ignition = state.ignition();
    let mut search = Search {
        o: ignition,
        radius: candidate_radius,
        horizon,
        limits,
        nodes: 0,
        memo_hits: 0,
        root_moves: 0,
        root_turn: state.turn() + 1,
        memo: HashMap::new(),
    };
    let answer = search.solve(state, adversary.box_clone(), history);
    let verdict = match answer {
        Answer::Yes => MinimaxVerdict::CanContain,
        Answer::No => MinimaxVerdict::CannotContain,
        Answer::Unknown(reason) => MinimaxVerdict::Inconclusive { reason },
    };
    let universe = diamond_cells(ignition, candidate_radius).into_iter().filter(|&c| c != ignition).collect();
    MinimaxReport {
        verdict,
        candidate_radius,
        horizon,
        universe,
        root_moves: search.root_moves,
        nodes: search.nodes,
        memo_hits: search.memo_hits,
    }
}

/// Smallest image of the position under the symmetries fixing `o`.
fn canonical(o: Cell, burning: impl Iterator<Item = Cell> + Clone, protected: impl Iterator<Item = Cell> + Clone) -> (Vec<Cell>, Vec<Cell>) {
    symmetries()
        .iter()
        .map(|g| {
            let mut b: Vec<Cell> = burning.clone().map(|c| g(c - o)).collect();
            let mut p: Vec<Cell> = protected.clone().map(|c| g(c - o)).collect();
            b.sort();
            p.sort();
            (b, p)
        })
        .min()
        .expect("eight symmetries")
}

fn binomial_sum(n: u64, k: u64, cap: u64) -> u64 {
    let mut total = 0u64;
    let mut term = 1u64;
    for i in 0..=k.min(n) {
        total = total.saturating_add(term);
        if total > cap {
            return total;
        }
        term = term.saturating_mul(n - i) / (i + 1);
    }
    total
}

/// All subsets of `items` of size at most `k`.
fn subsets(items: &[Cell], k: usize) -> Vec<Vec<Cell>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(usize, Vec<Cell>)> = vec![(0, Vec::new())];
    for _ in 0..k.min(items.len()) {
        let mut next = Vec::new();
        for (start, set) in frontier {
            for (i, &c) in items.iter().enumerate().skip(start) {
                let mut s = set.clone();
                s.push(c);
                out.push(s.clone());
                next.push((i + 1, s));
            }
        }
        frontier = next;
    }
    out
}

impl Search {
    fn in_universe(&self, c: Cell) -> bool {
        (c - self.o).norm() <= self.radius
    }

    /// Cells still needed to cut the fire off from the edge of the
    /// universe; `None` when no cut inside the universe exists.
    fn universe_barrier(&self, state: &GameState) -> Option<u64> {
        let edge = self.radius + 1;
        let nodes: BTreeMap<Cell, Node> = diamond_cells(self.o, edge)
            .into_iter()
            .filter(|&c| !state.is_protected(c))
            .map(|c| {
                let role = if state.is_burning(c) {
                    Node::Source
                } else if self.in_universe(c) {
                    Node::Cuttable
                } else {
                    Node::Fixed
                };
                (c, role)
            })
            .collect();
        min_vertex_cut(&nodes, &ring_cells(self.o, edge)).map(|(v, _)| v)
    }

    /// The last budget: containment within `k - 1` more spreads needs a cut
    /// between the fire and every cell at distance `k` from it.
    fn decide_last(&self, state: &GameState, budget: u32, k: u32) -> Answer {
        let mut dist: BTreeMap<Cell, u32> = state.burning().iter().map(|&c| (c, 0)).collect();
        let mut queue: VecDeque<Cell> = state.burning().iter().copied().collect();
        while let Some(c) = queue.pop_front() {
            let d = dist[&c];
            if d == k {
                continue;
            }
            for n in neighbors(c) {
                if state.is_free(n) && !dist.contains_key(&n) {
                    dist.insert(n, d + 1);
                    queue.push_back(n);
                }
            }
        }
        let targets: Vec<Cell> = dist.iter().filter(|&(_, &d)| d == k).map(|(&c, _)| c).collect();
        if targets.is_empty() {
            return Answer::Yes;
        }
        let nodes: BTreeMap<Cell, Node> = dist
            .keys()
            .map(|&c| {
                let role = if state.is_burning(c) {
                    Node::Source
                } else if self.in_universe(c) {
                    Node::Cuttable
                } else {
                    Node::Fixed
                };
                (c, role)
            })
            .collect();
        let Some((value, cut)) = min_vertex_cut(&nodes, &targets) else {
            return Answer::No;
        };
        if value > budget as u64 {
            return Answer::No;
        }
        let mut s = state.clone();
        s.place(&cut, budget).expect("cut cells are free");
        for _ in 0..k {
            if s.spread().is_empty() {
                return Answer::Yes;
            }
        }
        Answer::Unknown(format!("a {value}-cell separator at turn {} closes too late", state.turn() + 1))
    }

    fn solve(&mut self, state: &GameState, mut adv: Box<dyn AdversaryPolicy>, history: &[TurnRecord]) -> Answer {
        let t = state.turn() + 1;
        if t > self.horizon {
            return Answer::No;
        }
        self.nodes += 1;
        if self.nodes > self.limits.max_nodes {
            return Answer::Unknown(format!("node limit {} reached", self.limits.max_nodes));
        }
        let (b, p) = canonical(self.o, state.burning().iter().copied(), state.protected().iter().copied());
        let key = (t, b, p, adv.state_key());
        if let Some(a) = self.memo.get(&key) {
            self.memo_hits += 1;
            return a.clone();
        }

        let budget = adv.next_budget(self.o, history);
        let last = t == self.horizon || adv.declared_tail().is_some_and(|tail| t >= tail);
        let answer = if last {
            self.decide_last(state, budget, self.horizon - t + 1)
        } else {
            self.expand(state, adv, history, budget)
        };
        self.memo.insert(key, answer.clone());
        answer
    }

    fn expand(&mut self, state: &GameState, adv: Box<dyn AdversaryPolicy>, history: &[TurnRecord], budget: u32) -> Answer {
        let t = state.turn() + 1;
        if let Some(rest) = adv.remaining_total(t) {
            if self.universe_barrier(state).is_none_or(|need| need > rest) {
                return Answer::No;
            }
        }
        let free: Vec<Cell> =
            diamond_cells(self.o, self.radius).into_iter().filter(|&c| state.is_free(c)).collect();
        let count = binomial_sum(free.len() as u64, budget as u64, self.limits.max_moves);
        if count > self.limits.max_moves {
            return Answer::Unknown(format!("turn {t} has more than {} placement subsets", self.limits.max_moves));
        }

        let mut seen = HashSet::new();
        let mut unknown = None;
        let mut moves = 0;
        for placed in subsets(&free, budget as usize).into_iter().rev() {
            let mut next = state.clone();
            next.place(&placed, budget).expect("subsets of free cells are legal");
            let key = canonical(self.o, next.burning().iter().copied(), next.protected().iter().copied());
            if !seen.insert(key) {
                continue;
            }
            moves += 1;
            let newly = next.spread();
            if newly.is_empty() {
                self.note_root(t, moves);
                return Answer::Yes;
            }
            let mut placements = placed;
            placements.sort();
            let record = TurnRecord {
                turn: t,
                budget,
                placements,
                cumulative_protected: next.protected().len(),
                cumulative_burned: next.burning().len(),
                newly_burned: newly,
            };
            let mut child_adv = adv.box_clone();
            child_adv.observe(self.o, &record);
            let mut child_history = history.to_vec();
            child_history.push(record);
            match self.solve(&next, child_adv, &child_history) {
                Answer::Yes => {
                    self.note_root(t, moves);
                    return Answer::Yes;
                }
                Answer::No => {}
                Answer::Unknown(r) => unknown = unknown.or(Some(r)),
            }
        }
        self.note_root(t, moves);
        unknown.map_or(Answer::No, Answer::Unknown)
    }

    fn note_root(&mut self, t: u32, moves: usize) {
        if t == self.root_turn {
            self.root_moves = moves;
        }
    }
}
