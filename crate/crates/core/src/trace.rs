//! Line-oriented game traces.
//!
//! ```text
//! ignition=(0,0) strategy=wall adversary=fixed:1,1,1,13
//! turn=1 budget=1 placed=[(1,0)] burned_new=[(-1,0);(0,-1);(0,1)]
//! ...
//! outcome=Contained 4 20
//! ```
//!
//! Cell lists are sorted; the text is byte-stable.

use std::fmt;
use std::str::FromStr;

use crate::engine::{GameRun, GameState, Outcome, PlacementError};
use crate::lattice::Cell;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRecord {
    pub turn: u32,
    pub budget: u32,
    pub placed: Vec<Cell>,
    pub burned_new: Vec<Cell>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceOutcome {
    Contained { turn: u32, burned: usize },
    Escaped { turn: u32 },
    Undecided { horizon: u32 },
}

impl From<&Outcome> for TraceOutcome {
    fn from(o: &Outcome) -> Self {
        match *o {
            Outcome::Contained { turn, burned } => TraceOutcome::Contained { turn, burned },
            Outcome::Escaped { turn, .. } => TraceOutcome::Escaped { turn },
            Outcome::Undecided { horizon } => TraceOutcome::Undecided { horizon },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub ignition: Cell,
    pub strategy: String,
    pub adversary: String,
    pub records: Vec<TraceRecord>,
    pub outcome: TraceOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("trace line {line}: {reason}")]
pub struct TraceParseError {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReplayError {
    #[error("record {index} is numbered turn {found}")]
    TurnNumber { index: usize, found: u32 },
    #[error("turn {turn}: {source}")]
    Placement {
        turn: u32,
        #[source]
        source: PlacementError,
    },
    #[error("turn {turn}: recorded burned cells differ from the replayed spread")]
    BurnMismatch { turn: u32 },
}

impl Trace {
    pub fn from_run(ignition: Cell, strategy: &str, adversary: &str, run: &GameRun) -> Self {
        Trace {
            ignition,
            strategy: strategy.to_string(),
            adversary: adversary.to_string(),
            records: run
                .records
                .iter()
                .map(|r| TraceRecord {
                    turn: r.turn,
                    budget: r.budget,
                    placed: r.placements.clone(),
                    burned_new: r.newly_burned.clone(),
                })
                .collect(),
            outcome: (&run.outcome).into(),
        }
    }

    /// Budgets in turn order.
    pub fn budgets(&self) -> Vec<u32> {
        self.records.iter().map(|r| r.budget).collect()
    }

    /// Replays the placements against the budgets and checks every recorded
    /// spread. Returns the state after each turn.
    pub fn replay(&self) -> Result<Vec<GameState>, ReplayError> {
        let mut state = GameState::new(self.ignition);
        let mut states = Vec::with_capacity(self.records.len());
        for (i, r) in self.records.iter().enumerate() {
            if r.turn != i as u32 + 1 {
                return Err(ReplayError::TurnNumber { index: i, found: r.turn });
            }
            state
                .place(&r.placed, r.budget)
                .map_err(|source| ReplayError::Placement { turn: r.turn, source })?;
            if state.spread() != r.burned_new {
                return Err(ReplayError::BurnMismatch { turn: r.turn });
            }
            states.push(state.clone());
        }
        Ok(states)
    }
}

fn write_cells(f: &mut fmt::Formatter<'_>, cells: &[Cell]) -> fmt::Result {
    f.write_str("[")?;
    for (i, c) in cells.iter().enumerate() {
        if i > 0 {
            f.write_str(";")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str("]")
}

impl fmt::Display for TraceOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceOutcome::Contained { turn, burned } => write!(f, "Contained {turn} {burned}"),
            TraceOutcome::Escaped { turn } => write!(f, "Escaped {turn}"),
            TraceOutcome::Undecided { horizon } => write!(f, "Undecided {horizon}"),
        }
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ignition={} strategy={} adversary={}", self.ignition, self.strategy, self.adversary)?;
        for r in &self.records {
            write!(f, "turn={} budget={} placed=", r.turn, r.budget)?;
            write_cells(f, &r.placed)?;
            f.write_str(" burned_new=")?;
            write_cells(f, &r.burned_new)?;
            writeln!(f)?;
        }
        writeln!(f, "outcome={}", self.outcome)
    }
}

fn field<'a>(line: usize, token: Option<&'a str>, key: &str) -> Result<&'a str, TraceParseError> {
    let err = |reason: String| TraceParseError { line, reason };
    let token = token.ok_or_else(|| err(format!("missing `{key}=`")))?;
    token
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| err(format!("expected `{key}=`, found `{token}`")))
}

fn number<T: FromStr>(line: usize, s: &str) -> Result<T, TraceParseError> {
    s.parse().map_err(|_| TraceParseError { line, reason: format!("`{s}` is not a valid integer") })
}

fn cells(line: usize, s: &str) -> Result<Vec<Cell>, TraceParseError> {
    let err = |reason: String| TraceParseError { line, reason };
    let inner = s
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| err(format!("cell list `{s}` is not bracketed")))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let list: Vec<Cell> = inner
        .split(';')
        .map(|c| c.parse::<Cell>().map_err(|e| err(e.to_string())))
        .collect::<Result<_, _>>()?;
    if list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(err("cell list is not sorted and duplicate-free".into()));
    }
    Ok(list)
}

impl FromStr for Trace {
    type Err = TraceParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let lines: Vec<&str> = text.lines().collect();
        let eof = |reason: &str| TraceParseError { line: lines.len() + 1, reason: reason.into() };
        let header = lines.first().ok_or_else(|| eof("empty trace"))?;
        let mut tok = header.split(' ');
        let ignition = field(1, tok.next(), "ignition")?;
        let ignition = ignition.parse::<Cell>().map_err(|e| TraceParseError { line: 1, reason: e.to_string() })?;
        let strategy = field(1, tok.next(), "strategy")?.to_string();
        let adversary = field(1, tok.next(), "adversary")?.to_string();
        if let Some(extra) = tok.next() {
            return Err(TraceParseError { line: 1, reason: format!("unexpected `{extra}`") });
        }

        let mut records = Vec::new();
        let mut outcome = None;
        for (i, text) in lines.iter().enumerate().skip(1) {
            let line = i + 1;
            if outcome.is_some() {
                return Err(TraceParseError { line, reason: "content after the outcome line".into() });
            }
            if let Some(o) = text.strip_prefix("outcome=") {
                let parts: Vec<&str> = o.split(' ').collect();
                outcome = Some(match parts.as_slice() {
                    ["Contained", t, b] => TraceOutcome::Contained { turn: number(line, t)?, burned: number(line, b)? },
                    ["Escaped", t] => TraceOutcome::Escaped { turn: number(line, t)? },
                    ["Undecided", h] => TraceOutcome::Undecided { horizon: number(line, h)? },
                    _ => return Err(TraceParseError { line, reason: format!("bad outcome `{o}`") }),
                });
                continue;
            }
            let mut tok = text.split(' ');
            let turn = number(line, field(line, tok.next(), "turn")?)?;
            let budget = number(line, field(line, tok.next(), "budget")?)?;
            let placed = cells(line, field(line, tok.next(), "placed")?)?;
            let burned_new = cells(line, field(line, tok.next(), "burned_new")?)?;
            if let Some(extra) = tok.next() {
                return Err(TraceParseError { line, reason: format!("unexpected `{extra}`") });
            }
            records.push(TraceRecord { turn, budget, placed, burned_new });
        }
        let outcome = outcome.ok_or_else(|| eof("missing outcome line"))?;
        Ok(Trace { ignition, strategy, adversary, records, outcome })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "ignition=(0,0) strategy=idle adversary=fixed:1\n\
turn=1 budget=1 placed=[] burned_new=[(-1,0);(0,-1);(0,1);(1,0)]\n\
outcome=Escaped 1\n";

    #[test]
    fn round_trip() {
        let t: Trace = SAMPLE.parse().unwrap();
        assert_eq!(t.records.len(), 1);
        assert_eq!(t.outcome, TraceOutcome::Escaped { turn: 1 });
        assert_eq!(t.to_string(), SAMPLE);
        assert_eq!(t.replay().unwrap().len(), 1);
    }

    #[test]
    fn rejects_unsorted_lists_and_missing_footer() {
        let bad = SAMPLE.replace("(-1,0);(0,-1)", "(0,-1);(-1,0)");
        assert_eq!(bad.parse::<Trace>().unwrap_err().line, 2);
        let cut: String = SAMPLE.lines().take(2).map(|l| format!("{l}\n")).collect();
        assert!(cut.parse::<Trace>().unwrap_err().reason.contains("outcome"));
    }

    #[test]
    fn replay_catches_tampering() {
        let mut t: Trace = SAMPLE.parse().unwrap();
        t.records[0].burned_new.pop();
        assert_eq!(t.replay(), Err(ReplayError::BurnMismatch { turn: 1 }));
        t.records[0].placed = vec![Cell::new(1, 0), Cell::new(2, 0)];
        assert!(matches!(t.replay(), Err(ReplayError::Placement { turn: 1, .. })));
    }
}
