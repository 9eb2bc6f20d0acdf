//! Budget sources (Player 2) and the prefix-sum conditions on budget
//! sequences.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::TurnRecord;
use crate::lattice::{l1_distance, Cell};

/// A possibly history-dependent source of per-turn budgets.
pub trait AdversaryPolicy: Send {
    fn id(&self) -> String;

    /// Budget for turn `history.len() + 1`.
    fn next_budget(&mut self, ignition: Cell, history: &[TurnRecord]) -> u32;

    /// Called after every completed turn.
    fn observe(&mut self, _ignition: Cell, _record: &TurnRecord) {}

    /// `Some(t)` once the policy has committed to budget 0 for every turn
    /// after `t`. Binding once emitted.
    fn declared_tail(&self) -> Option<u32>;

    /// Total budget still to come from `turn` onwards, when the policy knows it.
    fn remaining_total(&self, _turn: u32) -> Option<u64> {
        None
    }

    /// Hash of the internal state, for search memoization.
    fn state_key(&self) -> u64;

    fn box_clone(&self) -> Box<dyn AdversaryPolicy>;
}

impl Clone for Box<dyn AdversaryPolicy> {
    fn clone(&self) -> Self {
        self.box_clone()
    }
}

fn hash_of<T: Hash>(value: &T) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

/// Least `N` within the prefix with `f_1 + ... + f_N >= ell * N`.
pub fn smallest_n(prefix: &[u32], ell: u32) -> Option<u32> {
    let mut sum = 0u64;
    for (i, &f) in prefix.iter().enumerate() {
        sum += f as u64;
        let n = i as u64 + 1;
        if sum >= ell as u64 * n {
            return Some(n as u32);
        }
    }
    None
}

/// A finite list of budgets followed by a declared zero tail.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fixed {
    budgets: Vec<u32>,
    turn: u32,
}

impl Fixed {
    pub fn new(budgets: Vec<u32>) -> Self {
        Fixed { budgets, turn: 0 }
    }

    pub fn budgets(&self) -> &[u32] {
        &self.budgets
    }
}

impl AdversaryPolicy for Fixed {
    fn id(&self) -> String {
        let list: Vec<String> = self.budgets.iter().map(u32::to_string).collect();
        format!("fixed:{}", list.join(","))
    }

    fn next_budget(&mut self, _ignition: Cell, history: &[TurnRecord]) -> u32 {
        self.turn = history.len() as u32 + 1;
        self.budgets.get(history.len()).copied().unwrap_or(0)
    }

    fn declared_tail(&self) -> Option<u32> {
        Some(self.budgets.len() as u32)
    }

    fn remaining_total(&self, turn: u32) -> Option<u64> {
        let skip = turn.saturating_sub(1) as usize;
        Some(self.budgets.iter().skip(skip).map(|&f| f as u64).sum())
    }

    fn state_key(&self) -> u64 {
        hash_of(&self.turn)
    }

    fn box_clone(&self) -> Box<dyn AdversaryPolicy> {
        Box::new(self.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AdversaryError {
    #[error("sequence index j must be > 1, got {0}")]
    BadIndex(u32),
    #[error("periodic pattern must be nonempty")]
    EmptyPattern,
    #[error("eventually-one start M must be >= 1")]
    BadStart,
    #[error("extra probability must be at most 100 percent, got {0}")]
    BadProbability(u32),
}

/// Budgets of the sequence `f^j`: one firefighter at turn 1, `4j - 1` at
/// turn `j`, none otherwise. The returned prefix ends at turn `j`.
pub fn fseq_budgets(j: u32) -> Result<Vec<u32>, AdversaryError> {
    if j <= 1 {
        return Err(AdversaryError::BadIndex(j));
    }
    let mut out = vec![0; j as usize];
    out[0] = 1;
    out[j as usize - 1] = 4 * j - 1;
    Ok(out)
}

/// The fixed sequence `f^j` with its zero tail declared after turn `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FSeq {
    j: u32,
    inner: Fixed,
}

impl FSeq {
    pub fn new(j: u32) -> Result<Self, AdversaryError> {
        Ok(FSeq { j, inner: Fixed::new(fseq_budgets(j)?) })
    }
}

impl AdversaryPolicy for FSeq {
    fn id(&self) -> String {
        format!("fseq:j={}", self.j)
    }
    fn next_budget(&mut self, ignition: Cell, history: &[TurnRecord]) -> u32 {
        self.inner.next_budget(ignition, history)
    }
    fn declared_tail(&self) -> Option<u32> {
        self.inner.declared_tail()
    }
    fn remaining_total(&self, turn: u32) -> Option<u64> {
        self.inner.remaining_total(turn)
    }
    fn state_key(&self) -> u64 {
        self.inner.state_key()
    }
    fn box_clone(&self) -> Box<dyn AdversaryPolicy> {
        Box::new(self.clone())
    }
}

/// The adaptive adversary that defeats every online strategy under the
/// `4N` condition. It hands out one firefighter, looks at where it went,
/// and commits to `f^5` when it was placed within distance 2 of the
/// ignition, to `f^2` otherwise (including when nothing was placed).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Thm1Adaptive {
    committed: Option<u32>,
}

impl Thm1Adaptive {
    pub fn new() -> Self {
        Self::default()
    }

    /// The committed `j`, once turn 1 has been observed.
    pub fn committed(&self) -> Option<u32> {
        self.committed
    }

    fn commit(&mut self, ignition: Cell, first: &TurnRecord) {
        if self.committed.is_none() {
            let near = first
                .placements
                .iter()
                .map(|&c| l1_distance(c, ignition))
                .min()
                .is_some_and(|ell| ell <= 2);
            self.committed = Some(if near { 5 } else { 2 });
        }
    }
}

impl AdversaryPolicy for Thm1Adaptive {
    fn id(&self) -> String {
        "thm1".to_string()
    }

    fn next_budget(&mut self, ignition: Cell, history: &[TurnRecord]) -> u32 {
        let turn = history.len() as u32 + 1;
        if turn == 1 {
            return 1;
        }
        self.commit(ignition, &history[0]);
        let j = self.committed.unwrap_or(2);
        if turn == j {
            4 * j - 1
        } else {
            0
        }
    }

    fn observe(&mut self, ignition: Cell, record: &TurnRecord) {
        if record.turn == 1 {
            self.commit(ignition, record);
        }
    }

    fn declared_tail(&self) -> Option<u32> {
        self.committed
    }

    fn remaining_total(&self, turn: u32) -> Option<u64> {
        let j = self.committed?;
        Some(if turn <= j { 4 * j as u64 - 1 } else { 0 })
    }

    fn state_key(&self) -> u64 {
        hash_of(&self.committed)
    }

    fn box_clone(&self) -> Box<dyn AdversaryPolicy> {
        Box::new(self.clone())
    }
}

/// Endless repetition of a pattern; never declares a tail.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Periodic {
    pattern: Vec<u32>,
    turn: u32,
}

impl Periodic {
    pub fn new(pattern: Vec<u32>) -> Result<Self, AdversaryError> {
        if pattern.is_empty() {
            return Err(AdversaryError::EmptyPattern);
        }
        Ok(Periodic { pattern, turn: 0 })
    }

    pub fn budget_at(&self, turn: u32) -> u32 {
        self.pattern[(turn as usize - 1) % self.pattern.len()]
    }
}

impl AdversaryPolicy for Periodic {
    fn id(&self) -> String {
        let list: Vec<String> = self.pattern.iter().map(u32::to_string).collect();
        format!("periodic:{}", list.join(","))
    }

    fn next_budget(&mut self, _ignition: Cell, history: &[TurnRecord]) -> u32 {
        self.turn = history.len() as u32 + 1;
        self.budget_at(self.turn)
    }

    fn declared_tail(&self) -> Option<u32> {
        None
    }

    fn state_key(&self) -> u64 {
        hash_of(&((self.turn as usize) % self.pattern.len()))
    }

    fn box_clone(&self) -> Box<dyn AdversaryPolicy> {
        Box::new(self.clone())
    }
}

/// Zero budgets before turn `M`, at least one from `M` on, with seeded
/// random extras and a top-up at turn `N` (or `M`, if later) that makes the
/// `4N` condition hold there.
#[derive(Debug, Clone)]
pub struct EventuallyOne {
    start: u32,
    target: u32,
    seed: u64,
    extra_percent: u32,
    budgets: Vec<u32>,
    rng: ChaCha8Rng,
    turn: u32,
}

impl EventuallyOne {
    pub const DEFAULT_EXTRA_PERCENT: u32 = 25;

    pub fn new(start: u32, target: u32, seed: u64) -> Result<Self, AdversaryError> {
        Self::with_extra_percent(start, target, seed, Self::DEFAULT_EXTRA_PERCENT)
    }

    /// No extras: exactly one firefighter per turn from `M` until the top-up.
    pub fn forced(start: u32, target: u32) -> Result<Self, AdversaryError> {
        Self::with_extra_percent(start, target, 0, 0)
    }

    pub fn with_extra_percent(
        start: u32,
        target: u32,
        seed: u64,
        extra_percent: u32,
    ) -> Result<Self, AdversaryError> {
        if start == 0 {
            return Err(AdversaryError::BadStart);
        }
        if extra_percent > 100 {
            return Err(AdversaryError::BadProbability(extra_percent));
        }
        Ok(EventuallyOne {
            start,
            target,
            seed,
            extra_percent,
            budgets: Vec::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            turn: 0,
        })
    }

    fn top_up_turn(&self) -> u32 {
        self.target.max(self.start)
    }

    pub fn budget_at(&mut self, turn: u32) -> u32 {
        while self.budgets.len() < turn as usize {
            let t = self.budgets.len() as u32 + 1;
            let mut f = if t < self.start {
                0
            } else if self.rng.gen_range(0..100) < self.extra_percent {
                1 + self.rng.gen_range(1..=4)
            } else {
                1
            };
            if t == self.top_up_turn() {
                let sum: u32 = self.budgets.iter().sum();
                f = f.max((4 * t).saturating_sub(sum));
            }
            self.budgets.push(f);
        }
        self.budgets[turn as usize - 1]
    }

    /// The first `len` budgets.
    pub fn prefix(&mut self, len: u32) -> Vec<u32> {
        if len > 0 {
            self.budget_at(len);
        }
        self.budgets[..len as usize].to_vec()
    }
}

impl AdversaryPolicy for EventuallyOne {
    fn id(&self) -> String {
        let mut id = format!("eventually-one:M={},N={},seed={}", self.start, self.target, self.seed);
        if self.extra_percent != Self::DEFAULT_EXTRA_PERCENT {
            id.push_str(&format!(",p={}", self.extra_percent));
        }
        id
    }

    fn next_budget(&mut self, _ignition: Cell, history: &[TurnRecord]) -> u32 {
        self.turn = history.len() as u32 + 1;
        self.budget_at(self.turn)
    }

    fn declared_tail(&self) -> Option<u32> {
        None
    }

    fn state_key(&self) -> u64 {
        hash_of(&self.turn)
    }

    fn box_clone(&self) -> Box<dyn AdversaryPolicy> {
        Box::new(self.clone())
    }
}

/// Parsed adversary identifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdversarySpec {
    Thm1,
    FSeq(u32),
    Fixed(Vec<u32>),
    EventuallyOne { start: u32, target: u32, seed: u64, extra_percent: Option<u32> },
    Periodic(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AdversarySpecError {
    #[error("unknown adversary `{0}`; known: thm1, fseq:j=<int>, fixed:<list>, eventually-one:M=<int>,N=<int>,seed=<int>, periodic:<list>")]
    Unknown(String),
    #[error("malformed adversary `{id}`: {reason}")]
    Malformed { id: String, reason: String },
    #[error(transparent)]
    Invalid(#[from] AdversaryError),
}

fn parse_list(id: &str, list: &str) -> Result<Vec<u32>, AdversarySpecError> {
    if list.trim().is_empty() {
        return Ok(Vec::new());
    }
    list.split(',')
        .map(|s| {
            s.trim().parse::<u32>().map_err(|_| AdversarySpecError::Malformed {
                id: id.to_string(),
                reason: format!("`{s}` is not a non-negative integer"),
            })
        })
        .collect()
}

fn parse_params(id: &str, params: &str) -> Result<Vec<(String, u64)>, AdversarySpecError> {
    params
        .split(',')
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| AdversarySpecError::Malformed {
                id: id.to_string(),
                reason: format!("expected key=value, got `{kv}`"),
            })?;
            let v = v.trim().parse::<u64>().map_err(|_| AdversarySpecError::Malformed {
                id: id.to_string(),
                reason: format!("`{v}` is not a non-negative integer"),
            })?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

impl FromStr for AdversarySpec {
    type Err = AdversarySpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let malformed = |reason: &str| AdversarySpecError::Malformed { id: s.to_string(), reason: reason.to_string() };
        match name {
            "thm1" if rest.is_empty() => Ok(AdversarySpec::Thm1),
            "fixed" => Ok(AdversarySpec::Fixed(parse_list(s, rest)?)),
            "periodic" => {
                let pattern = parse_list(s, rest)?;
                if pattern.is_empty() {
                    return Err(AdversaryError::EmptyPattern.into());
                }
                Ok(AdversarySpec::Periodic(pattern))
            }
            "fseq" => match parse_params(s, rest)?.as_slice() {
                [(k, j)] if k == "j" => {
                    let j = u32::try_from(*j).map_err(|_| malformed("j out of range"))?;
                    fseq_budgets(j)?;
                    Ok(AdversarySpec::FSeq(j))
                }
                _ => Err(malformed("expected fseq:j=<int>")),
            },
            "eventually-one" => {
                let (mut start, mut target, mut seed, mut extra) = (None, None, None, None);
                for (k, v) in parse_params(s, rest)? {
                    let small = || u32::try_from(v).map_err(|_| malformed("value out of range"));
                    match k.as_str() {
                        "M" => start = Some(small()?),
                        "N" => target = Some(small()?),
                        "seed" => seed = Some(v),
                        "p" => extra = Some(small()?),
                        other => return Err(malformed(&format!("unknown parameter `{other}`"))),
                    }
                }
                let (Some(start), Some(target), Some(seed)) = (start, target, seed) else {
                    return Err(malformed("expected M=<int>,N=<int>,seed=<int>"));
                };
                if start == 0 {
                    return Err(AdversaryError::BadStart.into());
                }
                Ok(AdversarySpec::EventuallyOne { start, target, seed, extra_percent: extra })
            }
            _ => Err(AdversarySpecError::Unknown(s.to_string())),
        }
    }
}

impl fmt::Display for AdversarySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.build().map(|a| a.id()).unwrap_or_else(|_| "invalid".into()))
    }
}

impl AdversarySpec {
    pub fn build(&self) -> Result<Box<dyn AdversaryPolicy>, AdversaryError> {
        Ok(match self {
            AdversarySpec::Thm1 => Box::new(Thm1Adaptive::new()),
            AdversarySpec::FSeq(j) => Box::new(FSeq::new(*j)?),
            AdversarySpec::Fixed(b) => Box::new(Fixed::new(b.clone())),
            AdversarySpec::Periodic(p) => Box::new(Periodic::new(p.clone())?),
            AdversarySpec::EventuallyOne { start, target, seed, extra_percent } => Box::new(
                EventuallyOne::with_extra_percent(
                    *start,
                    *target,
                    *seed,
                    extra_percent.unwrap_or(EventuallyOne::DEFAULT_EXTRA_PERCENT),
                )?,
            ),
        })
    }

    /// The full budget list when it does not depend on play, up to `horizon`
    /// turns (or the declared tail, whichever is shorter).
    pub fn oblivious_sequence(&self, horizon: u32) -> Option<Vec<u32>> {
        match self {
            AdversarySpec::Thm1 => None,
            AdversarySpec::FSeq(j) => fseq_budgets(*j).ok(),
            AdversarySpec::Fixed(b) => Some(b.clone()),
            AdversarySpec::Periodic(p) => {
                let p = Periodic::new(p.clone()).ok()?;
                Some((1..=horizon).map(|t| p.budget_at(t)).collect())
            }
            AdversarySpec::EventuallyOne { start, target, seed, extra_percent } => {
                let mut e = EventuallyOne::with_extra_percent(
                    *start,
                    *target,
                    *seed,
                    extra_percent.unwrap_or(EventuallyOne::DEFAULT_EXTRA_PERCENT),
                )
                .ok()?;
                Some(e.prefix(horizon))
            }
        }
    }
}
