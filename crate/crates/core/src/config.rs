//! TOML run configuration.
//!
//! ```toml
//! strategy = "wall"
//! adversary = "fixed:1,1,1,13"
//! horizon = 10
//! ignition = [0, 0]   # optional
//! seed = 7            # optional, feeds random strategies
//! clip = 8            # optional, >= 4
//! sequence = [1, 1]   # optional budget list for offline strategies
//! trace_out = "run.trace"
//! ```

use std::fmt;
use std::path::PathBuf;

use toml::{Table, Value};

use crate::adversaries::{AdversaryPolicy, AdversarySpec, AdversarySpecError};
use crate::engine::{run_game, EngineError, GameRun};
use crate::lattice::Cell;
use crate::strategies::{Strategy, StrategyError, StrategySpec, UnknownStrategy};
use crate::trace::Trace;

pub const DEFAULT_CLIP: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub ignition: Cell,
    pub strategy: StrategySpec,
    pub adversary: AdversarySpec,
    pub horizon: u32,
    pub seed: u64,
    pub clip_radius: u32,
    pub sequence: Option<Vec<u32>>,
    pub trace_out: Option<PathBuf>,
    pub svg_out: Option<PathBuf>,
    pub ascii_out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("invalid TOML: {0}")]
    Syntax(String),
    #[error("missing field `{0}`")]
    Missing(&'static str),
    #[error("unknown field `{0}`")]
    UnknownField(String),
    #[error("field `{field}`: {reason}")]
    Malformed { field: &'static str, reason: String },
    #[error(transparent)]
    Strategy(#[from] UnknownStrategy),
    #[error(transparent)]
    Adversary(#[from] AdversarySpecError),
}

/// Every problem found in a config, in field order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigErrors(pub Vec<ConfigError>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigErrors {}

const FIELDS: &[&str] =
    &["strategy", "adversary", "horizon", "ignition", "seed", "clip", "sequence", "trace_out", "svg_out", "ascii_out"];

fn malformed(field: &'static str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Malformed { field, reason: reason.into() }
}

fn int(field: &'static str, v: &Value) -> Result<i64, ConfigError> {
    v.as_integer().ok_or_else(|| malformed(field, format!("expected an integer, found `{v}`")))
}

fn unsigned<T: TryFrom<i64>>(field: &'static str, v: &Value) -> Result<T, ConfigError> {
    let n = int(field, v)?;
    T::try_from(n).map_err(|_| malformed(field, format!("{n} is out of range")))
}

fn string<'a>(field: &'static str, v: &'a Value) -> Result<&'a str, ConfigError> {
    v.as_str().ok_or_else(|| malformed(field, format!("expected a string, found `{v}`")))
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigErrors> {
    let table: Table = text.parse().map_err(|e: toml::de::Error| ConfigErrors(vec![ConfigError::Syntax(e.to_string())]))?;
    let mut errors = Vec::new();

    for key in table.keys() {
        if !FIELDS.contains(&key.as_str()) {
            errors.push(ConfigError::UnknownField(key.clone()));
        }
    }

    let mut required = |field: &'static str| {
        let v = table.get(field);
        if v.is_none() {
            errors.push(ConfigError::Missing(field));
        }
        v
    };
    let strategy = required("strategy");
    let adversary = required("adversary");
    let horizon = required("horizon");

    let strategy = strategy.map(|v| string("strategy", v).and_then(|s| Ok(s.parse::<StrategySpec>()?)));
    let adversary = adversary.map(|v| string("adversary", v).and_then(|s| Ok(s.parse::<AdversarySpec>()?)));
    let horizon = horizon.map(|v| {
        unsigned::<u32>("horizon", v).and_then(|h| if h == 0 { Err(malformed("horizon", "must be at least 1")) } else { Ok(h) })
    });
    let ignition = table.get("ignition").map(|v| {
        let arr = v.as_array().ok_or_else(|| malformed("ignition", "expected [x, y]"))?;
        match arr.as_slice() {
            [x, y] => {
                let x = i32::try_from(int("ignition", x)?).map_err(|_| malformed("ignition", "x out of range"))?;
                let y = i32::try_from(int("ignition", y)?).map_err(|_| malformed("ignition", "y out of range"))?;
                Ok(Cell::new(x, y))
            }
            _ => Err(malformed("ignition", "expected [x, y]")),
        }
    });
    let seed = table.get("seed").map(|v| unsigned::<u64>("seed", v));
    let clip = table.get("clip").map(|v| {
        unsigned::<u32>("clip", v).and_then(|c| if c < 4 { Err(malformed("clip", "must be at least 4")) } else { Ok(c) })
    });
    let sequence = table.get("sequence").map(|v| {
        v.as_array()
            .ok_or_else(|| malformed("sequence", "expected a list of budgets"))?
            .iter()
            .map(|b| unsigned::<u32>("sequence", b))
            .collect::<Result<Vec<u32>, _>>()
    });
    let path = |field: &'static str| table.get(field).map(|v| string(field, v).map(PathBuf::from));
    let (trace_out, svg_out, ascii_out) = (path("trace_out"), path("svg_out"), path("ascii_out"));

    fn take<T>(errors: &mut Vec<ConfigError>, v: Option<Result<T, ConfigError>>) -> Option<T> {
        match v? {
            Ok(t) => Some(t),
            Err(e) => {
                errors.push(e);
                None
            }
        }
    }
    let strategy = take(&mut errors, strategy);
    let adversary = take(&mut errors, adversary);
    let horizon = take(&mut errors, horizon);
    let ignition = take(&mut errors, ignition);
    let seed = take(&mut errors, seed);
    let clip = take(&mut errors, clip);
    let sequence = take(&mut errors, sequence);
    let trace_out = take(&mut errors, trace_out);
    let svg_out = take(&mut errors, svg_out);
    let ascii_out = take(&mut errors, ascii_out);

    match (strategy, adversary, horizon) {
        (Some(strategy), Some(adversary), Some(horizon)) if errors.is_empty() => Ok(RunConfig {
            ignition: ignition.unwrap_or(Cell::ORIGIN),
            strategy,
            adversary,
            horizon,
            seed: seed.unwrap_or(0),
            clip_radius: clip.unwrap_or(DEFAULT_CLIP),
            sequence,
            trace_out,
            svg_out,
            ascii_out,
        }),
        _ => Err(ConfigErrors(errors)),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Adversary(#[from] crate::adversaries::AdversaryError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// A built strategy and adversary.
pub type Players = (Box<dyn Strategy>, Box<dyn AdversaryPolicy>);

impl RunConfig {
    /// A config with defaults for everything optional.
    pub fn new(strategy: StrategySpec, adversary: AdversarySpec, horizon: u32) -> Self {
        RunConfig {
            ignition: Cell::ORIGIN,
            strategy,
            adversary,
            horizon,
            seed: 0,
            clip_radius: DEFAULT_CLIP,
            sequence: None,
            trace_out: None,
            svg_out: None,
            ascii_out: None,
        }
    }

    pub fn build(&self) -> Result<Players, RunError> {
        let derived;
        let sequence = match &self.sequence {
            Some(s) => Some(s.as_slice()),
            None => {
                derived = self.adversary.oblivious_sequence(self.horizon);
                derived.as_deref()
            }
        };
        let strategy = self.strategy.build(sequence, self.seed)?;
        Ok((strategy, self.adversary.build()?))
    }

    pub fn run(&self) -> Result<(GameRun, Trace), RunError> {
        let (mut strategy, mut adversary) = self.build()?;
        let run = run_game(self.ignition, strategy.as_mut(), adversary.as_mut(), self.horizon)?;
        let trace = Trace::from_run(self.ignition, &strategy.id(), &adversary.id(), &run);
        Ok((run, trace))
    }
}
