use std::fmt;

use crate::adversaries::{AdversaryPolicy, AdversarySpec};
use crate::engine::{GameState, TurnRecord};
use crate::trace::{Trace, TraceOutcome};

use super::barrier::{barrier_deficit, min_barrier};
use super::flood::{flood_escape_check, FloodVerdict};
use super::{CertificateKind, EscapeCertificate};

/// Answer to "is this fire contained?" for a recorded game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Replayed to a spread that burns nothing, or sealed in with no
    /// firefighters left to come.
    Contained { turn: u32, burned: usize },
    Escaped(EscapeCertificate),
    /// The trace does not replay, or contradicts its own footer.
    Invalid { reason: String },
    Inconclusive { min_barrier: Option<u64>, clip_radius: u32, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certification {
    pub verdict: Verdict,
}

impl Certification {
    /// 0 verified containment, 1 refuted, 2 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Contained { .. } => 0,
            Verdict::Escaped(_) | Verdict::Invalid { .. } => 1,
            Verdict::Inconclusive { .. } => 2,
        }
    }
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Contained { turn, burned } => write!(f, "verified: Contained {turn} {burned}"),
            Verdict::Escaped(cert) => match cert.kind {
                CertificateKind::FloodToInfinity { witness } => {
                    write!(f, "refuted: Escaped {} flood-to-infinity witness={witness}", cert.turn)
                }
                CertificateKind::BarrierDeficit { min_barrier, remaining_budget, clip_radius } => write!(
                    f,
                    "refuted: Escaped {} barrier-deficit min_barrier={min_barrier} remaining={remaining_budget} clip={clip_radius}",
                    cert.turn
                ),
            },
            Verdict::Invalid { reason } => write!(f, "refuted: invalid trace: {reason}"),
            Verdict::Inconclusive { min_barrier, clip_radius, reason } => {
                write!(f, "inconclusive: {reason}")?;
                match min_barrier {
                    Some(b) => write!(f, " min_barrier={b} clip={clip_radius}"),
                    None => Ok(()),
                }
            }
        }
    }
}

fn invalid(reason: impl Into<String>) -> Certification {
    Certification { verdict: Verdict::Invalid { reason: reason.into() } }
}

/// Re-drives the adversary named in the header through the recorded turns,
/// checking every budget. `None` when the id is not a known adversary.
fn replay_adversary(trace: &Trace, states: &[GameState]) -> Option<Result<Box<dyn AdversaryPolicy>, String>> {
    let spec: AdversarySpec = trace.adversary.parse().ok()?;
    let mut adv = spec.build().ok()?;
    let mut history: Vec<TurnRecord> = Vec::new();
    for (r, s) in trace.records.iter().zip(states) {
        let expected = adv.next_budget(trace.ignition, &history);
        if expected != r.budget {
            return Some(Err(format!("turn {}: budget {} but `{}` gives {expected}", r.turn, r.budget, trace.adversary)));
        }
        let record = TurnRecord {
            turn: r.turn,
            budget: r.budget,
            placements: r.placed.clone(),
            newly_burned: r.burned_new.clone(),
            cumulative_protected: s.protected().len(),
            cumulative_burned: s.burning().len(),
        };
        adv.observe(trace.ignition, &record);
        history.push(record);
    }
    Some(Ok(adv))
}

/// Checks a trace and decides containment.
///
/// The footer is checked against the replay. Past the replay the fire is
/// decided by a flood fill when the adversary has declared a zero tail, by a
/// barrier deficit when its remaining total is known, and is otherwise
/// reported as inconclusive with the current minimum barrier.
pub fn certify(trace: &Trace, clip: u32) -> Certification {
    let states = match trace.replay() {
        Ok(s) => s,
        Err(e) => return invalid(e.to_string()),
    };
    let last = states.last().cloned().unwrap_or_else(|| GameState::new(trace.ignition));
    let turns = states.len() as u32;
    let contained_now = trace.records.last().is_some_and(|r| r.burned_new.is_empty());

    match trace.outcome {
        TraceOutcome::Contained { turn, burned } => {
            if !contained_now || turn != turns || burned != last.burning().len() {
                return invalid(format!("footer claims Contained {turn} {burned}, replay disagrees"));
            }
            return Certification { verdict: Verdict::Contained { turn, burned } };
        }
        _ if contained_now => return invalid("last turn burned nothing but the footer does not say Contained"),
        TraceOutcome::Escaped { turn } | TraceOutcome::Undecided { horizon: turn } if turn < turns => {
            return invalid(format!("footer turn {turn} precedes the last record {turns}"));
        }
        _ => {}
    }

    let adversary = match replay_adversary(trace, &states) {
        Some(Err(reason)) => return invalid(reason),
        Some(Ok(a)) => Some(a),
        None => None,
    };
    let tail_begun = adversary.as_ref().and_then(|a| a.declared_tail()).is_some_and(|t| t <= turns);
    if tail_begun {
        return match flood_escape_check(&last) {
            FloodVerdict::Escaped(cert) => Certification { verdict: Verdict::Escaped(cert) },
            FloodVerdict::Enclosed { contained_turn, burned } => {
                Certification { verdict: Verdict::Contained { turn: contained_turn, burned } }
            }
        };
    }

    let o = trace.ignition;
    let reach = last.burning().iter().chain(last.protected()).map(|&c| (c - o).norm()).max().unwrap_or(0);
    let clip = clip.max(reach + 2);
    if let Some(remaining) = adversary.as_ref().and_then(|a| a.remaining_total(turns + 1)) {
        if let Ok(Some(cert)) = barrier_deficit(&last, remaining, clip) {
            return Certification { verdict: Verdict::Escaped(cert) };
        }
    }
    let reason = match &adversary {
        None => format!("adversary `{}` is not known, future budgets unknown", trace.adversary),
        Some(_) => "future budgets are not declared zero".to_string(),
    };
    Certification {
        verdict: Verdict::Inconclusive { min_barrier: min_barrier(&last, clip).ok(), clip_radius: clip, reason },
    }
}
