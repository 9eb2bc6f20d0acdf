use crate::adversaries::smallest_n;
use crate::trace::Trace;

use super::AnalysisError;

/// One target ring of the restart strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingRecord {
    pub distance: u32,
    /// Turn whose placements first aimed at this ring.
    pub set_at: u32,
    pub placed: u64,
    /// Firefighters left behind when the fire broke through; 0 for the last ring.
    pub abandoned: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LossLedger {
    pub rings: Vec<RingRecord>,
    pub total_placed: u64,
    pub total_abandoned: u64,
    /// Least `N` with `f_1 + ... + f_N >= 16N` over the traced budgets; a
    /// game contained early may end before it.
    pub m: Option<u32>,
}

impl LossLedger {
    /// Cells needed to complete the last ring.
    pub fn final_need(&self) -> u64 {
        self.rings.last().map_or(0, |r| 4 * r.distance as u64)
    }

    /// `total_abandoned <= 8M`.
    pub fn abandoned_within(&self, m: u32) -> bool {
        self.total_abandoned <= 8 * m as u64
    }

    /// `4 d_final <= 8M`.
    pub fn final_need_within(&self, m: u32) -> bool {
        self.final_need() <= 8 * m as u64
    }

    /// Both bounds for the traced `M`; false when the trace never reaches it.
    pub fn within_bounds(&self) -> bool {
        self.m.is_some_and(|m| self.abandoned_within(m) && self.final_need_within(m))
    }
}

/// Rebuilds the restart strategy's ring schedule from a trace: the first
/// ring sits at twice the first turn with a nonzero budget, and whenever the
/// fire has reached the current ring at the end of turn `t` the next one is
/// at `2t`. Every placement must land on the ring in force.
pub fn loss_accounting(trace: &Trace) -> Result<LossLedger, AnalysisError> {
    let states = trace.replay().map_err(|e| AnalysisError::TraceMismatch { turn: 0, reason: e.to_string() })?;
    let o = trace.ignition;
    let mut rings: Vec<RingRecord> = Vec::new();
    let mut reach = 0u32;
    for (i, r) in trace.records.iter().enumerate() {
        let completed = i as u32;
        if let Some(ring) = rings.last() {
            if reach >= ring.distance {
                let abandoned = ring.placed;
                rings.last_mut().unwrap().abandoned = abandoned;
                rings.push(RingRecord { distance: 2 * completed, set_at: r.turn, placed: 0, abandoned: 0 });
            }
        } else if r.budget > 0 {
            rings.push(RingRecord { distance: 2 * r.turn, set_at: r.turn, placed: 0, abandoned: 0 });
        }
        if let Some(ring) = rings.last_mut() {
            if let Some(c) = r.placed.iter().find(|&&c| (c - o).norm() != ring.distance) {
                return Err(AnalysisError::TraceMismatch {
                    turn: r.turn,
                    reason: format!("placement {c} is off the target ring at distance {}", ring.distance),
                });
            }
            ring.placed += r.placed.len() as u64;
        } else if !r.placed.is_empty() {
            return Err(AnalysisError::TraceMismatch { turn: r.turn, reason: "placement without a budget".into() });
        }
        reach = states[i].burning().iter().map(|&c| (c - o).norm()).max().unwrap_or(0);
    }
    Ok(LossLedger {
        total_placed: rings.iter().map(|r| r.placed).sum(),
        total_abandoned: rings.iter().map(|r| r.abandoned).sum(),
        m: smallest_n(&trace.budgets(), 16),
        rings,
    })
}
