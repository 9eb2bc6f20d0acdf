use std::collections::BTreeMap;

use crate::engine::GameState;
use crate::lattice::{diamond_cells, ring_cells, Cell};

use super::flow::{min_vertex_cut, Node};
use super::{AnalysisError, CertificateKind, EscapeCertificate};

/// Fewest extra protected cells inside the clip diamond (centred on the
/// ignition) that cut every burning cell off from the clip boundary.
///
/// A cut inside a small clip may be beaten by one further out, so callers
/// that need a sound bound re-check at `clip + 2`.
pub fn min_barrier(state: &GameState, clip: u32) -> Result<u64, AnalysisError> {
    min_barrier_with_cut(state, clip).map(|(v, _)| v)
}

pub fn min_barrier_with_cut(state: &GameState, clip: u32) -> Result<(u64, Vec<Cell>), AnalysisError> {
    let o = state.ignition();
    if let Some(&cell) = state.burning().iter().find(|&&c| (c - o).norm() >= clip) {
        return Err(AnalysisError::ClipTooSmall { clip, cell });
    }
    let nodes: BTreeMap<Cell, Node> = diamond_cells(o, clip)
        .into_iter()
        .filter(|&c| !state.is_protected(c))
        .map(|c| (c, if state.is_burning(c) { Node::Source } else { Node::Cuttable }))
        .collect();
    let targets = ring_cells(o, clip);
    Ok(min_vertex_cut(&nodes, &targets).expect("every free cell is cuttable"))
}

/// A `BarrierDeficit` certificate when the fire needs more than
/// `remaining_budget` further cells at both `clip` and `clip + 2`.
pub fn barrier_deficit(
    state: &GameState,
    remaining_budget: u64,
    clip: u32,
) -> Result<Option<EscapeCertificate>, AnalysisError> {
    let need = min_barrier(state, clip)?;
    if need <= remaining_budget || min_barrier(state, clip + 2)? < need {
        return Ok(None);
    }
    Ok(Some(EscapeCertificate {
        kind: CertificateKind::BarrierDeficit { min_barrier: need, remaining_budget, clip_radius: clip },
        turn: state.turn(),
    }))
}
