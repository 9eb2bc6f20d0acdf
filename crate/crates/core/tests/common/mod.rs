//! Independent oracles and workload generators shared by the integration
//! tests. Nothing here calls into the engine's spread or the flow code.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use firefighter::engine::TurnRecord;
use firefighter::lattice::{Cell, Polygon};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn nbrs(c: Cell) -> [Cell; 4] {
    [Cell::new(c.x + 1, c.y), Cell::new(c.x - 1, c.y), Cell::new(c.x, c.y + 1), Cell::new(c.x, c.y - 1)]
}

/// Cells within `t` steps of the ignition through cells outside `protected`.
pub fn bfs_burn(ignition: Cell, protected: &BTreeSet<Cell>, t: u32) -> BTreeSet<Cell> {
    let mut seen = BTreeSet::from([ignition]);
    let mut queue = VecDeque::from([(ignition, 0)]);
    while let Some((c, d)) = queue.pop_front() {
        if d == t {
            continue;
        }
        for n in nbrs(c) {
            if !protected.contains(&n) && seen.insert(n) {
                queue.push_back((n, d + 1));
            }
        }
    }
    seen
}

fn path_to_edge(burning: &BTreeSet<Cell>, blocked: &BTreeSet<Cell>, o: Cell, clip: u32) -> Option<Vec<Cell>> {
    let norm = |c: Cell| ((c.x - o.x).abs() + (c.y - o.y).abs()) as u32;
    let mut prev = std::collections::BTreeMap::new();
    let mut queue: VecDeque<Cell> = burning.iter().copied().collect();
    for &b in burning {
        prev.insert(b, b);
    }
    while let Some(c) = queue.pop_front() {
        if norm(c) == clip {
            let mut path = vec![c];
            let mut cur = c;
            while prev[&cur] != cur {
                cur = prev[&cur];
                path.push(cur);
            }
            return Some(path.into_iter().filter(|p| !burning.contains(p)).collect());
        }
        for n in nbrs(c) {
            if norm(n) <= clip && !blocked.contains(&n) && !prev.contains_key(&n) {
                prev.insert(n, c);
                queue.push_back(n);
            }
        }
    }
    None
}

fn hits(burning: &BTreeSet<Cell>, blocked: &mut BTreeSet<Cell>, o: Cell, clip: u32, k: u32) -> bool {
    let Some(path) = path_to_edge(burning, blocked, o, clip) else {
        return true;
    };
    if k == 0 {
        return false;
    }
    for c in path {
        blocked.insert(c);
        let ok = hits(burning, blocked, o, clip, k - 1);
        blocked.remove(&c);
        if ok {
            return true;
        }
    }
    false
}

/// Smallest set of free cells inside the clip whose removal disconnects the
/// fire from the clip boundary, by branching on shortest open paths.
/// `None` when no set of at most `limit` cells exists.
pub fn barrier_oracle(
    o: Cell,
    burning: &BTreeSet<Cell>,
    protected: &BTreeSet<Cell>,
    clip: u32,
    limit: u32,
) -> Option<u32> {
    let mut blocked = protected.clone();
    (0..=limit).find(|&k| hits(burning, &mut blocked, o, clip, k))
}

/// Budgets whose least `N` with `f_1 + ... + f_N >= ell * N` is exactly
/// `n`, with zero gaps before it and `tail` random turns after.
pub fn sequence_with_n(rng: &mut ChaCha8Rng, ell: u32, n: u32, zero_percent: u32, tail: u32) -> Vec<u32> {
    let mut seq = Vec::new();
    let mut sum = 0u32;
    for i in 1..n {
        let mut f = if rng.gen_range(0..100) < zero_percent { 0 } else { rng.gen_range(0..=2 * ell) };
        f = f.min((ell * i - 1).saturating_sub(sum));
        sum += f;
        seq.push(f);
    }
    let top = (ell * n).saturating_sub(sum) + rng.gen_range(0..=ell);
    seq.push(top);
    for _ in 0..tail {
        seq.push(if rng.gen_range(0..100) < zero_percent { 0 } else { rng.gen_range(0..=2 * ell) });
    }
    seq
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Per-turn checks for the wall strategy at every turn `i >= M`:
/// the fire stays inside Polygon(i, M), whose perimeter has at most `4i`
/// cells; every protected cell touches the fire, so no firefighter is
/// wasted; and while every budget so far was 1, protected cells within
/// distance `i` and burning cells with a free neighbour all lie on the
/// polygon's perimeter (a wall head may sit one step further out).
pub fn check_wall_turns(ignition: Cell, records: &[TurnRecord]) -> Result<(), String> {
    let Some(m) = records.iter().find(|r| r.budget > 0).map(|r| r.turn) else {
        return Ok(());
    };
    let mut burning = BTreeSet::from([Cell::ORIGIN]);
    let mut protected = BTreeSet::new();
    let mut pure = true;
    for r in records {
        burning.extend(r.newly_burned.iter().map(|&c| c - ignition));
        protected.extend(r.placements.iter().map(|&c| c - ignition));
        let i = r.turn;
        if i < m {
            continue;
        }
        pure &= r.budget == 1;
        let poly = Polygon::new(i, m).map_err(|e| e.to_string())?;
        if let Some(c) = burning.iter().find(|&&c| !poly.contains(c)) {
            return Err(format!("turn {i}: burning {c} outside Polygon({i},{m})"));
        }
        let perimeter: BTreeSet<Cell> = poly.perimeter_cells().into_iter().collect();
        if perimeter.len() as u32 > 4 * i {
            return Err(format!("turn {i}: perimeter has {} > {} cells", perimeter.len(), 4 * i));
        }
        if let Some(c) = protected.iter().find(|&&c| nbrs(c).iter().all(|n| !burning.contains(n))) {
            return Err(format!("turn {i}: protected {c} does not touch the fire"));
        }
        if pure {
            let free = |c: &Cell| !burning.contains(c) && !protected.contains(c);
            let edge = burning.iter().filter(|&&c| nbrs(c).iter().any(free));
            let near = protected.iter().filter(|c| c.norm() <= i);
            if let Some(c) = edge.chain(near).find(|c| !perimeter.contains(c)) {
                return Err(format!("turn {i}: {c} is off the perimeter of Polygon({i},{m})"));
            }
        }
    }
    Ok(())
}
