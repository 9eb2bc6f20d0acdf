//! Exact integer geometry of the square lattice under the L1 metric.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

/// A lattice point. Ordering is lexicographic by `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

impl Cell {
    pub const ORIGIN: Cell = Cell { x: 0, y: 0 };

    pub const fn new(x: i32, y: i32) -> Self {
        Cell { x, y }
    }

    /// L1 norm, i.e. distance from the origin.
    pub fn norm(self) -> u32 {
        self.x.unsigned_abs() + self.y.unsigned_abs()
    }
}

impl Add for Cell {
    type Output = Cell;
    fn add(self, o: Cell) -> Cell {
        Cell::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Cell {
    type Output = Cell;
    fn sub(self, o: Cell) -> Cell {
        Cell::new(self.x - o.x, self.y - o.y)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed cell `{0}`, expected `(x,y)`")]
pub struct ParseCellError(pub String);

impl FromStr for Cell {
    type Err = ParseCellError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseCellError(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(err)?;
        let (x, y) = inner.split_once(',').ok_or_else(err)?;
        Ok(Cell::new(
            x.trim().parse().map_err(|_| err())?,
            y.trim().parse().map_err(|_| err())?,
        ))
    }
}

pub fn l1_distance(a: Cell, b: Cell) -> u32 {
    (a - b).norm()
}

/// The 4-neighbourhood, in the order east, west, north, south.
pub fn neighbors(c: Cell) -> [Cell; 4] {
    [
        Cell::new(c.x + 1, c.y),
        Cell::new(c.x - 1, c.y),
        Cell::new(c.x, c.y + 1),
        Cell::new(c.x, c.y - 1),
    ]
}

/// Cells at L1 distance exactly `radius` from `center`, in counterclockwise
/// order starting from `center + (radius, 0)`.
pub fn ring_cells(center: Cell, radius: u32) -> Vec<Cell> {
    let r = radius as i32;
    if r == 0 {
        return vec![center];
    }
    let mut out = Vec::with_capacity(4 * radius as usize);
    for k in 0..r {
        out.push(Cell::new(r - k, k));
    }
    for k in 0..r {
        out.push(Cell::new(-k, r - k));
    }
    for k in 0..r {
        out.push(Cell::new(-r + k, -k));
    }
    for k in 0..r {
        out.push(Cell::new(k, -r + k));
    }
    out.into_iter().map(|c| c + center).collect()
}

/// Closed L1 ball of radius `radius`, sorted lexicographically.
pub fn diamond_cells(center: Cell, radius: u32) -> Vec<Cell> {
    let r = radius as i32;
    let mut out = Vec::with_capacity(diamond_size(radius) as usize);
    for x in -r..=r {
        let h = r - x.abs();
        for y in -h..=h {
            out.push(Cell::new(center.x + x, center.y + y));
        }
    }
    out
}

/// Number of cells in a closed L1 ball: `2r^2 + 2r + 1`.
pub fn diamond_size(radius: u32) -> u64 {
    let r = radius as u64;
    2 * r * r + 2 * r + 1
}

/// Position of a nonzero offset along the L1 circle through it, as the exact
/// fraction `num / den` of a full counterclockwise turn starting at the
/// positive x axis. Monotone in the Euclidean angle.
#[derive(Debug, Clone, Copy)]
pub struct DiamondAngle {
    num: i64,
    den: i64,
}

impl DiamondAngle {
    pub fn of(offset: Cell) -> Self {
        let d = offset.norm() as i64;
        assert!(d > 0, "angle of the origin is undefined");
        let (x, y) = (offset.x as i64, offset.y as i64);
        let param = if x > 0 && y >= 0 {
            y
        } else if x <= 0 && y > 0 {
            d - x
        } else if x < 0 && y <= 0 {
            2 * d - y
        } else {
            3 * d + x
        };
        DiamondAngle { num: param, den: 4 * d }
    }

    /// The same angle shifted by one full turn.
    pub fn plus_turn(self) -> Self {
        DiamondAngle { num: self.num + self.den, den: self.den }
    }
}

impl PartialEq for DiamondAngle {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for DiamondAngle {}
impl PartialOrd for DiamondAngle {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for DiamondAngle {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.num as i128 * o.den as i128).cmp(&(o.num as i128 * self.den as i128))
    }
}

/// Outward diagonal of the diamond facet that `offset` lies on, where each
/// facet owns its counterclockwise-trailing corner.
pub fn facet_direction(offset: Cell) -> Cell {
    let (x, y) = (offset.x, offset.y);
    if x > 0 && y >= 0 {
        Cell::new(1, 1)
    } else if x <= 0 && y > 0 {
        Cell::new(-1, 1)
    } else if x < 0 && y <= 0 {
        Cell::new(-1, -1)
    } else {
        Cell::new(1, -1)
    }
}

/// The region burned at the end of turn `turn` by a fire confined behind two
/// diagonal walls that start at `(wall_offset, 0)`, centered on the origin.
///
/// Membership: the four diamond inequalities `|x| + |y| <= i`, and the two
/// wall inequalities `y >= x - M`, `y <= -x + M` read as the complement of the
/// wedge strictly behind both walls (`x - |y| <= M`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Polygon {
    pub turn: u32,
    pub wall_offset: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("polygon needs 1 <= M <= i, got i={turn}, M={wall_offset}")]
pub struct PolygonError {
    pub turn: u32,
    pub wall_offset: u32,
}

impl Polygon {
    pub fn new(turn: u32, wall_offset: u32) -> Result<Self, PolygonError> {
        if wall_offset == 0 || wall_offset > turn {
            return Err(PolygonError { turn, wall_offset });
        }
        Ok(Polygon { turn, wall_offset })
    }

    pub fn contains(&self, c: Cell) -> bool {
        let (x, y) = (c.x as i64, c.y as i64);
        let i = self.turn as i64;
        let m = self.wall_offset as i64;
        let diamond = y <= x + i && y >= -x - i && y >= x - i && y <= -x + i;
        let outside_wedge = y >= x - m || y <= -x + m;
        diamond && outside_wedge
    }

    /// Boundary cells (region cells with a 4-neighbour outside the region),
    /// counterclockwise from `(M, 0)`.
    pub fn perimeter_cells(&self) -> Vec<Cell> {
        let mut cells: Vec<Cell> = diamond_cells(Cell::ORIGIN, self.turn)
            .into_iter()
            .filter(|&c| self.contains(c) && neighbors(c).iter().any(|&n| !self.contains(n)))
            .collect();
        sort_ccw_from(&mut cells, Cell::new(self.wall_offset as i32, 0));
        cells
    }
}

/// Sorts origin-relative cells counterclockwise by diamond angle, starting at
/// the ray through `start` (inclusive); ties broken by distance.
pub fn sort_ccw_from(cells: &mut [Cell], start: Cell) {
    let base = DiamondAngle::of(start);
    cells.sort_by_cached_key(|&c| {
        let a = DiamondAngle::of(c);
        let a = if a < base { a.plus_turn() } else { a };
        (a, c.norm(), c)
    });
}

/// The eight lattice symmetries fixing the origin.
pub fn symmetries() -> [fn(Cell) -> Cell; 8] {
    [
        |c| c,
        |c| Cell::new(-c.y, c.x),
        |c| Cell::new(-c.x, -c.y),
        |c| Cell::new(c.y, -c.x),
        |c| Cell::new(c.x, -c.y),
        |c| Cell::new(-c.x, c.y),
        |c| Cell::new(c.y, c.x),
        |c| Cell::new(-c.y, -c.x),
    ]
}
