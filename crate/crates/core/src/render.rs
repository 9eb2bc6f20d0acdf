//! ASCII and SVG pictures of a trace:
//! burned cells carry the turn they caught fire, protected cells the turn
//! they were placed.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::lattice::Cell;
use crate::trace::Trace;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub min_x: i32,
    pub max_x: i32,
    pub min_y: i32,
    pub max_y: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("cell {0} lies outside the bounds")]
    BoundsTooSmall(Cell),
    #[error("cell size {0}px is below the minimum of 8")]
    CellTooSmall(u32),
}

impl Bounds {
    /// Smallest box holding the ignition and every touched cell.
    pub fn covering(trace: &Trace) -> Self {
        let mut b = Bounds { min_x: trace.ignition.x, max_x: trace.ignition.x, min_y: trace.ignition.y, max_y: trace.ignition.y };
        for c in marks(trace).keys() {
            b.min_x = b.min_x.min(c.x);
            b.max_x = b.max_x.max(c.x);
            b.min_y = b.min_y.min(c.y);
            b.max_y = b.max_y.max(c.y);
        }
        b
    }

    pub fn contains(&self, c: Cell) -> bool {
        (self.min_x..=self.max_x).contains(&c.x) && (self.min_y..=self.max_y).contains(&c.y)
    }

    fn width(&self) -> u32 {
        (self.max_x - self.min_x + 1) as u32
    }

    fn height(&self) -> u32 {
        (self.max_y - self.min_y + 1) as u32
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mark {
    Burned(u32),
    Protected(u32),
}

fn marks(trace: &Trace) -> BTreeMap<Cell, Mark> {
    let mut out = BTreeMap::new();
    for r in &trace.records {
        for &c in &r.placed {
            out.insert(c, Mark::Protected(r.turn));
        }
        for &c in &r.burned_new {
            out.insert(c, Mark::Burned(r.turn));
        }
    }
    out
}

fn check(trace: &Trace, marks: &BTreeMap<Cell, Mark>, bounds: &Bounds) -> Result<(), RenderError> {
    match std::iter::once(&trace.ignition).chain(marks.keys()).find(|&&c| !bounds.contains(c)) {
        Some(&c) => Err(RenderError::BoundsTooSmall(c)),
        None => Ok(()),
    }
}

/// Fixed-width grid, top row is `max_y`: `.` untouched, `*` ignition,
/// `bT` burned at turn `T`, `pT` protected at turn `T`.
pub fn render_ascii(trace: &Trace, bounds: &Bounds) -> Result<String, RenderError> {
    let marks = marks(trace);
    check(trace, &marks, bounds)?;
    let token = |c: Cell| -> String {
        if c == trace.ignition {
            return "*".into();
        }
        match marks.get(&c) {
            Some(Mark::Burned(t)) => format!("b{t}"),
            Some(Mark::Protected(t)) => format!("p{t}"),
            None => ".".into(),
        }
    };
    let width = marks.keys().map(|&c| token(c).len()).max().unwrap_or(1);
    let mut out = String::new();
    for y in (bounds.min_y..=bounds.max_y).rev() {
        let row: Vec<String> = (bounds.min_x..=bounds.max_x).map(|x| format!("{:>width$}", token(Cell::new(x, y)))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    Ok(out)
}

const BURNED_FILL: &str = "#e05a4f";
const PROTECTED_FILL: &str = "#4caf50";

/// One `class="cell"` square per touched cell with its turn centred on it,
/// the ignition as a circle, and a legend underneath. The y axis points up.
pub fn render_svg(trace: &Trace, bounds: &Bounds, cell_px: u32) -> Result<String, RenderError> {
    if cell_px < 8 {
        return Err(RenderError::CellTooSmall(cell_px));
    }
    let marks = marks(trace);
    let px = cell_px as i64;
    let legend_h = 2 * px + 8;
    let mut out = String::new();
    let (w, grid_h) = if trace.records.is_empty() {
        (12 * px, 0)
    } else {
        check(trace, &marks, bounds)?;
        ((bounds.width() as i64 * px).max(12 * px), bounds.height() as i64 * px)
    };
    let h = grid_h + legend_h;
    writeln!(
        out,
        "<!-- cell (x,y) is the square with top-left corner ({px}*(x - {}), {px}*({} - y)); y grows upward -->",
        bounds.min_x, bounds.max_y
    )
    .unwrap();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#).unwrap();
    let font = px / 2;
    if !trace.records.is_empty() {
        for (c, m) in &marks {
            let x = (c.x - bounds.min_x) as i64 * px;
            let y = (bounds.max_y - c.y) as i64 * px;
            let (fill, turn) = match m {
                Mark::Burned(t) => (BURNED_FILL, t),
                Mark::Protected(t) => (PROTECTED_FILL, t),
            };
            writeln!(
                out,
                r#"<rect class="cell" x="{x}" y="{y}" width="{px}" height="{px}" fill="{fill}" stroke="black"/><text x="{}" y="{}" font-size="{font}" text-anchor="middle" dominant-baseline="central">{turn}</text>"#,
                x + px / 2,
                y + px / 2
            )
            .unwrap();
        }
        let cx = (trace.ignition.x - bounds.min_x) as i64 * px + px / 2;
        let cy = (bounds.max_y - trace.ignition.y) as i64 * px + px / 2;
        writeln!(out, r#"<circle class="ignition" cx="{cx}" cy="{cy}" r="{}" fill="black"/>"#, px / 3).unwrap();
    }
    let ly = grid_h + 4;
    for (i, (fill, label)) in [(BURNED_FILL, "Node burned at time i"), (PROTECTED_FILL, "Node protected at time i")]
        .into_iter()
        .enumerate()
    {
        let y = ly + i as i64 * px;
        writeln!(
            out,
            r#"<rect class="legend" x="4" y="{y}" width="{}" height="{}" fill="{fill}" stroke="black"/><text x="{}" y="{}" font-size="{font}" dominant-baseline="central">{label}</text>"#,
            px - 4,
            px - 4,
            px + 8,
            y + px / 2 - 2
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}
