//! Polyomino workspaces: free-cell geometry, BFS distances, corners and extrema.
//!
//! Coordinates put `x` to the right and `y` up. Text grids list the top row
//! first, so text row 0 is `y = height - 1`. Cells are indexed in row-major
//! order, i.e. sorted by `(y, x)`; every tie-break in the crate uses it.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::sim::Command;

pub const UNREACHABLE: u32 = u32::MAX;
const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

impl Cell {
    pub const fn new(x: i32, y: i32) -> Self {
        Cell { x, y }
    }

    pub fn offset(self, dx: i32, dy: i32) -> Self {
        Cell::new(self.x + dx, self.y + dy)
    }
}

/// Row-major: bottom row first, left to right within a row.
impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GridError {
    #[error("polyomino has no free cells")]
    Empty,
    #[error("grid row {row}: expected {expected} columns, found {found}")]
    RaggedRow { row: usize, expected: usize, found: usize },
    #[error("grid row {row}, column {col}: unexpected character {ch:?}")]
    BadChar { row: usize, col: usize, ch: char },
    #[error("free cells are not connected: {cell} unreachable from the first free cell")]
    Disconnected { cell: Cell },
    #[error("source set is empty")]
    EmptySources,
    #[error("cell {0} is not a free cell")]
    NotFree(Cell),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quadrant {
    NE,
    NW,
    SE,
    SW,
}

impl Quadrant {
    /// Tie-break order for automatic quadrant choice.
    pub const ALL: [Quadrant; 4] = [Quadrant::NE, Quadrant::NW, Quadrant::SE, Quadrant::SW];

    pub fn name(self) -> &'static str {
        match self {
            Quadrant::NE => "NE",
            Quadrant::NW => "NW",
            Quadrant::SE => "SE",
            Quadrant::SW => "SW",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "NE" => Some(Quadrant::NE),
            "NW" => Some(Quadrant::NW),
            "SE" => Some(Quadrant::SE),
            "SW" => Some(Quadrant::SW),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CornerType {
    NW,
    NE,
    SW,
    SE,
}

impl CornerType {
    /// Tie-break order for corner preprocessing.
    pub const ALL: [CornerType; 4] = [CornerType::NW, CornerType::NE, CornerType::SW, CornerType::SE];

    /// The horizontal and vertical command that push a particle into this corner type.
    pub fn commands(self) -> (Command, Command) {
        match self {
            CornerType::NW => (Command::L, Command::U),
            CornerType::NE => (Command::R, Command::U),
            CornerType::SW => (Command::L, Command::D),
            CornerType::SE => (Command::R, Command::D),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Corners {
    pub nw: Vec<Cell>,
    pub ne: Vec<Cell>,
    pub sw: Vec<Cell>,
    pub se: Vec<Cell>,
}

impl Corners {
    pub fn of(&self, t: CornerType) -> &[Cell] {
        match t {
            CornerType::NW => &self.nw,
            CornerType::NE => &self.ne,
            CornerType::SW => &self.sw,
            CornerType::SE => &self.se,
        }
    }

    /// Total convex corner count `k`.
    pub fn k(&self) -> usize {
        self.nw.len() + self.ne.len() + self.sw.len() + self.se.len()
    }
}

/// BFS distances from a source set, indexed by cell index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMap {
    pub sources: Vec<Cell>,
    pub dist: Vec<u32>,
}

impl DistanceMap {
    pub fn get(&self, p: &Polyomino, c: Cell) -> Option<u32> {
        p.index_of(c).map(|i| self.dist[i]).filter(|&d| d != UNREACHABLE)
    }

    pub fn max(&self) -> u32 {
        self.dist.iter().copied().filter(|&d| d != UNREACHABLE).max().unwrap_or(0)
    }
}

#[derive(Debug)]
pub struct Polyomino {
    width: u32,
    height: u32,
    free: Vec<bool>,
    cells: Vec<Cell>,
    index: Vec<u32>,
    moves: Vec<[u32; 4]>,
    corners: Corners,
    diameter: OnceLock<u32>,
}

impl Clone for Polyomino {
    fn clone(&self) -> Self {
        Polyomino {
            width: self.width,
            height: self.height,
            free: self.free.clone(),
            cells: self.cells.clone(),
            index: self.index.clone(),
            moves: self.moves.clone(),
            corners: self.corners.clone(),
            diameter: self.diameter.clone(),
        }
    }
}

impl PartialEq for Polyomino {
    fn eq(&self, other: &Self) -> bool {
        self.width == other.width && self.height == other.height && self.free == other.free
    }
}

impl Eq for Polyomino {}

impl Polyomino {
    /// Builds a polyomino from a row-major occupancy bitmap (`free[y * width + x]`).
    pub fn new(width: u32, height: u32, free: Vec<bool>) -> Result<Self, GridError> {
        assert_eq!(free.len(), (width * height) as usize, "bitmap size mismatch");
        let mut cells = Vec::new();
        let mut index = vec![NONE; free.len()];
        for y in 0..height as i32 {
            for x in 0..width as i32 {
                let g = (y as u32 * width + x as u32) as usize;
                if free[g] {
                    index[g] = cells.len() as u32;
                    cells.push(Cell::new(x, y));
                }
            }
        }
        if cells.is_empty() {
            return Err(GridError::Empty);
        }
        let grid_at = |c: Cell| -> u32 {
            if c.x < 0 || c.y < 0 || c.x >= width as i32 || c.y >= height as i32 {
                NONE
            } else {
                index[(c.y as u32 * width + c.x as u32) as usize]
            }
        };
        let moves: Vec<[u32; 4]> = cells
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                Command::ALL.map(|cmd| {
                    let (dx, dy) = cmd.delta();
                    match grid_at(c.offset(dx, dy)) {
                        NONE => i as u32,
                        j => j,
                    }
                })
            })
            .collect();
        let mut p = Polyomino {
            width,
            height,
            free,
            cells,
            index,
            moves,
            corners: Corners::default(),
            diameter: OnceLock::new(),
        };
        let d = p.bfs(0);
        if let Some(i) = d.iter().position(|&v| v == UNREACHABLE) {
            return Err(GridError::Disconnected { cell: p.cells[i] });
        }
        p.corners = p.compute_corners();
        Ok(p)
    }

    /// Parses text rows over `#` (blocked) and `.` (free), top row first.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self, GridError> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.as_ref().chars().count());
        if height == 0 || width == 0 {
            return Err(GridError::Empty);
        }
        let mut free = vec![false; width * height];
        for (row, text) in rows.iter().enumerate() {
            let text = text.as_ref();
            let found = text.chars().count();
            if found != width {
                return Err(GridError::RaggedRow { row, expected: width, found });
            }
            let y = height - 1 - row;
            for (col, ch) in text.chars().enumerate() {
                free[y * width + col] = match ch {
                    '.' => true,
                    '#' => false,
                    _ => return Err(GridError::BadChar { row, col, ch }),
                };
            }
        }
        Polyomino::new(width as u32, height as u32, free)
    }

    /// Builds the tightest polyomino containing `cells` (arbitrary integer coordinates).
    /// Returns it together with the offset that was subtracted from every input cell.
    pub fn from_cells<I: IntoIterator<Item = (i64, i64)>>(cells: I) -> Result<(Self, (i64, i64)), GridError> {
        let cells: Vec<(i64, i64)> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(GridError::Empty);
        }
        let minx = cells.iter().map(|c| c.0).min().unwrap();
        let miny = cells.iter().map(|c| c.1).min().unwrap();
        let maxx = cells.iter().map(|c| c.0).max().unwrap();
        let maxy = cells.iter().map(|c| c.1).max().unwrap();
        let (w, h) = ((maxx - minx + 1) as u32, (maxy - miny + 1) as u32);
        let mut free = vec![false; (w * h) as usize];
        for (x, y) in cells {
            free[((y - miny) as u32 * w + (x - minx) as u32) as usize] = true;
        }
        Ok((Polyomino::new(w, h, free)?, (minx, miny)))
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Number of free cells `n`.
    pub fn n(&self) -> usize {
        self.cells.len()
    }

    /// Free cells in row-major order; position in this slice is the cell index.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> Cell {
        self.cells[i]
    }

    pub fn index_of(&self, c: Cell) -> Option<usize> {
        if c.x < 0 || c.y < 0 || c.x >= self.width as i32 || c.y >= self.height as i32 {
            return None;
        }
        match self.index[(c.y as u32 * self.width + c.x as u32) as usize] {
            NONE => None,
            i => Some(i as usize),
        }
    }

    pub fn is_free(&self, c: Cell) -> bool {
        self.index_of(c).is_some()
    }

    /// Where a particle at cell index `i` ends up under `cmd` (itself if blocked).
    #[inline]
    pub fn step_index(&self, i: usize, cmd: Command) -> usize {
        self.moves[i][cmd as usize] as usize
    }

    /// Text rows, top row first.
    pub fn to_rows(&self) -> Vec<String> {
        (0..self.height)
            .rev()
            .map(|y| {
                (0..self.width)
                    .map(|x| if self.free[(y * self.width + x) as usize] { '.' } else { '#' })
                    .collect()
            })
            .collect()
    }

    /// Single-source BFS over cell indices.
    pub fn bfs(&self, src: usize) -> Vec<u32> {
        self.bfs_multi(&[src])
    }

    fn bfs_multi(&self, srcs: &[usize]) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.n()];
        let mut queue = VecDeque::with_capacity(self.n());
        for &s in srcs {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(i) = queue.pop_front() {
            let next = dist[i] + 1;
            for &j in &self.moves[i] {
                let j = j as usize;
                if dist[j] == UNREACHABLE {
                    dist[j] = next;
                    queue.push_back(j);
                }
            }
        }
        dist
    }

    pub fn distance_map(&self, sources: &[Cell]) -> Result<DistanceMap, GridError> {
        if sources.is_empty() {
            return Err(GridError::EmptySources);
        }
        let idx = sources
            .iter()
            .map(|&c| self.index_of(c).ok_or(GridError::NotFree(c)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DistanceMap { sources: sources.to_vec(), dist: self.bfs_multi(&idx) })
    }

    /// Shortest-path distance between two free cells.
    pub fn dist(&self, a: Cell, b: Cell) -> Result<u32, GridError> {
        let ia = self.index_of(a).ok_or(GridError::NotFree(a))?;
        let ib = self.index_of(b).ok_or(GridError::NotFree(b))?;
        Ok(self.bfs(ia)[ib])
    }

    /// Exact diameter: BFS from every free cell. Cached.
    pub fn diameter(&self) -> u32 {
        *self.diameter.get_or_init(|| {
            (0..self.n()).map(|i| self.bfs(i).into_iter().max().unwrap_or(0)).max().unwrap_or(0)
        })
    }

    /// Double-sweep estimate: the eccentricity of a cell farthest from cell 0.
    /// A lower bound on the diameter and at least half of it.
    pub fn diameter_fast(&self) -> u32 {
        let d0 = self.bfs(0);
        let far = (0..self.n()).max_by_key(|&i| (d0[i], std::cmp::Reverse(i))).unwrap();
        self.bfs(far).into_iter().max().unwrap_or(0)
    }

    pub fn corners(&self) -> &Corners {
        &self.corners
    }

    fn compute_corners(&self) -> Corners {
        let mut out = Corners::default();
        for &c in &self.cells {
            let blocked = |dx, dy| !self.is_free(c.offset(dx, dy));
            let (l, r, u, d) = (blocked(-1, 0), blocked(1, 0), blocked(0, 1), blocked(0, -1));
            if l && u {
                out.nw.push(c);
            }
            if r && u {
                out.ne.push(c);
            }
            if l && d {
                out.sw.push(c);
            }
            if r && d {
                out.se.push(c);
            }
        }
        out
    }

    /// For NE: the cell with maximal y, ties by maximal x. Others mirror it.
    pub fn extreme_pixel(&self, q: Quadrant) -> Cell {
        let key = |c: &&Cell| match q {
            Quadrant::NE => (c.y, c.x),
            Quadrant::NW => (c.y, -c.x),
            Quadrant::SE => (-c.y, c.x),
            Quadrant::SW => (-c.y, -c.x),
        };
        *self.cells.iter().max_by_key(key).unwrap()
    }

    /// Counts holes: 8-connected components of blocked cells that cannot reach
    /// the outside of the bounding box. Eight-connectivity for the background
    /// pairs with four-connectivity for free cells, so two free cells touching
    /// only at a corner do not enclose anything.
    pub fn hole_count(&self) -> usize {
        let (w, h) = (self.width as i32 + 2, self.height as i32 + 2);
        let blocked = |x: i32, y: i32| -> bool {
            x < 0 || y < 0 || x >= w || y >= h || !self.is_free(Cell::new(x - 1, y - 1))
        };
        let mut seen = vec![false; (w * h) as usize];
        let mut components = 0;
        for sy in 0..h {
            for sx in 0..w {
                if !blocked(sx, sy) || seen[(sy * w + sx) as usize] {
                    continue;
                }
                components += 1;
                let mut stack = vec![(sx, sy)];
                seen[(sy * w + sx) as usize] = true;
                while let Some((x, y)) = stack.pop() {
                    for dy in -1..=1 {
                        for dx in -1..=1 {
                            let (nx, ny) = (x + dx, y + dy);
                            if nx < 0 || ny < 0 || nx >= w || ny >= h {
                                continue;
                            }
                            let g = (ny * w + nx) as usize;
                            if blocked(nx, ny) && !seen[g] {
                                seen[g] = true;
                                stack.push((nx, ny));
                            }
                        }
                    }
                }
            }
        }
        // The padded frame is one component; everything else is enclosed.
        components - 1
    }
}
