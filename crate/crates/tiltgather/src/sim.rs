//! Tilt semantics: every particle moves one cell in the commanded direction
//! unless that cell is blocked. Particles sharing a cell merge for good, so a
//! configuration is just a set of occupied cells.

use std::fmt;

use thiserror::Error;

use crate::grid::{Cell, GridError, Polyomino};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Command {
    U = 0,
    D = 1,
    L = 2,
    R = 3,
}

impl Command {
    /// Also the tie-break order wherever commands compete.
    pub const ALL: [Command; 4] = [Command::U, Command::D, Command::L, Command::R];

    pub fn delta(self) -> (i32, i32) {
        match self {
            Command::U => (0, 1),
            Command::D => (0, -1),
            Command::L => (-1, 0),
            Command::R => (1, 0),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Command::U => 'U',
            Command::D => 'D',
            Command::L => 'L',
            Command::R => 'R',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'U' => Some(Command::U),
            'D' => Some(Command::D),
            'L' => Some(Command::L),
            'R' => Some(Command::R),
            _ => None,
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SequenceError {
    #[error("position {pos}: invalid command character {ch:?}")]
    BadChar { pos: usize, ch: char },
}

/// Parses a sequence file body. Whitespace is ignored; letters are case-insensitive.
pub fn parse_sequence(text: &str) -> Result<Vec<Command>, SequenceError> {
    text.chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(pos, ch)| Command::from_char(ch).ok_or(SequenceError::BadChar { pos, ch }))
        .collect()
}

pub fn format_sequence(seq: &[Command]) -> String {
    seq.iter().map(|c| c.as_char()).collect()
}

/// A set of occupied cells, stored as sorted cell indices of its polyomino.
/// Index order is row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    occ: Vec<u32>,
}

impl Configuration {
    pub fn from_cells(p: &Polyomino, cells: &[Cell]) -> Result<Self, GridError> {
        let idx = cells
            .iter()
            .map(|&c| p.index_of(c).map(|i| i as u32).ok_or(GridError::NotFree(c)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_indices(idx))
    }

    pub fn from_indices(mut idx: Vec<u32>) -> Self {
        idx.sort_unstable();
        idx.dedup();
        Configuration { occ: idx }
    }

    /// Every free cell occupied.
    pub fn full(p: &Polyomino) -> Self {
        Configuration { occ: (0..p.n() as u32).collect() }
    }

    pub fn indices(&self) -> &[u32] {
        &self.occ
    }

    pub fn cells(&self, p: &Polyomino) -> Vec<Cell> {
        self.occ.iter().map(|&i| p.cell(i as usize)).collect()
    }

    pub fn len(&self) -> usize {
        self.occ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occ.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.occ.binary_search(&(i as u32)).is_ok()
    }

    pub fn is_gathered(&self) -> bool {
        self.occ.len() == 1
    }
}

pub fn step(p: &Polyomino, a: &Configuration, c: Command) -> Configuration {
    Configuration::from_indices(a.occ.iter().map(|&i| p.step_index(i as usize, c) as u32).collect())
}

/// Folds `step` over `seq`. With `record`, the trace holds the particle count
/// after every command.
pub fn apply(p: &Polyomino, a: &Configuration, seq: &[Command], record: bool) -> (Configuration, Option<Vec<usize>>) {
    let mut cur = a.clone();
    let mut trace = record.then(|| Vec::with_capacity(seq.len()));
    for &c in seq {
        cur = step(p, &cur, c);
        if let Some(t) = trace.as_mut() {
            t.push(cur.len());
        }
    }
    (cur, trace)
}

pub fn is_gathered(a: &Configuration) -> bool {
    a.is_gathered()
}
