//! Unit-height rectangle decomposition: every maximal horizontal run of free
//! cells is one rectangle, and two runs in adjacent rows touch (an edge of
//! the contact graph) when they share at least one column. Corner contacts do
//! not count. The polyomino is simple exactly when this graph is a tree.

use std::collections::VecDeque;

use thiserror::Error;

use crate::grid::Polyomino;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecompError {
    #[error("contact graph is not a tree")]
    NotTree,
    #[error("rectangle {0} out of range")]
    OutOfRange(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rect {
    pub y: i32,
    pub x0: i32,
    /// Inclusive.
    pub x1: i32,
}

#[derive(Clone, Debug)]
pub struct RectDecomposition {
    /// Row-major: by row, then by left edge.
    pub rects: Vec<Rect>,
    pub contact: Vec<Vec<usize>>,
    /// Rectangle of each cell, by cell index.
    pub cell_to_rect: Vec<usize>,
}

impl RectDecomposition {
    pub fn edge_count(&self) -> usize {
        self.contact.iter().map(Vec::len).sum::<usize>() / 2
    }
}

pub fn decompose(p: &Polyomino) -> RectDecomposition {
    let mut rects: Vec<Rect> = Vec::new();
    let mut cell_to_rect = vec![0; p.n()];
    for (i, &c) in p.cells().iter().enumerate() {
        match rects.last_mut() {
            Some(r) if r.y == c.y && r.x1 + 1 == c.x => r.x1 = c.x,
            _ => rects.push(Rect { y: c.y, x0: c.x, x1: c.x }),
        }
        cell_to_rect[i] = rects.len() - 1;
    }
    let mut contact = vec![Vec::new(); rects.len()];
    // Runs of one row are sorted by x, so a two-pointer sweep finds overlaps.
    let mut row_start = 0;
    while row_start < rects.len() {
        let y = rects[row_start].y;
        let row_end = rects[row_start..].iter().position(|r| r.y != y).map_or(rects.len(), |o| row_start + o);
        if row_end < rects.len() && rects[row_end].y == y + 1 {
            let next_end = rects[row_end..].iter().position(|r| r.y != y + 1).map_or(rects.len(), |o| row_end + o);
            let (mut a, mut b) = (row_start, row_end);
            while a < row_end && b < next_end {
                let (ra, rb) = (rects[a], rects[b]);
                if ra.x0.max(rb.x0) <= ra.x1.min(rb.x1) {
                    contact[a].push(b);
                    contact[b].push(a);
                }
                if ra.x1 < rb.x1 {
                    a += 1;
                } else {
                    b += 1;
                }
            }
        }
        row_start = row_end;
    }
    for adj in &mut contact {
        adj.sort_unstable();
    }
    RectDecomposition { rects, contact, cell_to_rect }
}

/// Connected and acyclic contact graph. Connectivity always holds for a valid
/// polyomino, so this is `edges == rects - 1`.
pub fn is_simple(p: &Polyomino) -> bool {
    let d = decompose(p);
    d.edge_count() + 1 == d.rects.len()
}

/// The unique path between two rectangles of a tree decomposition.
pub fn tree_path(dec: &RectDecomposition, a: usize, b: usize) -> Result<Vec<usize>, DecompError> {
    let n = dec.rects.len();
    for r in [a, b] {
        if r >= n {
            return Err(DecompError::OutOfRange(r));
        }
    }
    if dec.edge_count() + 1 != n {
        return Err(DecompError::NotTree);
    }
    let mut parent = vec![usize::MAX; n];
    parent[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(r) = queue.pop_front() {
        for &s in &dec.contact[r] {
            if parent[s] == usize::MAX {
                parent[s] = r;
                queue.push_back(s);
            }
        }
    }
    if parent[b] == usize::MAX {
        return Err(DecompError::NotTree);
    }
    let mut path = vec![b];
    while *path.last().unwrap() != a {
        path.push(parent[*path.last().unwrap()]);
    }
    path.reverse();
    Ok(path)
}

/// A tree decomposition rooted at rectangle 0, for repeated next-hop queries.
#[derive(Clone, Debug)]
pub struct RectTree {
    parent: Vec<usize>,
    depth: Vec<u32>,
}

impl RectTree {
    pub fn new(dec: &RectDecomposition) -> Result<Self, DecompError> {
        let n = dec.rects.len();
        if dec.edge_count() + 1 != n {
            return Err(DecompError::NotTree);
        }
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0; n];
        parent[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(r) = queue.pop_front() {
            for &s in &dec.contact[r] {
                if parent[s] == usize::MAX {
                    parent[s] = r;
                    depth[s] = depth[r] + 1;
                    queue.push_back(s);
                }
            }
        }
        if parent.contains(&usize::MAX) {
            return Err(DecompError::NotTree);
        }
        Ok(RectTree { parent, depth })
    }

    /// The neighbor of `a` on the tree path to `b`; `None` when `a == b`.
    pub fn next_hop(&self, a: usize, b: usize) -> Option<usize> {
        if a == b {
            return None;
        }
        let mut x = b;
        while self.depth[x] > self.depth[a] + 1 {
            x = self.parent[x];
        }
        if self.depth[x] == self.depth[a] + 1 && self.parent[x] == a {
            Some(x)
        } else {
            Some(self.parent[a])
        }
    }
}
