//! Seeded random workspaces and particle configurations.
//!
//! Simple mazes grow from one cell, adding only cells whose addition keeps
//! the shape hole-free (a topologically simple point), which amounts to
//! carving a random spanning structure that never closes a loop around a
//! blocked cell. Holey mazes start from the full box and remove random cells,
//! skipping any removal that would disconnect the workspace.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GenError;
use crate::grid::Polyomino;
use crate::instance::Instance;
use crate::sim::Configuration;

/// Ring around a cell in counter-clockwise order starting to the right.
const RING: [(i32, i32); 8] = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];

struct Bitmap {
    w: i32,
    h: i32,
    free: Vec<bool>,
}

impl Bitmap {
    fn get(&self, x: i32, y: i32) -> bool {
        x >= 0 && y >= 0 && x < self.w && y < self.h && self.free[(y * self.w + x) as usize]
    }

    /// Yokoi's 4-connectivity number of `(x, y)` over its free ring.
    /// Exactly 1 means toggling the cell changes no topology.
    fn connectivity(&self, x: i32, y: i32) -> i32 {
        let r: Vec<i32> = RING.iter().map(|&(dx, dy)| self.get(x + dx, y + dy) as i32).collect();
        (0..4).map(|i| 2 * i).map(|k| r[k] - r[k] * r[(k + 1) % 8] * r[(k + 2) % 8]).sum()
    }

    fn connected(&self) -> bool {
        let Some(start) = self.free.iter().position(|&f| f) else { return false };
        let mut seen = vec![false; self.free.len()];
        seen[start] = true;
        let mut stack = vec![start as i32];
        let mut count = 1;
        while let Some(g) = stack.pop() {
            let (x, y) = (g % self.w, g / self.w);
            for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                let (nx, ny) = (x + dx, y + dy);
                if self.get(nx, ny) {
                    let ng = (ny * self.w + nx) as usize;
                    if !seen[ng] {
                        seen[ng] = true;
                        count += 1;
                        stack.push(ng as i32);
                    }
                }
            }
        }
        count == self.free.iter().filter(|&&f| f).count()
    }
}

pub fn gen_random_polyomino(width: u32, height: u32, fill: f64, holes: bool, seed: u64) -> Result<Instance, GenError> {
    if width < 2 || height < 2 {
        return Err(GenError::Dimensions(format!("box must be at least 2x2, got {width}x{height}")));
    }
    if !(fill > 0.0 && fill <= 1.0) {
        return Err(GenError::InfeasibleFill(fill));
    }
    let total = (width * height) as usize;
    let target = ((fill * total as f64).round() as usize).clamp(1, total);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (w, h) = (width as i32, height as i32);
    let bm = if holes { carve_holey(w, h, target, &mut rng) } else { grow_simple(w, h, target, &mut rng) }
        .ok_or(GenError::InfeasibleFill(fill))?;
    let p = Polyomino::new(width, height, bm.free)?;
    let kind = if holes { "holey" } else { "simple" };
    Ok(Instance::new(format!("random-{kind}-{width}x{height}-s{seed}"), p, Configuration::from_indices(Vec::new()))
        .with_meta("kind", format!("random-{kind}"))
        .with_meta("fill", fill)
        .with_meta("seed", seed))
}

fn grow_simple(w: i32, h: i32, target: usize, rng: &mut ChaCha8Rng) -> Option<Bitmap> {
    let mut bm = Bitmap { w, h, free: vec![false; (w * h) as usize] };
    let mut queued = vec![false; bm.free.len()];
    let start = rng.gen_range(0..bm.free.len());
    let mut frontier = Vec::new();
    let mut count = 0;
    let add = |bm: &mut Bitmap, g: usize, frontier: &mut Vec<usize>, queued: &mut Vec<bool>| {
        bm.free[g] = true;
        let (x, y) = (g as i32 % w, g as i32 / w);
        for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let (nx, ny) = (x + dx, y + dy);
            if nx >= 0 && ny >= 0 && nx < w && ny < h {
                let ng = (ny * w + nx) as usize;
                if !bm.free[ng] && !queued[ng] {
                    queued[ng] = true;
                    frontier.push(ng);
                }
            }
        }
    };
    add(&mut bm, start, &mut frontier, &mut queued);
    count += 1;
    while count < target {
        if frontier.is_empty() {
            return None;
        }
        let g = frontier.swap_remove(rng.gen_range(0..frontier.len()));
        queued[g] = false;
        if bm.connectivity(g as i32 % w, g as i32 / w) == 1 {
            add(&mut bm, g, &mut frontier, &mut queued);
            count += 1;
        }
    }
    Some(bm)
}

fn carve_holey(w: i32, h: i32, target: usize, rng: &mut ChaCha8Rng) -> Option<Bitmap> {
    let mut bm = Bitmap { w, h, free: vec![true; (w * h) as usize] };
    let mut order: Vec<usize> = (0..bm.free.len()).collect();
    order.shuffle(rng);
    let mut count = bm.free.len();
    for g in order {
        if count <= target {
            break;
        }
        let (x, y) = (g as i32 % w, g as i32 / w);
        // A single free arc around the cell cannot be split by removing it.
        let locally_safe = bm.connectivity(x, y) <= 1;
        bm.free[g] = false;
        if count > 1 && (locally_safe || bm.connected()) {
            count -= 1;
        } else {
            bm.free[g] = true;
        }
    }
    (count == target).then_some(bm)
}

/// `count` distinct free cells chosen uniformly, capped at `n`.
pub fn gen_random_config(p: &Polyomino, count: usize, seed: u64) -> Configuration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = p.n();
    let picked = rand::seq::index::sample(&mut rng, n, count.min(n));
    Configuration::from_indices(picked.into_iter().map(|i| i as u32).collect())
}
