//! Plain PGM (P2) frames: blocked 0, free 200, occupied 255, top row first.

use crate::grid::Polyomino;
use crate::sim::{step, Command, Configuration};

pub const BLOCKED: u8 = 0;
pub const FREE: u8 = 200;
pub const OCCUPIED: u8 = 255;

pub fn frame(p: &Polyomino, a: &Configuration) -> String {
    let (w, h) = (p.width() as usize, p.height() as usize);
    let mut px = vec![BLOCKED; w * h];
    for &c in p.cells() {
        px[c.y as usize * w + c.x as usize] = FREE;
    }
    for c in a.cells(p) {
        px[c.y as usize * w + c.x as usize] = OCCUPIED;
    }
    let mut out = format!("P2\n{w} {h}\n255\n");
    for y in (0..h).rev() {
        let row: Vec<String> = px[y * w..(y + 1) * w].iter().map(u8::to_string).collect();
        out += &row.join(" ");
        out.push('\n');
    }
    out
}

/// One frame for every `every`-th state, starting with the initial one:
/// `⌈(len + 1) / every⌉` frames.
pub fn frames(p: &Polyomino, a: &Configuration, seq: &[Command], every: usize) -> Vec<String> {
    assert!(every > 0, "every must be positive");
    let mut out = vec![frame(p, a)];
    let mut cur = a.clone();
    for (i, &c) in seq.iter().enumerate() {
        cur = step(p, &cur, c);
        if (i + 1) % every == 0 {
            out.push(frame(p, &cur));
        }
    }
    out
}

pub fn frame_name(i: usize) -> String {
    format!("frame_{i:06}.pgm")
}
