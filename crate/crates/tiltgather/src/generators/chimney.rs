//! The chimney family: one cycle of `2D` cells. The upper half is a row of
//! `S = 2h + 4` chimneys (up `h`, across one, down `h`, one valley cell);
//! the lower half drops `S` cells at both ends and runs back along a bottom
//! row. Both halves have length `D = (h + 5)·S`, so the two end valleys are
//! at distance `D`. The particles sit in valleys with `(h - 1)/2` chimneys
//! outside each of them.

use super::GenError;
use crate::grid::{Cell, Polyomino};
use crate::instance::Instance;
use crate::sim::Configuration;

pub fn gen_chimney(h: u32) -> Result<(Instance, [Cell; 2]), GenError> {
    if h % 2 == 0 {
        return Err(GenError::ChimneyHeight(h));
    }
    let h = h as i64;
    let s = 2 * h + 4;
    let mut upper = vec![(0i64, 0i64)];
    let mut x = 1;
    for _ in 0..s {
        upper.extend((0..=h).map(|y| (x, y)));
        upper.push((x + 1, h));
        upper.extend((0..=h).rev().map(|y| (x + 2, y)));
        upper.push((x + 3, 0));
        x += 4;
    }
    let xr = x - 1;
    let mut cells = upper.clone();
    for y in 1..=s {
        cells.push((0, -y));
        cells.push((xr, -y));
    }
    cells.extend((1..xr).map(|x| (x, -s)));

    let a = ((h - 1) / 2) as usize;
    let per = (2 * h + 4) as usize;
    let ends = [upper[a * per], upper[(s as usize - a) * per]];
    let (p, (ox, oy)) = Polyomino::from_cells(cells)?;
    let at = |(x, y): (i64, i64)| Cell::new((x - ox) as i32, (y - oy) as i32);
    let pair = [at(ends[0]), at(ends[1])];
    let conf = Configuration::from_cells(&p, &pair)?;
    let inst = Instance::new(format!("chimney-h{h}"), p, conf)
        .with_meta("kind", "chimney")
        .with_meta("h", h)
        .with_meta("S", s)
        .with_meta("D", (h + 5) * s);
    Ok((inst, pair))
}
