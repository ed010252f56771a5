//! A maze on which DSP needs about `H/2 · D` commands.
//!
//! A bottom highway carries `H + 1` pillars of height `h + 1`, spaced `w + 1`
//! apart, so every gap between pillars is a hole `w` wide. Above every hole
//! sits an arch: two legs of height `3h` rising from the pillar tops and a
//! roof joining them. Half-arches at both ends form dead ends. The red particle
//! starts at the far end of the left dead end and the green one at the top of
//! the first arch leg, on the same row.
//!
//! Red comes first in row-major order, so it follows. Each shortest path
//! from red to green goes over the arches (ties break towards `u`), and green
//! translates in lockstep, so red keeps chasing it for about one arch per
//! round until green gets stuck at the far dead end.

use super::GenError;
use crate::grid::{Cell, Polyomino};
use crate::instance::Instance;
use crate::sim::Configuration;

pub fn gen_dsp_adversarial(holes: u32, w: u32, h: u32) -> Result<(Instance, [Cell; 2]), GenError> {
    if holes < 2 || w < 3 || h < 1 {
        return Err(GenError::Dimensions(format!("need H >= 2, w >= 3, h >= 1; got H={holes}, w={w}, h={h}")));
    }
    let (hh, w, h) = (holes as i64, w as i64, h as i64);
    let period = w + 1;
    let base = h + 1;
    let top = base + 3 * h;
    let mut cells = Vec::new();
    cells.extend((0..=hh * period).map(|x| (x, 0)));
    for i in 0..=hh {
        cells.extend((1..=base).map(|y| (i * period, y)));
    }
    let mut arch = |a: i64, left: bool, right: bool| {
        let b = a + period;
        for y in base..=top {
            if left {
                cells.push((a + 1, y));
            }
            if right {
                cells.push((b - 1, y));
            }
        }
        cells.extend((a + 1..b).map(|x| (x, top)));
    };
    for i in 0..hh {
        arch(i * period, true, true);
    }
    arch(-period, false, true);
    arch(hh * period, true, false);
    cells.sort_unstable();
    cells.dedup();

    let (p, (ox, oy)) = Polyomino::from_cells(cells)?;
    let at = |(x, y): (i64, i64)| Cell::new((x - ox) as i32, (y - oy) as i32);
    let pair = [at((-period + 1, top)), at((1, top))];
    let conf = Configuration::from_cells(&p, &pair)?;
    let d = p.diameter();
    let inst = Instance::new(format!("dsp-adversarial-H{hh}-w{w}-h{h}"), p, conf)
        .with_meta("kind", "dsp-adversarial")
        .with_meta("H", hh)
        .with_meta("w", w)
        .with_meta("h", h)
        .with_meta("arch_height", 3 * h)
        .with_meta("dsp_lower_bound", hh * (6 * h + w) + 3)
        .with_meta("diameter_bound_formula", hh * w + 6 * h + 4)
        .with_meta("D", d)
        .with_meta("h_rounding", "h is taken as given; for h = c*w/6 round up");
    Ok((inst, pair))
}
