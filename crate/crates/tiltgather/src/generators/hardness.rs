//! The 3SAT reduction. Layout, all corridors one cell wide:
//!
//! * Two identical variable blocks flank the instance. Each is a vertical
//!   column with one ring per variable: at the variable row the column splits
//!   into a left and a right branch of half-width `k_i`, which drop `m` rows
//!   and rejoin. Walking the ring costs `k_i` sideways, `m` down, `k_i` back.
//! * One clause gadget per clause between the blocks: a vertical channel
//!   with, at the variable row of `x_i`, a left arm (positive literal) or a
//!   right arm (negative literal) of length `k_i`. Each arm ends in a shaft
//!   straight down to the bottom row. The channel itself stops two rows above
//!   the bottom row and only reaches it through a sideways exit arm.
//! * The bottom row joins the two block exits and every clause gadget.
//!
//! Half-widths shrink by two per variable, so a shaft never meets an arm of a
//! later variable. Particles sit on the top cell of every block and gadget;
//! the two block particles are the red ones, at distance `D`.
//!
//! The certificate for an assignment walks the red particles down their
//! blocks, turning left at the ring of a true variable and right at a false
//! one, then plays `l^b`. A clause particle follows in lockstep and drops into
//! the first arm whose literal is true; with none it gets stuck in its channel.

use std::collections::{BTreeMap, BTreeSet};

use super::{CnfFormula, GenError};
use crate::grid::{Cell, Polyomino};
use crate::instance::Instance;
use crate::sim::{Command, Configuration};

/// Rows between the top row and the first variable row.
const LEAD: i64 = 2;
/// Height of each ring.
const RING: i64 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HardnessMeta {
    /// Diameter `D`; equals the red-particle distance.
    pub diameter: u32,
    /// Length of the bottom row, counted in moves end to end.
    pub b: u32,
    /// `(D + b) / 2`.
    pub ell: u32,
    pub red: [Cell; 2],
    pub variable_row_ys: Vec<i32>,
    pub half_widths: Vec<u32>,
    pub lead: u32,
    pub ring_height: u32,
}

impl HardnessMeta {
    pub fn to_meta(&self) -> BTreeMap<String, String> {
        let join = |v: &mut dyn Iterator<Item = String>| v.collect::<Vec<_>>().join(",");
        BTreeMap::from([
            ("kind".into(), "hardness".into()),
            ("D".into(), self.diameter.to_string()),
            ("b".into(), self.b.to_string()),
            ("ell".into(), self.ell.to_string()),
            ("red".into(), format!("{},{};{},{}", self.red[0].x, self.red[0].y, self.red[1].x, self.red[1].y)),
            ("variable_rows".into(), join(&mut self.variable_row_ys.iter().map(i32::to_string))),
            ("half_widths".into(), join(&mut self.half_widths.iter().map(u32::to_string))),
            ("lead".into(), self.lead.to_string()),
            ("ring_height".into(), self.ring_height.to_string()),
            ("corridor_width".into(), "1".into()),
        ])
    }

    pub fn from_meta(meta: &BTreeMap<String, String>) -> Result<Self, GenError> {
        fn get<'a>(m: &'a BTreeMap<String, String>, k: &str) -> Result<&'a str, GenError> {
            m.get(k).map(String::as_str).ok_or_else(|| GenError::Meta(k.into()))
        }
        fn num<T: std::str::FromStr>(s: &str, k: &str) -> Result<T, GenError> {
            s.trim().parse().map_err(|_| GenError::Meta(k.into()))
        }
        fn list<T: std::str::FromStr>(s: &str, k: &str) -> Result<Vec<T>, GenError> {
            s.split(',').map(|x| num(x, k)).collect()
        }
        if get(meta, "kind")? != "hardness" {
            return Err(GenError::Meta("kind".into()));
        }
        let red: Vec<i32> = get(meta, "red")?.split(';').flat_map(|p| p.split(',')).map(|x| num(x, "red")).collect::<Result<_, _>>()?;
        if red.len() != 4 {
            return Err(GenError::Meta("red".into()));
        }
        let out = HardnessMeta {
            diameter: num(get(meta, "D")?, "D")?,
            b: num(get(meta, "b")?, "b")?,
            ell: num(get(meta, "ell")?, "ell")?,
            red: [Cell::new(red[0], red[1]), Cell::new(red[2], red[3])],
            variable_row_ys: list(get(meta, "variable_rows")?, "variable_rows")?,
            half_widths: list(get(meta, "half_widths")?, "half_widths")?,
            lead: num(get(meta, "lead")?, "lead")?,
            ring_height: num(get(meta, "ring_height")?, "ring_height")?,
        };
        if out.half_widths.len() != out.variable_row_ys.len() || out.half_widths.is_empty() {
            return Err(GenError::Meta("half_widths".into()));
        }
        Ok(out)
    }
}

pub fn gen_hardness(cnf: &CnfFormula) -> Result<(Instance, HardnessMeta), GenError> {
    let cnf = CnfFormula::new(cnf.variable_count, cnf.clauses.clone())?;
    let nv = cnf.variable_count;
    let k: Vec<i64> = (0..nv).map(|i| 2 * (nv - i) as i64 + 1).collect();
    let k1 = k[0];
    let span = 2 * k1 + 2;
    let cx_l = k1;
    let cx_r = cx_l + (cnf.clauses.len() as i64 + 1) * span;
    let ytop = 0i64;
    let ys: Vec<i64> = (0..nv as i64).map(|i| ytop - LEAD - i * (RING + 2)).collect();
    let yb = ys[nv - 1] - RING - 3;

    let mut cells: BTreeSet<(i64, i64)> = BTreeSet::new();
    for cx in [cx_l, cx_r] {
        for y in yb..=ytop {
            if !ys.iter().any(|&yi| yi - RING < y && y < yi) {
                cells.insert((cx, y));
            }
        }
        for (i, &yi) in ys.iter().enumerate() {
            for x in cx - k[i]..=cx + k[i] {
                cells.insert((x, yi));
                cells.insert((x, yi - RING));
            }
            for y in yi - RING..=yi {
                cells.insert((cx - k[i], y));
                cells.insert((cx + k[i], y));
            }
        }
    }
    for x in cx_l..=cx_r {
        cells.insert((x, yb));
    }
    let mut tops = vec![(cx_l, ytop), (cx_r, ytop)];
    for (j, clause) in cnf.clauses.iter().enumerate() {
        let cx = cx_l + (j as i64 + 1) * span;
        tops.push((cx, ytop));
        for y in yb + 2..=ytop {
            cells.insert((cx, y));
        }
        cells.insert((cx + 1, yb + 2));
        cells.insert((cx + 1, yb + 1));
        for &lit in clause {
            let i = lit.unsigned_abs() as usize - 1;
            let dir = if lit > 0 { -1 } else { 1 };
            for d in 1..=k[i] {
                cells.insert((cx + dir * d, ys[i]));
            }
            for y in yb..ys[i] {
                cells.insert((cx + dir * k[i], y));
            }
        }
    }

    let (p, (ox, oy)) = Polyomino::from_cells(cells)?;
    let at = |(x, y): (i64, i64)| Cell::new((x - ox) as i32, (y - oy) as i32);
    let red = [at(tops[0]), at(tops[1])];
    let particles = Configuration::from_cells(&p, &tops.iter().map(|&t| at(t)).collect::<Vec<_>>())?;
    let diameter = p.diameter();
    let b = (cx_r - cx_l) as u32;
    let meta = HardnessMeta {
        diameter,
        b,
        ell: (diameter + b) / 2,
        red,
        variable_row_ys: ys.iter().map(|&y| (y - oy) as i32).collect(),
        half_widths: k.iter().map(|&v| v as u32).collect(),
        lead: LEAD as u32,
        ring_height: RING as u32,
    };
    let name = format!("hardness-{}v-{}c", nv, cnf.clauses.len());
    let mut inst = Instance::new(name, p, particles);
    inst.meta = meta.to_meta();
    let formula =
        cnf.clauses.iter().map(|c| c.iter().map(i32::to_string).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>();
    inst.meta.insert("formula".into(), formula.join(" | "));
    Ok((inst, meta))
}

/// The certificate of an assignment: through every ring (left first when the
/// variable is true), down to the bottom row, then `l^b`. Length is `ell`.
pub fn assignment_sequence(meta: &HardnessMeta, assignment: &[bool]) -> Result<Vec<Command>, GenError> {
    let n = meta.half_widths.len();
    if assignment.len() != n {
        return Err(GenError::Arity { expected: n, got: assignment.len() });
    }
    let mut seq = vec![Command::D; meta.lead as usize];
    for (i, (&k, &value)) in meta.half_widths.iter().zip(assignment).enumerate() {
        let (first, back) = if value { (Command::L, Command::R) } else { (Command::R, Command::L) };
        seq.extend(std::iter::repeat_n(first, k as usize));
        seq.extend(std::iter::repeat_n(Command::D, meta.ring_height as usize));
        seq.extend(std::iter::repeat_n(back, k as usize));
        // Two rows to the next ring; three below the last one.
        seq.extend(std::iter::repeat_n(Command::D, if i + 1 < n { 2 } else { 3 }));
    }
    seq.extend(std::iter::repeat_n(Command::L, meta.b as usize));
    Ok(seq)
}
