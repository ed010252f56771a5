#![allow(dead_code)]

use std::collections::HashSet;

use tiltgather::{Cell, Command, Configuration, Polyomino};

pub fn poly(rows: &[&str]) -> Polyomino {
    Polyomino::from_rows(rows).unwrap()
}

pub fn row3() -> Polyomino {
    poly(&["..."])
}

pub fn square(w: usize, h: usize) -> Polyomino {
    let row = ".".repeat(w);
    Polyomino::from_rows(&vec![row; h]).unwrap()
}

pub fn plus() -> Polyomino {
    poly(&["#.#", "...", "#.#"])
}

pub fn l_tromino() -> Polyomino {
    poly(&["#.", ".."])
}

pub fn ring() -> Polyomino {
    poly(&["...", ".#.", "..."])
}

pub fn conf(p: &Polyomino, cells: &[(i32, i32)]) -> Configuration {
    let cells: Vec<Cell> = cells.iter().map(|&(x, y)| Cell::new(x, y)).collect();
    Configuration::from_cells(p, &cells).unwrap()
}

pub fn pts(p: &Polyomino, a: &Configuration) -> Vec<(i32, i32)> {
    a.cells(p).into_iter().map(|c| (c.x, c.y)).collect()
}

/// Per-particle tilt on plain coordinates, sharing nothing with the library.
pub fn naive_step(free: &HashSet<(i32, i32)>, occ: &HashSet<(i32, i32)>, c: Command) -> HashSet<(i32, i32)> {
    let (dx, dy) = match c {
        Command::U => (0, 1),
        Command::D => (0, -1),
        Command::L => (-1, 0),
        Command::R => (1, 0),
    };
    occ.iter()
        .map(|&(x, y)| if free.contains(&(x + dx, y + dy)) { (x + dx, y + dy) } else { (x, y) })
        .collect()
}

pub fn free_set(p: &Polyomino) -> HashSet<(i32, i32)> {
    p.cells().iter().map(|c| (c.x, c.y)).collect()
}

/// Floyd–Warshall over the free cells; fine up to a few hundred cells.
pub fn naive_all_pairs(p: &Polyomino) -> Vec<Vec<u32>> {
    let n = p.n();
    let inf = u32::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        let a = p.cell(i);
        for j in 0..n {
            let b = p.cell(j);
            if (a.x - b.x).abs() + (a.y - b.y).abs() == 1 {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}
